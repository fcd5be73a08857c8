//! `mpcode`: build, classify and bound matrix product codes from JSON files.
//!
//! Exit status: 0 on success, 1 when an input is well formed but fails a
//! mathematical precondition (or a reproduced claim fails), 2 on malformed
//! input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mpcode::classify::{
    has_partitioned_orthogonal, is_nsc, is_quasi_orthogonal, is_reversely_nsc, is_sfrr,
    is_two_way_sfrr,
};
use mpcode::json::{
    code_from_json, code_to_generator_json, matrix_from_json, matrix_to_json, mpc_from_json,
    profile_from_json, read_json, ring_from_json, weights_from_json,
};
use mpcode::mpc::{bound_report, dual_mpc, BoundReport, ReportOptions};
use mpcode::search::{classes, search, Predicate};
use mpcode::{repro, Code, Error, Limits, RingMatrix};

#[derive(Parser)]
#[command(name = "mpcode", version, about = "Matrix product codes over finite Frobenius rings")]
struct Cli {
    /// Worker threads for enumeration and search.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Largest code that may be enumerated.
    #[arg(long, global = true)]
    cap_codewords: Option<u64>,
    /// Largest ambient space scanned when computing a dual.
    #[arg(long, global = true)]
    cap_ambient: Option<u64>,
    /// Largest matrix space scanned by `search`.
    #[arg(long, global = true)]
    cap_search: Option<u64>,
    /// Largest ring order accepted.
    #[arg(long, global = true)]
    cap_ring: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ring structure.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Matrix predicates and certificates.
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Parameters and duals of codes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Matrix product codes.
    #[command(subcommand)]
    Mpc(MpcCmd),
    /// Exhaustive search over all matrices of a shape.
    Search(SearchArgs),
    /// Recompute the claims of a worked example.
    Repro {
        /// ex4.1, ex5.1, ex5.2 or ex5.3
        example: String,
    },
}

#[derive(Subcommand)]
enum RingCmd {
    Info { spec: PathBuf },
}

#[derive(Subcommand)]
enum MatrixCmd {
    /// Test one predicate: frr, nsc, rnsc, qo, sfrr=<profile.json>,
    /// two-way=<m'>, po=<m'>.
    Check {
        matrix: PathBuf,
        #[arg(long)]
        pred: String,
    },
    /// Right inverse B and kernel basis G of an FRR matrix.
    Cert { matrix: PathBuf },
}

#[derive(Subcommand)]
enum CodeCmd {
    Params {
        code: PathBuf,
        #[arg(long)]
        weight: Option<PathBuf>,
    },
    Dual { code: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum DualMethod {
    Formula,
    Brute,
    Both,
}

#[derive(Subcommand)]
enum MpcCmd {
    Build {
        spec: PathBuf,
    },
    Dual {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "formula")]
        method: DualMethod,
    },
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct BoundsArgs {
    spec: PathBuf,
    /// Forward SFRR profile; discovered when omitted.
    #[arg(long)]
    forward: Option<PathBuf>,
    /// Reverse SFRR profile; discovered when omitted.
    #[arg(long)]
    reverse: Option<PathBuf>,
    /// Split m' for the two-code bounds; discovered when omitted.
    #[arg(long)]
    split: Option<usize>,
    #[arg(long)]
    weight: Option<PathBuf>,
    /// Skip enumerating the code for its true distance.
    #[arg(long)]
    no_enumerate: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    ring: PathBuf,
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    /// two-way=<m'>, qo or nsc
    #[arg(long)]
    pred: String,
}

type Out = Result<(Value, String, bool), Error>;

fn dir_of(p: &Path) -> PathBuf {
    p.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn load_matrix(p: &Path) -> Result<RingMatrix, Error> {
    matrix_from_json(&read_json(p)?)
}

fn load_code(p: &Path) -> Result<Code, Error> {
    code_from_json(&read_json(p)?, &dir_of(p))
}

fn params_json(c: &Code) -> Result<Value, Error> {
    let p = c.params()?;
    Ok(json!({
        "n": p.n,
        "size": p.size.to_string(),
        "d_h": p.d_h,
        "free": p.is_free,
        "rank": p.rank,
        "mds": p.is_mds,
    }))
}

fn params_text(c: &Code) -> Result<String, Error> {
    let p = c.params()?;
    let rank = p.rank.map_or("-".into(), |r| r.to_string());
    Ok(format!(
        "n = {}\n|C| = {}\nd_H = {}\nfree = {} (rank {rank})\nMDS = {}",
        p.n, p.size, p.d_h, p.is_free, p.is_mds
    ))
}

fn ring_info(spec: &Path) -> Out {
    let r = ring_from_json(&read_json(spec)?)?;
    let mut comps = Vec::new();
    let mut lines = vec![
        format!("ring {r}"),
        format!("order {}", r.order()),
        format!("characteristic {}", r.characteristic()),
        format!("units {}", r.units().len()),
        format!("local {}, field {}", r.is_local(), r.is_field()),
    ];
    for k in 0..r.num_components() {
        let (cr, e) = r.component(k)?;
        comps.push(json!({"ring": cr.to_string(), "order": cr.order(), "idempotent": r.literal(e)}));
        lines.push(format!("component {k}: {cr} (order {}), idempotent {}", cr.order(), r.literal(e)));
    }
    let v = json!({
        "ring": r.to_string(),
        "order": r.order(),
        "characteristic": r.characteristic(),
        "units": r.units().len(),
        "local": r.is_local(),
        "field": r.is_field(),
        "components": comps,
    });
    Ok((v, lines.join("\n"), true))
}

fn split_arg(pred: &str, rest: &str) -> Result<usize, Error> {
    rest.parse()
        .map_err(|_| Error::Parse(format!("bad split in predicate {pred:?}")))
}

fn matrix_check(path: &Path, pred: &str) -> Out {
    let a = load_matrix(path)?;
    let holds = if pred == "frr" {
        a.is_frr()
    } else if pred == "nsc" {
        is_nsc(&a)?
    } else if pred == "rnsc" {
        is_reversely_nsc(&a)?
    } else if pred == "qo" {
        is_quasi_orthogonal(&a)
    } else if let Some(rest) = pred.strip_prefix("two-way=") {
        is_two_way_sfrr(&a, split_arg(pred, rest)?)?
    } else if let Some(rest) = pred.strip_prefix("po=") {
        has_partitioned_orthogonal(&a, split_arg(pred, rest)?)?
    } else if let Some(rest) = pred.strip_prefix("sfrr=") {
        let p = Path::new(rest);
        let p = if p.is_relative() && !p.exists() { dir_of(path).join(p) } else { p.to_path_buf() };
        let profile = profile_from_json(&read_json(&p)?, a.rows())?;
        is_sfrr(&a, &profile)?
    } else {
        return Err(Error::Parse(format!("unknown predicate {pred:?}")));
    };
    Ok((json!({"predicate": pred, "holds": holds}), format!("{pred}: {holds}"), true))
}

fn matrix_cert(path: &Path) -> Out {
    let a = load_matrix(path)?;
    let cert = a.frr_certificate()?;
    let v = json!({
        "right_inverse": matrix_to_json(&cert.right_inverse),
        "kernel_basis": matrix_to_json(&cert.kernel_basis),
    });
    let text = format!("B =\n{}\nG =\n{}", cert.right_inverse, cert.kernel_basis);
    Ok((v, text, true))
}

fn code_params(path: &Path, weight: Option<&Path>) -> Out {
    let c = load_code(path)?;
    let mut v = params_json(&c)?;
    let mut text = params_text(&c)?;
    if let Some(w) = weight {
        let table = weights_from_json(&read_json(w)?, c.ring())?;
        let dw = c.min_distance(&table)?;
        v["d_w"] = json!(dw);
        text.push_str(&format!("\nd_w = {dw}"));
    }
    Ok((v, text, true))
}

fn code_dual(path: &Path) -> Out {
    let d = load_code(path)?.dual()?;
    let v = json!({"params": params_json(&d)?, "code": code_to_generator_json(&d)?});
    Ok((v, params_text(&d)?, true))
}

fn mpc_build(path: &Path) -> Out {
    let spec = mpc_from_json(&read_json(path)?, &dir_of(path))?;
    let c = spec.build();
    let v = json!({"params": params_json(&c)?, "code": code_to_generator_json(&c)?});
    Ok((v, params_text(&c)?, true))
}

fn mpc_dual(path: &Path, method: DualMethod) -> Out {
    let spec = mpc_from_json(&read_json(path)?, &dir_of(path))?;
    let d = match method {
        DualMethod::Formula => dual_mpc(&spec)?,
        DualMethod::Brute => spec.build().dual()?,
        DualMethod::Both => {
            let f = dual_mpc(&spec)?;
            let b = spec.build().dual()?;
            if !f.same_words(&b)? {
                return Err(Error::Inconsistent(
                    "closed-form dual differs from the brute-force dual".into(),
                ));
            }
            f
        }
    };
    let mut text = params_text(&d)?;
    if let DualMethod::Both = method {
        text.push_str("\nclosed form and brute force agree");
    }
    let v = json!({"params": params_json(&d)?, "code": code_to_generator_json(&d)?});
    Ok((v, text, true))
}

fn report_text(r: &BoundReport) -> String {
    let show = |v: Option<u64>| v.map_or("n/a".to_string(), |v| v.to_string());
    let rows: [(&str, Option<u64>, &str); 14] = [
        ("thm31_U", r.thm31_u, "thm31_U"),
        ("thm31_L", r.thm31_l, "thm31_L"),
        ("thm45_U", r.thm45_u, "thm45_U"),
        ("thm45_U_exact", r.thm45_u_exact, "thm45_U_exact"),
        ("thm45_L", r.thm45_l, "thm45_L"),
        ("thm45_L_exact", r.thm45_l_exact, "thm45_L_exact"),
        ("thm47 (dual)", r.thm47, "thm47"),
        ("thm47_exact (dual)", r.thm47_exact, "thm47_exact"),
        ("cor48_primal", r.cor48_primal, "cor48"),
        ("cor48_dual", r.cor48_dual, "cor48"),
        ("thm51_lower_52", r.thm51_lower_52, "thm51"),
        ("thm51_lower_53", r.thm51_lower_53, "thm51"),
        ("thm51_upper_54", r.thm51_upper_54, "thm51"),
        ("thm51_lower_510", r.thm51_lower_510, "thm51"),
    ];
    let mut out = Vec::new();
    for (name, v, key) in rows {
        let note = r.applicability.get(key).map_or("", String::as_str);
        let note = if note == "ok" || v.is_some() { String::new() } else { format!("  ({note})") };
        out.push(format!("{name:<20} {:>6}{note}", show(v)));
    }
    if let Some(b) = &r.best_lower {
        out.push(format!("best lower bound     {:>6}  ({b})", show(r.best_lower_value)));
    }
    if let Some(d) = r.d_h {
        out.push(format!("d_H                  {d:>6}"));
    }
    if let Some(d) = r.d_w {
        out.push(format!("d_w                  {d:>6}"));
    }
    if let Some(d) = r.dual_d_h {
        out.push(format!("d_H of dual          {d:>6}"));
    }
    if let Some(ok) = r.verified_sandwich {
        out.push(format!("verified_sandwich    {ok}"));
    }
    out.join("\n")
}

fn mpc_bounds(a: &BoundsArgs) -> Out {
    let spec = mpc_from_json(&read_json(&a.spec)?, &dir_of(&a.spec))?;
    let m = spec.m();
    let load_profile = |p: &Option<PathBuf>| -> Result<_, Error> {
        p.as_ref()
            .map(|p| profile_from_json(&read_json(p)?, m))
            .transpose()
    };
    let weight = a
        .weight
        .as_ref()
        .map(|w| weights_from_json(&read_json(w)?, spec.ring()))
        .transpose()?;
    let opts = ReportOptions {
        weight,
        forward: load_profile(&a.forward)?,
        reverse: load_profile(&a.reverse)?,
        split: a.split,
        enumerate: !a.no_enumerate,
    };
    let r = bound_report(&spec, &opts)?;
    let v = serde_json::to_value(&r).expect("reports serialize");
    let ok = r.verified_sandwich != Some(false);
    Ok((v, report_text(&r), ok))
}

fn run_search(a: &SearchArgs) -> Out {
    let ring = ring_from_json(&read_json(&a.ring)?)?;
    let pred: Predicate = a.pred.parse()?;
    let found = search(&ring, a.rows, a.cols, pred)?;
    let cls = classes(&found, pred);
    let rows: Vec<Value> = found.iter().map(matrix_to_json).collect();
    let reps: Vec<Value> = cls
        .iter()
        .map(|c| json!({"representative": matrix_to_json(&c.representative), "members": c.members.len()}))
        .collect();
    let v = json!({"predicate": pred.to_string(), "count": found.len(), "matrices": rows,
                   "classes": reps});
    let mut text = vec![format!(
        "{} matrices, {} classes up to permutation",
        found.len(),
        cls.len()
    )];
    for a in &found {
        text.push(a.to_string());
    }
    Ok((v, text.join("\n"), true))
}

fn run_repro(example: &str) -> Out {
    let rep = repro::run(example)?;
    let mut text = Vec::new();
    for c in &rep.claims {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        text.push(format!("{tag} {}: expected {}, observed {}", c.claim, c.expected, c.observed));
    }
    let ok = rep.passed();
    text.push(format!("{}: {}", rep.example, if ok { "all claims hold" } else { "claims failed" }));
    let mut v = serde_json::to_value(&rep).expect("reports serialize");
    v["passed"] = json!(ok);
    Ok((v, text.join("\n"), ok))
}

fn dispatch(cli: &Cli) -> Out {
    match &cli.command {
        Command::Ring(RingCmd::Info { spec }) => ring_info(spec),
        Command::Matrix(MatrixCmd::Check { matrix, pred }) => matrix_check(matrix, pred),
        Command::Matrix(MatrixCmd::Cert { matrix }) => matrix_cert(matrix),
        Command::Code(CodeCmd::Params { code, weight }) => code_params(code, weight.as_deref()),
        Command::Code(CodeCmd::Dual { code }) => code_dual(code),
        Command::Mpc(MpcCmd::Build { spec }) => mpc_build(spec),
        Command::Mpc(MpcCmd::Dual { spec, method }) => mpc_dual(spec, *method),
        Command::Mpc(MpcCmd::Bounds(a)) => mpc_bounds(a),
        Command::Search(a) => run_search(a),
        Command::Repro { example } => run_repro(example),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = Limits::current();
    if let Some(w) = cli.workers {
        limits.workers = w;
    }
    if let Some(c) = cli.cap_codewords {
        limits.max_codewords = c;
    }
    if let Some(c) = cli.cap_ambient {
        limits.max_ambient = c;
    }
    if let Some(c) = cli.cap_search {
        limits.max_search = c;
    }
    if let Some(c) = cli.cap_ring {
        limits.max_ring_order = c;
    }
    limits.install();
    match dispatch(&cli) {
        Ok((v, text, ok)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                println!("{text}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse() { 2 } else { 1 })
        }
    }
}
