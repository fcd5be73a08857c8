//! One randomized check per property family. Each case draws its own
//! instance from the generator and compares library output with brute force.

use std::collections::BTreeSet;

use mpcode::classify::{
    cor43_check, is_nsc, is_reversely_nsc, is_two_way_sfrr, lemma46_decompose, prop42_check,
};
use mpcode::mpc::{
    bound_report, dual_mpc, dual_quasi_orthogonal, equality_thm45, equality_thm47,
    self_orthogonal_by_partition, verify_self_orthogonal,
};
use mpcode::repro::builtin;
use mpcode::{Code, Direction, Elem, MpcSpec, ReportOptions, Ring, RingMatrix, SfrrProfile, WeightTable};
use rand::Rng;

use super::*;

pub type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Ambient size `|R|^{nl}` kept under this so brute force stays cheap.
const AMBIENT: u128 = 1 << 12;

fn err(e: mpcode::Error) -> String {
    e.to_string()
}

fn shape(g: &mut Rng8, r: &Ring, min_m: usize) -> (usize, usize, usize) {
    let m = g.gen_range(min_m..=3);
    let l = g.gen_range(m..=3);
    let n = g.gen_range(1..=max_length(r, l, AMBIENT, 3));
    (n, m, l)
}

/// Minimum nonzero weight, or pairwise distance when `linear` is false.
fn distance(words: &BTreeSet<Vec<u8>>, len: usize, linear: bool) -> u64 {
    if !linear {
        return brute_distance(words, len);
    }
    words
        .iter()
        .map(|w| w.iter().filter(|&&x| x != 0).count() as u64)
        .filter(|&w| w > 0)
        .min()
        .unwrap_or(len as u64 + 1)
}

fn weighted_distance(words: &BTreeSet<Vec<u8>>, r: &Ring, w: &WeightTable) -> u64 {
    let v: Vec<&Vec<u8>> = words.iter().collect();
    let mut best = u64::MAX;
    for a in &v {
        for b in &v {
            if a != b {
                let d = a.iter().zip(b.iter()).map(|(&x, &y)| w.weight(r.sub(Elem(x), Elem(y)))).sum();
                best = best.min(d);
            }
        }
    }
    best
}

/// A two-way matrix with its split: random when one turns up quickly,
/// otherwise `T`.
fn two_way(g: &mut Rng8, r: &Ring) -> (RingMatrix, usize) {
    for _ in 0..100 {
        let m = g.gen_range(2..=3);
        let l = g.gen_range(m..=3);
        let m1 = g.gen_range(1..m);
        let a = matrix(g, r, m, l);
        if is_two_way_sfrr(&a, m1).unwrap_or(false) {
            return (a, m1);
        }
    }
    (builtin::t(r), 2)
}

/// (a) `|C|·|C⊥| = |R|ⁿ` and `(C⊥)⊥ = C`.
pub fn code_duality(g: &mut Rng8, r: &Ring) -> Check {
    let n = g.gen_range(1..=max_length(r, 1, AMBIENT, 5));
    let c = linear_code(g, r, n, 3);
    let d = c.dual().map_err(err)?;
    let q = r.order() as u128;
    let (sc, sd) = (c.cardinality().map_err(err)?, d.cardinality().map_err(err)?);
    ensure!(sc * sd == q.pow(n as u32), "|C||C⊥| = {sc}·{sd} ≠ {q}^{n}");
    ensure!(word_set(&d) == brute_dual(&c), "dual differs from brute force");
    let dd = d.dual().map_err(err)?;
    ensure!(dd.same_words(&c).map_err(err)?, "double dual differs from C");
    Ok(())
}

/// (b) the dual formula for products equals the brute-force dual.
pub fn product_dual(g: &mut Rng8, r: &Ring) -> Check {
    let (n, m, l) = shape(g, r, 1);
    let a = frr_matrix(g, r, m, l);
    let codes: Vec<Code> = (0..m).map(|_| linear_code(g, r, n, 2)).collect();
    let spec = MpcSpec::new(codes, a).map_err(err)?;
    let built = spec.build();
    let formula = word_set(&dual_mpc(&spec).map_err(err)?);
    ensure!(formula == brute_dual(&built), "dual_mpc differs from brute force");
    ensure!(
        word_set(&built) == brute_product(spec.codes(), spec.matrix()),
        "build differs from the direct product"
    );
    Ok(())
}

/// (c) every applicable lower bound ≤ d_H ≤ the two-way upper bound.
pub fn sandwich(g: &mut Rng8, r: &Ring) -> Check {
    let linear = g.gen_bool(0.8);
    let (a, split) = if g.gen_bool(0.5) {
        let (a, m1) = two_way(g, r);
        (a, Some(m1))
    } else {
        let (_, m, l) = shape(g, r, 1);
        (frr_matrix(g, r, m, l), None)
    };
    let (m, l) = (a.rows(), a.cols());
    let n = g.gen_range(1..=max_length(r, l, AMBIENT, 3));
    let draw = |g: &mut Rng8| {
        if linear {
            linear_code(g, r, n, 2)
        } else {
            explicit_code(g, r, n, 3)
        }
    };
    let codes: Vec<Code> = match split {
        Some(m1) => {
            let (c1, c2) = (draw(g), draw(g));
            (0..m).map(|k| if k < m1 { c1.clone() } else { c2.clone() }).collect()
        }
        None => (0..m).map(|_| draw(g)).collect(),
    };
    let spec = MpcSpec::new(codes, a).map_err(err)?;
    let weight = if g.gen_bool(0.25) {
        let mut w = vec![0];
        w.extend((1..r.order()).map(|_| g.gen_range(1..=3)));
        Some(WeightTable::new(r, w).map_err(err)?)
    } else {
        None
    };
    let opts = ReportOptions {
        weight: weight.clone(),
        split,
        enumerate: true,
        ..Default::default()
    };
    let rep = bound_report(&spec, &opts).map_err(err)?;
    let words = brute_product(spec.codes(), spec.matrix());
    let d = distance(&words, n * l, linear);
    ensure!(rep.d_h == Some(d), "d_H {:?} ≠ brute {d}", rep.d_h);
    ensure!(rep.verified_sandwich == Some(true), "sandwich flag unset: {rep:?}");
    let lowers = [
        rep.thm51_lower_52,
        rep.thm51_lower_53,
        rep.thm51_lower_510,
        rep.thm45_u,
        rep.thm45_l,
        rep.cor48_primal,
    ];
    ensure!(lowers.iter().flatten().all(|&b| b <= d), "a lower bound exceeds {d}: {rep:?}");
    if let Some(u) = rep.thm51_upper_54 {
        ensure!(d <= u, "d_H {d} above the upper bound {u}");
    }
    if let Some(e) = rep.thm45_u_exact.or(rep.thm45_l_exact) {
        ensure!(e == d, "exact value {e} ≠ {d}");
    }
    if words.len() > 1 {
        let dw = match &weight {
            Some(w) => weighted_distance(&words, r, w),
            None => d,
        };
        for b in [rep.thm31_u, rep.thm31_l].into_iter().flatten() {
            ensure!(b <= dw, "weighted bound {b} exceeds d_w {dw}");
        }
    }
    if split.is_some() && linear {
        ensure!(rep.thm51_lower_52.is_some(), "two-way bounds missing: {rep:?}");
    }
    Ok(())
}

/// (d) under the equality conditions the exact value is the true distance.
pub fn equality(g: &mut Rng8, r: &Ring) -> Check {
    let (n, m, mut l) = shape(g, r, 1);
    let direction = if g.gen_bool(0.5) { Direction::Forward } else { Direction::Reverse };
    let mut a = frr_matrix(g, r, m, l);
    let profile = match random_profile(g, &a, direction) {
        Some(p) => p,
        None => {
            // square invertible matrices always admit the trivial profile
            l = m;
            a = invertible(g, r, m);
            random_profile(g, &a, direction).ok_or("no trivial profile")?
        }
    };
    let n = n.min(max_length(r, l, AMBIENT, 3));
    let steps = profile.indices.len() - 1;
    let chain = decreasing_chain(g, r, n, steps);
    let mut codes = Vec::with_capacity(m);
    for h in 0..steps {
        let (s, e) = match direction {
            Direction::Forward => (profile.indices[h], profile.indices[h + 1]),
            Direction::Reverse => (profile.indices[h] - 1, profile.indices[h + 1] - 1),
        };
        let code = match direction {
            Direction::Forward => chain[h].clone(),
            Direction::Reverse => chain[steps - 1 - h].clone(),
        };
        codes.extend(std::iter::repeat_n(code, e - s));
    }
    let spec = MpcSpec::new(codes, a).map_err(err)?;
    let words = brute_product(spec.codes(), spec.matrix());
    let d = distance(&words, n * l, true);
    let exact = equality_thm45(&spec, &profile).map_err(err)?;
    ensure!(exact == Some(d), "exact {exact:?} ≠ d_H {d} for {profile:?}");
    if direction == Direction::Forward {
        let dual = brute_dual(&spec.build());
        let dd = distance(&dual, n * l, true);
        let e = equality_thm47(&spec, &profile).map_err(err)?;
        ensure!(e == Some(dd), "dual exact {e:?} ≠ {dd} for {profile:?}");
    }
    Ok(())
}

/// (e) duality between forward and reverse conditions.
pub fn profile_duality(g: &mut Rng8, r: &Ring) -> Check {
    let m = g.gen_range(1..=3);
    let l = g.gen_range(m..=4);
    let a = frr_matrix(g, r, m, l);
    let interior: Vec<usize> = (1..m).filter(|_| g.gen_bool(0.5)).collect();
    let p = SfrrProfile::forward(m, &interior).map_err(err)?;
    ensure!(prop42_check(&a, &p).map_err(err)?, "forward/reverse duality fails for {p:?}");
    ensure!(cor43_check(&a).map_err(err)?, "NSC equivalences fail");
    let sq = invertible(g, r, m);
    let bt = sq.inverse().map_err(err)?.transpose();
    ensure!(
        is_nsc(&sq).map_err(err)? == is_reversely_nsc(&bt).map_err(err)?,
        "NSC of A and reverse NSC of (A⁻¹)ᵀ disagree"
    );
    Ok(())
}

/// (f) the block decomposition meets its postconditions.
pub fn decomposition(g: &mut Rng8, r: &Ring) -> Check {
    let m = g.gen_range(1..=3);
    let l = g.gen_range(m..=4);
    let mut a = frr_matrix(g, r, m, l);
    let p = match random_profile(g, &a, Direction::Forward) {
        Some(p) => p,
        None => {
            a = invertible(g, r, m);
            random_profile(g, &a, Direction::Forward).ok_or("no trivial profile")?
        }
    };
    let dec = lemma46_decompose(&a, &p).map_err(err)?;
    dec.verify(&a, &p).map_err(err)?;
    ensure!(r.is_unit(brute_det(&dec.q)), "det Q is not a unit");
    ensure!(dec.q.mul(&a).map_err(err)? == dec.qa, "QA mismatch");
    Ok(())
}

/// (g) quasi-orthogonal and partitioned-orthogonal products of
/// self-orthogonal codes are self-orthogonal, checked on all pairs.
pub fn self_orthogonality(g: &mut Rng8, r: &Ring) -> Check {
    let (n, m, l) = shape(g, r, 1);
    let n = n.max(2).min(max_length(r, l, AMBIENT, 4)).max(1);
    let a = quasi_orthogonal(g, r, m, l);
    let codes: Vec<Code> = (0..m).map(|_| self_orthogonal_code(g, r, n, 2)).collect();
    let spec = MpcSpec::new(codes, a).map_err(err)?;
    let words = brute_product(spec.codes(), spec.matrix());
    ensure!(pairwise_orthogonal(r, &words), "QO product not self-orthogonal");
    let (ok, exhaustive) = verify_self_orthogonal(&spec.build()).map_err(err)?;
    ensure!(ok && exhaustive, "library check ({ok}, {exhaustive})");
    let formula = word_set(&dual_quasi_orthogonal(&spec).map_err(err)?);
    ensure!(formula == brute_dual(&spec.build()), "QO dual formula differs");

    let m = g.gen_range(2..=3);
    let l = g.gen_range(m..=4);
    let m1 = g.gen_range(1..m);
    let Some(a) = partitioned_orthogonal(g, r, m1, m, l) else {
        return Ok(());
    };
    let n = g.gen_range(1..=max_length(r, l, AMBIENT, 3));
    let c1 = self_orthogonal_code(g, r, n, 2);
    let c2 = self_orthogonal_code(g, r, n, 2);
    let res = self_orthogonal_by_partition(&c1, &c2, &a, m1).map_err(err)?;
    ensure!(res.self_orthogonal && res.exhaustive, "partition result not exhaustive");
    let codes: Vec<Code> = (0..m).map(|k| if k < m1 { c1.clone() } else { c2.clone() }).collect();
    let words = brute_product(&codes, &a);
    ensure!(word_set(&res.code) == words, "partition product differs");
    ensure!(pairwise_orthogonal(r, &words), "partition product not self-orthogonal");
    Ok(())
}

pub type Part = fn(&mut Rng8, &Ring) -> Check;

pub const PARTS: [(&str, Part); 7] = [
    ("a", code_duality),
    ("b", product_dual),
    ("c", sandwich),
    ("d", equality),
    ("e", profile_duality),
    ("f", decomposition),
    ("g", self_orthogonality),
];
