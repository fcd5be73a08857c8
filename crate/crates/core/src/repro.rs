//! Recomputation of the worked examples: each claim is evaluated from
//! scratch and reported as pass or fail.

use std::fmt::Display;

use serde::Serialize;

use crate::classify::{
    has_partitioned_orthogonal, is_nsc, is_quasi_orthogonal, is_sfrr,
    is_two_way_sfrr, prop42_check, SfrrProfile,
};
use crate::code::{inner_product, Code};
use crate::error::{Error, Result};
use crate::matrix::RingMatrix;
use crate::mpc::{self, MpcSpec};
use crate::ring::{Ring, RingSpec};
use crate::search::{classes, search, Predicate};

pub const EXAMPLES: [&str; 4] = ["ex4.1", "ex5.1", "ex5.2", "ex5.3"];

/// Built-in rings, matrices and codes used by the examples.
pub mod builtin {
    use super::*;

    pub fn f2() -> Ring {
        Ring::new(&RingSpec::zmod(2)).expect("valid spec")
    }

    pub fn ring(spec: RingSpec) -> Ring {
        Ring::new(&spec).expect("valid spec")
    }

    /// The `(a+x | b+x | a+b+x)` matrix.
    pub fn t(r: &Ring) -> RingMatrix {
        RingMatrix::from_ints(r, &[&[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]).expect("3x3")
    }

    /// The printed `(T⁻¹)ᵀ`.
    pub fn t_inverse_transpose(r: &Ring) -> RingMatrix {
        RingMatrix::from_ints(r, &[&[0, -1, 1], &[-1, 0, 1], &[1, 1, -1]]).expect("3x3")
    }

    /// The 5×5 binary matrix of the length-40 construction.
    pub fn a5() -> RingMatrix {
        RingMatrix::from_ints(
            &f2(),
            &[
                &[1, 1, 0, 0, 0],
                &[0, 1, 1, 0, 0],
                &[0, 0, 1, 1, 0],
                &[0, 0, 0, 1, 1],
                &[1, 1, 1, 1, 1],
            ],
        )
        .expect("5x5")
    }

    fn binary(rows: &[&[i64]]) -> Code {
        let r = f2();
        let gens = rows
            .iter()
            .map(|row| row.iter().map(|&x| r.from_int(x)).collect())
            .collect();
        Code::linear(&r, rows[0].len(), gens).expect("valid generators")
    }

    /// `[8,4,4]` extended Hamming code `C′`.
    pub fn g_prime() -> Code {
        binary(&[
            &[1, 1, 0, 1, 0, 0, 0, 1],
            &[0, 1, 1, 0, 1, 0, 0, 1],
            &[0, 0, 1, 1, 0, 1, 0, 1],
            &[0, 0, 0, 1, 1, 0, 1, 1],
        ])
    }

    /// `[8,4,4]` extended Hamming code `C″`.
    pub fn g_double_prime() -> Code {
        binary(&[
            &[1, 0, 1, 1, 0, 0, 0, 1],
            &[0, 1, 0, 1, 1, 0, 0, 1],
            &[0, 0, 1, 0, 1, 1, 0, 1],
            &[0, 0, 0, 1, 0, 1, 1, 1],
        ])
    }

    pub fn c1() -> Code {
        binary(&[&[1, 1, 1, 1]])
    }

    pub fn c2() -> Code {
        binary(&[&[1, 0, 1, 0], &[0, 1, 1, 1]])
    }

    pub fn c3() -> Code {
        binary(&[&[1, 0, 1, 0], &[0, 1, 0, 1]])
    }

    pub fn c3_prime() -> Code {
        binary(&[&[1, 1, 0, 0], &[0, 0, 1, 1]])
    }
}

use builtin::*;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Claim {
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReproReport {
    pub example: String,
    pub claims: Vec<Claim>,
}

impl ReproReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

struct Claims(Vec<Claim>);

impl Claims {
    /// Records `observed == expected`; an error while computing fails the
    /// claim.
    fn eq<T: Display + PartialEq>(&mut self, claim: impl Into<String>, expected: T, observed: Result<T>) {
        let (obs, pass) = match observed {
            Ok(v) => {
                let pass = v == expected;
                (v.to_string(), pass)
            }
            Err(e) => (format!("error: {e}"), false),
        };
        self.0.push(Claim {
            claim: claim.into(),
            expected: expected.to_string(),
            observed: obs,
            pass,
        });
    }
}

fn compact(a: &RingMatrix) -> String {
    crate::json::matrix_to_json(a)["rows"].to_string()
}

/// `[n,k,d]` when `|C|` is a power of `|R|`, else `[n,|C|,d]` with the size
/// prefixed by `#`.
pub fn parameters(c: &Code) -> Result<String> {
    let size = c.cardinality()?;
    let q = c.ring().order() as u128;
    let mut k = 0u32;
    while q.checked_pow(k + 1).is_some_and(|p| p <= size) {
        k += 1;
    }
    let d = c.min_distance_hamming()?;
    if q.pow(k) == size {
        Ok(format!("[{},{},{}]", c.length(), k, d))
    } else {
        Ok(format!("[{},#{},{}]", c.length(), size, d))
    }
}

fn duality(c: &Code) -> Result<String> {
    Ok(if mpc::is_type_ii(c)? {
        "Type II self-dual".into()
    } else if c.is_self_dual()? {
        if c.ring().order() == 2 {
            "Type I self-dual".into()
        } else {
            "self-dual".into()
        }
    } else if c.is_self_orthogonal()? {
        "self-orthogonal".into()
    } else {
        "not self-orthogonal".into()
    })
}

pub fn run(example: &str) -> Result<ReproReport> {
    let claims = match example {
        "ex4.1" => ex41(),
        "ex5.1" => ex51(),
        "ex5.2" => ex52(),
        "ex5.3" => ex53(),
        other => return Err(Error::UnknownExample(other.into())),
    };
    Ok(ReproReport {
        example: example.into(),
        claims: claims.0,
    })
}

fn ex41() -> Claims {
    let mut c = Claims(Vec::new());
    let r = f2();
    let t = t(&r);
    c.eq("T is FRR", true, Ok(t.is_frr()));
    c.eq("T is (2)-SFRR", true, SfrrProfile::forward(3, &[2]).and_then(|p| is_sfrr(&t, &p)));
    c.eq(
        "U_T(1) is MDS",
        false,
        Code::row_code(&t, 1, crate::code::RowCodeDirection::Prefix).and_then(|u| u.is_mds()),
    );
    c.eq("T is non-singular by columns", false, is_nsc(&t));
    c.eq(
        "T is reversely (3)-SFRR",
        true,
        SfrrProfile::reverse(3, &[3]).and_then(|p| is_sfrr(&t, &p)),
    );
    let tit = t.inverse().map(|i| i.transpose());
    c.eq(
        "(T^-1)^T equals the printed matrix mod 2",
        compact(&t_inverse_transpose(&r)),
        tit.clone().map(|m| compact(&m)),
    );
    c.eq(
        "(T^-1)^T is reversely (3)-SFRR",
        true,
        tit.and_then(|m| is_sfrr(&m, &SfrrProfile::reverse(3, &[3])?)),
    );
    c.eq(
        "(2)-SFRR of T matches reversely (3)-SFRR of (T^-1)^T",
        true,
        SfrrProfile::forward(3, &[2]).and_then(|p| prop42_check(&t, &p)),
    );
    for spec in [RingSpec::zmod(3), RingSpec::zmod(4), RingSpec::polyquot(2, &[1, 1, 1])] {
        let r = ring(spec);
        let t = builtin::t(&r);
        c.eq(
            format!("over {r}: (T^-1)^T equals the printed matrix"),
            compact(&t_inverse_transpose(&r)),
            t.inverse().map(|i| compact(&i.transpose())),
        );
        c.eq(
            format!("over {r}: T is (2)-SFRR and reversely (3)-SFRR"),
            true,
            (|| {
                Ok(is_sfrr(&t, &SfrrProfile::forward(3, &[2])?)?
                    && is_sfrr(&t, &SfrrProfile::reverse(3, &[3])?)?)
            })(),
        );
    }
    c
}

fn ex51() -> Claims {
    let mut c = Claims(Vec::new());
    // (i)
    for spec in [
        RingSpec::zmod(2),
        RingSpec::zmod(3),
        RingSpec::zmod(4),
        RingSpec::zmod(6),
        RingSpec::polyquot(2, &[1, 1, 1]),
        RingSpec::polyquot(2, &[0, 0, 1]),
    ] {
        let r = ring(spec);
        let t = t(&r);
        c.eq(format!("over {r}: T is two-way (2)-SFRR"), true, is_two_way_sfrr(&t, 2));
        c.eq(format!("over {r}: T is quasi-orthogonal"), false, Ok(is_quasi_orthogonal(&t)));
        if r.characteristic() == 2 {
            c.eq(
                format!("over {r}: T has the 2-partitioned orthogonal property"),
                true,
                has_partitioned_orthogonal(&t, 2),
            );
        }
    }
    let r = f2();
    let found = search(&r, 3, 3, Predicate::TwoWaySfrr(2));
    c.eq(
        "over Z2: two-way (2)-SFRR 3x3 matrices up to row/column permutation",
        1,
        found.clone().map(|f| classes(&f, Predicate::TwoWaySfrr(2)).len()),
    );
    c.eq(
        "over Z2: every two-way (2)-SFRR 3x3 matrix is a column permutation of T",
        true,
        found.map(|f| {
            let t = t(&r);
            let cols = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            f.iter()
                .all(|a| cols.iter().any(|p| t.submatrix(&[0, 1, 2], p) == *a))
        }),
    );
    // (ii)
    for spec in [RingSpec::zmod(3), RingSpec::zmod(5), RingSpec::zmod(9)] {
        let r = ring(spec);
        let a = RingMatrix::from_ints(&r, &[&[1, 1], &[1, -1]]).expect("2x2");
        c.eq(format!("over {r}: [[1,1],[1,-1]] is two-way (1)-SFRR"), true, is_two_way_sfrr(&a, 1));
        c.eq(format!("over {r}: [[1,1],[1,-1]] is quasi-orthogonal"), true, Ok(is_quasi_orthogonal(&a)));
    }
    c.eq(
        "over Z2: two-way (1)-SFRR 2x2 matrices",
        0,
        search(&f2(), 2, 2, Predicate::TwoWaySfrr(1)).map(|f| f.len()),
    );
    for spec in [
        RingSpec::polyquot(2, &[1, 1, 1]),
        RingSpec::polyquot(2, &[1, 1, 0, 1]),
    ] {
        let r = ring(spec);
        let one = r.one();
        let ok = r.elements().filter(|&w| w != one && w != crate::ring::Elem::ZERO).try_fold(
            true,
            |acc, w| -> Result<bool> {
                let a = RingMatrix::from_rows(&r, &[vec![one, w], vec![w, one]])?;
                Ok(acc && is_two_way_sfrr(&a, 1)? && is_quasi_orthogonal(&a))
            },
        );
        c.eq(
            format!("over {r}: [[1,w],[w,1]] is two-way (1)-SFRR and quasi-orthogonal for all w != 0, 1"),
            true,
            ok,
        );
    }
    // (iii)
    let first: &[&[i64]] = &[&[1, 0, 1, 1], &[0, 1, 1, -1], &[1, 1, 1, 0], &[1, -1, 0, 1]];
    let second: &[&[i64]] = &[&[1, 0, 1, 1], &[0, 1, 1, -1], &[1, 1, -1, 0], &[1, -1, 0, -1]];
    for n in [3, 5, 7] {
        let r = ring(RingSpec::zmod(n));
        c.eq(
            format!("over {r}: first 4x4 matrix is two-way (2)-SFRR"),
            true,
            RingMatrix::from_ints(&r, first).and_then(|a| is_two_way_sfrr(&a, 2)),
        );
    }
    for n in [5, 7] {
        let r = ring(RingSpec::zmod(n));
        let a = RingMatrix::from_ints(&r, second);
        c.eq(
            format!("over {r}: second 4x4 matrix is two-way (2)-SFRR"),
            true,
            a.clone().and_then(|a| is_two_way_sfrr(&a, 2)),
        );
        c.eq(
            format!("over {r}: second 4x4 matrix is quasi-orthogonal"),
            true,
            a.map(|a| is_quasi_orthogonal(&a)),
        );
    }
    for m1 in 1..=3 {
        c.eq(
            format!("over Z2: two-way ({m1})-SFRR 4x4 matrices"),
            0,
            search(&f2(), 4, 4, Predicate::TwoWaySfrr(m1)).map(|f| f.len()),
        );
    }
    c
}

fn ex52() -> Claims {
    let mut c = Claims(Vec::new());
    let r = f2();
    let t = t(&r);
    c.eq("T is two-way (2)-SFRR", true, is_two_way_sfrr(&t, 2));
    c.eq("T has the 2-partitioned orthogonal property", true, has_partitioned_orthogonal(&t, 2));
    for (name, code, params, dual) in [
        ("C1", c1(), "[4,1,4]", "self-orthogonal"),
        ("C2", c2(), "[4,2,2]", "not self-orthogonal"),
        ("C3", c3(), "[4,2,2]", "Type I self-dual"),
        ("C3'", c3_prime(), "[4,2,2]", "Type I self-dual"),
    ] {
        c.eq(format!("{name} parameters"), params.to_string(), parameters(&code));
        c.eq(format!("{name} duality"), dual.to_string(), duality(&code));
    }
    c.eq("C2 ∩ C1 size", 1, c2().intersection(&c1()).and_then(|x| x.cardinality()));
    c.eq("C2 + C1 parameters", "[4,3,1]".to_string(), c2().sum(&c1()).and_then(|x| parameters(&x)));
    c.eq(
        "C3 ∩ C3' = C1",
        true,
        c3().intersection(&c3_prime()).and_then(|x| x.same_words(&c1())),
    );
    c.eq(
        "C3 + C3' parameters",
        "[4,3,2]".to_string(),
        c3().sum(&c3_prime()).and_then(|x| parameters(&x)),
    );

    let rows = [
        ("[C2,C2,C1]T", c2(), c2(), c1(), "[12,5,4]", "not self-orthogonal"),
        ("[C3,C3,C3']T", c3(), c3(), c3_prime(), "[12,6,4]", "Type I self-dual"),
        ("[C3,C3,C1]T", c3(), c3(), c1(), "[12,5,4]", "self-orthogonal"),
    ];
    for (name, a, b, d, params, dual) in rows {
        let spec = MpcSpec::new(vec![a, b, d], t.clone());
        let code = spec.as_ref().map(MpcSpec::build).map_err(Clone::clone);
        c.eq(format!("{name} parameters"), params.to_string(), code.clone().and_then(|x| parameters(&x)));
        c.eq(format!("{name} duality"), dual.to_string(), code.and_then(|x| duality(&x)));
    }

    let b = mpc::bound_thm51(&c2(), &c1(), &t, 2);
    c.eq("(i) eq52", 4, b.clone().map(|b| b.eq52));
    c.eq("(i) eq53", 3, b.clone().map(|b| b.eq53));
    c.eq("(i) eq54", 4, b.map(|b| b.eq54));
    let b = mpc::bound_thm51(&c3(), &c3_prime(), &t, 2);
    c.eq("(ii) eq52", 2, b.clone().map(|b| b.eq52));
    c.eq("(ii) eq53", 4, b.clone().map(|b| b.eq53));
    c.eq("(ii) eq54", 4, b.map(|b| b.eq54));
    c.eq(
        "(ii) self-dual by the partitioned construction",
        true,
        mpc::self_orthogonal_by_partition(&c3(), &c3_prime(), &t, 2).map(|p| p.self_dual),
    );
    let eq = MpcSpec::new(vec![c3(), c3(), c1()], t.clone())
        .and_then(|s| mpc::equality_thm45(&s, &SfrrProfile::forward(3, &[2])?));
    c.eq(
        "(iii) exact distance min{2 d(C3), d(C1)}",
        "4".to_string(),
        eq.map(|x| x.map_or("not applicable".into(), |v| v.to_string())),
    );
    c.eq(
        "(iii) self-orthogonal by the partitioned construction",
        true,
        mpc::self_orthogonal_by_partition(&c3(), &c1(), &t, 2).map(|p| p.self_orthogonal),
    );

    // displayed codewords: columns are c_1, c_2, c_3
    let times_t = |rows: &[&[i64]]| -> Result<Vec<crate::ring::Elem>> {
        Ok(RingMatrix::from_ints(&r, rows)?.mul(&t)?.entries().to_vec())
    };
    let u = times_t(&[&[0, 0, 1], &[0, 1, 1], &[0, 1, 1], &[0, 1, 1]]);
    let v = times_t(&[&[1, 0, 1], &[0, 0, 1], &[1, 0, 1], &[0, 0, 1]]);
    let printed_u = RingMatrix::from_ints(&r, &[&[1, 1, 1], &[1, 0, 0], &[1, 0, 0], &[1, 0, 0]])
        .map(|m| m.entries().to_vec());
    let printed_v = RingMatrix::from_ints(&r, &[&[0, 1, 0], &[1, 1, 1], &[0, 1, 0], &[1, 1, 1]])
        .map(|m| m.entries().to_vec());
    c.eq("(i) first displayed product", true, Ok(u.is_ok() && u == printed_u));
    c.eq("(i) second displayed product", true, Ok(v.is_ok() && v == printed_v));
    let first = MpcSpec::new(vec![c2(), c2(), c1()], t.clone()).map(|s| s.build());
    c.eq(
        "(i) displayed words lie in the code and are not orthogonal",
        true,
        (|| {
            let (u, v, code) = (u.clone()?, v.clone()?, first.clone()?);
            Ok(code.contains(&u)? && code.contains(&v)? && inner_product(&r, &u, &v) != crate::ring::Elem::ZERO)
        })(),
    );
    let w = times_t(&[&[1, 0, 1], &[0, 1, 1], &[1, 0, 0], &[0, 1, 0]]);
    let printed_w = RingMatrix::from_ints(&r, &[&[0, 1, 0], &[1, 0, 0], &[1, 0, 1], &[0, 1, 1]])
        .map(|m| m.entries().to_vec());
    c.eq("(ii) displayed product", true, Ok(w.is_ok() && w == printed_w));
    let second = MpcSpec::new(vec![c3(), c3(), c3_prime()], t.clone()).map(|s| s.build());
    c.eq(
        "(ii) displayed word lies in the code with weight not divisible by 4",
        true,
        (|| {
            let (w, code) = (w.clone()?, second.clone()?);
            let wt = w.iter().filter(|x| x.0 != 0).count();
            Ok(code.contains(&w)? && wt % 4 != 0)
        })(),
    );
    c
}

fn ex53() -> Claims {
    let mut c = Claims(Vec::new());
    let a = a5();
    let (cp, cdp) = (g_prime(), g_double_prime());
    c.eq("A is two-way (4)-SFRR", true, is_two_way_sfrr(&a, 4));
    c.eq("A has the 4-partitioned orthogonal property", true, has_partitioned_orthogonal(&a, 4));
    c.eq("C' parameters", "[8,4,4]".to_string(), parameters(&cp));
    c.eq("C'' parameters", "[8,4,4]".to_string(), parameters(&cdp));
    c.eq("C' is Type II", true, mpc::is_type_ii(&cp));
    c.eq("C'' is Type II", true, mpc::is_type_ii(&cdp));
    c.eq("C' ∩ C'' parameters", "[8,1,8]".to_string(), cp.intersection(&cdp).and_then(|x| parameters(&x)));
    c.eq("C' + C'' parameters", "[8,7,2]".to_string(), cp.sum(&cdp).and_then(|x| parameters(&x)));
    let b = mpc::bound_thm51(&cp, &cdp, &a, 4);
    c.eq("eq53", 8, b.clone().map(|b| b.eq53));
    c.eq("eq54", 8, b.map(|b| b.eq54));
    let part = mpc::self_orthogonal_by_partition(&cp, &cdp, &a, 4);
    c.eq(
        "self-dual by the partitioned construction and |C|^2 = 2^40",
        true,
        part.clone().map(|p| p.self_dual),
    );
    let code = part.map(|p| p.code);
    c.eq("codewords enumerated", 1u128 << 20, code.clone().and_then(|x| Ok(x.words()?.len() as u128)));
    c.eq("parameters", "[40,20,8]".to_string(), code.clone().and_then(|x| parameters(&x)));
    c.eq(
        "all weights divisible by 4",
        true,
        code.clone().and_then(|x| {
            let d = x.hamming_distribution()?;
            Ok(d.iter().enumerate().all(|(w, &n)| n == 0 || w % 4 == 0))
        }),
    );
    c.eq("Type II", true, code.and_then(|x| mpc::is_type_ii(&x)));
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_example() {
        assert!(matches!(run("ex9.9"), Err(Error::UnknownExample(_))));
    }

    #[test]
    fn small_examples_pass() {
        for ex in ["ex4.1", "ex5.2"] {
            let rep = run(ex).unwrap();
            for c in &rep.claims {
                assert!(c.pass, "{ex}: {c:?}");
            }
        }
    }

    #[test]
    fn builtins_have_printed_shapes() {
        assert_eq!(g_prime().cardinality().unwrap(), 16);
        assert_eq!(a5().rows(), 5);
        assert_eq!(parameters(&c2()).unwrap(), "[4,2,2]");
    }
}
