//! Exhaustive search of `M_{m×l}(R)` for matrices with a given property.

use std::fmt;
use std::str::FromStr;

use crate::classify::{is_nsc, is_quasi_orthogonal, is_two_way_sfrr};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::RingMatrix;
use crate::ring::{Elem, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    TwoWaySfrr(usize),
    QuasiOrthogonal,
    Nsc,
}

impl Predicate {
    pub fn holds(&self, a: &RingMatrix) -> Result<bool> {
        match *self {
            Predicate::TwoWaySfrr(m1) => is_two_way_sfrr(a, m1),
            Predicate::QuasiOrthogonal => Ok(is_quasi_orthogonal(a)),
            Predicate::Nsc => is_nsc(a),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::TwoWaySfrr(m1) => write!(f, "two-way={m1}"),
            Predicate::QuasiOrthogonal => write!(f, "qo"),
            Predicate::Nsc => write!(f, "nsc"),
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    /// `two-way=<m′>`, `qo` or `nsc`.
    fn from_str(s: &str) -> Result<Predicate> {
        if let Some(rest) = s.strip_prefix("two-way=") {
            let m1 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad split in {s:?}")))?;
            return Ok(Predicate::TwoWaySfrr(m1));
        }
        match s {
            "qo" => Ok(Predicate::QuasiOrthogonal),
            "nsc" => Ok(Predicate::Nsc),
            _ => Err(Error::Parse(format!("unknown search predicate {s:?}"))),
        }
    }
}

/// `|R|^{ml}`, if it fits.
pub fn space_size(ring: &Ring, rows: usize, cols: usize) -> Option<u128> {
    (ring.order() as u128).checked_pow((rows * cols) as u32)
}

/// The `index`-th matrix in lexicographic order of row-major entry indices.
pub fn nth_matrix(ring: &Ring, rows: usize, cols: usize, mut index: u128) -> RingMatrix {
    let q = ring.order() as u128;
    let mut data = vec![Elem::ZERO; rows * cols];
    for slot in data.iter_mut().rev() {
        *slot = Elem((index % q) as u8);
        index /= q;
    }
    RingMatrix::new(ring, rows, cols, data).expect("entries in range")
}

/// Every `rows × cols` matrix satisfying `pred`, in lexicographic order.
/// The result does not depend on the worker count.
pub fn search(ring: &Ring, rows: usize, cols: usize, pred: Predicate) -> Result<Vec<RingMatrix>> {
    let limits = Limits::current();
    if let Predicate::TwoWaySfrr(m1) = pred {
        if m1 < 1 || m1 >= rows {
            return Err(Error::BadProfile(format!(
                "two-way split needs 1 <= m' < {rows}, got {m1}"
            )));
        }
    }
    let total = space_size(ring, rows, cols).unwrap_or(u128::MAX);
    if total > limits.max_search as u128 {
        return Err(Error::SearchSpaceTooLarge(total));
    }
    let workers = limits.workers.max(1) as u128;
    let chunk = total.div_ceil(workers).max(1);
    let scan = |start: u128, end: u128| -> Result<Vec<RingMatrix>> {
        let mut found = Vec::new();
        for i in start..end {
            let a = nth_matrix(ring, rows, cols, i);
            if pred.holds(&a)? {
                found.push(a);
            }
        }
        Ok(found)
    };
    if workers == 1 {
        return scan(0, total);
    }
    let parts: Vec<Result<Vec<RingMatrix>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let start = (w * chunk).min(total);
                let end = ((w + 1) * chunk).min(total);
                let scan = &scan;
                s.spawn(move || scan(start, end))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Matrices found by a search, grouped up to column permutations and the
/// row permutations that keep the predicate: within each block of a
/// two-way split, all rows for quasi-orthogonality, none for NSC.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixClass {
    /// Lexicographically least member.
    pub representative: RingMatrix,
    pub members: Vec<RingMatrix>,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn row_orders(pred: Predicate, m: usize) -> Vec<Vec<usize>> {
    let blocks: Vec<Vec<usize>> = match pred {
        Predicate::TwoWaySfrr(m1) => vec![(0..m1).collect(), (m1..m).collect()],
        Predicate::QuasiOrthogonal => vec![(0..m).collect()],
        Predicate::Nsc => (0..m).map(|i| vec![i]).collect(),
    };
    let mut orders = vec![Vec::new()];
    for b in &blocks {
        let mut next = Vec::new();
        for o in &orders {
            for p in permutations(b) {
                let mut o = o.clone();
                o.extend(p);
                next.push(o);
            }
        }
        orders = next;
    }
    orders
}

fn key(a: &RingMatrix) -> Vec<u8> {
    a.entries().iter().map(|e| e.0).collect()
}

/// Least matrix reachable by the allowed row and column permutations.
pub fn canonical_form(a: &RingMatrix, pred: Predicate) -> RingMatrix {
    let cols: Vec<usize> = (0..a.cols()).collect();
    let col_orders = permutations(&cols);
    let mut best: Option<RingMatrix> = None;
    for rows in row_orders(pred, a.rows()) {
        for c in &col_orders {
            let b = a.submatrix(&rows, c);
            if best.as_ref().is_none_or(|x| key(&b) < key(x)) {
                best = Some(b);
            }
        }
    }
    best.expect("at least the identity permutation")
}

/// Groups search output into classes, ordered by representative.
pub fn classes(found: &[RingMatrix], pred: Predicate) -> Vec<MatrixClass> {
    let mut map: std::collections::BTreeMap<Vec<u8>, MatrixClass> = Default::default();
    for a in found {
        let rep = canonical_form(a, pred);
        map.entry(key(&rep))
            .or_insert_with(|| MatrixClass {
                representative: rep,
                members: Vec::new(),
            })
            .members
            .push(a.clone());
    }
    map.into_values().collect()
}
