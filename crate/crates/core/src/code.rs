//! Codes of length `n` over a ring.
//!
//! A [`Code`] is a cheap shared handle. It is linear (given by generators),
//! explicit (a list of codewords, possibly nonlinear) or a matrix product
//! `[C_1, …, C_m]·A`, which is enumerated on the fly without building the
//! whole codeword set. Materialized codeword sets and Hamming distances are
//! cached on first use.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::RingMatrix;
use crate::ring::{Elem, Ring, WeightTable};

/// Sorted, deduplicated set of words of a common length, stored flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Words {
    n: usize,
    data: Vec<Elem>,
}

impl Words {
    fn from_unsorted(n: usize, words: Vec<Vec<Elem>>) -> Words {
        let mut words = words;
        words.sort_unstable();
        words.dedup();
        Words {
            n,
            data: words.concat(),
        }
    }

    pub fn word_len(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            self.data.len() / self.n
        }
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[Elem] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Elem]> {
        self.data.chunks_exact(self.n.max(1))
    }

    pub fn contains(&self, w: &[Elem]) -> bool {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(w) {
                std::cmp::Ordering::Equal => return true,
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
            }
        }
        false
    }

    pub fn to_vecs(&self) -> Vec<Vec<Elem>> {
        self.iter().map(<[Elem]>::to_vec).collect()
    }
}

#[derive(Clone, Debug)]
pub enum CodeKind {
    Linear { generators: Vec<Vec<Elem>> },
    Explicit { codewords: Vec<Vec<Elem>> },
    /// `[C_1, …, C_m]·A`; words are the `n × l` matrices flattened row-major.
    MatrixProduct { codes: Vec<Code>, matrix: RingMatrix },
}

struct CodeInner {
    ring: Ring,
    length: usize,
    kind: CodeKind,
    words: OnceLock<Result<Arc<Words>>>,
    span_gens: OnceLock<Result<Vec<Vec<Elem>>>>,
    distances: Mutex<HashMap<Vec<u64>, u64>>,
}

#[derive(Clone)]
pub struct Code(Arc<CodeInner>);

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.0.kind {
            CodeKind::Linear { generators } => format!("linear, {} generators", generators.len()),
            CodeKind::Explicit { codewords } => format!("explicit, {} words", codewords.len()),
            CodeKind::MatrixProduct { codes, matrix } => {
                format!("product of {} codes by {}x{}", codes.len(), matrix.rows(), matrix.cols())
            }
        };
        write!(f, "Code[{}; n={}; {kind}]", self.0.ring, self.0.length)
    }
}

/// Which rows of `A` generate a row code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowCodeDirection {
    /// `U_A(k)`: rows `1..=k`.
    Prefix,
    /// `L_A(k)`: rows `k..=m`.
    Suffix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub size: u128,
    pub d_h: u64,
    pub is_free: bool,
    pub rank: Option<usize>,
    pub is_mds: bool,
}

fn check_word(ring: &Ring, n: usize, w: &[Elem]) -> Result<()> {
    if w.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: w.len(),
        });
    }
    if let Some(e) = w.iter().find(|e| e.index() >= ring.order()) {
        return Err(Error::ElementOutOfRange {
            index: e.0 as u64,
            order: ring.order(),
        });
    }
    Ok(())
}

fn cap_error(needed: u128, cap: u64) -> Error {
    Error::EnumerationCapExceeded {
        needed,
        cap: cap as u128,
    }
}

impl Code {
    fn from_kind(ring: &Ring, length: usize, kind: CodeKind) -> Code {
        Code(Arc::new(CodeInner {
            ring: ring.clone(),
            length,
            kind,
            words: OnceLock::new(),
            span_gens: OnceLock::new(),
            distances: Mutex::new(HashMap::new()),
        }))
    }

    /// The `R`-submodule generated by `generators`.
    pub fn linear(ring: &Ring, length: usize, generators: Vec<Vec<Elem>>) -> Result<Code> {
        for g in &generators {
            check_word(ring, length, g)?;
        }
        Ok(Code::from_kind(ring, length, CodeKind::Linear { generators }))
    }

    /// Alias for [`Code::linear`].
    pub fn span(ring: &Ring, length: usize, generators: Vec<Vec<Elem>>) -> Result<Code> {
        Code::linear(ring, length, generators)
    }

    pub fn explicit(ring: &Ring, length: usize, codewords: Vec<Vec<Elem>>) -> Result<Code> {
        if codewords.is_empty() {
            return Err(Error::ShapeMismatch("a code needs at least one codeword".into()));
        }
        for w in &codewords {
            check_word(ring, length, w)?;
        }
        Ok(Code::from_kind(ring, length, CodeKind::Explicit { codewords }))
    }

    /// `[C_1, …, C_m]·A`. `A` must be FRR so the map is injective.
    pub fn matrix_product(codes: Vec<Code>, matrix: RingMatrix) -> Result<Code> {
        if codes.len() != matrix.rows() {
            return Err(Error::CodeCountMismatch {
                codes: codes.len(),
                rows: matrix.rows(),
            });
        }
        let ring = matrix.ring().clone();
        let n = codes[0].length();
        for c in &codes {
            if *c.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if c.length() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: c.length(),
                });
            }
        }
        matrix.frr_certificate()?;
        let length = n * matrix.cols();
        Ok(Code::from_kind(
            &ring,
            length,
            CodeKind::MatrixProduct { codes, matrix },
        ))
    }

    pub fn zero(ring: &Ring, length: usize) -> Code {
        Code::from_kind(ring, length, CodeKind::Linear { generators: vec![] })
    }

    /// `Rⁿ`.
    pub fn full(ring: &Ring, length: usize) -> Code {
        let generators = (0..length)
            .map(|i| {
                let mut e = vec![Elem::ZERO; length];
                e[i] = ring.one();
                e
            })
            .collect();
        Code::from_kind(ring, length, CodeKind::Linear { generators })
    }

    /// Linear code whose codeword set is already known to be a submodule.
    fn from_submodule(ring: &Ring, length: usize, words: Words) -> Code {
        let generators = spanning_subset(ring, length, &words);
        let code = Code::from_kind(ring, length, CodeKind::Linear { generators });
        let _ = code.0.words.set(Ok(Arc::new(words)));
        code
    }

    /// `U_A(k)` or `L_A(k)` with the usual 1-based row numbering.
    pub fn row_code(a: &RingMatrix, k: usize, direction: RowCodeDirection) -> Result<Code> {
        let m = a.rows();
        let rows = match direction {
            RowCodeDirection::Prefix => {
                if k > m {
                    return Err(Error::IndexOutOfRange {
                        index: k,
                        min: 0,
                        max: m,
                    });
                }
                0..k
            }
            RowCodeDirection::Suffix => {
                if k < 1 || k > m + 1 {
                    return Err(Error::IndexOutOfRange {
                        index: k,
                        min: 1,
                        max: m + 1,
                    });
                }
                k - 1..m
            }
        };
        Code::linear(a.ring(), a.cols(), a.row_block(rows).row_vecs())
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn length(&self) -> usize {
        self.0.length
    }

    pub fn kind(&self) -> &CodeKind {
        &self.0.kind
    }

    pub fn is_linear(&self) -> bool {
        match &self.0.kind {
            CodeKind::Linear { .. } => true,
            CodeKind::Explicit { .. } => false,
            CodeKind::MatrixProduct { codes, .. } => codes.iter().all(Code::is_linear),
        }
    }

    /// |C| without enumerating when the structure allows it.
    pub fn cardinality(&self) -> Result<u128> {
        match &self.0.kind {
            CodeKind::MatrixProduct { codes, .. } => {
                let mut total: u128 = 1;
                for c in codes {
                    total = total.saturating_mul(c.cardinality()?);
                }
                Ok(total)
            }
            _ => Ok(self.words()?.len() as u128),
        }
    }

    /// Materialized codeword set, sorted.
    pub fn words(&self) -> Result<Arc<Words>> {
        self.0
            .words
            .get_or_init(|| self.materialize().map(Arc::new))
            .clone()
    }

    fn materialize(&self) -> Result<Words> {
        let cap = Limits::current().max_codewords;
        let n = self.0.length;
        match &self.0.kind {
            CodeKind::Linear { generators } => linear_closure(&self.0.ring, n, generators, cap),
            CodeKind::Explicit { codewords } => {
                if codewords.len() as u64 > cap {
                    return Err(cap_error(codewords.len() as u128, cap));
                }
                Ok(Words::from_unsorted(n, codewords.clone()))
            }
            CodeKind::MatrixProduct { .. } => {
                let size = self.cardinality()?;
                if size > cap as u128 {
                    return Err(cap_error(size, cap));
                }
                let words = self.fold_words(
                    Vec::new,
                    |acc: &mut Vec<Vec<Elem>>, w| acc.push(w.to_vec()),
                    |mut a, b| {
                        a.extend(b);
                        a
                    },
                )?;
                Ok(Words::from_unsorted(n, words))
            }
        }
    }

    /// Runs `step` over every codeword, splitting the work across the
    /// configured number of workers. Partial results are merged in a fixed
    /// order, so the output does not depend on the worker count when
    /// `merge` is order-insensitive or concatenating.
    pub fn fold_words<T, I, F, M>(&self, init: I, step: F, merge: M) -> Result<T>
    where
        T: Send,
        I: Fn() -> T + Sync,
        F: Fn(&mut T, &[Elem]) + Sync,
        M: Fn(T, T) -> T,
    {
        let limits = Limits::current();
        let workers = limits.workers.max(1);
        match &self.0.kind {
            CodeKind::MatrixProduct { codes, matrix } => {
                let size = self.cardinality()?;
                if size > limits.max_codewords as u128 {
                    return Err(cap_error(size, limits.max_codewords));
                }
                let tables = product_tables(codes, matrix)?;
                let first = tables[0].len();
                let chunks = split_range(first, workers);
                let parts: Vec<T> = std::thread::scope(|s| {
                    let handles: Vec<_> = chunks
                        .into_iter()
                        .map(|range| {
                            let tables = &tables;
                            let (init, step) = (&init, &step);
                            s.spawn(move || {
                                let mut acc = init();
                                odometer(&self.0.ring, tables, range, |w| step(&mut acc, w));
                                acc
                            })
                        })
                        .collect();
                    handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
                });
                Ok(parts.into_iter().reduce(&merge).unwrap_or_else(&init))
            }
            _ => {
                let words = self.words()?;
                let chunks = split_range(words.len(), workers);
                let parts: Vec<T> = std::thread::scope(|s| {
                    let handles: Vec<_> = chunks
                        .into_iter()
                        .map(|range| {
                            let words = &words;
                            let (init, step) = (&init, &step);
                            s.spawn(move || {
                                let mut acc = init();
                                for i in range {
                                    step(&mut acc, words.get(i));
                                }
                                acc
                            })
                        })
                        .collect();
                    handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
                });
                Ok(parts.into_iter().reduce(&merge).unwrap_or_else(&init))
            }
        }
    }

    /// Generators of the linear span of `C`.
    pub fn span_generators(&self) -> Result<Vec<Vec<Elem>>> {
        self.0
            .span_gens
            .get_or_init(|| match &self.0.kind {
                CodeKind::Linear { generators } => Ok(generators.clone()),
                CodeKind::Explicit { .. } => {
                    let words = self.words()?;
                    Ok(spanning_subset(&self.0.ring, self.0.length, &words))
                }
                CodeKind::MatrixProduct { codes, matrix } => {
                    let r = &self.0.ring;
                    let mut out = Vec::new();
                    for (j, c) in codes.iter().enumerate() {
                        for g in c.span_generators()? {
                            out.push(tensor(r, &g, matrix.row(j)));
                        }
                    }
                    Ok(out)
                }
            })
            .clone()
    }

    /// The linear span of `C` as a code (itself when already linear).
    pub fn linear_span(&self) -> Result<Code> {
        if self.is_linear() {
            return Ok(self.clone());
        }
        Code::linear(&self.0.ring, self.0.length, self.span_generators()?)
    }

    pub fn contains(&self, w: &[Elem]) -> Result<bool> {
        Ok(self.words()?.contains(w))
    }

    /// `self ⊆ other` as codeword sets.
    pub fn is_subset_of(&self, other: &Code) -> Result<bool> {
        self.check_compatible(other)?;
        if self.is_linear() && other.is_linear() {
            let gens = self.span_generators()?;
            let ow = other.words()?;
            return Ok(gens.iter().all(|g| ow.contains(g)));
        }
        let ow = other.words()?;
        Ok(self.words()?.iter().all(|w| ow.contains(w)))
    }

    pub fn same_words(&self, other: &Code) -> Result<bool> {
        self.check_compatible(other)?;
        if self.cardinality()? != other.cardinality()? {
            return Ok(false);
        }
        self.is_subset_of(other)
    }

    fn check_compatible(&self, other: &Code) -> Result<()> {
        if self.0.ring != other.0.ring {
            return Err(Error::RingMismatch);
        }
        if self.0.length != other.0.length {
            return Err(Error::LengthMismatch {
                expected: self.0.length,
                got: other.0.length,
            });
        }
        Ok(())
    }

    pub fn min_distance_hamming(&self) -> Result<u64> {
        self.min_distance(&WeightTable::hamming(&self.0.ring))
    }

    /// `d_w(C)`: minimum nonzero weight for linear codes, otherwise the
    /// minimum of `w(c − c′)` over ordered pairs of distinct codewords.
    /// The zero code and singletons get `n + 1`.
    pub fn min_distance(&self, w: &WeightTable) -> Result<u64> {
        if *w.ring() != self.0.ring {
            return Err(Error::RingMismatch);
        }
        let key = w.weights().to_vec();
        if let Some(&d) = self.0.distances.lock().expect("lock").get(&key) {
            return Ok(d);
        }
        let none = self.0.length as u64 + 1;
        let d = if self.is_linear() {
            self.fold_words(
                || None,
                |best: &mut Option<u64>, word| {
                    let wt = w.word_weight(word);
                    if wt > 0 && best.is_none_or(|b| wt < b) {
                        *best = Some(wt);
                    }
                },
                |a, b| match (a, b) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                },
            )?
            .unwrap_or(none)
        } else {
            let words = self.words()?;
            let r = &self.0.ring;
            let mut best: Option<u64> = None;
            let mut diff = vec![Elem::ZERO; self.0.length];
            for a in words.iter() {
                for b in words.iter() {
                    if a == b {
                        continue;
                    }
                    for ((d, &x), &y) in diff.iter_mut().zip(a).zip(b) {
                        *d = r.sub(x, y);
                    }
                    let wt = w.word_weight(&diff);
                    best = Some(best.map_or(wt, |b| b.min(wt)));
                }
            }
            best.unwrap_or(none)
        };
        self.0.distances.lock().expect("lock").insert(key, d);
        Ok(d)
    }

    /// Weight distribution under Hamming weight, index = weight.
    pub fn hamming_distribution(&self) -> Result<Vec<u64>> {
        let n = self.0.length;
        self.fold_words(
            || vec![0u64; n + 1],
            |hist, word| hist[word.iter().filter(|&&e| e != Elem::ZERO).count()] += 1,
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
    }

    /// `C⊥` under the standard inner product; nonlinear codes are
    /// dualized through their linear span.
    pub fn dual(&self) -> Result<Code> {
        let r = &self.0.ring;
        let n = self.0.length;
        let limits = Limits::current();
        let ambient = (r.order() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if ambient > limits.max_ambient as u128 {
            return Err(cap_error(ambient, limits.max_ambient));
        }
        let gens = self.span_generators()?;
        let words = orthogonal_words(r, n, &gens);
        Ok(Code::from_submodule(r, n, Words::from_unsorted(n, words)))
    }

    /// `|C| = |R|^{n−d+1}`, or the zero code.
    pub fn is_mds(&self) -> Result<bool> {
        let size = self.cardinality()?;
        if size == 1 {
            return Ok(true);
        }
        let d = self.min_distance_hamming()?;
        let n = self.0.length as u64;
        if d > n {
            return Ok(false);
        }
        let q = self.0.ring.order() as u128;
        Ok(q.checked_pow((n - d + 1) as u32) == Some(size))
    }

    /// Exact form of `d ≤ n − log_|R| |C| + 1`: `|C|·|R|^{d−1} ≤ |R|ⁿ`.
    pub fn satisfies_singleton(&self) -> Result<bool> {
        let size = self.cardinality()?;
        if size == 1 {
            return Ok(true);
        }
        let d = self.min_distance_hamming()?;
        let q = self.0.ring.order() as u128;
        let lhs = q
            .checked_pow(d.saturating_sub(1) as u32)
            .and_then(|x| x.checked_mul(size));
        let rhs = q.checked_pow(self.0.length as u32);
        Ok(match (lhs, rhs) {
            (Some(l), Some(r)) => l <= r,
            (None, Some(_)) => false,
            (_, None) => true,
        })
    }

    /// Rank if `C` is a free module, with a basis as witness.
    pub fn free_basis(&self) -> Result<Option<Vec<Vec<Elem>>>> {
        if !self.is_linear() {
            return Ok(None);
        }
        let r = &self.0.ring;
        let n = self.0.length;
        let gens = self.span_generators()?;
        let mut per_component = Vec::new();
        for k in 0..r.num_components() {
            let (cr, _) = r.component(k)?;
            let pg: Vec<Vec<Elem>> = gens
                .iter()
                .map(|g| g.iter().map(|&x| r.project(x, k).expect("in range")).collect())
                .collect();
            let comp = Code::linear(&cr, n, pg.clone())?;
            let chosen = local_minimal_generators(&cr, n, &pg)?;
            let size = comp.cardinality()?;
            let q = cr.order() as u128;
            if q.checked_pow(chosen.len() as u32) != Some(size) {
                return Ok(None);
            }
            per_component.push(chosen);
        }
        let rank = per_component[0].len();
        if per_component.iter().any(|c| c.len() != rank) {
            return Ok(None);
        }
        let basis: Vec<Vec<Elem>> = (0..rank)
            .map(|i| {
                (0..n)
                    .map(|c| {
                        let xs: Vec<Elem> = per_component.iter().map(|b| b[i][c]).collect();
                        r.lift_all(&xs)
                    })
                    .collect()
            })
            .collect();
        if rank > 0 && !RingMatrix::from_rows(r, &basis)?.is_frr() {
            return Err(Error::Inconsistent("free basis is not FRR".into()));
        }
        Ok(Some(basis))
    }

    pub fn is_free(&self) -> Result<bool> {
        Ok(self.free_basis()?.is_some())
    }

    pub fn params(&self) -> Result<CodeParams> {
        let basis = self.free_basis()?;
        Ok(CodeParams {
            n: self.0.length,
            size: self.cardinality()?,
            d_h: self.min_distance_hamming()?,
            is_free: basis.is_some(),
            rank: basis.map(|b| b.len()),
            is_mds: self.is_mds()?,
        })
    }

    /// `C + D` of the linear spans.
    pub fn sum(&self, other: &Code) -> Result<Code> {
        self.check_compatible(other)?;
        let mut gens = self.span_generators()?;
        gens.extend(other.span_generators()?);
        Code::linear(&self.0.ring, self.0.length, gens)
    }

    /// `C ∩ D` of the linear spans.
    pub fn intersection(&self, other: &Code) -> Result<Code> {
        self.check_compatible(other)?;
        let a = self.linear_span()?.words()?;
        let b = other.linear_span()?.words()?;
        let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let common: Vec<Vec<Elem>> = small
            .iter()
            .filter(|w| big.contains(w))
            .map(<[Elem]>::to_vec)
            .collect();
        let n = self.0.length;
        Ok(Code::from_submodule(&self.0.ring, n, Words::from_unsorted(n, common)))
    }

    /// Every pair of codewords is orthogonal. Linear codes only need the
    /// generators checked.
    pub fn is_self_orthogonal(&self) -> Result<bool> {
        let r = &self.0.ring;
        let gens = self.span_generators()?;
        Ok(gens
            .iter()
            .all(|a| gens.iter().all(|b| inner_product(r, a, b) == Elem::ZERO)))
    }

    pub fn is_self_dual(&self) -> Result<bool> {
        if !self.is_linear() || !self.is_self_orthogonal()? {
            return Ok(false);
        }
        let q = self.0.ring.order() as u128;
        let size = self.cardinality()?;
        Ok(size
            .checked_mul(size)
            .is_some_and(|s2| Some(s2) == q.checked_pow(self.0.length as u32)))
    }
}

/// `Σ u_i v_i`.
pub fn inner_product(ring: &Ring, u: &[Elem], v: &[Elem]) -> Elem {
    u.iter()
        .zip(v)
        .fold(Elem::ZERO, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)))
}

/// `tr(u vᵀ)` for equal-shape matrices.
pub fn matrix_inner_product(u: &RingMatrix, v: &RingMatrix) -> Result<Elem> {
    if (u.rows(), u.cols()) != (v.rows(), v.cols()) {
        return Err(Error::ShapeMismatch("inner product of different shapes".into()));
    }
    Ok(inner_product(u.ring(), u.entries(), v.entries()))
}

/// `c ⊗ a`: the `n × l` matrix with entry `(r, s) = c_r a_s`, row-major.
fn tensor(ring: &Ring, c: &[Elem], a: &[Elem]) -> Vec<Elem> {
    let mut out = Vec::with_capacity(c.len() * a.len());
    for &x in c {
        for &y in a {
            out.push(ring.mul(x, y));
        }
    }
    out
}

/// For each component code, the contribution `c ⊗ A_j` of each codeword.
fn product_tables(codes: &[Code], matrix: &RingMatrix) -> Result<Vec<Vec<Vec<Elem>>>> {
    let r = matrix.ring();
    codes
        .iter()
        .enumerate()
        .map(|(j, c)| {
            Ok(c.words()?
                .iter()
                .map(|w| tensor(r, w, matrix.row(j)))
                .collect())
        })
        .collect()
}

/// Walks every digit tuple with the first digit in `first`, keeping the
/// partial sums of all earlier digits so each step only redoes the tail.
fn odometer(
    ring: &Ring,
    tables: &[Vec<Vec<Elem>>],
    first: std::ops::Range<usize>,
    mut visit: impl FnMut(&[Elem]),
) {
    if first.is_empty() {
        return;
    }
    let m = tables.len();
    let len = tables[0][0].len();
    let mut digits = vec![0usize; m];
    digits[0] = first.start;
    // partial[j] = Σ_{i ≤ j} tables[i][digits[i]]
    let mut partial = vec![vec![Elem::ZERO; len]; m];
    let recompute = |partial: &mut Vec<Vec<Elem>>, digits: &[usize], from: usize| {
        for j in from..m {
            let (before, rest) = partial.split_at_mut(j);
            let row = &tables[j][digits[j]];
            if j == 0 {
                rest[0].copy_from_slice(row);
            } else {
                for ((p, &a), &b) in rest[0].iter_mut().zip(&before[j - 1]).zip(row) {
                    *p = ring.add(a, b);
                }
            }
        }
    };
    recompute(&mut partial, &digits, 0);
    loop {
        visit(&partial[m - 1]);
        let mut j = m - 1;
        loop {
            digits[j] += 1;
            let limit = if j == 0 { first.end } else { tables[j].len() };
            if digits[j] < limit {
                break;
            }
            if j == 0 {
                return;
            }
            digits[j] = 0;
            j -= 1;
        }
        recompute(&mut partial, &digits, j);
    }
}

fn split_range(len: usize, parts: usize) -> Vec<std::ops::Range<usize>> {
    let parts = parts.clamp(1, len.max(1));
    let base = len / parts;
    let extra = len % parts;
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for i in 0..parts {
        let size = base + usize::from(i < extra);
        out.push(start..start + size);
        start += size;
    }
    out
}

/// The submodule generated by `gens`, built as `S ← S + R·g` one generator
/// at a time.
fn linear_closure(ring: &Ring, n: usize, gens: &[Vec<Elem>], cap: u64) -> Result<Words> {
    let mut set: HashSet<Vec<Elem>> = HashSet::new();
    set.insert(vec![Elem::ZERO; n]);
    for g in gens {
        let multiples: Vec<Vec<Elem>> = {
            let mut ms: Vec<Vec<Elem>> = ring
                .elements()
                .map(|s| g.iter().map(|&x| ring.mul(s, x)).collect())
                .collect();
            ms.sort_unstable();
            ms.dedup();
            ms
        };
        if multiples.len() == 1 || set.contains(g) && multiples.iter().all(|m| set.contains(m)) {
            continue;
        }
        let mut next: HashSet<Vec<Elem>> = HashSet::with_capacity(set.len() * multiples.len());
        for s in &set {
            for mg in &multiples {
                let w: Vec<Elem> = s.iter().zip(mg).map(|(&a, &b)| ring.add(a, b)).collect();
                next.insert(w);
            }
            if next.len() as u64 > cap {
                return Err(cap_error(
                    (set.len() as u128).saturating_mul(multiples.len() as u128),
                    cap,
                ));
            }
        }
        set = next;
    }
    Ok(Words::from_unsorted(n, set.into_iter().collect()))
}

/// A small generating subset of a submodule's words, chosen greedily in
/// sorted order.
fn spanning_subset(ring: &Ring, n: usize, words: &Words) -> Vec<Vec<Elem>> {
    let mut chosen: Vec<Vec<Elem>> = Vec::new();
    let mut current = linear_closure(ring, n, &[], u64::MAX).expect("uncapped");
    for w in words.iter() {
        if !current.contains(w) {
            chosen.push(w.to_vec());
            current = linear_closure(ring, n, &chosen, u64::MAX).expect("uncapped");
        }
    }
    chosen
}

/// Over a local ring, generators whose images in `C/JC` are independent.
fn local_minimal_generators(ring: &Ring, n: usize, gens: &[Vec<Elem>]) -> Result<Vec<Vec<Elem>>> {
    let cap = Limits::current().max_codewords;
    let jgens: Vec<Vec<Elem>> = ring
        .elements()
        .filter(|&x| !ring.is_unit(x) && x != Elem::ZERO)
        .flat_map(|j| {
            gens.iter()
                .map(move |g| g.iter().map(|&x| ring.mul(j, x)).collect::<Vec<_>>())
        })
        .collect();
    let mut chosen = Vec::new();
    let mut acc = jgens.clone();
    let mut current = linear_closure(ring, n, &acc, cap)?;
    for g in gens {
        if !current.contains(g) {
            chosen.push(g.clone());
            acc.push(g.clone());
            current = linear_closure(ring, n, &acc, cap)?;
        }
    }
    Ok(chosen)
}

/// All `x` with `⟨x, h⟩ = 0` for every `h`, by depth-first search over
/// coordinates. A constraint is checked as soon as its last nonzero
/// coordinate has been assigned.
fn orthogonal_words(ring: &Ring, n: usize, gens: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let gens: Vec<&Vec<Elem>> = gens.iter().filter(|g| g.iter().any(|&x| x != Elem::ZERO)).collect();
    // closes_at[i]: constraints whose last nonzero coordinate is i
    let mut closes_at = vec![Vec::new(); n];
    for (h, g) in gens.iter().enumerate() {
        let last = g.iter().rposition(|&x| x != Elem::ZERO).expect("nonzero");
        closes_at[last].push(h);
    }
    let mut out = Vec::new();
    let mut x = vec![Elem::ZERO; n];
    let mut sums = vec![vec![Elem::ZERO; gens.len()]; n + 1];
    fn go(
        ring: &Ring,
        gens: &[&Vec<Elem>],
        closes_at: &[Vec<usize>],
        pos: usize,
        x: &mut Vec<Elem>,
        sums: &mut Vec<Vec<Elem>>,
        out: &mut Vec<Vec<Elem>>,
    ) {
        let n = x.len();
        if pos == n {
            out.push(x.clone());
            return;
        }
        for v in ring.elements() {
            x[pos] = v;
            let (done, rest) = sums.split_at_mut(pos + 1);
            let prev = &done[pos];
            let next = &mut rest[0];
            for (h, g) in gens.iter().enumerate() {
                next[h] = ring.add(prev[h], ring.mul(v, g[pos]));
            }
            if closes_at[pos].iter().all(|&h| next[h] == Elem::ZERO) {
                go(ring, gens, closes_at, pos + 1, x, sums, out);
            }
        }
    }
    go(ring, &gens, &closes_at, 0, &mut x, &mut sums, &mut out);
    out
}
