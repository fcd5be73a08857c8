//! Matrix product codes `[C_1, …, C_m]·A`: construction, duals, distance
//! bounds and self-duality.
//!
//! Distances of the zero code follow the convention `d(0) = n + 1`. In the
//! lower bounds that value is used as is. Equality formulas and the upper
//! bound of the two-code construction skip terms coming from a zero
//! component, since no codeword realizes them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classify::{
    find_profiles, has_partitioned_orthogonal, is_nsc, is_quasi_orthogonal, is_two_way_sfrr,
    require_sfrr, Direction, SfrrProfile,
};
use crate::code::{inner_product, Code, CodeKind, RowCodeDirection};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::RingMatrix;
use crate::ring::{Elem, Ring, WeightTable};

/// Component codes and an FRR matrix.
#[derive(Clone, Debug)]
pub struct MpcSpec {
    codes: Vec<Code>,
    matrix: RingMatrix,
    code: Code,
}

impl MpcSpec {
    pub fn new(codes: Vec<Code>, matrix: RingMatrix) -> Result<MpcSpec> {
        if codes.is_empty() {
            return Err(Error::CodeCountMismatch {
                codes: 0,
                rows: matrix.rows(),
            });
        }
        let code = Code::matrix_product(codes.clone(), matrix.clone())?;
        Ok(MpcSpec {
            codes,
            matrix,
            code,
        })
    }

    pub fn codes(&self) -> &[Code] {
        &self.codes
    }

    pub fn matrix(&self) -> &RingMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> &Ring {
        self.matrix.ring()
    }

    /// Number of component codes.
    pub fn m(&self) -> usize {
        self.matrix.rows()
    }

    pub fn l(&self) -> usize {
        self.matrix.cols()
    }

    /// Length of the component codes.
    pub fn n(&self) -> usize {
        self.codes[0].length()
    }

    /// The product code. Enumeration is lazy.
    pub fn build(&self) -> Code {
        self.code.clone()
    }

    fn product_is_zero(&self) -> Result<bool> {
        Ok(self.code.cardinality()? == 1)
    }

    fn zero_product_distance(&self) -> u64 {
        (self.n() * self.l()) as u64 + 1
    }
}

pub fn build(spec: &MpcSpec) -> Code {
    spec.build()
}

/// `C⊥ = [C_1⊥, …, C_m⊥]Bᵀ + M_{n×(l−m)}(R)·G`, with `B` the right inverse
/// and `G` the kernel basis of the FRR certificate. The two summands meet
/// only in 0, so the sum is enumerated as the single product
/// `[C_1⊥, …, C_m⊥, Rⁿ, …, Rⁿ]·(Bᵀ over G)`.
pub fn dual_mpc(spec: &MpcSpec) -> Result<Code> {
    let cert = spec.matrix.frr_certificate()?;
    let stacked = cert.right_inverse.transpose().vstack(&cert.kernel_basis)?;
    let mut codes = Vec::with_capacity(spec.l());
    for c in &spec.codes {
        codes.push(c.dual()?);
    }
    for _ in spec.m()..spec.l() {
        codes.push(Code::full(spec.ring(), spec.n()));
    }
    Code::matrix_product(codes, stacked)
}

/// `C⊥ = [C_1⊥, …, C_m⊥]A + M_{n×(l−m)}(R)·G` for quasi-orthogonal `A` and
/// self-orthogonal linear components.
pub fn dual_quasi_orthogonal(spec: &MpcSpec) -> Result<Code> {
    if !is_quasi_orthogonal(&spec.matrix) {
        return Err(Error::NotQuasiOrthogonal);
    }
    for (j, c) in spec.codes.iter().enumerate() {
        if !c.is_linear() {
            return Err(Error::NonLinearComponent(j + 1));
        }
        if !c.is_self_orthogonal()? {
            return Err(Error::NotSelfOrthogonalComponent(j + 1));
        }
    }
    let g = spec.matrix.kernel_basis()?;
    let stacked = spec.matrix.vstack(&g)?;
    let mut codes = Vec::with_capacity(spec.l());
    for c in &spec.codes {
        codes.push(c.dual()?);
    }
    for _ in spec.m()..spec.l() {
        codes.push(Code::full(spec.ring(), spec.n()));
    }
    Code::matrix_product(codes, stacked)
}

fn row_direction(d: Direction) -> RowCodeDirection {
    match d {
        Direction::Forward => RowCodeDirection::Prefix,
        Direction::Reverse => RowCodeDirection::Suffix,
    }
}

fn times(a: u64, b: u64) -> u64 {
    a.saturating_mul(b)
}

/// `min_k d_H(C_k)·d_w(U_A(k))` (forward) or `min_k d_H(C_k)·d_w(L_A(k))`
/// (reverse), a lower bound on `d_w(C)`.
pub fn bound_thm31(spec: &MpcSpec, w: &WeightTable, side: Direction) -> Result<u64> {
    if w.ring() != spec.ring() {
        return Err(Error::RingMismatch);
    }
    if spec.product_is_zero()? {
        return Ok(spec.zero_product_distance());
    }
    let mut best = u64::MAX;
    for (k, c) in spec.codes.iter().enumerate() {
        let row = Code::row_code(&spec.matrix, k + 1, row_direction(side))?;
        best = best.min(times(c.min_distance_hamming()?, row.min_distance(w)?));
    }
    Ok(best)
}

/// Lower bound from an SFRR profile: for a forward profile
/// `min (l − i_h + 1)·d_H(C_k)` over `i_{h−1} < k ≤ i_h`; for a reverse
/// profile `min (l − m + i_h)·d_H(C_k)` over `i_h ≤ k < i_{h+1}`.
pub fn bound_thm45(spec: &MpcSpec, profile: &SfrrProfile) -> Result<u64> {
    require_sfrr(&spec.matrix, profile)?;
    if spec.product_is_zero()? {
        return Ok(spec.zero_product_distance());
    }
    let (l, m) = (spec.l() as u64, spec.m() as u64);
    let idx = &profile.indices;
    let mut best = u64::MAX;
    for h in 1..idx.len() {
        // 1-based code numbers covered by step h and its coefficient
        let (ks, coeff) = match profile.direction {
            Direction::Forward => (idx[h - 1] + 1..idx[h] + 1, l - idx[h] as u64 + 1),
            Direction::Reverse => (idx[h - 1]..idx[h], l - m + idx[h - 1] as u64),
        };
        for k in ks {
            best = best.min(times(coeff, spec.codes[k - 1].min_distance_hamming()?));
        }
    }
    Ok(best)
}

/// Minimum over `(coefficient, code)` terms, skipping zero codes; an empty
/// minimum means the code being measured is zero.
fn exact_min(terms: &[(u64, &Code)], zero_distance: u64) -> Result<u64> {
    let mut best: Option<u64> = None;
    for (coeff, c) in terms {
        if c.cardinality()? == 1 {
            continue;
        }
        let v = times(*coeff, c.min_distance_hamming()?);
        best = Some(best.map_or(v, |b: u64| b.min(v)));
    }
    Ok(best.unwrap_or(zero_distance))
}

fn all_same(codes: &[Code]) -> Result<bool> {
    for w in codes.windows(2) {
        if !w[0].same_words(&w[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Why the equality conditions fail for this profile, if they do.
fn equality_obstruction(codes: &[Code], profile: &SfrrProfile) -> Result<Option<String>> {
    if let Some(j) = codes.iter().position(|c| !c.is_linear()) {
        return Ok(Some(format!("C_{} is not linear", j + 1)));
    }
    let idx = &profile.indices;
    // blocks as 0-based ranges of code positions
    let blocks: Vec<std::ops::Range<usize>> = (1..idx.len())
        .map(|h| match profile.direction {
            Direction::Forward => idx[h - 1]..idx[h],
            Direction::Reverse => idx[h - 1] - 1..idx[h] - 1,
        })
        .collect();
    for b in &blocks {
        if !all_same(&codes[b.clone()])? {
            return Ok(Some(format!(
                "codes C_{}..C_{} are not all equal",
                b.start + 1,
                b.end
            )));
        }
    }
    for w in blocks.windows(2) {
        let (prev, next) = (&codes[w[0].start], &codes[w[1].start]);
        let nested = match profile.direction {
            Direction::Forward => next.is_subset_of(prev)?,
            Direction::Reverse => prev.is_subset_of(next)?,
        };
        if !nested {
            return Ok(Some(format!(
                "C_{} and C_{} are not nested",
                w[0].start + 1,
                w[1].start + 1
            )));
        }
    }
    Ok(None)
}

/// Exact `d_H(C)` when the components are linear, constant on the profile's
/// blocks and nested (decreasing for forward, increasing for reverse
/// profiles). `None` when those conditions fail.
pub fn equality_thm45(spec: &MpcSpec, profile: &SfrrProfile) -> Result<Option<u64>> {
    require_sfrr(&spec.matrix, profile)?;
    if equality_obstruction(&spec.codes, profile)?.is_some() {
        return Ok(None);
    }
    let (l, m) = (spec.l() as u64, spec.m() as u64);
    let idx = &profile.indices;
    let terms: Vec<(u64, &Code)> = match profile.direction {
        Direction::Forward => (1..idx.len())
            .map(|h| (l - idx[h] as u64 + 1, &spec.codes[idx[h] - 1]))
            .collect(),
        Direction::Reverse => (0..idx.len() - 1)
            .map(|h| (l - m + idx[h] as u64, &spec.codes[idx[h] - 1]))
            .collect(),
    };
    exact_min(&terms, spec.zero_product_distance()).map(Some)
}

fn component_duals(spec: &MpcSpec) -> Result<Vec<Code>> {
    spec.codes.iter().map(Code::dual).collect()
}

fn dual_is_zero(spec: &MpcSpec) -> Result<bool> {
    if spec.m() < spec.l() {
        return Ok(false);
    }
    let q = spec.ring().order() as u128;
    let full = q.checked_pow((spec.n() * spec.l()) as u32);
    Ok(full.is_some() && Some(spec.code.cardinality()?) == full)
}

/// Lower bound on `d_H(C⊥)` from a forward profile:
/// `min (i_h + 1)·d_H(C_k⊥)` over `i_h < k ≤ i_{h+1}`, with `i_{t+1} = l`.
/// The terms with `k > m` contribute `m + 1` and exist only when `m < l`.
pub fn bound_thm47(spec: &MpcSpec, profile: &SfrrProfile) -> Result<u64> {
    if profile.direction != Direction::Forward {
        return Err(Error::BadProfile("expected a forward profile".into()));
    }
    require_sfrr(&spec.matrix, profile)?;
    if dual_is_zero(spec)? {
        return Ok(spec.zero_product_distance());
    }
    let duals = component_duals(spec)?;
    let (m, l) = (spec.m(), spec.l());
    let idx = &profile.indices;
    let mut best = u64::MAX;
    for h in 0..idx.len() - 1 {
        let coeff = idx[h] as u64 + 1;
        for k in idx[h] + 1..=idx[h + 1] {
            best = best.min(times(coeff, duals[k - 1].min_distance_hamming()?));
        }
    }
    if m < l {
        best = best.min(m as u64 + 1);
    }
    Ok(best)
}

/// Exact `d_H(C⊥) = min (i_h + 1)·d_H(C_{i_{h+1}}⊥)`, plus the term `m + 1`
/// when `m < l`, under the same conditions as [`equality_thm45`].
pub fn equality_thm47(spec: &MpcSpec, profile: &SfrrProfile) -> Result<Option<u64>> {
    if profile.direction != Direction::Forward {
        return Err(Error::BadProfile("expected a forward profile".into()));
    }
    require_sfrr(&spec.matrix, profile)?;
    if equality_obstruction(&spec.codes, profile)?.is_some() {
        return Ok(None);
    }
    let duals = component_duals(spec)?;
    let idx = &profile.indices;
    let terms: Vec<(u64, &Code)> = (0..idx.len() - 1)
        .map(|h| (idx[h] as u64 + 1, &duals[idx[h + 1] - 1]))
        .collect();
    let mut v = exact_min(&terms, u64::MAX)?;
    if spec.m() < spec.l() {
        v = v.min(spec.m() as u64 + 1);
    }
    if v == u64::MAX {
        v = spec.zero_product_distance();
    }
    Ok(Some(v))
}

/// Both bounds for a matrix non-singular by columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cor48Bounds {
    /// `min (l − k + 1)·d_H(C_k)`.
    pub primal: u64,
    /// `min k·d_H(C_k⊥)`, and `m + 1` when `m < l`.
    pub dual: u64,
    /// Components linear and nested decreasing: both values are exact.
    pub exact: bool,
}

pub fn bound_cor48(spec: &MpcSpec) -> Result<Cor48Bounds> {
    if !is_nsc(&spec.matrix)? {
        return Err(Error::NotNsc);
    }
    let (m, l) = (spec.m(), spec.l());
    let every: Vec<usize> = (1..m).collect();
    let profile = SfrrProfile::forward(m, &every)?;
    let primal = bound_thm45(spec, &profile)?;
    let dual = bound_thm47(spec, &profile)?;
    let mut exact = spec.codes.iter().all(Code::is_linear);
    for w in spec.codes.windows(2) {
        if !exact {
            break;
        }
        exact = w[1].is_subset_of(&w[0])?;
    }
    let (primal, dual) = if exact {
        (
            equality_thm45(spec, &profile)?.unwrap_or(primal),
            equality_thm47(spec, &profile)?.unwrap_or(dual),
        )
    } else {
        (primal, dual)
    };
    debug_assert!(m <= l);
    Ok(Cor48Bounds {
        primal,
        dual,
        exact,
    })
}

/// The four bounds for `[C′×m′, C″×m″]·A` with `A` two-way `(m′)`-SFRR.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm51Bounds {
    pub eq52: u64,
    pub eq53: u64,
    /// Upper bound.
    pub eq54: u64,
    pub eq510: u64,
    /// Split actually used; rows are swapped when the given `m′ < m″`.
    pub m1: usize,
    pub swapped: bool,
}

impl Thm51Bounds {
    pub fn best_lower(&self) -> u64 {
        self.eq52.max(self.eq53).max(self.eq510)
    }
}

/// Rows `m1..m` followed by rows `0..m1`.
fn rotate_rows(a: &RingMatrix, m1: usize) -> Result<RingMatrix> {
    a.row_block(m1..a.rows()).vstack(&a.row_block(0..m1))
}

fn repeated(c1: &Code, m1: usize, c2: &Code, m2: usize) -> Vec<Code> {
    std::iter::repeat_n(c1.clone(), m1)
        .chain(std::iter::repeat_n(c2.clone(), m2))
        .collect()
}

pub fn bound_thm51(c1: &Code, c2: &Code, a: &RingMatrix, m1: usize) -> Result<Thm51Bounds> {
    let m = a.rows();
    if !is_two_way_sfrr(a, m1)? {
        return Err(Error::NotTwoWaySfrr(m1));
    }
    if !c1.is_linear() {
        return Err(Error::NonLinearComponent(1));
    }
    if !c2.is_linear() {
        return Err(Error::NonLinearComponent(m1 + 1));
    }
    let swapped = m1 < m - m1;
    let (c1, c2, a, m1) = if swapped {
        (c2, c1, rotate_rows(a, m1)?, m - m1)
    } else {
        (c1, c2, a.clone(), m1)
    };
    let m2 = m - m1;
    let l = a.cols() as u64;
    let (m, m1u, m2u) = (m as u64, m1 as u64, m2 as u64);
    let spec = MpcSpec::new(repeated(c1, m1, c2, m2), a.clone())?;
    let mm = spec.m();
    let eq52 = bound_thm45(&spec, &SfrrProfile::forward(mm, &[m1])?)?.max(bound_thm45(
        &spec,
        &SfrrProfile::reverse(mm, &[m1 + 1])?,
    )?);
    let sum = c1.sum(c2)?;
    let cap = c1.intersection(c2)?;
    let d1 = c1.min_distance_hamming()?;
    let ds = sum.min_distance_hamming()?;
    let di = cap.min_distance_hamming()?;
    let eq53 = times(l - m1u + 1, d1)
        .min(times(l - m2u + 1, ds))
        .min(times(l - m + 1, di));
    let eq510 = times(l - m2u + 1, c2.min_distance_hamming()?)
        .min(times(l - m + 1, di))
        .min(times(l - m1u + 1, ds));
    let eq54 = exact_min(
        &[(l - m1u + 1, c1), (l - m2u + 1, c2), (l - m + 1, &cap)],
        spec.zero_product_distance(),
    )?;
    Ok(Thm51Bounds {
        eq52,
        eq53,
        eq54,
        eq510,
        m1,
        swapped,
    })
}

/// Outcome of the partitioned-orthogonal construction.
#[derive(Clone, Debug)]
pub struct PartitionResult {
    pub code: Code,
    pub self_orthogonal: bool,
    /// Whether `self_orthogonal` came from all codeword pairs rather than
    /// generator pairs.
    pub exhaustive: bool,
    pub self_dual: bool,
}

/// Largest `|C|²` for which self-orthogonality is checked on all pairs.
const PAIRWISE_LIMIT: u128 = 1 << 24;

/// Self-orthogonality by inner products of all codeword pairs when `|C|` is
/// small, otherwise of spanning generators. Returns `(orthogonal,
/// exhaustive)`.
pub fn verify_self_orthogonal(code: &Code) -> Result<(bool, bool)> {
    let size = code.cardinality()?;
    let r = code.ring();
    if size.saturating_mul(size) <= PAIRWISE_LIMIT {
        let words = code.words()?;
        let ok = words
            .iter()
            .all(|a| words.iter().all(|b| inner_product(r, a, b) == Elem::ZERO));
        return Ok((ok, true));
    }
    if !code.is_linear() {
        return Err(Error::NonLinearComponent(0));
    }
    let gens = code.span_generators()?;
    let ok = gens
        .iter()
        .all(|a| gens.iter().all(|b| inner_product(r, a, b) == Elem::ZERO));
    Ok((ok, false))
}

/// `[C′×m′, C″×m″]·A` with `A` having the `m′`-partitioned orthogonal
/// property and self-orthogonal `C′`, `C″`.
pub fn self_orthogonal_by_partition(
    c1: &Code,
    c2: &Code,
    a: &RingMatrix,
    m1: usize,
) -> Result<PartitionResult> {
    if !has_partitioned_orthogonal(a, m1)? {
        return Err(Error::NotPartitionedOrthogonal(m1));
    }
    for (j, c) in [(1, c1), (m1 + 1, c2)] {
        if !c.is_linear() {
            return Err(Error::NonLinearComponent(j));
        }
        if !c.is_self_orthogonal()? {
            return Err(Error::NotSelfOrthogonalComponent(j));
        }
    }
    let m2 = a.rows() - m1;
    let spec = MpcSpec::new(repeated(c1, m1, c2, m2), a.clone())?;
    let code = spec.build();
    let (self_orthogonal, exhaustive) = verify_self_orthogonal(&code)?;
    if !self_orthogonal {
        return Err(Error::Inconsistent(
            "partitioned-orthogonal product is not self-orthogonal".into(),
        ));
    }
    let hypotheses = c1.is_self_dual()? && c2.is_self_dual()? && a.is_square() && a.is_frr();
    let q = spec.ring().order() as u128;
    let size = code.cardinality()?;
    let counted = size.checked_mul(size) == q.checked_pow((spec.n() * spec.l()) as u32);
    if hypotheses && !counted {
        return Err(Error::Inconsistent(
            "self-dual hypotheses hold but |C|² ≠ |R|^(nl)".into(),
        ));
    }
    Ok(PartitionResult {
        code,
        self_orthogonal,
        exhaustive,
        self_dual: hypotheses && counted,
    })
}

/// Binary, self-dual, and every weight divisible by 4.
pub fn is_type_ii(code: &Code) -> Result<bool> {
    if code.ring().order() != 2 || !code.is_self_dual()? {
        return Ok(false);
    }
    let dist = code.hamming_distribution()?;
    Ok(dist.iter().enumerate().all(|(w, &count)| count == 0 || w % 4 == 0))
}

/// Choices for [`bound_report`]. Unset profiles and split are discovered.
#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub weight: Option<WeightTable>,
    pub forward: Option<SfrrProfile>,
    pub reverse: Option<SfrrProfile>,
    pub split: Option<usize>,
    /// Enumerate `C` (and `C⊥` when the ambient space is small) to report
    /// true distances and check every bound against them.
    pub enumerate: bool,
}

/// Every bound that applies to a spec. Inapplicable bounds are `None`, with
/// the reason in `applicability`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(rename = "thm31_U")]
    pub thm31_u: Option<u64>,
    #[serde(rename = "thm31_L")]
    pub thm31_l: Option<u64>,
    #[serde(rename = "thm45_U")]
    pub thm45_u: Option<u64>,
    #[serde(rename = "thm45_U_exact")]
    pub thm45_u_exact: Option<u64>,
    #[serde(rename = "thm45_L")]
    pub thm45_l: Option<u64>,
    #[serde(rename = "thm45_L_exact")]
    pub thm45_l_exact: Option<u64>,
    pub thm47: Option<u64>,
    pub thm47_exact: Option<u64>,
    pub cor48_primal: Option<u64>,
    pub cor48_dual: Option<u64>,
    pub thm51_lower_52: Option<u64>,
    pub thm51_lower_53: Option<u64>,
    pub thm51_upper_54: Option<u64>,
    pub thm51_lower_510: Option<u64>,
    pub profile_forward: Option<SfrrProfile>,
    pub profile_reverse: Option<SfrrProfile>,
    pub split: Option<usize>,
    /// `"hamming"` or `"custom"`; the `thm31` entries bound `d_w`.
    pub weight: String,
    pub d_h: Option<u64>,
    pub d_w: Option<u64>,
    pub dual_d_h: Option<u64>,
    pub best_lower: Option<String>,
    pub best_lower_value: Option<u64>,
    pub verified_sandwich: Option<bool>,
    pub applicability: BTreeMap<String, String>,
}

const OK: &str = "ok";

fn reason(e: &Error) -> String {
    let name = format!("{e:?}");
    let head = name.split(['(', ' ', '{']).next().unwrap_or("").to_string();
    format!("{head}: {e}")
}

/// Records a bound, or its failure reason. Cap errors propagate.
fn record(
    map: &mut BTreeMap<String, String>,
    key: &str,
    r: Result<u64>,
) -> Result<Option<u64>> {
    match r {
        Ok(v) => {
            map.insert(key.into(), OK.into());
            Ok(Some(v))
        }
        Err(e @ Error::EnumerationCapExceeded { .. }) => Err(e),
        Err(e) => {
            map.insert(key.into(), reason(&e));
            Ok(None)
        }
    }
}

/// `Some(profile)` if given or discoverable; otherwise the failure reason.
fn pick_profile(
    spec: &MpcSpec,
    given: &Option<SfrrProfile>,
    direction: Direction,
) -> Result<std::result::Result<SfrrProfile, Error>> {
    if let Some(p) = given {
        if p.direction != direction {
            return Ok(Err(Error::BadProfile("profile has the wrong direction".into())));
        }
        return Ok(Ok(p.clone()));
    }
    let sets = find_profiles(&spec.matrix)?;
    Ok(sets.finest(direction, spec.m()).ok_or_else(|| {
        let (name, k) = match direction {
            Direction::Forward => ("U", spec.m()),
            Direction::Reverse => ("L", 1),
        };
        Error::ProfileNotSfrr(format!("{name}_A({k}) is not MDS, so no profile exists"))
    }))
}

/// The codes have the shape `[C′×m′, C″×m″]` and `A` is two-way `(m′)`-SFRR.
fn split_applies(spec: &MpcSpec, m1: usize) -> Result<std::result::Result<(), Error>> {
    let m = spec.m();
    if m1 < 1 || m1 >= m {
        return Ok(Err(Error::BadProfile(format!(
            "two-way split needs 1 <= m' < {m}, got {m1}"
        ))));
    }
    if !all_same(&spec.codes[..m1])? || !all_same(&spec.codes[m1..])? {
        return Ok(Err(Error::BadProfile(format!(
            "codes are not of the form [C' x {m1}, C'' x {}]",
            m - m1
        ))));
    }
    if let Some(j) = spec.codes.iter().position(|c| !c.is_linear()) {
        return Ok(Err(Error::NonLinearComponent(j + 1)));
    }
    if !is_two_way_sfrr(&spec.matrix, m1)? {
        return Ok(Err(Error::NotTwoWaySfrr(m1)));
    }
    Ok(Ok(()))
}

pub fn bound_report(spec: &MpcSpec, opts: &ReportOptions) -> Result<BoundReport> {
    let mut app = BTreeMap::new();
    let hamming = WeightTable::hamming(spec.ring());
    let w = opts.weight.clone().unwrap_or_else(|| hamming.clone());
    let custom = !w.is_hamming();

    let thm31_u = record(&mut app, "thm31_U", bound_thm31(spec, &w, Direction::Forward))?;
    let thm31_l = record(&mut app, "thm31_L", bound_thm31(spec, &w, Direction::Reverse))?;

    let fwd = pick_profile(spec, &opts.forward, Direction::Forward)?;
    let (thm45_u, thm45_u_exact, thm47, thm47_exact) = match &fwd {
        Ok(p) => {
            let b = record(&mut app, "thm45_U", bound_thm45(spec, p))?;
            let e = if b.is_some() { equality_thm45(spec, p)? } else { None };
            let note = match (b, equality_obstruction(&spec.codes, p)?) {
                (None, _) => app["thm45_U"].clone(),
                (Some(_), Some(why)) => format!("equality conditions fail: {why}"),
                (Some(_), None) => OK.into(),
            };
            app.insert("thm45_U_exact".into(), note.clone());
            let d = record(&mut app, "thm47", bound_thm47(spec, p))?;
            let de = if d.is_some() { equality_thm47(spec, p)? } else { None };
            app.insert("thm47_exact".into(), if d.is_some() { note } else { app["thm47"].clone() });
            (b, e, d, de)
        }
        Err(e) => {
            for k in ["thm45_U", "thm45_U_exact", "thm47", "thm47_exact"] {
                app.insert(k.into(), reason(e));
            }
            (None, None, None, None)
        }
    };

    let rev = pick_profile(spec, &opts.reverse, Direction::Reverse)?;
    let (thm45_l, thm45_l_exact) = match &rev {
        Ok(p) => {
            let b = record(&mut app, "thm45_L", bound_thm45(spec, p))?;
            let e = if b.is_some() { equality_thm45(spec, p)? } else { None };
            let note = match (b, equality_obstruction(&spec.codes, p)?) {
                (None, _) => app["thm45_L"].clone(),
                (Some(_), Some(why)) => format!("equality conditions fail: {why}"),
                (Some(_), None) => OK.into(),
            };
            app.insert("thm45_L_exact".into(), note);
            (b, e)
        }
        Err(e) => {
            app.insert("thm45_L".into(), reason(e));
            app.insert("thm45_L_exact".into(), reason(e));
            (None, None)
        }
    };

    let (cor48_primal, cor48_dual) = match bound_cor48(spec) {
        Ok(c) => {
            app.insert("cor48".into(), OK.into());
            (Some(c.primal), Some(c.dual))
        }
        Err(e @ Error::EnumerationCapExceeded { .. }) => return Err(e),
        Err(e) => {
            app.insert("cor48".into(), reason(&e));
            (None, None)
        }
    };

    let mut thm51: Option<Thm51Bounds> = None;
    let mut split = None;
    let candidates: Vec<usize> = match opts.split {
        Some(s) => vec![s],
        None => (1..spec.m()).collect(),
    };
    let mut why51 = Error::BadProfile("a two-code split needs at least two rows".into());
    for s in candidates {
        match split_applies(spec, s)? {
            Ok(()) => {
                let b = bound_thm51(&spec.codes[0], &spec.codes[s], &spec.matrix, s)?;
                let better = thm51
                    .as_ref()
                    .is_none_or(|t| b.best_lower() > t.best_lower());
                if better {
                    thm51 = Some(b);
                    split = Some(s);
                }
            }
            Err(e) => why51 = e,
        }
    }
    let thm51_note = if thm51.is_some() { OK.into() } else { reason(&why51) };
    app.insert("thm51".into(), thm51_note);

    let mut report = BoundReport {
        thm31_u,
        thm31_l,
        thm45_u,
        thm45_u_exact,
        thm45_l,
        thm45_l_exact,
        thm47,
        thm47_exact,
        cor48_primal,
        cor48_dual,
        thm51_lower_52: thm51.as_ref().map(|t| t.eq52),
        thm51_lower_53: thm51.as_ref().map(|t| t.eq53),
        thm51_upper_54: thm51.as_ref().map(|t| t.eq54),
        thm51_lower_510: thm51.as_ref().map(|t| t.eq510),
        profile_forward: fwd.ok(),
        profile_reverse: rev.ok(),
        split,
        weight: if custom { "custom" } else { "hamming" }.into(),
        d_h: None,
        d_w: None,
        dual_d_h: None,
        best_lower: None,
        best_lower_value: None,
        verified_sandwich: None,
        applicability: app,
    };

    let mut lowers: Vec<(&str, Option<u64>)> = vec![
        ("thm51_lower_52", report.thm51_lower_52),
        ("thm51_lower_53", report.thm51_lower_53),
        ("thm51_lower_510", report.thm51_lower_510),
        ("thm45_U", report.thm45_u),
        ("thm45_L", report.thm45_l),
    ];
    if !custom {
        lowers.push(("thm31_U", report.thm31_u));
        lowers.push(("thm31_L", report.thm31_l));
    }
    lowers.push(("cor48_primal", report.cor48_primal));
    for (name, v) in &lowers {
        if let Some(v) = *v {
            if report.best_lower_value.is_none_or(|b| v > b) {
                report.best_lower_value = Some(v);
                report.best_lower = Some((*name).into());
            }
        }
    }

    if opts.enumerate {
        let code = spec.build();
        let d = code.min_distance_hamming()?;
        report.d_h = Some(d);
        let mut ok = lowers.iter().all(|(_, v)| v.is_none_or(|v| v <= d));
        ok &= report.thm51_upper_54.is_none_or(|u| d <= u);
        for exact in [report.thm45_u_exact, report.thm45_l_exact] {
            ok &= exact.is_none_or(|e| e == d);
        }
        if custom {
            let dw = code.min_distance(&w)?;
            report.d_w = Some(dw);
            ok &= [report.thm31_u, report.thm31_l]
                .iter()
                .all(|v| v.is_none_or(|v| v <= dw));
        }
        let q = spec.ring().order() as u128;
        let ambient = q.checked_pow((spec.n() * spec.l()) as u32);
        if ambient.is_some_and(|a| a <= Limits::current().max_ambient as u128) {
            let dd = code.dual()?.min_distance_hamming()?;
            report.dual_d_h = Some(dd);
            ok &= report.thm47.is_none_or(|v| v <= dd);
            ok &= report.thm47_exact.is_none_or(|v| v == dd);
            ok &= report.cor48_dual.is_none_or(|v| v <= dd);
        }
        report.verified_sandwich = Some(ok);
    }
    Ok(report)
}

/// The product code, unless the spec has a different kind of code.
pub fn as_spec(code: &Code) -> Option<Result<MpcSpec>> {
    match code.kind() {
        CodeKind::MatrixProduct { codes, matrix } => {
            Some(MpcSpec::new(codes.clone(), matrix.clone()))
        }
        _ => None,
    }
}
