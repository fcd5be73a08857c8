//! Matrix predicates for matrix product code constructions: non-singular
//! by columns, SFRR profiles, two-way SFRR, (partitioned) orthogonality,
//! and the block decomposition used in the equality proofs.

use serde::{Deserialize, Serialize};

use crate::code::{Code, RowCodeDirection};
use crate::error::{Error, Result};
use crate::matrix::{det_unchecked, RingMatrix};
use crate::ring::Elem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Prefix codes `U_A(i_h)`, `0 = i_0 < … < i_t = m`.
    Forward,
    /// Suffix codes `L_A(i_h)`, `1 = i_0 < … < i_t = m + 1`.
    Reverse,
}

/// Index sequence of an SFRR condition, endpoints included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SfrrProfile {
    pub direction: Direction,
    pub indices: Vec<usize>,
}

impl SfrrProfile {
    /// Profile from its interior indices, as in the name "(2)-SFRR".
    pub fn forward(m: usize, interior: &[usize]) -> Result<SfrrProfile> {
        let mut indices = vec![0];
        indices.extend_from_slice(interior);
        indices.push(m);
        let p = SfrrProfile {
            direction: Direction::Forward,
            indices,
        };
        p.validate(m)?;
        Ok(p)
    }

    /// Reverse profile from its interior indices, as in "reversely (3)-SFRR".
    pub fn reverse(m: usize, interior: &[usize]) -> Result<SfrrProfile> {
        let mut indices = vec![1];
        indices.extend_from_slice(interior);
        indices.push(m + 1);
        let p = SfrrProfile {
            direction: Direction::Reverse,
            indices,
        };
        p.validate(m)?;
        Ok(p)
    }

    /// Checks endpoints and strict monotonicity for a matrix with `m` rows.
    pub fn validate(&self, m: usize) -> Result<()> {
        let (first, last) = match self.direction {
            Direction::Forward => (0, m),
            Direction::Reverse => (1, m + 1),
        };
        let idx = &self.indices;
        if idx.len() < 2 {
            return Err(Error::BadProfile("a profile needs both endpoints".into()));
        }
        if idx[0] != first || *idx.last().unwrap() != last {
            return Err(Error::BadProfile(format!(
                "endpoints must be {first} and {last}, got {:?}",
                idx
            )));
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadProfile(format!(
                "indices must be strictly increasing: {idx:?}"
            )));
        }
        Ok(())
    }

    pub fn interior(&self) -> &[usize] {
        &self.indices[1..self.indices.len() - 1]
    }

    /// `t`, the number of steps.
    pub fn steps(&self) -> usize {
        self.indices.len() - 1
    }
}

fn row_direction(d: Direction) -> RowCodeDirection {
    match d {
        Direction::Forward => RowCodeDirection::Prefix,
        Direction::Reverse => RowCodeDirection::Suffix,
    }
}

/// All `k × k` minors of the `k` given rows are units; for an FRR block of
/// rows this is the same as the rows generating an MDS code.
fn all_maximal_minors_units(a: &RingMatrix, rows: &[usize]) -> Result<bool> {
    let k = rows.len();
    let l = a.cols();
    if k == 0 {
        return Ok(true);
    }
    if k > l {
        return Ok(false);
    }
    if k > crate::matrix::MAX_DET_ORDER {
        return Err(Error::DeterminantTooLarge(k));
    }
    let ring = a.ring();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        if !ring.is_unit(det_unchecked(&a.submatrix(rows, &cols))) {
            return Ok(false);
        }
        if !next_combination(&mut cols, l) {
            return Ok(true);
        }
    }
}

/// Advances `c` to the next `|c|`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every `t × t` submatrix of the first `t` rows is non-singular, for all
/// `t ≤ m`.
pub fn is_nsc(a: &RingMatrix) -> Result<bool> {
    for t in 1..=a.rows() {
        let rows: Vec<usize> = (0..t).collect();
        if !all_maximal_minors_units(a, &rows)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// As [`is_nsc`] with the last `t` rows.
pub fn is_reversely_nsc(a: &RingMatrix) -> Result<bool> {
    let m = a.rows();
    for t in 1..=m {
        let rows: Vec<usize> = (m - t..m).collect();
        if !all_maximal_minors_units(a, &rows)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the row code `U_A(k)` or `L_A(k)` is MDS, by enumeration.
pub fn row_code_is_mds(a: &RingMatrix, k: usize, direction: Direction) -> Result<bool> {
    Code::row_code(a, k, row_direction(direction))?.is_mds()
}

fn require_frr(a: &RingMatrix) -> Result<()> {
    a.frr_certificate().map(|_| ())
}

/// `A` is FRR and every row code named by the profile is MDS.
pub fn is_sfrr(a: &RingMatrix, profile: &SfrrProfile) -> Result<bool> {
    profile.validate(a.rows())?;
    require_frr(a)?;
    for &k in &profile.indices {
        if !row_code_is_mds(a, k, profile.direction)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Like [`is_sfrr`], but names the first row code that is not MDS.
pub fn require_sfrr(a: &RingMatrix, profile: &SfrrProfile) -> Result<()> {
    profile.validate(a.rows())?;
    require_frr(a)?;
    for &k in &profile.indices {
        if !row_code_is_mds(a, k, profile.direction)? {
            let name = match profile.direction {
                Direction::Forward => "U",
                Direction::Reverse => "L",
            };
            return Err(Error::ProfileNotSfrr(format!("{name}_A({k}) is not MDS")));
        }
    }
    Ok(())
}

/// The row-code indices at which the prefix (resp. suffix) codes are MDS.
/// Valid profiles are exactly the subsets containing both endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSets {
    pub forward: Vec<usize>,
    pub reverse: Vec<usize>,
}

impl ProfileSets {
    /// The profile using every MDS index, if `A` admits one at all.
    pub fn finest(&self, direction: Direction, m: usize) -> Option<SfrrProfile> {
        let (set, first, last) = match direction {
            Direction::Forward => (&self.forward, 0, m),
            Direction::Reverse => (&self.reverse, 1, m + 1),
        };
        if !set.contains(&first) || !set.contains(&last) {
            return None;
        }
        Some(SfrrProfile {
            direction,
            indices: set.clone(),
        })
    }

    pub fn admits(&self, profile: &SfrrProfile) -> bool {
        let set = match profile.direction {
            Direction::Forward => &self.forward,
            Direction::Reverse => &self.reverse,
        };
        profile.indices.iter().all(|k| set.contains(k))
    }
}

pub fn find_profiles(a: &RingMatrix) -> Result<ProfileSets> {
    require_frr(a)?;
    let m = a.rows();
    let mut forward = Vec::new();
    for k in 0..=m {
        if row_code_is_mds(a, k, Direction::Forward)? {
            forward.push(k);
        }
    }
    let mut reverse = Vec::new();
    for k in 1..=m + 1 {
        if row_code_is_mds(a, k, Direction::Reverse)? {
            reverse.push(k);
        }
    }
    Ok(ProfileSets { forward, reverse })
}

/// `(m′)`-SFRR and reversely `(m′+1)`-SFRR. Also computed as "the top `m′`
/// rows, the bottom `m − m′` rows and `A` all generate MDS codes", through
/// maximal minors; the two answers must agree.
pub fn is_two_way_sfrr(a: &RingMatrix, m1: usize) -> Result<bool> {
    let m = a.rows();
    if m1 < 1 || m1 >= m {
        return Err(Error::BadProfile(format!("two-way split needs 1 <= m' < {m}, got {m1}")));
    }
    if !a.is_frr() {
        return Ok(false);
    }
    let by_codes = is_sfrr(a, &SfrrProfile::forward(m, &[m1])?)?
        && is_sfrr(a, &SfrrProfile::reverse(m, &[m1 + 1])?)?;
    let top: Vec<usize> = (0..m1).collect();
    let bottom: Vec<usize> = (m1..m).collect();
    let all: Vec<usize> = (0..m).collect();
    let by_minors = all_maximal_minors_units(a, &top)?
        && all_maximal_minors_units(a, &bottom)?
        && all_maximal_minors_units(a, &all)?;
    if by_codes != by_minors {
        return Err(Error::Inconsistent(format!(
            "two-way ({m1})-SFRR: row codes say {by_codes}, minors say {by_minors}"
        )));
    }
    Ok(by_codes)
}

/// `m ≤ l` and `AAᵀ` is diagonal with unit diagonal.
pub fn is_quasi_orthogonal(a: &RingMatrix) -> bool {
    if a.rows() > a.cols() {
        return false;
    }
    let g = a.mul(&a.transpose()).expect("shapes agree");
    let ring = a.ring();
    (0..g.rows()).all(|i| {
        (0..g.cols()).all(|j| {
            if i == j {
                ring.is_unit(g.get(i, i))
            } else {
                g.get(i, j) == Elem::ZERO
            }
        })
    })
}

/// Every one of the first `m′` rows is orthogonal to every later row.
pub fn has_partitioned_orthogonal(a: &RingMatrix, m1: usize) -> Result<bool> {
    let m = a.rows();
    if m1 < 1 || m1 >= m {
        return Err(Error::BadProfile(format!("partition needs 1 <= m' < {m}, got {m1}")));
    }
    let top = a.row_block(0..m1);
    let bottom = a.row_block(m1..m);
    Ok(top.mul(&bottom.transpose())?.is_zero())
}

/// `(Ã⁻¹)ᵀ` for the extension `Ã` of `A` fixed by
/// [`RingMatrix::extend_to_invertible`].
pub fn dual_transpose(a: &RingMatrix) -> Result<RingMatrix> {
    let ext = a.extend_to_invertible()?;
    Ok(ext
        .right_inverse
        .hstack(&ext.complement)?
        .transpose())
}

/// The reverse profile of `(Ã⁻¹)ᵀ` that corresponds to a forward profile
/// of `A`: interior `i_h + 1`, plus `m + 1` when `m < l`.
pub fn dual_profile(profile: &SfrrProfile, m: usize, l: usize) -> Result<SfrrProfile> {
    if profile.direction != Direction::Forward {
        return Err(Error::BadProfile("expected a forward profile".into()));
    }
    let mut interior: Vec<usize> = profile.interior().iter().map(|i| i + 1).collect();
    if m < l {
        interior.push(m + 1);
    }
    SfrrProfile::reverse(l, &interior)
}

/// `A` is SFRR for `profile` exactly when `(Ã⁻¹)ᵀ` is reversely SFRR for
/// the shifted profile. Returns whether the two sides agree.
pub fn prop42_check(a: &RingMatrix, profile: &SfrrProfile) -> Result<bool> {
    profile.validate(a.rows())?;
    let bt = dual_transpose(a)?;
    let lhs = is_sfrr(a, profile)?;
    let rhs = is_sfrr(&bt, &dual_profile(profile, a.rows(), a.cols())?)?;
    Ok(lhs == rhs)
}

/// NSC, `(1, …, m−1)`-SFRR, and reversely `(2, …, m, m+1)`-SFRR of
/// `(Ã⁻¹)ᵀ` all agree; for square `A` also NSC of `A` against reverse NSC
/// of `(A⁻¹)ᵀ`.
pub fn cor43_check(a: &RingMatrix) -> Result<bool> {
    let m = a.rows();
    let l = a.cols();
    let nsc = is_nsc(a)?;
    let interior: Vec<usize> = (1..m).collect();
    let profile = SfrrProfile::forward(m, &interior)?;
    let sfrr = is_sfrr(a, &profile)?;
    let bt = dual_transpose(a)?;
    let rev = is_sfrr(&bt, &dual_profile(&profile, m, l)?)?;
    let mut ok = nsc == sfrr && sfrr == rev;
    if m == l {
        ok &= nsc == is_reversely_nsc(&bt)?;
    }
    Ok(ok)
}

/// `Q` block lower triangular with invertible diagonal blocks, and `QA`
/// block upper triangular with identity diagonal blocks whose row `i_h`
/// is `(0, …, 0, 1, u, …, u)` with every `u` a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma46Decomposition {
    pub q: RingMatrix,
    pub qa: RingMatrix,
    pub block_sizes: Vec<usize>,
}

impl Lemma46Decomposition {
    /// Checks all three output conditions against `A` and `profile`.
    pub fn verify(&self, a: &RingMatrix, profile: &SfrrProfile) -> Result<()> {
        let ring = self.q.ring();
        let idx = &profile.indices;
        let fail = |msg: String| Err(Error::Inconsistent(msg));
        if self.q.mul(a)? != self.qa {
            return fail("QA differs from Q times A".into());
        }
        if !self.q.is_frr() {
            return fail("Q is not invertible".into());
        }
        for h in 1..idx.len() {
            let (s, e) = (idx[h - 1], idx[h]);
            for i in s..e {
                for j in e..self.q.cols() {
                    if self.q.get(i, j) != Elem::ZERO {
                        return fail(format!("Q[{i}][{j}] lies above the block diagonal"));
                    }
                }
                for j in 0..e {
                    let want = if j == i { ring.one() } else { Elem::ZERO };
                    if self.qa.get(i, j) != want {
                        return fail(format!("QA[{i}][{j}] breaks the block form"));
                    }
                }
            }
            let row = e - 1;
            for j in e..self.qa.cols() {
                if !ring.is_unit(self.qa.get(row, j)) {
                    return fail(format!("QA[{row}][{j}] is not a unit"));
                }
            }
        }
        Ok(())
    }
}

/// Constructive form of the block decomposition: invert each diagonal
/// block in turn and clear the rows below it.
pub fn lemma46_decompose(a: &RingMatrix, profile: &SfrrProfile) -> Result<Lemma46Decomposition> {
    if profile.direction != Direction::Forward {
        return Err(Error::BadProfile("expected a forward profile".into()));
    }
    require_sfrr(a, profile)?;
    let ring = a.ring().clone();
    let m = a.rows();
    let mut work = a.clone();
    let mut q = RingMatrix::identity(&ring, m);
    let idx = &profile.indices;
    for h in 1..idx.len() {
        let (s, e) = (idx[h - 1], idx[h]);
        let block_rows: Vec<usize> = (s..e).collect();
        let block = work.submatrix(&block_rows, &block_rows);
        let inv = block
            .inverse()
            .map_err(|_| Error::ProfileNotSfrr(format!("diagonal block {h} is singular")))?;
        let new_w = inv.mul(&work.row_block(s..e))?;
        let new_q = inv.mul(&q.row_block(s..e))?;
        for (bi, i) in (s..e).enumerate() {
            for j in 0..work.cols() {
                work.set(i, j, new_w.get(bi, j));
            }
            for j in 0..m {
                q.set(i, j, new_q.get(bi, j));
            }
        }
        for r in e..m {
            for c in s..e {
                let f = work.get(r, c);
                if f == Elem::ZERO {
                    continue;
                }
                let nf = ring.neg(f);
                for j in 0..work.cols() {
                    let v = ring.add(work.get(r, j), ring.mul(nf, work.get(c, j)));
                    work.set(r, j, v);
                }
                for j in 0..m {
                    let v = ring.add(q.get(r, j), ring.mul(nf, q.get(c, j)));
                    q.set(r, j, v);
                }
            }
        }
    }
    let dec = Lemma46Decomposition {
        q,
        qa: work,
        block_sizes: idx.windows(2).map(|w| w[1] - w[0]).collect(),
    };
    dec.verify(a, profile)?;
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingSpec};

    fn ring(n: u64) -> Ring {
        Ring::new(&RingSpec::zmod(n)).unwrap()
    }

    fn t(r: &Ring) -> RingMatrix {
        RingMatrix::from_ints(r, &[&[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]).unwrap()
    }

    #[test]
    fn profile_validation() {
        assert!(SfrrProfile::forward(3, &[2]).is_ok());
        assert_eq!(SfrrProfile::forward(3, &[2]).unwrap().indices, vec![0, 2, 3]);
        assert_eq!(SfrrProfile::reverse(3, &[3]).unwrap().indices, vec![1, 3, 4]);
        assert!(SfrrProfile::forward(3, &[3]).is_err());
        assert!(SfrrProfile::forward(3, &[2, 1]).is_err());
        assert!(SfrrProfile::reverse(3, &[1]).is_err());
    }

    #[test]
    fn nsc_examples() {
        let f2 = ring(2);
        assert!(!is_nsc(&t(&f2)).unwrap());
        assert!(!is_nsc(&RingMatrix::identity(&f2, 2)).unwrap());
        let f3 = ring(3);
        assert!(is_nsc(&RingMatrix::from_ints(&f3, &[&[1, 1], &[1, 2]]).unwrap()).unwrap());
    }

    #[test]
    fn t_profiles() {
        let f2 = ring(2);
        let t = t(&f2);
        assert!(is_sfrr(&t, &SfrrProfile::forward(3, &[2]).unwrap()).unwrap());
        assert!(is_sfrr(&t, &SfrrProfile::reverse(3, &[3]).unwrap()).unwrap());
        assert!(!is_sfrr(&t, &SfrrProfile::forward(3, &[1, 2]).unwrap()).unwrap());
        let sets = find_profiles(&t).unwrap();
        assert_eq!(sets.forward, vec![0, 2, 3]);
        assert_eq!(sets.reverse, vec![1, 3, 4]);
        let i3 = RingMatrix::identity(&f2, 3);
        assert!(is_sfrr(&i3, &SfrrProfile::forward(3, &[]).unwrap()).unwrap());
    }

    #[test]
    fn two_way_examples() {
        let f2 = ring(2);
        assert!(is_two_way_sfrr(&t(&f2), 2).unwrap());
        let h2 = RingMatrix::from_ints(&f2, &[&[1, 1], &[1, -1]]).unwrap();
        assert!(!is_two_way_sfrr(&h2, 1).unwrap());
        let f3 = ring(3);
        let h3 = RingMatrix::from_ints(&f3, &[&[1, 1], &[1, -1]]).unwrap();
        assert!(is_two_way_sfrr(&h3, 1).unwrap());
    }

    #[test]
    fn orthogonality_examples() {
        let f2 = ring(2);
        let a = RingMatrix::from_ints(&f2, &[&[1, 1, 1, 0], &[0, 1, 1, 1]]).unwrap();
        assert!(is_quasi_orthogonal(&a));
        assert!(has_partitioned_orthogonal(&t(&f2), 2).unwrap());
        assert!(!is_quasi_orthogonal(&t(&f2)));
        let f3 = ring(3);
        assert!(!has_partitioned_orthogonal(&t(&f3), 2).unwrap());
        let b = RingMatrix::from_ints(&f3, &[&[1, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(is_quasi_orthogonal(&b));
    }

    #[test]
    fn prop42_examples() {
        let f2 = ring(2);
        let t = t(&f2);
        let p = SfrrProfile::forward(3, &[2]).unwrap();
        assert!(prop42_check(&t, &p).unwrap());
        let bt = dual_transpose(&t).unwrap();
        assert!(is_sfrr(&bt, &SfrrProfile::reverse(3, &[3]).unwrap()).unwrap());
        let i3 = RingMatrix::identity(&f2, 3);
        for interior in [vec![], vec![1], vec![2], vec![1, 2]] {
            let p = SfrrProfile::forward(3, &interior).unwrap();
            assert!(prop42_check(&i3, &p).unwrap());
        }
    }

    #[test]
    fn lemma46_examples() {
        let f2 = ring(2);
        let t = t(&f2);
        let p = SfrrProfile::forward(3, &[2]).unwrap();
        let dec = lemma46_decompose(&t, &p).unwrap();
        assert_eq!(dec.block_sizes, vec![2, 1]);
        assert_eq!(dec.qa.row(1)[..2], [Elem(0), Elem(1)]);
        assert!(f2.is_unit(dec.qa.get(1, 2)));
        assert_eq!(dec.q.mul(&t).unwrap(), dec.qa);

        let i3 = RingMatrix::identity(&f2, 3);
        let dec = lemma46_decompose(&i3, &SfrrProfile::forward(3, &[1]).unwrap());
        // U_I(1) = span(100) is not MDS in length 3
        assert!(matches!(dec, Err(Error::ProfileNotSfrr(_))));
        let dec = lemma46_decompose(&i3, &SfrrProfile::forward(3, &[]).unwrap()).unwrap();
        assert!(dec.q.is_identity());
        assert!(dec.qa.is_identity());

        let f3 = ring(3);
        let a = RingMatrix::from_ints(&f3, &[&[1, 1], &[1, 2]]).unwrap();
        let dec = lemma46_decompose(&a, &SfrrProfile::forward(2, &[1]).unwrap()).unwrap();
        assert_eq!(dec.qa.get(0, 0), Elem(1));
        assert_eq!(dec.qa.get(1, 0), Elem(0));
        assert_eq!(dec.qa.get(1, 1), Elem(1));
        assert!(f3.is_unit(dec.qa.get(0, 1)));
    }

    #[test]
    fn combinations() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![2, 3]);
    }
}
