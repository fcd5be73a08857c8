//! Dense matrices over a [`Ring`] and the exact linear algebra needed for
//! matrix product codes: full-row-rank certificates, kernels, determinants,
//! inverses and invertible extensions.
//!
//! Everything that needs division works one local component at a time,
//! where a unit pivot always exists for an FRR matrix, and then joins the
//! pieces back together through the idempotent decomposition.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// Largest order accepted by [`RingMatrix::determinant`].
pub const MAX_DET_ORDER: usize = 8;

#[derive(Clone, PartialEq, Eq)]
pub struct RingMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingMatrix[{}]({}x{}) ", self.ring, self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i).iter().map(|e| e.0).collect::<Vec<_>>()))
            .finish()
    }
}

impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|&e| self.ring.literal(e).to_string())
                .collect();
            write!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Right inverse and kernel basis of an FRR matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrrCertificate {
    /// `l × m`, with `A·B = I_m`.
    pub right_inverse: RingMatrix,
    /// `(l−m) × l`, rows freely generating `{x : A xᵀ = 0}`.
    pub kernel_basis: RingMatrix,
}

/// Output of [`RingMatrix::extend_to_invertible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    /// `l × l` invertible, first `m` rows equal to `A`.
    pub full: RingMatrix,
    /// First `m` columns of `full⁻¹`.
    pub right_inverse: RingMatrix,
    /// Last `l − m` columns of `full⁻¹`.
    pub complement: RingMatrix,
}

impl RingMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, data: Vec<Elem>) -> Result<RingMatrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(e) = data.iter().find(|e| e.index() >= ring.order()) {
            return Err(Error::ElementOutOfRange {
                index: e.0 as u64,
                order: ring.order(),
            });
        }
        Ok(RingMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(ring: &Ring, rows: &[Vec<Elem>]) -> Result<RingMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "ragged rows: {} vs {cols} entries",
                r.len()
            )));
        }
        RingMatrix::new(ring, rows.len(), cols, rows.concat())
    }

    /// Integer entries mapped through `Z -> R`; handy for matrices like
    /// `[[1, 1], [1, -1]]` that make sense over every ring.
    pub fn from_ints(ring: &Ring, rows: &[&[i64]]) -> Result<RingMatrix> {
        let rows: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&k| ring.from_int(k)).collect())
            .collect();
        RingMatrix::from_rows(ring, &rows)
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> RingMatrix {
        RingMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> RingMatrix {
        let mut m = RingMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn transpose(&self) -> RingMatrix {
        let mut t = RingMatrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    fn check_ring(&self, other: &RingMatrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut out = RingMatrix::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Elem::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, r.add(cur, r.mul(a, other.get(k, j))));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("addition of different shapes".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.ring.add(a, b))
            .collect();
        Ok(RingMatrix {
            data,
            ..self.clone()
        })
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        let r = &self.ring;
        let mut out = vec![Elem::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == Elem::ZERO {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = r.add(*o, r.mul(a, self.get(i, j)));
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == Elem::ZERO)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == RingMatrix::identity(&self.ring, self.rows)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RingMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        RingMatrix {
            ring: self.ring.clone(),
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Rows `range` as a new matrix.
    pub fn row_block(&self, range: std::ops::Range<usize>) -> RingMatrix {
        RingMatrix {
            ring: self.ring.clone(),
            rows: range.len(),
            cols: self.cols,
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
        }
    }

    pub fn col_block(&self, range: std::ops::Range<usize>) -> RingMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = range.collect();
        self.submatrix(&rows, &cols)
    }

    pub fn vstack(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_ring(other)?;
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack of different widths".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(RingMatrix {
            ring: self.ring.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_ring(other)?;
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack of different heights".into()));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(RingMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Entrywise projection onto each local component.
    pub fn split(&self) -> Vec<RingMatrix> {
        (0..self.ring.num_components())
            .map(|k| self.project(k))
            .collect()
    }

    fn project(&self, k: usize) -> RingMatrix {
        let (c, _) = self.ring.component(k).expect("component in range");
        let data = self
            .data
            .iter()
            .map(|&e| self.ring.project(e, k).expect("component in range"))
            .collect();
        RingMatrix {
            ring: c,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Inverse of [`split`](Self::split).
    pub fn join(ring: &Ring, parts: &[RingMatrix]) -> Result<RingMatrix> {
        if parts.len() != ring.num_components() {
            return Err(Error::ShapeMismatch(format!(
                "{} parts for {} components",
                parts.len(),
                ring.num_components()
            )));
        }
        let (rows, cols) = (parts[0].rows, parts[0].cols);
        if parts.iter().any(|p| (p.rows, p.cols) != (rows, cols)) {
            return Err(Error::ShapeMismatch("component shapes differ".into()));
        }
        let data = (0..rows * cols)
            .map(|idx| {
                let xs: Vec<Elem> = parts.iter().map(|p| p.data[idx]).collect();
                ring.lift_all(&xs)
            })
            .collect();
        Ok(RingMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Right inverse and kernel basis, or a nonzero `b` with `bA = 0`.
    pub fn frr_certificate(&self) -> Result<FrrCertificate> {
        let mut bs = Vec::new();
        let mut gs = Vec::new();
        for (k, part) in self.split().into_iter().enumerate() {
            match local_reduce(&part) {
                Ok((b, g)) => {
                    bs.push(b);
                    gs.push(g);
                }
                Err(local_witness) => {
                    let witness = local_witness
                        .into_iter()
                        .map(|x| self.ring.lift(x, k).expect("component in range"))
                        .collect();
                    return Err(Error::NotFrr {
                        component: k,
                        witness,
                    });
                }
            }
        }
        Ok(FrrCertificate {
            right_inverse: RingMatrix::join(&self.ring, &bs)?,
            kernel_basis: RingMatrix::join(&self.ring, &gs)?,
        })
    }

    pub fn is_frr(&self) -> bool {
        self.frr_certificate().is_ok()
    }

    pub fn kernel_basis(&self) -> Result<RingMatrix> {
        Ok(self.frr_certificate()?.kernel_basis)
    }

    pub fn right_inverse(&self) -> Result<RingMatrix> {
        Ok(self.frr_certificate()?.right_inverse)
    }

    pub fn extend_to_invertible(&self) -> Result<Extension> {
        let cert = self.frr_certificate()?;
        let m = self.rows;
        let p = cert
            .right_inverse
            .hstack(&cert.kernel_basis.transpose())?;
        let full = p.inverse()?;
        Ok(Extension {
            full,
            right_inverse: p.col_block(0..m),
            complement: p.col_block(m..self.cols),
        })
    }

    pub fn inverse(&self) -> Result<RingMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        match self.frr_certificate() {
            Ok(cert) => Ok(cert.right_inverse),
            Err(Error::NotFrr { .. }) => Err(Error::Singular),
            Err(e) => Err(e),
        }
    }

    /// Cofactor expansion, organised as a DP over column subsets so no
    /// division is needed.
    pub fn determinant(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n > MAX_DET_ORDER {
            return Err(Error::DeterminantTooLarge(n));
        }
        Ok(det_unchecked(self))
    }

    pub fn is_nonsingular(&self) -> Result<bool> {
        Ok(self.ring.is_unit(self.determinant()?))
    }
}

/// Determinant via the subset DP; `d[S]` is the minor on the first `|S|`
/// rows and the columns in `S`.
pub(crate) fn det_unchecked(a: &RingMatrix) -> Elem {
    let r = &a.ring;
    let n = a.rows;
    let mut d = vec![Elem::ZERO; 1 << n];
    d[0] = r.one();
    for s in 1usize..(1 << n) {
        let row = s.count_ones() as usize - 1;
        let mut acc = Elem::ZERO;
        for j in 0..n {
            if s & (1 << j) == 0 {
                continue;
            }
            let sub = d[s & !(1 << j)];
            let x = a.get(row, j);
            if sub == Elem::ZERO || x == Elem::ZERO {
                continue;
            }
            let term = r.mul(x, sub);
            let above = (s >> (j + 1)).count_ones();
            acc = if above % 2 == 0 {
                r.add(acc, term)
            } else {
                r.sub(acc, term)
            };
        }
        d[s] = acc;
    }
    d[(1 << n) - 1]
}

/// Unit-pivot column reduction over a local ring. Returns `(B, G)` or a
/// nonzero row combination annihilating the rows.
fn local_reduce(a: &RingMatrix) -> std::result::Result<(RingMatrix, RingMatrix), Vec<Elem>> {
    let r = a.ring.clone();
    let (m, l) = (a.rows, a.cols);
    let mut w = a.clone();
    let mut p = RingMatrix::identity(&r, l);
    for i in 0..m {
        let pivot = (i..l).find(|&j| r.is_unit(w.get(i, j)));
        let Some(j) = pivot else {
            return Err(annihilating_combination(&w, i));
        };
        swap_cols(&mut w, i, j);
        swap_cols(&mut p, i, j);
        let inv = r.inverse(w.get(i, i)).expect("pivot is a unit");
        scale_col(&mut w, i, inv);
        scale_col(&mut p, i, inv);
        for c in 0..l {
            let x = w.get(i, c);
            if c != i && x != Elem::ZERO {
                axpy_col(&mut w, c, i, r.neg(x));
                axpy_col(&mut p, c, i, r.neg(x));
            }
        }
    }
    let b = p.col_block(0..m);
    let g = p.col_block(m..l).transpose();
    Ok((b, g))
}

/// Row `i` has no unit at or right of the diagonal, so all of those
/// entries lie in the maximal ideal and share a nonzero annihilator `s`.
/// Rows above are `(I | 0)` after reduction, which gives the combination
/// `s·(e_i − Σ_{c<i} w_ic e_c)`.
fn annihilating_combination(w: &RingMatrix, i: usize) -> Vec<Elem> {
    let r = &w.ring;
    let rest: Vec<Elem> = (i..w.cols).map(|c| w.get(i, c)).collect();
    let s = r
        .elements()
        .find(|&s| s != Elem::ZERO && rest.iter().all(|&x| r.mul(s, x) == Elem::ZERO))
        .expect("a local Frobenius ring has a nonzero socle");
    let mut b = vec![Elem::ZERO; w.rows];
    b[i] = s;
    for c in 0..i.min(w.cols) {
        b[c] = r.neg(r.mul(s, w.get(i, c)));
    }
    b
}

fn swap_cols(m: &mut RingMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        m.data.swap(i * m.cols + a, i * m.cols + b);
    }
}

fn scale_col(m: &mut RingMatrix, c: usize, s: Elem) {
    for i in 0..m.rows {
        let x = m.get(i, c);
        m.set(i, c, m.ring.mul(x, s));
    }
}

/// `col[dst] += s · col[src]`.
fn axpy_col(m: &mut RingMatrix, dst: usize, src: usize, s: Elem) {
    for i in 0..m.rows {
        let v = m.ring.add(m.get(i, dst), m.ring.mul(s, m.get(i, src)));
        m.set(i, dst, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn f2() -> Ring {
        Ring::new(&RingSpec::zmod(2)).unwrap()
    }

    fn t_matrix() -> RingMatrix {
        RingMatrix::from_ints(&f2(), &[&[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]).unwrap()
    }

    #[test]
    fn split_examples() {
        let z6 = Ring::new(&RingSpec::zmod(6)).unwrap();
        let parts = RingMatrix::identity(&z6, 2).split();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(RingMatrix::is_identity));
        let five = RingMatrix::from_ints(&z6, &[&[5]]).unwrap().split();
        assert_eq!(five[0].get(0, 0), Elem(1));
        assert_eq!(five[1].get(0, 0), Elem(2));
        let zero = RingMatrix::zeros(&z6, 2, 3);
        assert!(zero.split().iter().all(RingMatrix::is_zero));
        let a = RingMatrix::from_ints(&z6, &[&[1, 2, 5], &[3, 4, 0]]).unwrap();
        assert_eq!(RingMatrix::join(&z6, &a.split()).unwrap(), a);
    }

    #[test]
    fn t_certificate_matches_printed_inverse() {
        let t = t_matrix();
        let cert = t.frr_certificate().unwrap();
        assert_eq!(cert.kernel_basis.rows(), 0);
        let printed =
            RingMatrix::from_ints(&f2(), &[&[0, -1, 1], &[-1, 0, 1], &[1, 1, -1]]).unwrap();
        assert_eq!(cert.right_inverse.transpose(), printed);
        assert_eq!(t.inverse().unwrap().transpose(), printed);
        assert_eq!(t.determinant().unwrap(), Elem(1));
    }

    #[test]
    fn zero_divisor_is_not_frr() {
        let z4 = Ring::new(&RingSpec::zmod(4)).unwrap();
        let a = RingMatrix::from_ints(&z4, &[&[2]]).unwrap();
        match a.frr_certificate() {
            Err(Error::NotFrr { component, witness }) => {
                assert_eq!(component, 0);
                assert_eq!(witness, vec![Elem(2)]);
            }
            other => panic!("expected NotFrr, got {other:?}"),
        }
    }

    #[test]
    fn tall_matrix_is_not_frr() {
        let a = RingMatrix::from_ints(&f2(), &[&[1], &[1]]).unwrap();
        let Err(Error::NotFrr { witness, .. }) = a.frr_certificate() else {
            panic!("expected NotFrr");
        };
        assert_eq!(a.transpose().mul(&RingMatrix::from_rows(&f2(), &[witness.clone()]).unwrap().transpose()).unwrap().get(0, 0), Elem::ZERO);
        assert!(witness.iter().any(|&x| x != Elem::ZERO));
    }

    #[test]
    fn identity_certificate() {
        let i3 = RingMatrix::identity(&f2(), 3);
        let cert = i3.frr_certificate().unwrap();
        assert!(cert.right_inverse.is_identity());
        assert_eq!(cert.kernel_basis.rows(), 0);
        assert!(i3.inverse().unwrap().is_identity());
        assert_eq!(i3.determinant().unwrap(), Elem(1));
    }

    fn brute_kernel(a: &RingMatrix) -> Vec<Vec<Elem>> {
        let r = a.ring();
        let l = a.cols();
        let q = r.order();
        let total = q.pow(l as u32);
        let mut out = Vec::new();
        for mut idx in 0..total {
            let x: Vec<Elem> = (0..l)
                .map(|_| {
                    let d = idx % q;
                    idx /= q;
                    Elem(d as u8)
                })
                .collect();
            let col = RingMatrix::from_rows(r, &[x.clone()]).unwrap().transpose();
            if a.mul(&col).unwrap().is_zero() {
                out.push(x);
            }
        }
        out.sort();
        out
    }

    fn brute_span(g: &RingMatrix) -> Vec<Vec<Elem>> {
        let r = g.ring();
        let q = r.order();
        let mut out = Vec::new();
        for mut idx in 0..q.pow(g.rows() as u32) {
            let coeffs: Vec<Elem> = (0..g.rows())
                .map(|_| {
                    let d = idx % q;
                    idx /= q;
                    Elem(d as u8)
                })
                .collect();
            out.push(g.left_mul_vec(&coeffs).unwrap());
        }
        if g.rows() == 0 {
            out = vec![vec![Elem::ZERO; g.cols()]];
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn kernel_examples() {
        let a = RingMatrix::from_ints(&f2(), &[&[1, 1]]).unwrap();
        let g = a.kernel_basis().unwrap();
        assert_eq!(g, RingMatrix::from_ints(&f2(), &[&[1, 1]]).unwrap());

        let i3 = RingMatrix::identity(&f2(), 3);
        assert_eq!(i3.kernel_basis().unwrap().rows(), 0);
        assert_eq!(brute_kernel(&i3), vec![vec![Elem::ZERO; 3]]);

        let a = RingMatrix::from_ints(&f2(), &[&[1, 1, 1, 0], &[0, 1, 1, 1]]).unwrap();
        let g = a.kernel_basis().unwrap();
        assert_eq!(g.rows(), 2);
        assert!(a.mul(&g.transpose()).unwrap().is_zero());
        let span = brute_span(&g);
        assert_eq!(span.len(), 4);
        assert_eq!(span, brute_kernel(&a));
    }

    #[test]
    fn extension_examples() {
        let t = t_matrix();
        let ext = t.extend_to_invertible().unwrap();
        assert_eq!(ext.full, t);
        assert_eq!(ext.right_inverse, t.inverse().unwrap());
        assert_eq!(ext.complement.cols(), 0);

        let z4 = Ring::new(&RingSpec::zmod(4)).unwrap();
        let a = RingMatrix::from_ints(&z4, &[&[1, 1]]).unwrap();
        check_extension(&a);

        let a = RingMatrix::from_ints(&f2(), &[&[1, 0, 1], &[0, 1, 1]]).unwrap();
        let ext = check_extension(&a);
        assert!(ext.full.is_nonsingular().unwrap());
        assert_eq!(brute_span(&ext.complement.transpose()), brute_kernel(&a));
    }

    fn check_extension(a: &RingMatrix) -> Extension {
        let ext = a.extend_to_invertible().unwrap();
        let (m, l) = (a.rows(), a.cols());
        assert_eq!(ext.full.row_block(0..m), *a);
        let inv = ext.right_inverse.hstack(&ext.complement).unwrap();
        assert!(ext.full.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&ext.full).unwrap().is_identity());
        assert!(a.mul(&ext.right_inverse).unwrap().is_identity());
        assert!(a.mul(&ext.complement).unwrap().is_zero());
        assert_eq!(ext.complement.cols(), l - m);
        ext
    }

    #[test]
    fn determinant_examples() {
        let z4 = Ring::new(&RingSpec::zmod(4)).unwrap();
        let a = RingMatrix::from_ints(&z4, &[&[2, 1], &[1, 2]]).unwrap();
        assert_eq!(a.determinant().unwrap(), Elem(3));
        assert!(a.is_nonsingular().unwrap());
        assert!(a.is_frr());
        let z6 = Ring::new(&RingSpec::zmod(6)).unwrap();
        let five = RingMatrix::from_ints(&z6, &[&[5]]).unwrap();
        assert_eq!(five.inverse().unwrap(), five);
        let rect = RingMatrix::zeros(&z4, 2, 3);
        assert!(matches!(rect.determinant(), Err(Error::NotSquare { .. })));
        let sing = RingMatrix::from_ints(&z4, &[&[2, 0], &[0, 1]]).unwrap();
        assert_eq!(sing.inverse(), Err(Error::Singular));
    }

    #[test]
    fn determinant_matches_leibniz() {
        let z6 = Ring::new(&RingSpec::zmod(6)).unwrap();
        let a = RingMatrix::from_ints(
            &z6,
            &[&[1, 2, 3, 4], &[5, 0, 1, 2], &[3, 3, 4, 1], &[0, 5, 2, 2]],
        )
        .unwrap();
        let mut perm = vec![0usize, 1, 2, 3];
        let mut total: i64 = 0;
        permutations(&mut perm, 0, &mut |p| {
            let inversions = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let prod: i64 = (0..4).map(|i| a.get(i, p[i]).0 as i64).product();
            total += if inversions % 2 == 0 { prod } else { -prod };
        });
        assert_eq!(a.determinant().unwrap(), z6.from_int(total));
    }

    fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, f);
            v.swap(k, i);
        }
    }
}
