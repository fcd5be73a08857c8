//! Finite commutative Frobenius rings built from a small constructor tower.
//!
//! A [`Ring`] is described by a [`RingSpec`]: integers modulo `n`, a
//! polynomial quotient `F_p[x]/(f)` with `f` monic, or a finite product of
//! such rings. Every ring in this tower is Frobenius. Construction
//! precomputes full addition and multiplication tables, so arithmetic is a
//! table lookup on element indices.
//!
//! Each ring also carries its decomposition into local components
//! `R ≅ R_1 ⊕ … ⊕ R_s`, realised by primitive idempotents `e_k` with
//! projection and lift tables.
//!
//! Canonical element indices:
//! - `ZMod{n}`: the residue `0..n`.
//! - `PolyQuot{p, f}`: `Σ c_i p^i` over the coefficients of the reduced
//!   representative.
//! - `Product`: mixed radix over the factors, factor 0 least significant.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::limits::{Limits, HARD_MAX_RING_ORDER};
use crate::poly;

/// Index of an element in its ring's canonical enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Elem(pub u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RingSpec {
    #[serde(rename = "zmod")]
    ZMod { n: u64 },
    /// `F_p[x]/(modulus)`, coefficients low-to-high, last entry 1.
    #[serde(rename = "polyquot")]
    PolyQuot { p: u64, modulus: Vec<u64> },
    #[serde(rename = "product")]
    Product { factors: Vec<RingSpec> },
}

impl RingSpec {
    pub fn zmod(n: u64) -> RingSpec {
        RingSpec::ZMod { n }
    }

    pub fn polyquot(p: u64, modulus: &[u64]) -> RingSpec {
        RingSpec::PolyQuot {
            p,
            modulus: modulus.to_vec(),
        }
    }

    pub fn product(factors: Vec<RingSpec>) -> RingSpec {
        RingSpec::Product { factors }
    }

    fn validate(&self) -> Result<()> {
        match self {
            RingSpec::ZMod { n } => {
                if *n < 2 {
                    return Err(Error::DegenerateSpec(format!("zmod n = {n} < 2")));
                }
            }
            RingSpec::PolyQuot { p, modulus } => {
                if !poly::is_prime(*p) {
                    return Err(Error::NonPrimeModulus(*p));
                }
                if modulus.len() < 2 {
                    return Err(Error::DegenerateSpec(
                        "polyquot modulus must have degree >= 1".into(),
                    ));
                }
                if modulus.iter().any(|&c| c >= *p) {
                    return Err(Error::DegenerateSpec(format!(
                        "polyquot coefficients must lie in 0..{p}"
                    )));
                }
                if *modulus.last().unwrap() != 1 {
                    return Err(Error::DegenerateSpec("polyquot modulus must be monic".into()));
                }
            }
            RingSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::DegenerateSpec("product with no factors".into()));
                }
                for f in factors {
                    f.validate()?;
                }
            }
        }
        Ok(())
    }

    /// |R| without building anything; saturates instead of overflowing.
    pub fn order(&self) -> u128 {
        match self {
            RingSpec::ZMod { n } => *n as u128,
            RingSpec::PolyQuot { p, modulus } => {
                let d = modulus.len().saturating_sub(1) as u32;
                (*p as u128).checked_pow(d).unwrap_or(u128::MAX)
            }
            RingSpec::Product { factors } => factors
                .iter()
                .fold(1u128, |acc, f| acc.saturating_mul(f.order())),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::ZMod { n } => write!(f, "Z{n}"),
            RingSpec::PolyQuot { p, modulus } => {
                write!(f, "F{p}[x]/(")?;
                let mut first = true;
                for (i, &c) in modulus.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    match (i, c) {
                        (0, _) => write!(f, "{c}")?,
                        (1, 1) => write!(f, "x")?,
                        (1, _) => write!(f, "{c}x")?,
                        (_, 1) => write!(f, "x^{i}")?,
                        _ => write!(f, "{c}x^{i}")?,
                    }
                }
                write!(f, ")")
            }
            RingSpec::Product { factors } => {
                for (i, r) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{r}")?;
                }
                Ok(())
            }
        }
    }
}

struct Part {
    ring: Ring,
    idempotent: Elem,
    project: Vec<Elem>,
    lift: Vec<Elem>,
}

struct RingInner {
    spec: RingSpec,
    order: usize,
    one: Elem,
    characteristic: u64,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Option<Elem>>,
    units: Vec<Elem>,
    /// Empty for a local ring.
    parts: Vec<Part>,
    factors: Vec<Ring>,
}

/// Shared handle to a constructed ring. Cloning is cheap.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.spec)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

/// Builds a ring under the current process-wide size cap.
pub fn make_ring(spec: &RingSpec) -> Result<Ring> {
    Ring::with_cap(spec, Limits::current().max_ring_order)
}

/// Local components structure of one ring kind, before the component rings
/// themselves are built: `(component spec, projection R -> component)`.
type Split = Vec<(RingSpec, Vec<Elem>)>;

impl Ring {
    pub fn new(spec: &RingSpec) -> Result<Ring> {
        make_ring(spec)
    }

    pub fn with_cap(spec: &RingSpec, cap: usize) -> Result<Ring> {
        spec.validate()?;
        let cap = cap.min(HARD_MAX_RING_ORDER);
        let order = spec.order();
        if order > cap as u128 {
            return Err(Error::RingTooLarge { order, cap });
        }
        Self::build(spec, cap, true)
    }

    fn build(spec: &RingSpec, cap: usize, decompose: bool) -> Result<Ring> {
        let order = spec.order() as usize;
        let mut add = vec![Elem::ZERO; order * order];
        let mut mul = vec![Elem::ZERO; order * order];
        let mut factors = Vec::new();
        match spec {
            RingSpec::ZMod { n } => {
                let n = *n as usize;
                for a in 0..n {
                    for b in 0..n {
                        add[a * n + b] = Elem(((a + b) % n) as u8);
                        mul[a * n + b] = Elem(((a * b) % n) as u8);
                    }
                }
            }
            RingSpec::PolyQuot { p, modulus } => {
                let deg = modulus.len() - 1;
                let coeffs: Vec<Vec<u64>> =
                    (0..order).map(|i| poly_coeffs(i as u64, *p, deg)).collect();
                for a in 0..order {
                    for b in 0..order {
                        let s: Vec<u64> = coeffs[a]
                            .iter()
                            .zip(&coeffs[b])
                            .map(|(x, y)| (x + y) % p)
                            .collect();
                        add[a * order + b] = Elem(poly_index(&s, *p) as u8);
                        let prod = poly::mul(&coeffs[a], &coeffs[b], *p);
                        let r = poly::rem_monic(&prod, modulus, *p);
                        mul[a * order + b] = Elem(poly_index(&r, *p) as u8);
                    }
                }
            }
            RingSpec::Product { factors: fs } => {
                for f in fs {
                    factors.push(Ring::build(f, cap, true)?);
                }
                let radices: Vec<usize> = factors.iter().map(|r| r.order()).collect();
                let split = |mut i: usize| -> Vec<usize> {
                    radices
                        .iter()
                        .map(|&q| {
                            let d = i % q;
                            i /= q;
                            d
                        })
                        .collect()
                };
                let join = |digits: &[usize]| -> usize {
                    digits
                        .iter()
                        .zip(&radices)
                        .rev()
                        .fold(0, |acc, (&d, &q)| acc * q + d)
                };
                let digits: Vec<Vec<usize>> = (0..order).map(split).collect();
                for a in 0..order {
                    for b in 0..order {
                        let s: Vec<usize> = factors
                            .iter()
                            .enumerate()
                            .map(|(k, r)| {
                                r.add(Elem(digits[a][k] as u8), Elem(digits[b][k] as u8))
                                    .index()
                            })
                            .collect();
                        let m: Vec<usize> = factors
                            .iter()
                            .enumerate()
                            .map(|(k, r)| {
                                r.mul(Elem(digits[a][k] as u8), Elem(digits[b][k] as u8))
                                    .index()
                            })
                            .collect();
                        add[a * order + b] = Elem(join(&s) as u8);
                        mul[a * order + b] = Elem(join(&m) as u8);
                    }
                }
            }
        }

        let mut neg = vec![Elem::ZERO; order];
        for a in 0..order {
            for b in 0..order {
                if add[a * order + b] == Elem::ZERO {
                    neg[a] = Elem(b as u8);
                    break;
                }
            }
        }
        let one = (0..order)
            .find(|&e| (0..order).all(|x| mul[e * order + x].index() == x))
            .map(|e| Elem(e as u8))
            .ok_or_else(|| Error::Inconsistent("ring has no identity".into()))?;
        let mut inv = vec![None; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == one {
                    inv[a] = Some(Elem(b as u8));
                    break;
                }
            }
        }
        let units = (0..order)
            .filter(|&a| inv[a].is_some())
            .map(|a| Elem(a as u8))
            .collect();
        let mut characteristic = 1u64;
        let mut acc = one;
        while acc != Elem::ZERO {
            acc = add[acc.index() * order + one.index()];
            characteristic += 1;
        }

        let mut ring = Ring(Arc::new(RingInner {
            spec: spec.clone(),
            order,
            one,
            characteristic,
            add,
            mul,
            neg,
            inv,
            units,
            parts: Vec::new(),
            factors,
        }));
        if decompose {
            let split = ring.local_split();
            if split.len() > 1 {
                let mut parts = Vec::with_capacity(split.len());
                for (k, (cspec, project)) in split.iter().enumerate() {
                    let cring = Ring::build(cspec, cap, false)?;
                    let mut lift = vec![Elem::ZERO; cring.order()];
                    let mut idempotent = None;
                    for r in 0..order {
                        let others_zero = split
                            .iter()
                            .enumerate()
                            .all(|(j, (_, pj))| j == k || pj[r] == Elem::ZERO);
                        if others_zero {
                            lift[project[r].index()] = Elem(r as u8);
                            if project[r] == cring.one() {
                                idempotent = Some(Elem(r as u8));
                            }
                        }
                    }
                    let idempotent = idempotent.ok_or_else(|| {
                        Error::Inconsistent(format!("no idempotent for component {k}"))
                    })?;
                    parts.push(Part {
                        ring: cring,
                        idempotent,
                        project: project.clone(),
                        lift,
                    });
                }
                Arc::get_mut(&mut ring.0)
                    .expect("freshly built ring is uniquely owned")
                    .parts = parts;
            }
        }
        Ok(ring)
    }

    /// Structural splitting into local pieces.
    fn local_split(&self) -> Split {
        let order = self.order();
        match &self.0.spec {
            RingSpec::ZMod { n } => poly::factor_integer(*n)
                .into_iter()
                .map(|(p, a)| {
                    let q = p.pow(a);
                    let proj = (0..order).map(|r| Elem((r as u64 % q) as u8)).collect();
                    (RingSpec::ZMod { n: q }, proj)
                })
                .collect(),
            RingSpec::PolyQuot { p, modulus } => {
                let deg = modulus.len() - 1;
                poly::factor_monic(modulus, *p)
                    .into_iter()
                    .map(|(g, a)| {
                        let ga = poly::pow(&g, a, *p);
                        let proj = (0..order)
                            .map(|r| {
                                let c = poly_coeffs(r as u64, *p, deg);
                                let red = poly::rem_monic(&c, &ga, *p);
                                Elem(poly_index(&red, *p) as u8)
                            })
                            .collect();
                        (
                            RingSpec::PolyQuot {
                                p: *p,
                                modulus: ga,
                            },
                            proj,
                        )
                    })
                    .collect()
            }
            RingSpec::Product { .. } => {
                let mut out = Vec::new();
                let factors = &self.0.factors;
                let mut stride = 1usize;
                for f in factors {
                    let q = f.order();
                    for k in 0..f.num_components() {
                        let (cring, _) = f.component(k).expect("in range");
                        let proj = (0..order)
                            .map(|r| {
                                let digit = Elem(((r / stride) % q) as u8);
                                f.project(digit, k).expect("in range")
                            })
                            .collect();
                        out.push((cring.spec().clone(), proj));
                    }
                    stride *= q;
                }
                out
            }
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    /// Multiplicative identity. Index 1 for `ZMod` and `PolyQuot`; for a
    /// product it is the mixed-radix index of `(1, …, 1)`.
    #[inline]
    pub fn one(&self) -> Elem {
        self.0.one
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + 'static {
        (0..self.0.order).map(|i| Elem(i as u8))
    }

    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.0.order as u64 {
            Ok(Elem(index as u8))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                order: self.0.order,
            })
        }
    }

    /// Image of an integer under `Z -> R`.
    pub fn from_int(&self, k: i64) -> Elem {
        let c = self.0.characteristic as i64;
        let k = k.rem_euclid(c);
        let mut acc = Elem::ZERO;
        for _ in 0..k {
            acc = self.add(acc, self.one());
        }
        acc
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a.index() * self.0.order + b.index()]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a.index() * self.0.order + b.index()]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a.index()]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.0.inv[a.index()].is_some()
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.0.inv[a.index()]
    }

    pub fn invert_unit(&self, a: Elem) -> Result<Elem> {
        self.inverse(a).ok_or(Error::NotAUnit(a))
    }

    pub fn units(&self) -> &[Elem] {
        &self.0.units
    }

    pub fn is_local(&self) -> bool {
        self.0.parts.is_empty()
    }

    pub fn is_field(&self) -> bool {
        self.0.units.len() + 1 == self.0.order
    }

    pub fn num_components(&self) -> usize {
        self.0.parts.len().max(1)
    }

    /// The `k`th local component and its primitive idempotent.
    pub fn component(&self, k: usize) -> Result<(Ring, Elem)> {
        let count = self.num_components();
        if k >= count {
            return Err(Error::ComponentOutOfRange { index: k, count });
        }
        Ok(match self.0.parts.get(k) {
            Some(part) => (part.ring.clone(), part.idempotent),
            None => (self.clone(), self.one()),
        })
    }

    /// All local components with their primitive idempotents; a local ring
    /// is its own single component.
    pub fn decompose(&self) -> Vec<(Ring, Elem)> {
        (0..self.num_components())
            .map(|k| self.component(k).expect("in range"))
            .collect()
    }

    pub fn project(&self, r: Elem, k: usize) -> Result<Elem> {
        let count = self.num_components();
        if k >= count {
            return Err(Error::ComponentOutOfRange { index: k, count });
        }
        Ok(match self.0.parts.get(k) {
            Some(part) => part.project[r.index()],
            None => r,
        })
    }

    /// Embeds an element of component `k` as `(0, …, x, …, 0)`.
    pub fn lift(&self, x: Elem, k: usize) -> Result<Elem> {
        let count = self.num_components();
        if k >= count {
            return Err(Error::ComponentOutOfRange { index: k, count });
        }
        Ok(match self.0.parts.get(k) {
            Some(part) => part.lift[x.index()],
            None => x,
        })
    }

    /// Inverse of projecting onto every component.
    pub fn lift_all(&self, xs: &[Elem]) -> Elem {
        xs.iter().enumerate().fold(Elem::ZERO, |acc, (k, &x)| {
            self.add(acc, self.lift(x, k).expect("in range"))
        })
    }

    pub fn parse_literal(&self, v: &Value) -> Result<Elem> {
        match &self.0.spec {
            RingSpec::ZMod { n } => {
                let k = v
                    .as_i64()
                    .ok_or_else(|| Error::BadLiteral(format!("expected integer, got {v}")))?;
                Ok(Elem(k.rem_euclid(*n as i64) as u8))
            }
            RingSpec::PolyQuot { p, modulus } => {
                let deg = modulus.len() - 1;
                let coeffs: Vec<u64> = match v {
                    Value::Array(items) => {
                        if items.len() > deg {
                            return Err(Error::BadLiteral(format!(
                                "polynomial literal longer than degree {deg}"
                            )));
                        }
                        items
                            .iter()
                            .map(|c| {
                                c.as_i64()
                                    .map(|c| c.rem_euclid(*p as i64) as u64)
                                    .ok_or_else(|| {
                                        Error::BadLiteral(format!("bad coefficient {c}"))
                                    })
                            })
                            .collect::<Result<_>>()?
                    }
                    Value::Number(_) => {
                        let c = v.as_i64().ok_or_else(|| Error::BadLiteral(v.to_string()))?;
                        vec![c.rem_euclid(*p as i64) as u64]
                    }
                    _ => return Err(Error::BadLiteral(format!("expected coefficients, got {v}"))),
                };
                Ok(Elem(poly_index(&coeffs, *p) as u8))
            }
            RingSpec::Product { .. } => {
                let items = v
                    .as_array()
                    .ok_or_else(|| Error::BadLiteral(format!("expected array, got {v}")))?;
                let factors = &self.0.factors;
                if items.len() != factors.len() {
                    return Err(Error::BadLiteral(format!(
                        "product literal needs {} entries",
                        factors.len()
                    )));
                }
                let mut idx = 0usize;
                for (f, item) in factors.iter().zip(items).rev() {
                    idx = idx * f.order() + f.parse_literal(item)?.index();
                }
                Ok(Elem(idx as u8))
            }
        }
    }

    pub fn literal(&self, r: Elem) -> Value {
        match &self.0.spec {
            RingSpec::ZMod { .. } => Value::from(r.0),
            RingSpec::PolyQuot { p, modulus } => {
                let deg = modulus.len() - 1;
                Value::from(poly_coeffs(r.0 as u64, *p, deg))
            }
            RingSpec::Product { .. } => {
                let mut i = r.index();
                let items = self
                    .0
                    .factors
                    .iter()
                    .map(|f| {
                        let d = i % f.order();
                        i /= f.order();
                        f.literal(Elem(d as u8))
                    })
                    .collect();
                Value::Array(items)
            }
        }
    }

    /// Factor rings of a product; empty for other kinds.
    pub fn factors(&self) -> &[Ring] {
        &self.0.factors
    }
}

fn poly_coeffs(mut idx: u64, p: u64, deg: usize) -> Vec<u64> {
    let mut c = vec![0; deg];
    for slot in c.iter_mut() {
        *slot = idx % p;
        idx /= p;
    }
    c
}

fn poly_index(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Per-symbol weight `w: R -> N` with `w(0) = 0` and `w(r) > 0` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    ring: Ring,
    weights: Vec<u64>,
}

impl WeightTable {
    pub fn new(ring: &Ring, weights: Vec<u64>) -> Result<WeightTable> {
        if weights.len() != ring.order() {
            return Err(Error::BadWeightTable(format!(
                "expected {} weights, got {}",
                ring.order(),
                weights.len()
            )));
        }
        if weights[0] != 0 {
            return Err(Error::BadWeightTable("w(0) must be 0".into()));
        }
        if let Some(i) = weights.iter().skip(1).position(|&w| w == 0) {
            return Err(Error::BadWeightTable(format!(
                "w({}) must be positive",
                i + 1
            )));
        }
        Ok(WeightTable {
            ring: ring.clone(),
            weights,
        })
    }

    pub fn hamming(ring: &Ring) -> WeightTable {
        let weights = (0..ring.order()).map(|i| u64::from(i != 0)).collect();
        WeightTable {
            ring: ring.clone(),
            weights,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_hamming(&self) -> bool {
        self.weights.iter().skip(1).all(|&w| w == 1)
    }

    #[inline]
    pub fn weight(&self, r: Elem) -> u64 {
        self.weights[r.index()]
    }

    pub fn word_weight(&self, word: &[Elem]) -> u64 {
        word.iter().map(|&r| self.weight(r)).sum()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }
}
