#![allow(dead_code)]

pub mod suite;

use std::collections::BTreeSet;

use mpcode::classify::{find_profiles, has_partitioned_orthogonal, is_quasi_orthogonal};
use mpcode::{inner_product, Code, Direction, Elem, Ring, RingMatrix, RingSpec, SfrrProfile};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(spec: RingSpec) -> Ring {
    Ring::new(&spec).expect("valid ring")
}

/// F2, F3, F4, Z4, Z6, F2[x]/(x^2).
pub fn suite_rings() -> Vec<(&'static str, Ring)> {
    vec![
        ("F2", ring(RingSpec::zmod(2))),
        ("F3", ring(RingSpec::zmod(3))),
        ("F4", ring(RingSpec::polyquot(2, &[1, 1, 1]))),
        ("Z4", ring(RingSpec::zmod(4))),
        ("Z6", ring(RingSpec::zmod(6))),
        ("F2[x]/(x^2)", ring(RingSpec::polyquot(2, &[0, 0, 1]))),
    ]
}

pub fn elem(rng: &mut Rng8, r: &Ring) -> Elem {
    Elem(rng.gen_range(0..r.order()) as u8)
}

pub fn unit(rng: &mut Rng8, r: &Ring) -> Elem {
    *r.units().choose(rng).expect("1 is a unit")
}

pub fn vector(rng: &mut Rng8, r: &Ring, n: usize) -> Vec<Elem> {
    (0..n).map(|_| elem(rng, r)).collect()
}

pub fn matrix(rng: &mut Rng8, r: &Ring, m: usize, l: usize) -> RingMatrix {
    let data = (0..m * l).map(|_| elem(rng, r)).collect();
    RingMatrix::new(r, m, l, data).unwrap()
}

/// Random FRR matrix, falling back to `[I | 0]` after many misses.
pub fn frr_matrix(rng: &mut Rng8, r: &Ring, m: usize, l: usize) -> RingMatrix {
    for _ in 0..200 {
        let a = matrix(rng, r, m, l);
        if a.is_frr() {
            return a;
        }
    }
    let mut a = RingMatrix::zeros(r, m, l);
    for i in 0..m {
        a.set(i, i, r.one());
    }
    a
}

/// Random invertible square matrix.
pub fn invertible(rng: &mut Rng8, r: &Ring, n: usize) -> RingMatrix {
    frr_matrix(rng, r, n, n)
}

/// Linear code spanned by `1..=max_gens` random vectors.
pub fn linear_code(rng: &mut Rng8, r: &Ring, n: usize, max_gens: usize) -> Code {
    let k = rng.gen_range(1..=max_gens.max(1));
    let gens = (0..k).map(|_| vector(rng, r, n)).collect();
    Code::linear(r, n, gens).unwrap()
}

/// Random subset of `R^n`, zero word included half the time.
pub fn explicit_code(rng: &mut Rng8, r: &Ring, n: usize, max_words: usize) -> Code {
    let k = rng.gen_range(1..=max_words.max(1));
    let mut words: Vec<Vec<Elem>> = (0..k).map(|_| vector(rng, r, n)).collect();
    if rng.gen_bool(0.5) {
        words.push(vec![Elem::ZERO; n]);
    }
    Code::explicit(r, n, words).unwrap()
}

/// Codes `D_1 ⊇ D_2 ⊇ … ⊇ D_t`, each spanned by a suffix of one generator list.
pub fn decreasing_chain(rng: &mut Rng8, r: &Ring, n: usize, t: usize) -> Vec<Code> {
    let gens: Vec<Vec<Elem>> = (0..t + rng.gen_range(0..2)).map(|_| vector(rng, r, n)).collect();
    (0..t)
        .map(|h| Code::linear(r, n, gens[h..].to_vec()).unwrap())
        .collect()
}

/// Greedy self-orthogonal code: random vectors orthogonal to themselves and
/// to everything chosen before.
pub fn self_orthogonal_code(rng: &mut Rng8, r: &Ring, n: usize, want: usize) -> Code {
    let mut gens: Vec<Vec<Elem>> = Vec::new();
    for _ in 0..60 {
        if gens.len() >= want {
            break;
        }
        let v = vector(rng, r, n);
        if inner_product(r, &v, &v) == Elem::ZERO
            && gens.iter().all(|g| inner_product(r, g, &v) == Elem::ZERO)
        {
            gens.push(v);
        }
    }
    Code::linear(r, n, gens).unwrap()
}

/// Quasi-orthogonal `m × l` matrix, falling back to `[I | 0]`.
pub fn quasi_orthogonal(rng: &mut Rng8, r: &Ring, m: usize, l: usize) -> RingMatrix {
    for _ in 0..400 {
        let a = matrix(rng, r, m, l);
        if is_quasi_orthogonal(&a) {
            return a;
        }
    }
    let mut a = RingMatrix::zeros(r, m, l);
    for i in 0..m {
        a.set(i, i, r.one());
    }
    a
}

/// FRR matrix whose top `m1` rows are orthogonal to the rest: the bottom
/// rows are drawn from the kernel of the top block.
pub fn partitioned_orthogonal(
    rng: &mut Rng8,
    r: &Ring,
    m1: usize,
    m: usize,
    l: usize,
) -> Option<RingMatrix> {
    for _ in 0..100 {
        let top = frr_matrix(rng, r, m1, l);
        let kernel = top.kernel_basis().ok()?;
        if kernel.rows() < m - m1 {
            continue;
        }
        // random combinations of kernel rows stay in the kernel
        let coeffs = matrix(rng, r, m - m1, kernel.rows());
        let bottom = coeffs.mul(&kernel).unwrap();
        let a = top.vstack(&bottom).unwrap();
        if a.is_frr() && has_partitioned_orthogonal(&a, m1).unwrap() {
            return Some(a);
        }
    }
    None
}

/// A random profile in `direction` admitted by `a`, coarsening the finest one.
pub fn random_profile(rng: &mut Rng8, a: &RingMatrix, direction: Direction) -> Option<SfrrProfile> {
    let sets = find_profiles(a).ok()?;
    let finest = sets.finest(direction, a.rows())?;
    let idx = &finest.indices;
    let mut kept = vec![idx[0]];
    for &i in &idx[1..idx.len() - 1] {
        if rng.gen_bool(0.5) {
            kept.push(i);
        }
    }
    kept.push(*idx.last().unwrap());
    Some(SfrrProfile {
        direction,
        indices: kept,
    })
}

/// Largest `n ≤ max_n` with `|R|^{n l} ≤ limit`, at least 1.
pub fn max_length(r: &Ring, l: usize, limit: u128, max_n: usize) -> usize {
    let q = r.order() as u128;
    (1..=max_n)
        .take_while(|&n| q.pow((n * l) as u32) <= limit)
        .last()
        .unwrap_or(1)
}

// ---- oracles ------------------------------------------------------------

pub fn word_set(c: &Code) -> BTreeSet<Vec<u8>> {
    c.words()
        .unwrap()
        .iter()
        .map(|w| w.iter().map(|e| e.0).collect())
        .collect()
}

/// Every vector of `R^n`.
pub fn ambient(r: &Ring, n: usize) -> Vec<Vec<Elem>> {
    let q = r.order();
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut i| {
            let mut v = vec![Elem::ZERO; n];
            for slot in v.iter_mut().rev() {
                *slot = Elem((i % q) as u8);
                i /= q;
            }
            v
        })
        .collect()
}

/// Dual by scanning the ambient space against every codeword.
pub fn brute_dual(c: &Code) -> BTreeSet<Vec<u8>> {
    let r = c.ring();
    let words = c.words().unwrap().to_vecs();
    ambient(r, c.length())
        .into_iter()
        .filter(|x| words.iter().all(|w| inner_product(r, x, w) == Elem::ZERO))
        .map(|x| x.iter().map(|e| e.0).collect())
        .collect()
}

/// Linear span by closing the codeword set under addition and scaling.
pub fn brute_span(c: &Code) -> BTreeSet<Vec<u8>> {
    let r = c.ring();
    let n = c.length();
    let mut set: BTreeSet<Vec<Elem>> = BTreeSet::new();
    set.insert(vec![Elem::ZERO; n]);
    let words = c.words().unwrap().to_vecs();
    for w in words {
        let mut next = set.clone();
        for s in &set {
            for a in r.elements() {
                let v: Vec<Elem> = s.iter().zip(&w).map(|(&x, &y)| r.add(x, r.mul(a, y))).collect();
                next.insert(v);
            }
        }
        set = next;
    }
    set.into_iter().map(|v| v.iter().map(|e| e.0).collect()).collect()
}

/// `[c_1 … c_m]·A` for every choice of codewords, flattened row-major.
pub fn brute_product(codes: &[Code], a: &RingMatrix) -> BTreeSet<Vec<u8>> {
    let r = a.ring();
    let n = codes[0].length();
    let l = a.cols();
    let lists: Vec<Vec<Vec<Elem>>> = codes.iter().map(|c| c.words().unwrap().to_vecs()).collect();
    let mut out = BTreeSet::new();
    let mut pick = vec![0usize; codes.len()];
    loop {
        let mut word = vec![Elem::ZERO; n * l];
        for i in 0..n {
            for j in 0..l {
                let mut acc = Elem::ZERO;
                for (k, list) in lists.iter().enumerate() {
                    acc = r.add(acc, r.mul(list[pick[k]][i], a.get(k, j)));
                }
                word[i * l + j] = acc;
            }
        }
        out.insert(word.iter().map(|e| e.0).collect());
        let mut k = 0;
        loop {
            if k == pick.len() {
                return out;
            }
            pick[k] += 1;
            if pick[k] < lists[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// Minimum Hamming distance over distinct pairs; `n + 1` for a single word.
pub fn brute_distance(words: &BTreeSet<Vec<u8>>, n: usize) -> u64 {
    let v: Vec<&Vec<u8>> = words.iter().collect();
    let mut best = n as u64 + 1;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let d = v[i].iter().zip(v[j]).filter(|(a, b)| a != b).count() as u64;
            best = best.min(d);
        }
    }
    best
}

/// All pairwise inner products vanish.
pub fn pairwise_orthogonal(r: &Ring, words: &BTreeSet<Vec<u8>>) -> bool {
    let v: Vec<Vec<Elem>> = words.iter().map(|w| w.iter().map(|&x| Elem(x)).collect()).collect();
    v.iter()
        .all(|x| v.iter().all(|y| inner_product(r, x, y) == Elem::ZERO))
}

/// Determinant by permutation expansion.
pub fn brute_det(a: &RingMatrix) -> Elem {
    let r = a.ring();
    let n = a.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Elem::ZERO;
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = r.one();
        for (i, &j) in p.iter().enumerate() {
            term = r.mul(term, a.get(i, j));
        }
        if inversions % 2 == 1 {
            term = r.neg(term);
        }
        total = r.add(total, term);
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}
