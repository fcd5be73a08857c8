//! Dense polynomials over a prime field, coefficients low-to-high.

pub(crate) type Poly = Vec<u64>;

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime-power factorisation `n = Π p^a`, primes ascending.
pub(crate) fn factor_integer(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut a = 0;
        while n % d == 0 {
            n /= d;
            a += 1;
        }
        if a > 0 {
            out.push((d, a));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub(crate) fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub(crate) fn mul(f: &[u64], g: &[u64], p: u64) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    trim(out)
}

/// Remainder of `f` modulo the monic polynomial `m`.
pub(crate) fn rem_monic(f: &[u64], m: &[u64], p: u64) -> Poly {
    let dm = m.len() - 1;
    let mut r: Poly = f.to_vec();
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = (lead * c) % p;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    trim(r)
}

/// Quotient and remainder of `f` by the monic `m`.
pub(crate) fn divmod_monic(f: &[u64], m: &[u64], p: u64) -> (Poly, Poly) {
    let dm = m.len() - 1;
    let mut r: Poly = f.to_vec();
    if r.len() <= dm {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0; r.len() - dm];
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        q[shift] = lead;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = (lead * c) % p;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    (trim(q), trim(r))
}

pub(crate) fn pow(f: &[u64], e: u32, p: u64) -> Poly {
    let mut acc: Poly = vec![1];
    for _ in 0..e {
        acc = mul(&acc, f, p);
    }
    acc
}

/// Monic polynomials of exact degree `d`, in increasing coefficient order.
fn monics_of_degree(d: usize, p: u64) -> impl Iterator<Item = Poly> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut f = vec![0; d + 1];
        for c in f.iter_mut().take(d) {
            *c = idx % p;
            idx /= p;
        }
        f[d] = 1;
        f
    })
}

/// Factorisation of a monic polynomial into powers of distinct monic
/// irreducibles by trial division, smallest degree first.
pub(crate) fn factor_monic(f: &[u64], p: u64) -> Vec<(Poly, u32)> {
    let mut rest = trim(f.to_vec());
    let mut out = Vec::new();
    let mut d = 1;
    while degree(&rest).unwrap_or(0) >= 1 {
        if 2 * d > degree(&rest).unwrap() {
            // whatever is left has no factor of degree <= half its own
            out.push((rest.clone(), 1));
            break;
        }
        for g in monics_of_degree(d, p) {
            let mut a = 0;
            loop {
                let (q, r) = divmod_monic(&rest, &g, p);
                if !r.is_empty() {
                    break;
                }
                rest = q;
                a += 1;
            }
            if a > 0 {
                out.push((g, a));
            }
        }
        d += 1;
    }
    out
}
