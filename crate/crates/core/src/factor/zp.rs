//! Univariate polynomials over a prime field `Z/p` with `p < 2^31`.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Coefficients in increasing degree, trimmed, each in `0..p`.
pub(crate) type Zp = Vec<u64>;

pub(crate) fn trim(mut a: Zp) -> Zp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn deg(a: &Zp) -> usize {
    a.len().saturating_sub(1)
}

pub(crate) fn sub(a: &Zp, b: &Zp, p: u64) -> Zp {
    let n = a.len().max(b.len());
    trim((0..n).map(|k| (a.get(k).copied().unwrap_or(0) + p - b.get(k).copied().unwrap_or(0)) % p).collect())
}

pub(crate) fn mul(a: &Zp, b: &Zp, p: u64) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    trim(v)
}

pub(crate) fn scale(a: &Zp, c: u64, p: u64) -> Zp {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub(crate) fn divrem(a: &Zp, b: &Zp, p: u64) -> (Zp, Zp) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let mut r = a.clone();
    let db = deg(b);
    let li = inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * li % p;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * y % p) % p;
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &Zp, b: &Zp, p: u64) -> Zp {
    divrem(a, b, p).1
}

pub(crate) fn monic(a: &Zp, p: u64) -> Zp {
    match a.last() {
        Some(&l) => scale(a, inv(l, p), p),
        None => Vec::new(),
    }
}

pub(crate) fn gcd(a: &Zp, b: &Zp, p: u64) -> Zp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(s, t)` with `s·a + t·b = 1`, assuming `a` and `b` coprime.
pub(crate) fn ext_gcd(a: &Zp, b: &Zp, p: u64) -> (Zp, Zp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    debug_assert_eq!(r0.len(), 1, "inputs must be coprime");
    let li = inv(r0[0], p);
    (scale(&s0, li, p), scale(&t0, li, p))
}

pub(crate) fn derivative(a: &Zp, p: u64) -> Zp {
    trim(a.iter().enumerate().skip(1).map(|(k, &c)| (k as u64 % p) * c % p).collect())
}

fn powmod_big(base: &Zp, e: &BigUint, m: &Zp, p: u64) -> Zp {
    let mut acc = vec![1u64];
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), m, p);
        if e.bit(i) {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
    }
    acc
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &Zp, p: u64) -> Vec<(Zp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Zp = vec![0, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut i = 1;
    while deg(&f) >= 2 * i {
        h = powmod_big(&h, &pb, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g) > 0 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, i));
        }
        i += 1;
    }
    if deg(&f) > 0 {
        let d = deg(&f);
        out.push((f, d));
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting.
fn equal_degree(f: &Zp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Zp>) {
    if deg(f) == d {
        out.push(f.clone());
        return;
    }
    let e = (num_traits::pow(BigUint::from(p), d) - 1u32) / 2u32;
    loop {
        let a: Zp = trim((0..deg(f)).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a) == 0 {
            continue;
        }
        let b = sub(&powmod_big(&a, &e, f, p), &vec![1u64], p);
        let g = gcd(&b, f, p);
        if deg(&g) > 0 && deg(&g) < deg(f) {
            let h = divrem(f, &g, p).0;
            equal_degree(&g, d, p, rng, out);
            equal_degree(&h, d, p, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a monic squarefree polynomial over `Z/p`.
pub(crate) fn factor_squarefree(f: &Zp, p: u64, rng: &mut ChaCha8Rng) -> Vec<Zp> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, rng, &mut out);
    }
    out
}
