//! Factorization of multivariate polynomials over the rationals.
//!
//! Univariate inputs go through Zassenhaus (Cantor-Zassenhaus splitting
//! modulo a small prime, Hensel lifting, subset recombination). Multivariate
//! squarefree inputs are reduced to one variable by evaluation and lifted
//! back by Hensel lifting, with the true leading coefficients imposed on
//! the factors before lifting starts.

mod zassenhaus;
pub(crate) mod zp;

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gcd::{content_in, gcd_cofactors};
use crate::poly::{Monomial, Poly, Q};
use crate::upoly::UPoly;

/// `unit · Π factorᵉ` with primitive integer factors of positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Q,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, nvars: usize) -> Poly {
        self.factors.iter().fold(Poly::constant(nvars, self.unit.clone()), |acc, (f, e)| acc.mul(&f.pow(*e)))
    }
}

/// Canonical ordering of factors: by total degree, then by terms.
pub(crate) fn poly_cmp(a: &Poly, b: &Poly) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| {
        for ((ma, ca), (mb, cb)) in a.terms().zip(b.terms()) {
            let o = mb.cmp(ma).then_with(|| ca.cmp(cb));
            if o != Ordering::Equal {
                return o;
            }
        }
        a.num_terms().cmp(&b.num_terms())
    })
}

/// Complete factorization into irreducibles over `Q`.
pub fn factor(p: &Poly) -> Factorization {
    if p.is_zero() {
        return Factorization { unit: Q::zero(), factors: Vec::new() };
    }
    let unit = p.content();
    let mut raw = Vec::new();
    factor_primitive(&p.primitive(), 1, &mut raw);
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (f, e) in raw {
        match merged.iter_mut().find(|(g, _)| *g == f) {
            Some(slot) => slot.1 += e,
            None => merged.push((f, e)),
        }
    }
    merged.sort_by(|a, b| poly_cmp(&a.0, &b.0));
    Factorization { unit, factors: merged }
}

/// True for non-constant polynomials with no nontrivial factorization.
pub fn is_irreducible(p: &Poly) -> bool {
    if p.is_constant() {
        return false;
    }
    let f = factor(p);
    f.factors.len() == 1 && f.factors[0].1 == 1
}

fn factor_primitive(q: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) {
    let Some(m) = q.support().into_iter().min_by_key(|&i| (q.degree_in(i), i)) else {
        return;
    };
    let cont = content_in(q, m);
    if !cont.is_constant() {
        factor_primitive(&cont.primitive(), mult, out);
    }
    let pp = q.div_exact(&cont).expect("content divides").primitive();
    for (s, i) in yun(&pp, m) {
        for g in factor_squarefree(&s, m) {
            out.push((g, i * mult));
        }
    }
}

/// Squarefree decomposition with respect to `x_m` of a polynomial that is
/// primitive in `x_m`.
fn yun(f: &Poly, m: usize) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    let (_, mut b, c) = gcd_cofactors(f, &f.derivative(m));
    let mut d = c.sub(&b.derivative(m));
    let mut i = 1;
    while !b.is_free_of(m) {
        let (a, b2, d2) = gcd_cofactors(&b, &d);
        if !a.is_free_of(m) {
            out.push((a.primitive(), i));
        }
        b = b2;
        d = d2.sub(&b.derivative(m));
        i += 1;
    }
    out
}

fn upoly_to_z(u: &UPoly) -> zassenhaus::ZPoly {
    let p = u.to_poly(1, 0).primitive();
    UPoly::from_poly(&p, 0).0.iter().map(|c| c.to_integer()).collect()
}

fn z_to_upoly(z: &[BigInt]) -> UPoly {
    UPoly(z.iter().map(|c| Q::from_integer(c.clone())).collect())
}

fn factor_univariate(u: &UPoly) -> Vec<UPoly> {
    zassenhaus::factor_squarefree(&upoly_to_z(u)).iter().map(|z| z_to_upoly(z)).collect()
}

/// Irreducible factors of a squarefree polynomial primitive in `x_m`.
fn factor_squarefree(f: &Poly, m: usize) -> Vec<Poly> {
    if f.degree_in(m) == 1 {
        return vec![f.primitive()];
    }
    let n = f.nvars();
    if f.support().len() == 1 {
        return factor_univariate(&UPoly::from_poly(f, m)).iter().map(|u| u.to_poly(n, m).primitive()).collect();
    }
    factor_multivariate(f, m)
}

fn free_degree(mono: &Monomial, m: usize) -> u32 {
    mono.degree() - mono.exponent(m)
}

/// Image of `f` at the origin in every variable except `x_m`.
fn image_at_origin(f: &Poly, m: usize) -> UPoly {
    let mut v = vec![Q::zero(); f.degree_in(m) as usize + 1];
    for (mono, c) in f.terms() {
        if free_degree(mono, m) == 0 {
            v[mono.exponent(m) as usize] = c.clone();
        }
    }
    UPoly(v).trimmed()
}

fn factor_multivariate(f: &Poly, m: usize) -> Vec<Poly> {
    let n = f.nvars();
    let support = f.support();
    let d = f.degree_in(m) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7);
    let mut attempt = 0i64;
    let (shift, ft, image) = loop {
        let mut s = vec![0i64; n];
        if attempt > 0 {
            let r = 1 + attempt / 3;
            for &i in &support {
                if i != m {
                    s[i] = rng.gen_range(-r..=r);
                }
            }
        }
        attempt += 1;
        let ft = f.shift(&s);
        let img = image_at_origin(&ft, m);
        if img.degree() != d || img.is_zero() {
            continue;
        }
        if img.gcd(&img.derivative()).degree() > 0 {
            continue;
        }
        break (s, ft, img);
    };
    let mut images = factor_univariate(&image);
    if images.len() == 1 {
        return vec![f.primitive()];
    }
    let mut cur = ft;
    let mut found_factors = Vec::new();
    let mut s = 1;
    while 2 * s <= images.len() {
        let mut hit = None;
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let g0 = idx.iter().fold(UPoly::one(), |acc, &i| acc.mul(&images[i]));
            let h0 = (0..images.len()).filter(|i| !idx.contains(i)).fold(UPoly::one(), |acc, i| acc.mul(&images[i]));
            if let Some(gh) = lift_two(&cur, m, &g0, &h0) {
                hit = Some((idx.clone(), gh));
                break;
            }
            let k = images.len();
            let Some(i) = (0..s).rev().find(|&i| idx[i] < k - s + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
        }
        match hit {
            Some((idx, (g, h))) => {
                found_factors.push(g);
                cur = h;
                for &i in idx.iter().rev() {
                    images.remove(i);
                }
            }
            None => s += 1,
        }
    }
    found_factors.push(cur);
    let back: Vec<i64> = shift.iter().map(|k| -k).collect();
    found_factors.iter().map(|g| g.shift(&back).primitive()).collect()
}

/// Lifts `f(x_m, 0) ∝ g0·h0` to a factorization `f = G·H`, or `None` when the
/// split does not come from a true factorization.
fn lift_two(f: &Poly, m: usize, g0u: &UPoly, h0u: &UPoly) -> Option<(Poly, Poly)> {
    let n = f.nvars();
    let lead = f.lead_coeff_in(m);
    let l0 = lead.constant_term();
    let fp = f.mul(&lead);
    let g0 = g0u.scale(&(&l0 / g0u.lc()));
    let h0 = h0u.scale(&(&l0 / h0u.lc()));
    let (one, _, t_) = g0.ext_gcd(&h0);
    if one.degree() != 0 {
        return None;
    }
    let xm = Poly::var(n, m);
    let dg = g0.degree() as u32;
    let dh = h0.degree() as u32;
    let tail = |u: &UPoly| UPoly(u.0[..u.0.len() - 1].to_vec()).trimmed().to_poly(n, m);
    let mut g = lead.mul(&xm.pow(dg)).add(&tail(&g0));
    let mut h = lead.mul(&xm.pow(dh)).add(&tail(&h0));
    let bound = fp.terms().map(|(mono, _)| free_degree(mono, m)).max().unwrap_or(0);
    for k in 1..=bound {
        let e = fp.sub(&g.mul(&h));
        if e.is_zero() {
            break;
        }
        let mut buckets: HashMap<Monomial, Vec<Q>> = HashMap::new();
        for (mono, c) in e.terms() {
            let fd = free_degree(mono, m);
            if fd < k {
                return None;
            }
            if fd > k {
                continue;
            }
            let mut ex = mono.exponents().to_vec();
            let j = ex[m] as usize;
            ex[m] = 0;
            let slot = buckets.entry(Monomial::from_exponents(&ex)).or_default();
            if slot.len() <= j {
                slot.resize(j + 1, Q::zero());
            }
            slot[j] = c.clone();
        }
        for (mu, coeffs) in buckets {
            let c = UPoly(coeffs).trimmed();
            let tau = c.mul(&t_).rem(&g0);
            let sigma = c.sub(&tau.mul(&h0)).divrem(&g0).0;
            let mu = Poly::monomial(mu, Q::one());
            g = g.add(&tau.to_poly(n, m).mul(&mu));
            h = h.add(&sigma.to_poly(n, m).mul(&mu));
        }
    }
    if fp != g.mul(&h) {
        return None;
    }
    let g = g.div_exact(&content_in(&g, m))?.primitive();
    let h = f.div_exact(&g)?;
    Some((g, h.primitive()))
}
