//! Multivariate polynomial gcd over the rationals.
//!
//! The heuristic evaluation/interpolation gcd handles almost every input;
//! a primitive pseudo-remainder sequence is the fallback when it gives up.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::modgcd::modular_gcd;
use crate::poly::{Poly, Q};

const HEURISTIC_ATTEMPTS: usize = 6;

/// Primitive gcd with positive leading coefficient. `gcd(0, 0)` is zero.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    gcd_cofactors(a, b).0
}

/// Returns `(g, a/g, b/g)` with `g` primitive over the integers.
pub fn gcd_cofactors(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let n = a.nvars();
    if a.is_zero() && b.is_zero() {
        return (Poly::zero(n), Poly::zero(n), Poly::zero(n));
    }
    if a.is_zero() {
        let g = b.primitive();
        return (g, Poly::zero(n), Poly::constant(n, b.content()));
    }
    if b.is_zero() {
        let g = a.primitive();
        return (g, Poly::constant(n, a.content()), Poly::zero(n));
    }
    if a.is_constant() || b.is_constant() {
        return (Poly::one(n), a.clone(), b.clone());
    }
    let (ca, pa) = (a.content(), a.primitive());
    let (cb, pb) = (b.content(), b.primitive());
    if pa == pb {
        return (pa, Poly::constant(n, ca), Poly::constant(n, cb));
    }
    let mut vars: Vec<usize> = (0..n).filter(|&i| !pa.is_free_of(i) || !pb.is_free_of(i)).collect();
    vars.sort_unstable();
    let modular = if vars.len() >= 2 { modular_gcd(&pa, &pb) } else { None };
    let g = match modular {
        Some(g) => g,
        None => match heuristic(&pa, &pb, &vars) {
            Some((g, _, _)) => g.primitive(),
            None => prs_gcd(&pa, &pb),
        },
    };
    let fa = a.div_exact(&g).expect("gcd divides its first argument");
    let fb = b.div_exact(&g).expect("gcd divides its second argument");
    (g, fa, fb)
}

fn max_norm(p: &Poly) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_else(BigInt::zero)
}

fn int_content(p: &Poly) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in p.terms() {
        g = g.gcd(c.numer());
        if g.is_one() {
            break;
        }
    }
    g
}

fn div_int(f: &Poly, h: &Poly) -> Option<Poly> {
    if h.is_zero() {
        return None;
    }
    let q = f.div_exact(h)?;
    q.has_integer_coeffs().then_some(q)
}

/// Symmetric residue of every coefficient modulo `m`.
fn symmetric_trunc(p: &Poly, m: &BigInt) -> Poly {
    let half = m / 2;
    p.map_coeffs(|c| {
        let mut r = c.numer().mod_floor(m);
        if r > half {
            r -= m;
        }
        Q::from_integer(r)
    })
}

/// Rebuilds a polynomial in `x_var` from its value at `x_var = xi`.
fn interpolate(h: &Poly, xi: &BigInt, var: usize) -> Poly {
    let n = h.nvars();
    let mut rest = h.clone();
    let mut out = Poly::zero(n);
    let mut k = 0u32;
    let xq = Q::from_integer(xi.clone());
    let mut xpow = Poly::one(n);
    let xv = Poly::var(n, var);
    while !rest.is_zero() {
        let g = symmetric_trunc(&rest, xi);
        out = out.add(&g.mul(&xpow));
        rest = rest.sub(&g).scale(&xq.recip());
        xpow = xpow.mul(&xv);
        k += 1;
        debug_assert!(k < 10_000);
    }
    if out.leading_coeff().is_negative() {
        out.neg()
    } else {
        out
    }
}

/// Heuristic gcd of integer polynomials whose variables are among `vars`.
fn heuristic(f: &Poly, g: &Poly, vars: &[usize]) -> Option<(Poly, Poly, Poly)> {
    let n = f.nvars();
    let Some((&var, lower)) = vars.split_last() else {
        let a = f.constant_value()?.to_integer();
        let b = g.constant_value()?.to_integer();
        let h = a.gcd(&b);
        if h.is_zero() {
            return None;
        }
        return Some((
            Poly::constant(n, Q::from_integer(h.clone())),
            Poly::constant(n, Q::from_integer(&a / &h)),
            Poly::constant(n, Q::from_integer(&b / &h)),
        ));
    };
    if f.is_free_of(var) && g.is_free_of(var) {
        return heuristic(f, g, lower);
    }
    let common = int_content(f).gcd(&int_content(g));
    let cq = Q::from_integer(common.clone());
    let f = f.scale(&cq.recip());
    let g = g.scale(&cq.recip());
    let fnorm = max_norm(&f);
    let gnorm = max_norm(&g);
    let bound = BigInt::from(2) * (&fnorm).min(&gnorm) + BigInt::from(29);
    let flc = f.leading_coeff().numer().abs();
    let glc = g.leading_coeff().numer().abs();
    let alt = BigInt::from(2) * (&fnorm / &flc).min(&gnorm / &glc) + BigInt::from(4);
    let mut xi = (&bound).min(&(BigInt::from(99) * bound.sqrt())).clone().max(alt);
    for _ in 0..HEURISTIC_ATTEMPTS {
        let xq = Q::from_integer(xi.clone());
        let ff = f.eval_var(var, &xq);
        let gg = g.eval_var(var, &xq);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some((h, cff, cfg)) = heuristic(&ff, &gg, lower) {
                let hp = interpolate(&h, &xi, var);
                let hp = hp.scale(&Q::from_integer(int_content(&hp)).recip());
                if let (Some(cf), Some(cg)) = (div_int(&f, &hp), div_int(&g, &hp)) {
                    return Some((hp.scale(&cq), cf, cg));
                }
                let cffp = interpolate(&cff, &xi, var);
                if let Some(hh) = div_int(&f, &cffp) {
                    if let Some(cg) = div_int(&g, &hh) {
                        return Some((hh.scale(&cq), cffp, cg));
                    }
                }
                let cfgp = interpolate(&cfg, &xi, var);
                if let Some(hh) = div_int(&g, &cfgp) {
                    if let Some(cf) = div_int(&f, &hh) {
                        return Some((hh.scale(&cq), cf, cfgp));
                    }
                }
            }
        }
        xi = BigInt::from(73794) * &xi * xi.sqrt().sqrt() / BigInt::from(27011);
    }
    None
}

/// Content of `p` viewed as a polynomial in `x_v` (a polynomial free of `x_v`).
pub(crate) fn content_in(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero(p.nvars());
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let lb = b.lead_coeff_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.lead_coeff_in(v);
        let shift = Poly::var(r.nvars(), v).pow(dr - db);
        r = r.mul(&lb).sub(&lr.mul(&shift).mul(b));
    }
    r
}

fn prim_in(p: &Poly, v: usize) -> Poly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").primitive()
}

/// Primitive pseudo-remainder sequence gcd; slow but unconditional.
pub(crate) fn prs_gcd(f: &Poly, g: &Poly) -> Poly {
    let n = f.nvars();
    let Some(v) = (0..n).find(|&i| !f.is_free_of(i) || !g.is_free_of(i)) else {
        return Poly::one(n);
    };
    if f.is_free_of(v) {
        return gcd(f, &content_in(g, v));
    }
    if g.is_free_of(v) {
        return gcd(g, &content_in(f, v));
    }
    let c = gcd(&content_in(f, v), &content_in(g, v));
    let (mut a, mut b) = (prim_in(f, v), prim_in(g, v));
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b, v);
        a = b;
        b = if r.is_zero() { r } else { prim_in(&r, v) };
    }
    if a.is_free_of(v) {
        return c;
    }
    c.mul(&prim_in(&a, v)).primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_int;

    fn lin(c: &[i64], k: i64) -> Poly {
        Poly::linear(c, q_int(k))
    }

    #[test]
    fn difference_of_squares() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.pow(2).sub(&y.pow(2));
        let q = x.sub(&y);
        assert_eq!(gcd(&p, &q), q);
        assert_eq!(prs_gcd(&p, &q), q);
    }

    #[test]
    fn coprime_linear_forms() {
        let a = lin(&[1], 1);
        let b = lin(&[1], 2);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn squared_linear_form_times_variable() {
        let b = lin(&[4, 6, 5], 0);
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let p = b.pow(2).mul(&x);
        let q = b.mul(&y);
        let g = gcd(&p, &q);
        assert_eq!(g, b);
        assert!(p.div_exact(&g).is_some() && q.div_exact(&g).is_some());
        assert_eq!(prs_gcd(&p, &q), b);
    }

    #[test]
    fn rational_inputs_are_normalized() {
        let x = Poly::var(1, 0);
        let p = x.pow(2).sub(&Poly::one(1)).scale(&Q::new(3.into(), 7.into()));
        let q = x.sub(&Poly::one(1)).scale(&q_int(-5));
        assert_eq!(gcd(&p, &q), x.sub(&Poly::one(1)));
    }

    #[test]
    fn heuristic_agrees_with_prs_on_products() {
        let f1 = lin(&[1, 2, -1], 3);
        let f2 = lin(&[0, 1, 1], -2);
        let f3 = Poly::var(3, 0).pow(2).add(&Poly::var(3, 1)).add(&Poly::one(3));
        let a = f1.mul(&f2).mul(&f3.pow(2));
        let b = f3.mul(&f1).mul(&lin(&[1, 1, 1], 7));
        let expected = f1.mul(&f3).primitive();
        assert_eq!(gcd(&a, &b), expected);
        assert_eq!(prs_gcd(&a, &b), expected);
    }
}
