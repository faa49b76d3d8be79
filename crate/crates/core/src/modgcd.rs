//! Brown's dense modular gcd for multivariate integer polynomials.
//!
//! Images modulo word-size primes are computed by evaluating away the last
//! variable and interpolating; images are combined by Chinese remaindering
//! until they stabilize, and the candidate is confirmed by trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::factor::zp::{self, Zp};
use crate::poly::{Monomial, Poly, Q};

const MAX_PRIMES: usize = 400;

/// Sparse polynomial mod `p`: `(packed exponents, coefficient)`, keys descending.
type Sp = Vec<(u64, u64)>;

#[derive(Clone, Copy)]
struct Layout {
    n: usize,
    bits: u32,
}

impl Layout {
    fn shift(&self, i: usize) -> u32 {
        self.bits * (self.n - 1 - i) as u32
    }

    fn mask(&self) -> u64 {
        if self.bits == 64 {
            u64::MAX
        } else {
            (1u64 << self.bits) - 1
        }
    }

    fn pack(&self, m: &Monomial) -> u64 {
        m.exponents().iter().enumerate().fold(0u64, |k, (i, &e)| k | ((e as u64) << self.shift(i)))
    }

    fn exp(&self, key: u64, i: usize) -> usize {
        ((key >> self.shift(i)) & self.mask()) as usize
    }

    fn without(&self, key: u64, i: usize) -> u64 {
        key & !(self.mask() << self.shift(i))
    }

    fn with(&self, key: u64, i: usize, e: usize) -> u64 {
        self.without(key, i) | ((e as u64) << self.shift(i))
    }

    fn unpack(&self, key: u64) -> Monomial {
        let e: Vec<u32> = (0..self.n).map(|i| self.exp(key, i) as u32).collect();
        Monomial::from_exponents(&e)
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn eval_zp(a: &Zp, x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Groups terms by their exponents outside `x_k`: `(prefix key, coefficient in x_k)`.
fn split_last(a: &Sp, k: usize, l: Layout) -> Vec<(u64, Zp)> {
    let mut out: Vec<(u64, Zp)> = Vec::new();
    for &(key, c) in a {
        let pre = l.without(key, k);
        let e = l.exp(key, k);
        if out.last().is_none_or(|(q, _)| *q != pre) {
            out.push((pre, Vec::new()));
        }
        let v = &mut out.last_mut().unwrap().1;
        if v.len() <= e {
            v.resize(e + 1, 0);
        }
        v[e] = c;
    }
    out
}

fn join(groups: &[(u64, Zp)], k: usize, l: Layout) -> Sp {
    let mut out = Vec::new();
    for (pre, c) in groups {
        for e in (0..c.len()).rev() {
            if c[e] != 0 {
                out.push((l.with(*pre, k, e), c[e]));
            }
        }
    }
    out
}

fn eval_last(a: &Sp, k: usize, x: u64, p: u64, l: Layout) -> Sp {
    split_last(a, k, l)
        .into_iter()
        .filter_map(|(pre, c)| {
            let v = eval_zp(&c, x, p);
            (v != 0).then_some((pre, v))
        })
        .collect()
}

fn scale_sp(a: &Sp, c: u64, p: u64) -> Sp {
    a.iter().map(|&(k, x)| (k, x * c % p)).filter(|t| t.1 != 0).collect()
}

/// Gcd of `a` and `b` in `Z_p[x_0..x_k]`, monic in lexicographic order.
fn pgcd(a: &Sp, b: &Sp, k: usize, p: u64, rng: &mut ChaCha8Rng, l: Layout) -> Sp {
    if a.is_empty() {
        return scale_sp(b, zp::inv(b[0].1, p), p);
    }
    if b.is_empty() {
        return scale_sp(a, zp::inv(a[0].1, p), p);
    }
    if k == 0 {
        let to = |s: &Sp| split_last(s, 0, l).pop().expect("nonzero").1;
        let g = zp::gcd(&to(a), &to(b), p);
        return join(&[(0, g)], 0, l);
    }
    let ga = split_last(a, k, l);
    let gb = split_last(b, k, l);
    let content =
        |g: &[(u64, Zp)]| g.iter().fold(Vec::new(), |c: Zp, (_, x)| if c.len() == 1 { c } else { zp::gcd(&c, x, p) });
    let (ca, cb) = (content(&ga), content(&gb));
    let c = zp::gcd(&ca, &cb, p);
    let ga: Vec<(u64, Zp)> = ga.into_iter().map(|(q, x)| (q, zp::divrem(&x, &ca, p).0)).collect();
    let gb: Vec<(u64, Zp)> = gb.into_iter().map(|(q, x)| (q, zp::divrem(&x, &cb, p).0)).collect();
    let (la, lb) = (&ga[0].1, &gb[0].1);
    let g = zp::gcd(la, lb, p);
    let dk = |gr: &[(u64, Zp)]| gr.iter().map(|(_, x)| zp::deg(x)).max().unwrap_or(0);
    let bound = dk(&ga).min(dk(&gb)) + zp::deg(&g);
    let (a, b) = (join(&ga, k, l), join(&gb, k, l));
    let with_content = |h: Vec<(u64, Zp)>| -> Sp {
        let h: Vec<(u64, Zp)> = h.into_iter().map(|(q, x)| (q, zp::mul(&x, &c, p))).collect();
        let s = join(&h, k, l);
        scale_sp(&s, zp::inv(s[0].1, p), p)
    };
    let mut h: Option<(Vec<(u64, Zp)>, Zp)> = None;
    loop {
        let x = rng.gen_range(0..p);
        let gx = eval_zp(&g, x, p);
        if gx == 0 || eval_zp(la, x, p) == 0 || eval_zp(lb, x, p) == 0 {
            continue;
        }
        let cx = pgcd(&eval_last(&a, k, x, p, l), &eval_last(&b, k, x, p, l), k - 1, p, rng, l);
        if cx.len() == 1 && cx[0].0 == 0 {
            return join(&[(0, c.clone())], k, l);
        }
        let cx = scale_sp(&cx, gx * zp::inv(cx[0].1, p) % p, p);
        let lm = cx[0].0;
        let lin = vec![(p - x) % p, 1];
        let restart = match &h {
            None => true,
            Some((hh, _)) => {
                if lm > hh[0].0 {
                    continue;
                }
                lm < hh[0].0
            }
        };
        if restart {
            h = Some((cx.iter().map(|&(q, v)| (q, vec![v])).collect(), lin));
        } else {
            let (hh, q) = h.take().expect("present");
            let qinv = zp::inv(eval_zp(&q, x, p), p);
            let mut merged: Vec<(u64, Zp)> = Vec::with_capacity(hh.len().max(cx.len()));
            let (mut i, mut j) = (0, 0);
            while i < hh.len() || j < cx.len() {
                let (key, old, new) = match (hh.get(i), cx.get(j)) {
                    (Some((hk, hv)), Some(&(ck, cv))) if *hk == ck => {
                        i += 1;
                        j += 1;
                        (ck, hv.clone(), cv)
                    }
                    (Some((hk, hv)), Some(&(ck, _))) if *hk > ck => {
                        i += 1;
                        (*hk, hv.clone(), 0)
                    }
                    (Some((hk, hv)), None) => {
                        i += 1;
                        (*hk, hv.clone(), 0)
                    }
                    (_, Some(&(ck, cv))) => {
                        j += 1;
                        (ck, Vec::new(), cv)
                    }
                    (None, None) => unreachable!(),
                };
                let diff = (new + p - eval_zp(&old, x, p)) % p * qinv % p;
                let upd = if diff == 0 { old } else { zp::trim(add_zp(&old, &zp::scale(&q, diff, p), p)) };
                if !upd.is_empty() {
                    merged.push((key, upd));
                }
            }
            h = Some((merged, zp::mul(&q, &lin, p)));
        }
        let (hh, q) = h.as_ref().expect("present");
        if zp::deg(q) > bound {
            let cont = content(hh);
            let prim: Vec<(u64, Zp)> = hh.iter().map(|(q, x)| (*q, zp::divrem(x, &cont, p).0)).collect();
            return with_content(prim);
        }
    }
}

fn add_zp(a: &Zp, b: &Zp, p: u64) -> Zp {
    let n = a.len().max(b.len());
    (0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect()
}

fn reduce(a: &[(u64, BigInt)], p: u64) -> Sp {
    let pb = BigInt::from(p);
    a.iter()
        .filter_map(|(k, c)| {
            let r = c.mod_floor(&pb).to_u64().expect("small residue");
            (r != 0).then_some((*k, r))
        })
        .collect()
}

fn symmetric(x: BigInt, m: &BigInt) -> BigInt {
    let x = x.mod_floor(m);
    if &x + &x > *m {
        x - m
    } else {
        x
    }
}

/// Gcd of two primitive integer polynomials in at least two variables, or
/// `None` when the exponents do not fit the packing.
pub(crate) fn modular_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let n = a.nvars();
    if n < 2 {
        return None;
    }
    let bits = (64 / n as u32).min(32);
    let l = Layout { n, bits };
    let maxdeg = (0..n).map(|i| a.degree_in(i).max(b.degree_in(i))).max().unwrap_or(0);
    if maxdeg as u64 >= 1u64 << (bits - 1) {
        return None;
    }
    let to_int = |p: &Poly| -> Option<Vec<(u64, BigInt)>> {
        let mut v: Vec<(u64, BigInt)> =
            p.terms().map(|(m, c)| c.is_integer().then(|| (l.pack(m), c.numer().clone()))).collect::<Option<_>>()?;
        v.sort_unstable_by_key(|x| std::cmp::Reverse(x.0));
        Some(v)
    };
    let (ia, ib) = (to_int(a)?, to_int(b)?);
    let g = ia[0].1.gcd(&ib[0].1);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6cd);
    let mut acc: Option<(Vec<(u64, BigInt)>, BigInt)> = None;
    let mut p = (1u64 << 31) - 1;
    let mut used = 0;
    while used < MAX_PRIMES {
        p -= 2;
        if !is_prime(p) {
            continue;
        }
        let pb = BigInt::from(p);
        if (&ia[0].1 % &pb).is_zero() || (&ib[0].1 % &pb).is_zero() {
            continue;
        }
        used += 1;
        let (ap, bp) = (reduce(&ia, p), reduce(&ib, p));
        let gp = pgcd(&ap, &bp, n - 1, p, &mut rng, l);
        if gp.len() == 1 && gp[0].0 == 0 {
            return Some(Poly::one(n));
        }
        let gm = g.mod_floor(&pb).to_u64().expect("small residue");
        let gp = scale_sp(&gp, gm * zp::inv(gp[0].1, p) % p, p);
        let fresh = |gp: &Sp| -> (Vec<(u64, BigInt)>, BigInt) {
            (gp.iter().map(|&(k, c)| (k, symmetric(BigInt::from(c), &pb))).collect(), pb.clone())
        };
        let Some((h, m)) = acc.take() else {
            acc = Some(fresh(&gp));
            continue;
        };
        if gp[0].0 > h[0].0 {
            acc = Some((h, m));
            continue;
        }
        if gp[0].0 < h[0].0 {
            acc = Some(fresh(&gp));
            continue;
        }
        let mm = &m * &pb;
        let minv = BigInt::from(zp::inv((&m % &pb).to_u64().expect("small"), p));
        let mut merged = Vec::with_capacity(h.len().max(gp.len()));
        let (mut i, mut j) = (0, 0);
        while i < h.len() || j < gp.len() {
            let (key, old, new) = match (h.get(i), gp.get(j)) {
                (Some((hk, hv)), Some(&(ck, cv))) if *hk == ck => {
                    i += 1;
                    j += 1;
                    (ck, hv.clone(), cv)
                }
                (Some((hk, hv)), Some(&(ck, _))) if *hk > ck => {
                    i += 1;
                    (*hk, hv.clone(), 0)
                }
                (Some((hk, hv)), None) => {
                    i += 1;
                    (*hk, hv.clone(), 0)
                }
                (_, Some(&(ck, cv))) => {
                    j += 1;
                    (ck, BigInt::zero(), cv)
                }
                (None, None) => unreachable!(),
            };
            let t = ((BigInt::from(new) - &old) * &minv).mod_floor(&pb);
            let x = symmetric(&old + t * &m, &mm);
            if !x.is_zero() {
                merged.push((key, x));
            }
        }
        let stable = merged == h;
        if stable {
            let cand =
                Poly::from_terms(n, merged.iter().map(|(k, c)| (l.unpack(*k), Q::from_integer(c.clone())))).primitive();
            if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return Some(cand);
            }
        }
        acc = Some((merged, mm));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_int;

    #[test]
    fn recovers_common_factor() {
        let f1 = Poly::linear(&[1, 2, -1], q_int(3));
        let f2 = Poly::linear(&[0, 1, 1], q_int(-2));
        let f3 = Poly::var(3, 0).pow(2).add(&Poly::var(3, 1).scale(&q_int(7))).add(&Poly::one(3));
        let a = f1.mul(&f2).mul(&f3.pow(2));
        let b = f3.mul(&f1).mul(&Poly::linear(&[1, 1, 1], q_int(7)));
        assert_eq!(modular_gcd(&a, &b), Some(f1.mul(&f3).primitive()));
        let c = Poly::linear(&[5, -3, 2], q_int(1));
        assert!(modular_gcd(&a, &c).unwrap().is_one());
        let big = Poly::linear(&[1, 1, 0], q_int(1)).pow(5).scale(&q_int(1_000_000_007));
        let g = modular_gcd(&big.primitive(), &Poly::linear(&[1, 1, 0], q_int(1)).pow(3).mul(&f2)).unwrap();
        assert_eq!(g, Poly::linear(&[1, 1, 0], q_int(1)).pow(3));
    }
}
