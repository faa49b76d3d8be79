//! Factorization of squarefree primitive polynomials in `Z[x]`.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::zp::{self, Zp};

/// Dense integer coefficients in increasing degree, trimmed.
pub(crate) type ZPoly = Vec<BigInt>;

const PRIME_TRIALS: usize = 5;

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    trim(v)
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).collect())
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z)).collect())
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn sym_mod(a: &ZPoly, m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| symmetric(c, m)).collect())
}

fn to_zp(a: &ZPoly, p: u64) -> Zp {
    let pb = BigInt::from(p);
    zp::trim(a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_zp(a: &Zp, p: u64) -> ZPoly {
    let pb = BigInt::from(p);
    trim(a.iter().map(|&c| symmetric(&BigInt::from(c), &pb)).collect())
}

/// Exact quotient over `Z`, or `None` when `b` does not divide `a`.
pub(crate) fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] -= &c * y;
            }
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| trim(q))
}

fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &ZPoly) -> ZPoly {
    let mut c = content(a);
    if a.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (1009u64..).step_by(2).filter(|&n| (3..=n.sqrt()).step_by(2).all(|d| n % d != 0))
}

/// Lifts `f ≡ g·h (mod p)` to `f ≡ G·H (mod p^k)` where `g` is monic and
/// `lc(H) = lc(f)`. Arithmetic is modulo `modulus = p^k`.
fn hensel_two(f: &ZPoly, g: &Zp, h: &Zp, p: u64, k: u32, modulus: &BigInt) -> (ZPoly, ZPoly) {
    let (_s, t) = zp::ext_gcd(g, h, p);
    let lf = f.last().unwrap().clone();
    let mut gg = from_zp(g, p);
    let mut hh = from_zp(h, p);
    *hh.last_mut().unwrap() = symmetric(&lf, modulus);
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    for _ in 1..k {
        let e = sym_mod(&zsub(f, &zmul(&gg, &hh)), modulus);
        let e: ZPoly = e
            .iter()
            .map(|c| {
                debug_assert!((c % &pk).is_zero());
                c / &pk
            })
            .collect();
        let ep = to_zp(&e, p);
        if ep.is_empty() {
            pk *= &pb;
            continue;
        }
        let tau = zp::rem(&zp::mul(&ep, &t, p), g, p);
        let sigma = zp::divrem(&zp::sub(&ep, &zp::mul(&tau, h, p), p), g, p).0;
        let tau: ZPoly = from_zp(&tau, p).iter().map(|c| c * &pk).collect();
        let sigma: ZPoly = from_zp(&sigma, p).iter().map(|c| c * &pk).collect();
        gg = sym_mod(&zadd(&gg, &tau), modulus);
        hh = sym_mod(&zadd(&hh, &sigma), modulus);
        pk *= &pb;
    }
    (gg, hh)
}

/// Lifts monic modular factors of `f` to monic factors modulo `p^k`.
fn multi_lift(f: &ZPoly, facs: &[Zp], p: u64, k: u32, modulus: &BigInt) -> Vec<ZPoly> {
    if facs.len() == 1 {
        let li = mod_inverse(f.last().unwrap(), modulus);
        return vec![sym_mod(&f.iter().map(|c| c * &li).collect(), modulus)];
    }
    let (a, b) = facs.split_at(facs.len() / 2);
    let g = a.iter().fold(vec![1u64], |acc, x| zp::mul(&acc, x, p));
    let lf = to_zp(&vec![f.last().unwrap().clone()], p);
    let h = zp::scale(&b.iter().fold(vec![1u64], |acc, x| zp::mul(&acc, x, p)), lf[0], p);
    let (gg, hh) = hensel_two(f, &g, &h, p, k, modulus);
    let mut out = multi_lift(&gg, a, p, k, modulus);
    out.extend(multi_lift(&hh, b, p, k, modulus));
    out
}

/// Coefficient bound for any factor of `f` (Mignotte-style).
fn factor_bound(f: &ZPoly) -> BigInt {
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    (norm2.sqrt() + 1) << (f.len() - 1)
}

fn for_each_subset(n: usize, s: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        if visit(&idx) {
            return;
        }
        let Some(i) = (0..s).rev().find(|&i| idx[i] < n - s + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Irreducible factors of a squarefree primitive `f` with positive leading
/// coefficient and positive degree.
pub(crate) fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    if f.len() <= 2 {
        return vec![f.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let lc = f.last().unwrap();
    let mut best: Option<(u64, Vec<Zp>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_zp(f, p);
        if zp::deg(&fp) != f.len() - 1 || zp::deg(&zp::gcd(&fp, &zp::derivative(&fp, p), p)) > 0 {
            continue;
        }
        let facs = zp::factor_squarefree(&zp::monic(&fp, p), p, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= PRIME_TRIALS || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, facs) = best.expect("a lucky prime always exists");
    if facs.len() == 1 {
        return vec![f.clone()];
    }
    let bound = factor_bound(f) * lc.abs() * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let mut lifted = multi_lift(f, &facs, p, k, &modulus);
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found: Option<(Vec<usize>, ZPoly, ZPoly)> = None;
        let lcf = f.last().unwrap().clone();
        for_each_subset(lifted.len(), s, |idx| {
            let mut cand = vec![lcf.clone()];
            for &i in idx {
                cand = sym_mod(&zmul(&cand, &lifted[i]), &modulus);
            }
            let cand = primitive(&cand);
            if let Some(q) = zdiv_exact(&f, &cand) {
                found = Some((idx.to_vec(), cand, q));
                true
            } else {
                false
            }
        });
        match found {
            Some((idx, g, q)) => {
                out.push(g);
                f = q;
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if f.len() > 1 {
        out.push(primitive(&f));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp_(c: &[i64]) -> ZPoly {
        c.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn swinnerton_dyer_like_split() {
        // (x^2 - 2)(x^2 - 3)(2x + 1)(x^4 + 1)
        let f = zmul(&zmul(&zp_(&[-2, 0, 1]), &zp_(&[-3, 0, 1])), &zmul(&zp_(&[1, 2]), &zp_(&[1, 0, 0, 0, 1])));
        let mut facs = factor_squarefree(&f);
        facs.sort_by_key(|g| g.len());
        assert_eq!(facs.len(), 4);
        assert_eq!(facs[0], zp_(&[1, 2]));
        assert!(facs.contains(&zp_(&[1, 0, 0, 0, 1])));
    }

    #[test]
    fn irreducible_stays_whole() {
        let f = zp_(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_squarefree(&f), vec![f]);
    }

    #[test]
    fn subsets_enumerate_all() {
        let mut n = 0;
        for_each_subset(5, 2, |_| {
            n += 1;
            false
        });
        assert_eq!(n, 10);
    }
}
