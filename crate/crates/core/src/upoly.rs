//! Dense univariate polynomials over the rationals.

use num_traits::{One, Zero};

use crate::poly::{Monomial, Poly, Q};

/// Coefficients in increasing degree, trimmed so the last entry is nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct UPoly(pub Vec<Q>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![Q::one()])
    }

    pub fn constant(c: Q) -> Self {
        UPoly(vec![c]).trimmed()
    }

    pub fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree zero.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.0.get(k).cloned().unwrap_or_else(Q::zero)
    }

    /// Reads a polynomial whose only variable is `x_var`.
    pub fn from_poly(p: &Poly, var: usize) -> Self {
        let mut v = vec![Q::zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            debug_assert!(m.exponents().iter().enumerate().all(|(i, &e)| i == var || e == 0));
            v[m.exponent(var) as usize] = c.clone();
        }
        UPoly(v).trimmed()
    }

    pub fn to_poly(&self, nvars: usize, var: usize) -> Poly {
        Poly::from_terms(
            nvars,
            self.0.iter().enumerate().map(|(k, c)| {
                let mut e = vec![0u32; nvars];
                e[var] = k as u32;
                (Monomial::from_exponents(&e), c.clone())
            }),
        )
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect()).trimmed()
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect()).trimmed()
    }

    pub fn scale(&self, c: &Q) -> UPoly {
        UPoly(self.0.iter().map(|a| a * c).collect()).trimmed()
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly(v).trimmed()
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.0.clone();
        if r.len() < d.0.len() {
            return (UPoly::zero(), self.clone());
        }
        let dl = d.lc();
        let dd = d.degree();
        let mut q = vec![Q::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, b) in d.0.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly(q).trimmed(), UPoly(r).trimmed())
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g` and `g` monic.
    pub fn ext_gcd(&self, o: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly(self.0.iter().enumerate().skip(1).map(|(k, c)| c * Q::from_integer((k as i64).into())).collect())
            .trimmed()
    }

    /// `p(c·x)`
    pub fn scale_var(&self, c: &Q) -> UPoly {
        let mut pw = Q::one();
        let mut v = Vec::with_capacity(self.0.len());
        for a in &self.0 {
            v.push(a * &pw);
            pw *= c;
        }
        UPoly(v).trimmed()
    }

    /// Inverse of `self` modulo `m`, assuming they are coprime.
    pub fn inv_mod(&self, m: &UPoly) -> Option<UPoly> {
        let (g, s, _) = self.ext_gcd(m);
        (g.degree() == 0 && !g.is_zero()).then(|| s.rem(m))
    }
}
