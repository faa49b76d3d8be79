//! Polynomials in one distinguished variable `x_i` whose coefficients are
//! rational functions free of `x_i`, plus partial fractions and
//! antidifferences built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::factor::factor;
use crate::poly::{Poly, Q};
use crate::rational::RationalFunction;

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct FPoly {
    nvars: usize,
    var: usize,
    coeffs: Vec<RationalFunction>,
}

impl FPoly {
    pub fn zero(nvars: usize, var: usize) -> Self {
        FPoly { nvars, var, coeffs: Vec::new() }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn from_poly(p: &Poly, var: usize) -> Self {
        let n = p.nvars();
        FPoly { nvars: n, var, coeffs: p.coeffs_in(var).into_iter().map(RationalFunction::from_poly).collect() }
            .trimmed()
    }

    /// Splits `f = N/D` as `(N/c)` over `D/c` where `c` is any factor of `D`
    /// free of `x_var`. Only valid when `f` is a polynomial in `x_var`.
    pub fn from_rf(f: &RationalFunction, var: usize) -> Self {
        assert!(f.denom().is_free_of(var), "not polynomial in the distinguished variable");
        let n = f.nvars();
        let den = RationalFunction::from_poly(f.denom().clone());
        let inv = den.recip().expect("nonzero denominator");
        FPoly { nvars: n, var, coeffs: f.numer().coeffs_in(var).into_iter().map(|c| inv.mul_poly(&c)).collect() }
            .trimmed()
    }

    /// Builds from univariate rational coefficients.
    pub fn from_q(nvars: usize, var: usize, c: &[Q]) -> Self {
        FPoly { nvars, var, coeffs: c.iter().map(|a| RationalFunction::constant(nvars, a.clone())).collect() }.trimmed()
    }

    pub fn to_rf(&self) -> RationalFunction {
        let mut lcm = Poly::one(self.nvars);
        for c in &self.coeffs {
            if !c.is_zero() {
                let g = crate::gcd::gcd(&lcm, c.denom());
                lcm = lcm.mul(&c.denom().div_exact(&g).expect("gcd divides"));
            }
        }
        let xv = Poly::var(self.nvars, self.var);
        let mut num = Poly::zero(self.nvars);
        let mut xp = Poly::one(self.nvars);
        for c in &self.coeffs {
            if !c.is_zero() {
                let scale = lcm.div_exact(c.denom()).expect("lcm is a multiple");
                num = num.add(&c.numer().mul(&scale).mul(&xp));
            }
            xp = xp.mul(&xv);
        }
        RationalFunction::new(num, lcm).expect("nonzero denominator")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> RationalFunction {
        self.coeffs.last().cloned().unwrap_or_else(|| RationalFunction::zero(self.nvars))
    }

    pub fn coeff(&self, k: usize) -> RationalFunction {
        self.coeffs.get(k).cloned().unwrap_or_else(|| RationalFunction::zero(self.nvars))
    }

    fn with(&self, coeffs: Vec<RationalFunction>) -> Self {
        FPoly { nvars: self.nvars, var: self.var, coeffs }.trimmed()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        self.with((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        self.with((0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        self.with(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return self.with(Vec::new());
        }
        let mut v = vec![RationalFunction::zero(self.nvars); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        self.with(v)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (self.with(Vec::new()), self.clone());
        }
        let inv = d.lc().recip().expect("nonzero leading coefficient");
        let dd = d.degree();
        let mut r = self.coeffs.clone();
        let mut q = vec![RationalFunction::zero(self.nvars); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&inv);
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].sub(&c.mul(b));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (self.with(q), self.with(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Inverse of `self` modulo `m`, assuming coprimality.
    pub fn inv_mod(&self, m: &Self) -> Self {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut t0, mut t1) = (self.with(Vec::new()), self.with(vec![RationalFunction::one(self.nvars)]));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        assert_eq!(r0.degree(), 0, "inputs are not coprime");
        let inv = r0.lc().recip().expect("nonzero gcd");
        t0.scale(&inv).rem(m)
    }

    /// Value at `x_var = k` for an integer `k`.
    pub fn eval_int(&self, k: i64) -> RationalFunction {
        let kq = RationalFunction::constant(self.nvars, Q::from_integer(k.into()));
        let mut acc = RationalFunction::zero(self.nvars);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&kq).add(c);
        }
        acc
    }
}

/// One term `numerator / base^multiplicity` of a partial-fraction expansion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialFractionTerm {
    pub numerator: RationalFunction,
    pub base: Poly,
    pub multiplicity: u32,
}

/// Polynomial part (in `x_i`) and proper terms of a partial-fraction expansion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialFractions {
    pub poly_part: RationalFunction,
    pub terms: Vec<PartialFractionTerm>,
}

impl PartialFractions {
    pub fn recombine(&self) -> RationalFunction {
        self.terms.iter().fold(self.poly_part.clone(), |acc, t| {
            let b = RationalFunction::from_poly(t.base.pow(t.multiplicity));
            acc.add(&t.numerator.div(&b).expect("nonzero base"))
        })
    }
}

pub(crate) struct RawPartialFractions {
    pub poly_part: FPoly,
    pub terms: Vec<(FPoly, Poly, u32)>,
}

/// Partial fractions of `f` with respect to `x_i` over the field of rational
/// functions in the other variables.
pub(crate) fn partial_fraction_raw(f: &RationalFunction, i: usize) -> RawPartialFractions {
    let n = f.nvars();
    if f.denom().is_free_of(i) {
        return RawPartialFractions { poly_part: FPoly::from_rf(f, i), terms: Vec::new() };
    }
    let fac = factor(f.denom());
    let mut content = Poly::constant(n, fac.unit.clone());
    let mut bases = Vec::new();
    for (b, e) in fac.factors {
        if b.is_free_of(i) {
            content = content.mul(&b.pow(e));
        } else {
            bases.push((b, e));
        }
    }
    let scaled = RationalFunction::new(f.numer().clone(), content.clone()).expect("nonzero content");
    let num = FPoly::from_rf(&scaled, i);
    let den_polys: Vec<FPoly> = bases.iter().map(|(b, e)| FPoly::from_poly(&b.pow(*e), i)).collect();
    let den_degree: usize = den_polys.iter().map(FPoly::degree).sum();
    let poly_part = if num.degree() >= den_degree && !num.is_zero() {
        let den = den_polys.iter().fold(FPoly::from_q(n, i, &[Q::one()]), |acc, p| acc.mul(p));
        num.divrem(&den).0
    } else {
        FPoly::zero(n, i)
    };
    let mut terms = Vec::new();
    for (k, (b, e)) in bases.iter().enumerate() {
        let big = &den_polys[k];
        let mut a = match residue_constant_lc(f.numer(), &content, &bases, k, i) {
            Some(a) => a,
            None => {
                let rest = den_polys
                    .iter()
                    .enumerate()
                    .filter(|&(m, _)| m != k)
                    .fold(FPoly::from_q(n, i, &[Q::one()]), |acc, (_, p)| acc.mul(&p.rem(big)).rem(big));
                num.rem(big).mul(&rest.inv_mod(big)).rem(big)
            }
        };
        let bp = FPoly::from_poly(b, i);
        let mut j = 0;
        while !a.is_zero() {
            let (q, r) = a.divrem(&bp);
            if !r.is_zero() {
                terms.push((r, b.clone(), e - j));
            }
            a = q;
            j += 1;
        }
    }
    RawPartialFractions { poly_part, terms }
}

/// Reduces `p` modulo `m` (given by its coefficients in `x_i`, with constant
/// leading coefficient) and returns the `deg m` low coefficients.
fn rem_coeffs(mut c: Vec<Poly>, m: &[Poly]) -> Vec<Poly> {
    let d = m.len() - 1;
    let lc = m[d].constant_value().expect("constant leading coefficient");
    let n = m[0].nvars();
    for k in (d..c.len()).rev() {
        let q = c[k].scale(&lc.recip());
        if q.is_zero() {
            continue;
        }
        for j in 0..d {
            c[k - d + j] = c[k - d + j].sub(&q.mul(&m[j]));
        }
    }
    c.resize(d.max(c.len()), Poly::zero(n));
    c.truncate(d);
    c
}

fn mul_mod(a: &[Poly], b: &[Poly], m: &[Poly]) -> Vec<Poly> {
    let n = m[0].nvars();
    let mut c = vec![Poly::zero(n); a.len() + b.len() - 1];
    for (s, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (t, y) in b.iter().enumerate() {
            if !y.is_zero() {
                c[s + t] = c[s + t].add(&x.mul(y));
            }
        }
    }
    rem_coeffs(c, m)
}

/// Fraction-free determinant (Bareiss).
fn det(mut a: Vec<Vec<Poly>>) -> Poly {
    let d = a.len();
    let n = a[0][0].nvars();
    let mut sign = Q::one();
    let mut prev = Poly::one(n);
    for k in 0..d {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..d).find(|&r| !a[r][k].is_zero()) else {
                return Poly::zero(n);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for r in k + 1..d {
            for c in k + 1..d {
                let v = a[k][k].mul(&a[r][c]).sub(&a[r][k].mul(&a[k][c]));
                a[r][c] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    prev.scale(&sign)
}

/// `N / (content · R)` modulo `b_k^{e_k}`, where `R` is the product of the
/// other bases. `None` when some base has a non-constant leading coefficient
/// in `x_i` or the modulus is too large for the determinant route.
fn residue_constant_lc(num: &Poly, content: &Poly, bases: &[(Poly, u32)], k: usize, i: usize) -> Option<FPoly> {
    if bases.iter().any(|(b, _)| !b.lead_coeff_in(i).is_constant()) {
        return None;
    }
    let n = num.nvars();
    let (b, e) = &bases[k];
    let m = b.pow(*e).coeffs_in(i);
    let d = m.len() - 1;
    if d > 6 {
        return None;
    }
    let mut rest = rem_coeffs(vec![Poly::one(n)], &m);
    for (t, (c, f)) in bases.iter().enumerate() {
        if t != k {
            let cm = rem_coeffs(c.coeffs_in(i), &m);
            for _ in 0..*f {
                rest = mul_mod(&rest, &cm, &m);
            }
        }
    }
    let rhs = rem_coeffs(num.coeffs_in(i), &m);
    let mut x = vec![Poly::zero(n); d];
    if let Some(slot) = x.get_mut(1) {
        *slot = Poly::one(n);
    }
    let mut cols = vec![rest.clone()];
    for _ in 1..d {
        let next = mul_mod(cols.last().unwrap(), &x, &m);
        cols.push(next);
    }
    let matrix = |replace: Option<usize>| -> Vec<Vec<Poly>> {
        (0..d)
            .map(|r| (0..d).map(|c| if Some(c) == replace { rhs[r].clone() } else { cols[c][r].clone() }).collect())
            .collect()
    };
    let den = det(matrix(None)).mul(content);
    let coeffs = (0..d)
        .map(|c| RationalFunction::new(det(matrix(Some(c))), den.clone()).expect("invertible modulo a coprime base"))
        .collect();
    Some(FPoly { nvars: n, var: i, coeffs }.trimmed())
}

/// Partial-fraction decomposition of `f` with respect to `x_i`.
pub fn partial_fraction(f: &RationalFunction, i: usize) -> PartialFractions {
    let raw = partial_fraction_raw(f, i);
    PartialFractions {
        poly_part: raw.poly_part.to_rf(),
        terms: raw
            .terms
            .into_iter()
            .map(|(a, base, multiplicity)| PartialFractionTerm { numerator: a.to_rf(), base, multiplicity })
            .collect(),
    }
}

fn binomial(k: usize, j: usize) -> BigInt {
    let mut acc = BigInt::one();
    for t in 0..j {
        acc = acc * BigInt::from(k - t) / BigInt::from(t + 1);
    }
    acc
}

/// Falling-factorial basis polynomial `C(x, k)` as rational coefficients.
fn binomial_basis(k: usize) -> Vec<Q> {
    let mut c = vec![Q::one()];
    for t in 0..k {
        let mut next = vec![Q::zero(); c.len() + 1];
        for (j, a) in c.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * Q::from_integer(BigInt::from(t));
        }
        c = next;
    }
    let fact: BigInt = (1..=k).fold(BigInt::one(), |a, t| a * BigInt::from(t));
    c.iter().map(|a| a / Q::from_integer(fact.clone())).collect()
}

/// `q` with `q(x+1) - q(x) = p` and zero constant term in `x`.
pub(crate) fn antidifference(p: &FPoly) -> FPoly {
    if p.is_zero() {
        return p.clone();
    }
    let d = p.degree();
    let values: Vec<RationalFunction> = (0..=d as i64).map(|k| p.eval_int(k)).collect();
    let mut out = FPoly::zero(p.nvars, p.var);
    for k in 0..=d {
        let mut a = RationalFunction::zero(p.nvars);
        for (j, v) in values.iter().enumerate().take(k + 1) {
            let c = binomial(k, j);
            let c = if (k - j).is_odd() { -c } else { c };
            a = a.add(&v.scale(&Q::from_integer(c)));
        }
        if !a.is_zero() {
            out = out.add(&FPoly::from_q(p.nvars, p.var, &binomial_basis(k + 1)).scale(&a));
        }
    }
    out
}

/// Polynomial antidifference in `x_i`: `q(x_i+1) - q(x_i) = p`, `q(x_i=0) = 0`.
pub fn poly_antidifference(p: &Poly, i: usize) -> Poly {
    let q = antidifference(&FPoly::from_poly(p, i)).to_rf();
    debug_assert!(q.is_polynomial());
    q.numer().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_int;

    fn x() -> Poly {
        Poly::var(3, 0)
    }

    fn y() -> Poly {
        Poly::var(3, 1)
    }

    fn rf(n: Poly, d: Poly) -> RationalFunction {
        RationalFunction::new(n, d).unwrap()
    }

    #[test]
    fn simple_telescoping_fractions() {
        let one = Poly::one(3);
        let f = rf(one.clone(), x().mul(&x().add(&one)));
        let pf = partial_fraction(&f, 0);
        assert!(pf.poly_part.is_zero());
        assert_eq!(pf.terms.len(), 2);
        assert!(pf.terms.contains(&PartialFractionTerm {
            numerator: RationalFunction::one(3),
            base: x(),
            multiplicity: 1
        }));
        assert!(pf.terms.contains(&PartialFractionTerm {
            numerator: RationalFunction::constant(3, q_int(-1)),
            base: x().add(&one),
            multiplicity: 1
        }));
        assert_eq!(pf.recombine(), f);
    }

    #[test]
    fn polynomial_division_part() {
        let f = rf(x().pow(2), x().sub(&y()));
        let pf = partial_fraction(&f, 0);
        assert_eq!(pf.poly_part, RationalFunction::from_poly(x().add(&y())));
        assert_eq!(pf.terms.len(), 1);
        assert_eq!(pf.terms[0].numerator, RationalFunction::from_poly(y().pow(2)));
        let p = x().add(&Poly::one(3));
        let pf = partial_fraction(&RationalFunction::from_poly(p.clone()), 0);
        assert_eq!(pf.poly_part, RationalFunction::from_poly(p));
        assert!(pf.terms.is_empty());
    }

    #[test]
    fn repeated_factor_with_parameter_content() {
        let b = Poly::linear(&[4, 6, 5], q_int(0));
        let num = x().mul(&y()).add(&Poly::one(3));
        let den = b.pow(2).mul(&y().add(&Poly::one(3))).mul(&x().add(&y()));
        let f = rf(num, den);
        let pf = partial_fraction(&f, 0);
        assert_eq!(pf.recombine(), f);
        assert!(pf.terms.iter().any(|t| t.multiplicity == 2 && t.base == b));
    }

    #[test]
    fn antidifference_examples() {
        assert_eq!(poly_antidifference(&Poly::one(3), 0), x());
        let p = x().scale(&q_int(2)).add(&Poly::one(3));
        assert_eq!(poly_antidifference(&p, 0), x().pow(2));
        let yz = y().mul(&Poly::var(3, 2));
        assert_eq!(poly_antidifference(&yz, 0), x().mul(&yz));
    }
}
