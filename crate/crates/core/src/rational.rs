//! Rational functions in canonical reduced form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gcd::{gcd, gcd_cofactors};
use crate::poly::{Poly, Style, Q};

/// `num/den` with `gcd(num, den) = 1` and `den` a primitive integer
/// polynomial whose graded-lex leading coefficient is positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

/// Canonical reduced form of `num/den`.
pub fn rf_reduce(num: Poly, den: Poly) -> Result<RationalFunction> {
    RationalFunction::new(num, den)
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = den.nvars();
        if num.is_zero() {
            return Ok(Self::zero(n));
        }
        if den.is_constant() {
            let c = den.constant_value().unwrap();
            return Ok(Self::from_poly(num.scale(&c.recip())));
        }
        let (_, a, b) = gcd_cofactors(&num, &den);
        Ok(Self::normalized(a, b))
    }

    /// Rescales a coprime pair so the denominator is canonical.
    pub(crate) fn normalized(num: Poly, den: Poly) -> Self {
        let c = den.content();
        if c.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = c.recip();
            RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RationalFunction { num: p, den: Poly::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(Poly::var(nvars, i))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_free_of(&self, i: usize) -> bool {
        self.num.is_free_of(i) && self.den.is_free_of(i)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.add(&o.num));
        }
        if self.den.is_one() {
            return RationalFunction { num: self.num.mul(&o.den).add(&o.num), den: o.den.clone() };
        }
        if o.den.is_one() {
            return RationalFunction { num: o.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone()).expect("nonzero denominator");
        }
        let (g, b1, d1) = gcd_cofactors(&self.den, &o.den);
        let t = self.num.mul(&d1).add(&o.num.mul(&b1));
        if t.is_zero() {
            return Self::zero(self.nvars());
        }
        if g.is_one() {
            return Self::normalized(t, b1.mul(&o.den));
        }
        let (_, t1, g1) = gcd_cofactors(&t, &g);
        Self::normalized(t1, b1.mul(&d1).mul(&g1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars());
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        let (_, a, d) = gcd_cofactors(&self.num, &o.den);
        let (_, c, b) = gcd_cofactors(&o.num, &self.den);
        Self::normalized(a.mul(&c), b.mul(&d))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.num.content();
        let inv = c.recip();
        Ok(RationalFunction { num: self.den.scale(&inv), den: self.num.scale(&inv) })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunction { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// `f(x + m)`.
    pub fn shift(&self, m: &[i64]) -> Self {
        RationalFunction { num: self.num.shift(m), den: self.den.shift(m) }
    }

    /// `f` with `x_i ↦ x_i + k`.
    pub fn shift_var(&self, i: usize, k: i64) -> Self {
        let q = Q::from_integer(k.into());
        RationalFunction { num: self.num.shift_var(i, &q), den: self.den.shift_var(i, &q) }
    }

    /// Composition with polynomial images of every variable.
    pub fn substitute(&self, images: &[Poly]) -> Result<Self> {
        Self::new(self.num.compose(images), self.den.compose(images))
    }

    /// Substitutes a rational value for `x_i`.
    pub fn eval_var(&self, i: usize, a: &Q) -> Result<Self> {
        Self::new(self.num.eval_var(i, a), self.den.eval_var(i, a))
    }

    pub fn eval(&self, point: &[Q]) -> Result<Q> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Re-embeds into a ring with `nvars` variables (see [`Poly::embed`]).
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Self {
        RationalFunction { num: self.num.embed(nvars, positions), den: self.den.embed(nvars, positions) }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> RationalDisplay<'a> {
        RationalDisplay { rf: self, names, style: Style::Plain }
    }

    pub fn pretty<'a>(&'a self, names: &'a [String]) -> RationalDisplay<'a> {
        RationalDisplay { rf: self, names, style: Style::Pretty }
    }

    pub fn latex<'a>(&'a self, names: &'a [String]) -> RationalDisplay<'a> {
        RationalDisplay { rf: self, names, style: Style::Latex }
    }
}

/// Greatest common divisor, rejecting the case where both inputs vanish.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::InvalidInput("gcd of two zero polynomials".into()));
    }
    Ok(gcd(p, q))
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::add(self, rhs)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::sub(self, rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::mul(self, rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(self)
    }
}

pub struct RationalDisplay<'a> {
    rf: &'a RationalFunction,
    names: &'a [String],
    style: Style,
}

impl<'a> RationalDisplay<'a> {
    pub(crate) fn new(rf: &'a RationalFunction, names: &'a [String], style: Style) -> Self {
        RationalDisplay { rf, names, style }
    }
}

fn single_integer_term(p: &Poly) -> bool {
    p.num_terms() == 1 && p.leading_coeff().is_integer()
}

fn single_power(p: &Poly) -> bool {
    p.num_terms() == 1
        && p.leading_coeff().is_one()
        && p.leading_term().is_some_and(|(m, _)| m.exponents().iter().filter(|&&e| e > 0).count() == 1)
}

impl fmt::Display for RationalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = (&self.rf.num, &self.rf.den);
        let show = |p| crate::poly::PolyDisplay::new(p, self.names, self.style);
        if den.is_one() {
            return write!(f, "{}", show(num));
        }
        if self.style == Style::Latex {
            return write!(f, "\\frac{{{}}}{{{}}}", show(num), show(den));
        }
        if single_integer_term(num) {
            write!(f, "{}", show(num))?;
        } else {
            write!(f, "({})", show(num))?;
        }
        if single_power(den) {
            write!(f, "/{}", show(den))
        } else {
            write!(f, "/({})", show(den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_int;

    fn names() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    fn x() -> Poly {
        Poly::var(3, 0)
    }

    fn y() -> Poly {
        Poly::var(3, 1)
    }

    #[test]
    fn reduce_examples() {
        let one = Poly::one(3);
        let r = rf_reduce(x().pow(2).sub(&one), x().sub(&one)).unwrap();
        assert_eq!(r, RationalFunction::from_poly(x().add(&one)));
        assert!(rf_reduce(Poly::zero(3), x().add(&y())).unwrap().is_zero());
        let r = rf_reduce(x().add(&y()).scale(&q_int(2)), Poly::from_int(3, 4)).unwrap();
        assert_eq!(r.numer(), &x().add(&y()).scale(&Q::new(1.into(), 2.into())));
        assert_eq!(rf_reduce(one.clone(), Poly::zero(3)), Err(Error::DivisionByZero));
        assert!(poly_gcd(&Poly::zero(3), &Poly::zero(3)).is_err());
    }

    #[test]
    fn denominator_is_normalized() {
        let r = rf_reduce(Poly::one(3), x().scale(&q_int(-6)).add(&y().scale(&q_int(4)))).unwrap();
        assert_eq!(r.denom(), &x().scale(&q_int(3)).sub(&y().scale(&q_int(2))));
        assert_eq!(r.numer(), &Poly::constant(3, Q::new((-1).into(), 2.into())));
    }

    #[test]
    fn telescoping_sum() {
        let one = Poly::one(3);
        let a = rf_reduce(one.clone(), x()).unwrap();
        let b = rf_reduce(one.clone(), x().add(&one)).unwrap();
        let d = a.sub(&b);
        assert_eq!(d, rf_reduce(one.clone(), x().mul(&x().add(&one))).unwrap());
        assert_eq!(d.add(&b), a);
    }

    #[test]
    fn printing() {
        let n = names();
        let b = Poly::linear(&[4, 6, 5], q_int(0));
        let r = rf_reduce(Poly::one(3), b).unwrap();
        assert_eq!(r.display(&n).to_string(), "1/(4*x+6*y+5*z)");
        assert_eq!(r.pretty(&n).to_string(), "1/(4x+6y+5z)");
        assert_eq!(r.latex(&n).to_string(), "\\frac{1}{4x+6y+5z}");
        let s = rf_reduce(x().add(&y()), x().pow(2)).unwrap();
        assert_eq!(s.display(&n).to_string(), "(x+y)/x^2");
    }
}
