//! Polygamma conjugates of additive representations.
//!
//! A uniform part `(v, r)` with `r = β/(Z+α)^{t+1}` is the `Δ`-image of
//! `β/((-1)^t t!) ψ^{(t)}(v·x+α)`, because
//! `ψ^{(t)}(z+1) - ψ^{(t)}(z) = (-1)^t t!/z^{t+1}`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::additive::{signed_range_sum, AdditiveRepresentation};
use crate::fpoly::{partial_fraction, poly_antidifference};
use crate::intlinear::IntegerLinearType;
use crate::poly::{Poly, Style, Q};
use crate::rational::{RationalDisplay, RationalFunction};
use crate::upoly::UPoly;

/// Where the argument of `ψ` is shifted to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PolygammaShift {
    /// `ψ^{(t)}(v·x + α)` for a rational `α`.
    Rational(Q),
    /// `Σ_{m(α)=0} c(α) ψ^{(t)}(v·x + α)` over the roots of an irreducible monic `m`.
    RootSum(Poly),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolygammaTerm {
    /// A constant, or for a root sum a polynomial in `α` reduced modulo `m`.
    pub coefficient: Poly,
    pub order: u32,
    pub v: IntegerLinearType,
    pub shift: PolygammaShift,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolygammaExpression {
    pub rational_part: RationalFunction,
    pub terms: Vec<PolygammaTerm>,
}

fn factorial(t: u32) -> BigInt {
    (1..=t).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// `1/((-1)^t t!)`
fn psi_scale(t: u32) -> Q {
    let f = Q::from_integer(factorial(t)).recip();
    if t % 2 == 1 {
        -f
    } else {
        f
    }
}

/// Truncated power series in `w` over `Q[α]/(m)`.
struct Series<'a> {
    m: &'a UPoly,
    len: usize,
}

impl Series<'_> {
    fn reduce(&self, a: &UPoly) -> UPoly {
        a.rem(self.m)
    }

    fn mul(&self, a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
        let mut out = vec![UPoly::zero(); self.len];
        for (i, x) in a.iter().enumerate().take(self.len) {
            for (j, y) in b.iter().enumerate().take(self.len - i) {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        out.iter().map(|c| self.reduce(c)).collect()
    }

    fn inverse(&self, a: &[UPoly]) -> Vec<UPoly> {
        let c0 = a[0].inv_mod(self.m).expect("unit constant term");
        let mut out = vec![UPoly::zero(); self.len];
        out[0] = c0.clone();
        for k in 1..self.len {
            let mut s = UPoly::zero();
            for j in 1..=k.min(a.len() - 1) {
                s = s.add(&a[j].mul(&out[k - j]));
            }
            out[k] = self.reduce(&s.mul(&c0)).scale(&-Q::one());
        }
        out
    }

    /// Coefficients of `p(w + γ)` in `w` for `p` over `Q` and `γ` in the field.
    fn taylor(&self, p: &UPoly, gamma: &UPoly) -> Vec<UPoly> {
        let mut acc: Vec<UPoly> = Vec::new();
        for c in p.0.iter().rev() {
            let mut next = vec![UPoly::zero(); acc.len() + 1];
            for (k, a) in acc.iter().enumerate() {
                next[k + 1] = next[k + 1].add(a);
                next[k] = next[k].add(&self.reduce(&a.mul(gamma)));
            }
            next[0] = next[0].add(&UPoly::constant(c.clone()));
            acc = next;
        }
        acc
    }
}

/// `[β_1, …, β_e]` with `a/q^e = Σ_s β_s(α)/(Z+α)^s + (other roots)`, modulo `m(α) = q(-α)`.
fn root_coefficients(a: &UPoly, q: &UPoly, e: u32) -> (UPoly, Vec<UPoly>) {
    let m = q.scale_var(&-Q::one()).monic();
    let e = e as usize;
    let ser = Series { m: &m, len: e };
    let minus_alpha = UPoly(vec![Q::zero(), -Q::one()]);
    let qt = ser.taylor(q, &minus_alpha);
    debug_assert!(qt[0].is_zero());
    let mut q1: Vec<UPoly> = qt[1..].to_vec();
    q1.resize(e, UPoly::zero());
    let inv = ser.inverse(&q1);
    let mut pw = vec![UPoly::one()];
    pw.resize(e, UPoly::zero());
    for _ in 0..e {
        pw = ser.mul(&pw, &inv);
    }
    let mut at = ser.taylor(a, &minus_alpha);
    at.resize(e, UPoly::zero());
    let s = ser.mul(&at, &pw);
    let betas = (1..=e).map(|k| s[e - k].clone()).collect();
    (m, betas)
}

/// The polygamma expression whose `Δ`-images are the components of `rep`.
pub fn conjugate_polygamma(rep: &AdditiveRepresentation) -> PolygammaExpression {
    let n = rep.nvars();
    let mut rational_part = rep.exact_part.clone();
    let mut terms = Vec::new();
    for u in &rep.uniform {
        let pf = partial_fraction(&u.r, 0);
        if !pf.poly_part.is_zero() {
            let c = pf.poly_part.denom().constant_value().expect("polynomial part");
            let big = poly_antidifference(&pf.poly_part.numer().scale(&c.recip()), 0);
            rational_part = rational_part.add(&RationalFunction::from_poly(big.compose(&[u.v.linear_form()])));
        }
        for t in &pf.terms {
            let a = t.numerator.numer().scale(&t.numerator.denom().constant_value().expect("univariate").recip());
            if t.base.total_degree() == 1 {
                let c = t.base.coeff(&crate::poly::Monomial::var(1, 0));
                let alpha = t.base.constant_term() / &c;
                let beta = a.constant_value().expect("constant numerator") / pow_q(&c, t.multiplicity);
                let order = t.multiplicity - 1;
                terms.push(PolygammaTerm {
                    coefficient: Poly::constant(1, beta * psi_scale(order)),
                    order,
                    v: u.v.clone(),
                    shift: PolygammaShift::Rational(alpha),
                });
            } else {
                let (m, betas) =
                    root_coefficients(&UPoly::from_poly(&a, 0), &UPoly::from_poly(&t.base, 0), t.multiplicity);
                for (s, beta) in betas.into_iter().enumerate() {
                    if beta.is_zero() {
                        continue;
                    }
                    let order = s as u32;
                    terms.push(PolygammaTerm {
                        coefficient: beta.scale(&psi_scale(order)).to_poly(1, 0),
                        order,
                        v: u.v.clone(),
                        shift: PolygammaShift::RootSum(m.to_poly(1, 0)),
                    });
                }
            }
        }
    }
    debug_assert!(rational_part.nvars() == n);
    PolygammaExpression { rational_part, terms }
}

fn pow_q(c: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |a, _| a * c)
}

impl PolygammaExpression {
    /// `Δ_j` of the expression, using the ψ recurrence. `None` when a root sum is present.
    pub fn certificate(&self, j: usize) -> Option<RationalFunction> {
        let mut acc = crate::shift::delta(&self.rational_part, j);
        for t in &self.terms {
            let PolygammaShift::Rational(alpha) = &t.shift else {
                return None;
            };
            let beta = t.coefficient.constant_value()?;
            let z = RationalFunction::new(Poly::one(1), Poly::linear(&[1], alpha.clone()).pow(t.order + 1)).ok()?;
            let r = z.scale(&(beta / psi_scale(t.order)));
            acc = acc.add(&signed_range_sum(&r, &t.v, j));
        }
        Some(acc)
    }

    pub fn display(&self, names: &[String]) -> String {
        self.render(names, Style::Pretty)
    }

    pub fn latex(&self, names: &[String]) -> String {
        self.render(names, Style::Latex)
    }

    fn render(&self, names: &[String], style: Style) -> String {
        let latex = style == Style::Latex;
        let mut out = String::new();
        if !self.rational_part.is_zero() {
            write!(out, "{}", RationalDisplay::new(&self.rational_part, names, style)).unwrap();
        }
        let alpha = [if latex { "\\alpha".to_string() } else { "α".to_string() }];
        let psi = if latex { "\\psi" } else { "ψ" };
        for t in &self.terms {
            let form = Poly::linear(t.v.entries(), Q::zero());
            let mut arg = crate::poly::PolyDisplay::new(&form, names, style).to_string();
            let (negative, coeff) = match &t.shift {
                PolygammaShift::Rational(a) => {
                    if !a.is_zero() {
                        arg.push(if a.is_negative() { '-' } else { '+' });
                        arg.push_str(&rational_str(&a.abs(), style));
                    }
                    let b = t.coefficient.constant_value().expect("constant coefficient");
                    let mag = b.abs();
                    let c = if mag.is_one() {
                        String::new()
                    } else if mag.is_integer() || latex {
                        rational_str(&mag, style)
                    } else {
                        format!("({})", rational_str(&mag, style))
                    };
                    (b.is_negative(), c)
                }
                PolygammaShift::RootSum(m) => {
                    arg.push('+');
                    arg.push_str(&alpha[0]);
                    let c = crate::poly::PolyDisplay::new(&t.coefficient, &alpha, style).to_string();
                    let m = crate::poly::PolyDisplay::new(m, &alpha, style).to_string();
                    let sum = if latex { format!("\\sum_{{{m}=0}}") } else { format!("Σ_{{{m}=0}}") };
                    (false, format!("{sum} ({c})"))
                }
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let sep = if latex && !coeff.is_empty() { "\\," } else { "" };
            write!(out, "{coeff}{sep}{psi}^{{({})}}({arg})", t.order).unwrap();
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn rational_str(q: &Q, style: Style) -> String {
    struct W<'a>(&'a Q, Style);
    impl std::fmt::Display for W<'_> {
        fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            crate::poly::write_rational(f, self.0, self.1)
        }
    }
    W(q, style).to_string()
}
