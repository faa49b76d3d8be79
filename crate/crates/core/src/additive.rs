//! Additive representations of WZ-forms: generation and decomposition.

use num_traits::{One, Zero};

use crate::abramov::{abramov_reduce, solve_step_difference};
use crate::error::{Error, Result};
use crate::factor::{factor, Factorization};
use crate::fsum::{factor_den, FactoredSum};
use crate::intlinear::{integer_linear_type_rf, IntegerLinearType};
use crate::poly::{Poly, Q};
use crate::rational::RationalFunction;
use crate::shift::{is_wz_form, WZForm};

/// One uniform summand: the direction `v` and the univariate `r_v(Z)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniformPart {
    pub v: IntegerLinearType,
    pub r: RationalFunction,
}

/// `(a, V, {r_v})`: the form `(Δ_j a + Σ_v Σ_{ℓ=0}^{v_j} r_v(v·x+ℓ))_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdditiveRepresentation {
    pub exact_part: RationalFunction,
    pub uniform: Vec<UniformPart>,
}

impl AdditiveRepresentation {
    pub fn new(exact_part: RationalFunction, uniform: Vec<UniformPart>) -> Result<Self> {
        let n = exact_part.nvars();
        for (k, u) in uniform.iter().enumerate() {
            if u.v.len() != n {
                return Err(Error::InvalidInput(format!("type {:?} has the wrong length", u.v.entries())));
            }
            if u.r.nvars() != 1 {
                return Err(Error::InvalidInput("r_v must be univariate".into()));
            }
            if u.r.is_zero() {
                return Err(Error::InvalidInput(format!("r_v for type {:?} is zero", u.v.entries())));
            }
            if uniform[..k].iter().any(|w| w.v == u.v) {
                return Err(Error::InvalidInput(format!("type {:?} listed twice", u.v.entries())));
            }
        }
        Ok(AdditiveRepresentation { exact_part, uniform })
    }

    pub fn nvars(&self) -> usize {
        self.exact_part.nvars()
    }

    pub fn types(&self) -> Vec<&IntegerLinearType> {
        self.uniform.iter().map(|u| &u.v).collect()
    }
}

/// Adds `sign · Σ_{ℓ=0}^{v_i} r(v·x + ℓ)` to `sum`.
fn add_range(
    sum: &mut FactoredSum,
    r: &RationalFunction,
    fac: &Factorization,
    v: &IntegerLinearType,
    i: usize,
    sign: i64,
) {
    let vi = v.entries()[i];
    let (range, s) = if vi > 0 { (0..vi, sign) } else { (vi..0, -sign) };
    let unit = &fac.unit / Q::from_integer(s.into());
    for l in range {
        let form = [Poly::linear(v.entries(), Q::from_integer(l.into()))];
        sum.add(r.numer().compose(&form), &unit, fac.factors.iter().map(|(b, e)| (b.compose(&form), *e)));
    }
}

/// `Σ_{ℓ=0}^{v_i} r(v·x + ℓ)` with the signed convention for `v_i < 0`.
pub fn signed_range_sum(r: &RationalFunction, v: &IntegerLinearType, i: usize) -> RationalFunction {
    let mut sum = FactoredSum::new(v.len());
    add_range(&mut sum, r, &factor_den(r), v, i, 1);
    sum.finish().0
}

fn unit_vector(n: usize, j: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

/// Adds `sign · Δ_j(f)` to `sum`.
fn add_delta(sum: &mut FactoredSum, f: &RationalFunction, fac: &Factorization, j: usize, sign: i64) {
    if f.is_zero() {
        return;
    }
    let n = f.nvars();
    let s = Q::from_integer(sign.into());
    sum.add_shifted(f, fac, &unit_vector(n, j), &s);
    sum.add_shifted(f, fac, &vec![0; n], &-s);
}

/// The WZ-form described by an additive representation.
pub fn generate(rep: &AdditiveRepresentation) -> WZForm {
    let n = rep.nvars();
    let fac_a = factor_den(&rep.exact_part);
    let facs: Vec<Factorization> = rep.uniform.iter().map(|u| factor_den(&u.r)).collect();
    let component = |j: usize| {
        let mut sum = FactoredSum::new(n);
        add_delta(&mut sum, &rep.exact_part, &fac_a, j, 1);
        for (u, fac) in rep.uniform.iter().zip(&facs) {
            add_range(&mut sum, &u.r, fac, &u.v, j, 1);
        }
        sum.finish().0
    };
    #[cfg(feature = "parallel")]
    let components: Vec<RationalFunction> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(component).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let components: Vec<RationalFunction> = (0..n).map(component).collect();
    WZForm::new_unchecked(components)
}

/// A factored sum whose terms are evaluated at `x_k = c` on the way in.
/// The residuals of a level are free of `x_k`, so evaluating each term
/// first gives the same sum with one variable fewer in every summand.
struct EvaluatedSum {
    sum: FactoredSum,
    k: usize,
    c: Q,
    ok: bool,
}

impl EvaluatedSum {
    fn push(&mut self, num: Poly, unit: Q, factors: impl IntoIterator<Item = (Poly, u32)>) {
        let mut unit = unit;
        let mut den = Vec::new();
        for (b, e) in factors {
            if b.is_zero() {
                self.ok = false;
                return;
            }
            if let Some(v) = b.constant_value() {
                unit *= (0..e).fold(Q::one(), |a, _| a * &v);
                continue;
            }
            let fb = factor(&b);
            unit *= (0..e).fold(Q::one(), |a, _| a * &fb.unit);
            den.extend(fb.factors.into_iter().map(|(f, m)| (f, m * e)));
        }
        self.sum.add(num, &unit, den);
    }

    /// Adds `sign · σ^shift(num/den)` at `x_k = c`.
    fn add(&mut self, num: &Poly, fac: &Factorization, shift: &[i64], sign: i64) {
        if num.is_zero() || !self.ok {
            return;
        }
        let (k, c) = (self.k, &self.c);
        let ev = |p: &Poly| p.shift(shift).eval_var(k, c);
        let unit = &fac.unit / Q::from_integer(sign.into());
        let factors: Vec<(Poly, u32)> = fac.factors.iter().map(|(b, e)| (ev(b), *e)).collect();
        self.push(ev(num), unit, factors);
    }

    /// Subtracts the range sum of `(v, r)` for component `i`.
    fn add_range(&mut self, r: &RationalFunction, fac: &Factorization, v: &IntegerLinearType, i: usize, c: i64) {
        let vi = v.entries()[i];
        let (range, s) = if vi > 0 { (0..vi, -1) } else { (vi..0, 1) };
        let unit = &fac.unit / Q::from_integer(s.into());
        let mut rest = v.entries().to_vec();
        let offset = rest[self.k] * c;
        rest[self.k] = 0;
        for l in range {
            let form = [Poly::linear(&rest, Q::from_integer((l + offset).into()))];
            let factors: Vec<(Poly, u32)> = fac.factors.iter().map(|(b, e)| (b.compose(&form), *e)).collect();
            self.push(r.numer().compose(&form), unit.clone(), factors);
        }
    }
}

/// The uniform parts found at level `k`, plus the summed part `g0`.
fn level(comps: &[RationalFunction], k: usize) -> Result<(RationalFunction, Vec<UniformPart>)> {
    let red = abramov_reduce(&comps[k], k);
    let mut groups: Vec<(IntegerLinearType, RationalFunction)> = Vec::new();
    for t in &red.terms {
        let term = t.numerator.div(&RationalFunction::from_poly(t.base.pow(t.multiplicity)))?;
        let Some((u, v)) = integer_linear_type_rf(&term)? else {
            return Err(Error::NotAWZForm(format!("remainder term in variable {k} is not integer-linear")));
        };
        match groups.iter_mut().find(|(w, _)| *w == v) {
            Some((_, acc)) => *acc = acc.add(&u),
            None => groups.push((v, u)),
        }
    }
    groups.sort_by(|a, b| b.0.cmp(&a.0));
    let mut parts = Vec::with_capacity(groups.len());
    for (v, u) in groups {
        let rhs = u.shift_var(0, 1).sub(&u);
        let Some(r) = solve_step_difference(&rhs, v.entries()[k]) else {
            return Err(Error::NotAWZForm(format!("no rational r for type {:?}", v.entries())));
        };
        if !r.is_zero() {
            parts.push(UniformPart { v, r });
        }
    }
    Ok((red.summed_part, parts))
}

/// Additive representation of a WZ-form, one variable per level.
pub fn decompose(omega: &WZForm) -> Result<AdditiveRepresentation> {
    let n = omega.nvars();
    if !is_wz_form(omega.components()) {
        return Err(Error::NotAWZForm("compatibility conditions fail".into()));
    }
    let mut comps = omega.components().to_vec();
    let mut facs: Vec<Factorization> = comps.iter().map(factor_den).collect();
    let mut exact = RationalFunction::zero(n);
    let mut uniform = Vec::new();
    for k in 0..n {
        if comps[k].is_zero() {
            continue;
        }
        let (g0, parts) = level(&comps, k)?;
        let fac_g = factor_den(&g0);
        let part_facs: Vec<Factorization> = parts.iter().map(|p| factor_den(&p.r)).collect();
        let mut done = false;
        for c in (0i64..).flat_map(|t| [t, -t - 1]).take(64) {
            let cq = Q::from_integer(c.into());
            let mut next = Vec::with_capacity(n - k);
            for j in k..n {
                let mut sum = EvaluatedSum { sum: FactoredSum::new(n), k, c: cq.clone(), ok: true };
                sum.add(comps[j].numer(), &facs[j], &vec![0; n], 1);
                if !g0.is_zero() {
                    sum.add(g0.numer(), &fac_g, &unit_vector(n, j), -1);
                    sum.add(g0.numer(), &fac_g, &vec![0; n], 1);
                }
                for (p, fac) in parts.iter().zip(&part_facs) {
                    sum.add_range(&p.r, fac, &p.v, j, c);
                }
                if !sum.ok {
                    break;
                }
                next.push(sum.sum.finish());
            }
            if next.len() == n - k {
                for (j, (f, fac)) in (k..n).zip(next) {
                    comps[j] = f;
                    facs[j] = fac;
                }
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::InvalidInput(format!("no regular evaluation point for variable {k}")));
        }
        let Some(kappa) = comps[k].constant_value().or_else(|| comps[k].is_zero().then(Q::zero)) else {
            return Err(Error::NotAWZForm(format!("residual in variable {k} is not constant")));
        };
        exact = exact.add(&g0);
        if !kappa.is_zero() {
            exact = exact.add(&RationalFunction::from_poly(Poly::var(n, k).scale(&kappa)));
        }
        uniform.extend(parts);
    }
    AdditiveRepresentation::new(exact, uniform)
}

/// `Some(g)` with `ω = (Δ_1 g, …, Δ_n g)` when the form is exact.
pub fn is_exact(omega: &WZForm) -> Result<Option<RationalFunction>> {
    let rep = decompose(omega)?;
    Ok(rep.uniform.is_empty().then_some(rep.exact_part))
}
