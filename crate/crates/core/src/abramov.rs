//! Abramov's reduction for rational summation in one variable.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::factor::poly_cmp;
use crate::fpoly::{antidifference, partial_fraction_raw, FPoly};
use crate::poly::{Poly, Q};
use crate::rational::RationalFunction;
use crate::upoly::UPoly;

/// `numerator / base^multiplicity` in a reduced remainder.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RemainderTerm {
    pub base: Poly,
    pub multiplicity: u32,
    pub numerator: RationalFunction,
}

/// `f = Δ_i(summed_part) + remainder`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionResult {
    pub summed_part: RationalFunction,
    pub remainder: RationalFunction,
    /// The remainder split by denominator factor, bases pairwise shift-inequivalent.
    pub terms: Vec<RemainderTerm>,
}

/// The integer `m` with `σ_i^m(b) = b2`, if any.
pub fn shift_equivalent(b: &Poly, b2: &Poly, i: usize) -> Option<i64> {
    let d = b.degree_in(i);
    if d != b2.degree_in(i) {
        return None;
    }
    if d == 0 {
        return (b == b2).then_some(0);
    }
    let cb = b.coeffs_in(i);
    let cb2 = b2.coeffs_in(i);
    let lc = &cb[d as usize];
    if lc != &cb2[d as usize] {
        return None;
    }
    let diff = cb2[d as usize - 1].sub(&cb[d as usize - 1]);
    let ratio = diff.div_exact(lc)?;
    let m = if ratio.is_zero() { Q::zero() } else { ratio.constant_value()? / Q::from_integer(d.into()) };
    if !m.is_integer() {
        return None;
    }
    let m: i64 = m.to_integer().try_into().ok()?;
    (b.shift_var(i, &Q::from_integer(m.into())) == *b2).then_some(m)
}

struct Orbit {
    members: Vec<(Poly, i64)>,
}

impl Orbit {
    fn representative(&self) -> &(Poly, i64) {
        self.members.iter().min_by_key(|(_, off)| *off).unwrap()
    }

    fn offset_of(&self, b: &Poly) -> i64 {
        let base = self.representative().1;
        self.members.iter().find(|(p, _)| p == b).map(|(_, off)| off - base).unwrap()
    }
}

/// Abramov reduction of `f` with respect to `x_i`.
pub fn abramov_reduce(f: &RationalFunction, i: usize) -> ReductionResult {
    let n = f.nvars();
    let raw = partial_fraction_raw(f, i);
    let mut summed = antidifference(&raw.poly_part).to_rf();
    let mut orbits: Vec<Orbit> = Vec::new();
    for (_, b, _) in &raw.terms {
        if orbits.iter().any(|o| o.members.iter().any(|(p, _)| p == b)) {
            continue;
        }
        let hit = orbits.iter_mut().find_map(|o| shift_equivalent(&o.members[0].0, b, i).map(|m| (o, m)));
        match hit {
            Some((o, m)) => o.members.push((b.clone(), m)),
            None => orbits.push(Orbit { members: vec![(b.clone(), 0)] }),
        }
    }
    let mut acc: BTreeMap<(usize, u32), FPoly> = BTreeMap::new();
    for (a, b, j) in &raw.terms {
        let k = orbits.iter().position(|o| o.members.iter().any(|(p, _)| p == b)).unwrap();
        let m = orbits[k].offset_of(b);
        let rep = orbits[k].representative().0.clone();
        let moved = if m == 0 {
            a.clone()
        } else {
            let a_rf = a.to_rf();
            for t in 0..m {
                let den = RationalFunction::from_poly(rep.shift_var(i, &Q::from_integer(t.into())).pow(*j));
                let num = a_rf.shift_var(i, t - m);
                summed = summed.add(&num.div(&den).expect("nonzero base"));
            }
            FPoly::from_rf(&a_rf.shift_var(i, -m), i)
        };
        let slot = acc.entry((k, *j)).or_insert_with(|| FPoly::zero(n, i));
        *slot = slot.add(&moved);
    }
    let mut terms: Vec<RemainderTerm> = acc
        .into_iter()
        .filter(|(_, a)| !a.is_zero())
        .map(|((k, j), a)| RemainderTerm {
            base: orbits[k].representative().0.clone(),
            multiplicity: j,
            numerator: a.to_rf(),
        })
        .collect();
    terms.sort_by(|s, t| poly_cmp(&s.base, &t.base).then(s.multiplicity.cmp(&t.multiplicity)));
    let remainder = terms.iter().fold(RationalFunction::zero(n), |acc, t| {
        let den = RationalFunction::from_poly(t.base.pow(t.multiplicity));
        acc.add(&t.numerator.div(&den).expect("nonzero base"))
    });
    ReductionResult { summed_part: summed, remainder, terms }
}

/// `g` with `Δ_i(g) = f` when one exists.
pub fn is_summable(f: &RationalFunction, i: usize) -> Option<RationalFunction> {
    let r = abramov_reduce(f, i);
    r.remainder.is_zero().then_some(r.summed_part)
}

/// Drops the constant term of the polynomial part of a univariate function.
fn normalize_constant(y: &RationalFunction) -> RationalFunction {
    let (q, _) = UPoly::from_poly(y.numer(), 0).divrem(&UPoly::from_poly(y.denom(), 0));
    let c = q.coeff(0);
    if c.is_zero() {
        y.clone()
    } else {
        y.sub(&RationalFunction::constant(1, c))
    }
}

/// Rational `y` with `y(z+p) - y(z) = rhs(z)`, when one exists.
pub fn solve_step_difference(rhs: &RationalFunction, p: i64) -> Option<RationalFunction> {
    assert!(p != 0, "step must be nonzero");
    assert_eq!(rhs.nvars(), 1, "expected a univariate right-hand side");
    if rhs.is_zero() {
        return Some(RationalFunction::zero(1));
    }
    let pq = Q::from_integer(p.into());
    let z = Poly::var(1, 0);
    let scaled = rhs.substitute(&[z.scale(&pq)]).expect("scaling keeps the denominator nonzero");
    let y = is_summable(&scaled, 0)?;
    let y = y.substitute(&[z.scale(&pq.recip())]).expect("scaling keeps the denominator nonzero");
    Some(normalize_constant(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_int;
    use crate::shift::delta;

    fn lin(c: &[i64], k: i64) -> Poly {
        Poly::linear(c, q_int(k))
    }

    fn inv(p: Poly) -> RationalFunction {
        RationalFunction::new(Poly::one(p.nvars()), p).unwrap()
    }

    #[test]
    fn shift_equivalence_examples() {
        assert_eq!(shift_equivalent(&lin(&[4, 6, 5], -3), &lin(&[4, 6, 5], 1), 0), Some(1));
        assert_eq!(shift_equivalent(&lin(&[1], 0), &lin(&[1], 3), 0), Some(3));
        assert_eq!(shift_equivalent(&lin(&[4, 6, 5], 0), &lin(&[4, 6, 5], 3), 0), None);
        assert_eq!(shift_equivalent(&lin(&[4, 6, 5], 0), &lin(&[4, 6, 5], 6), 1), Some(1));
    }

    #[test]
    fn telescoping_is_summable() {
        let x = lin(&[1], 0);
        let f = inv(x.mul(&lin(&[1], 1)));
        let r = abramov_reduce(&f, 0);
        assert!(r.remainder.is_zero());
        assert_eq!(r.summed_part, inv(x.clone()).neg());
        assert_eq!(is_summable(&f, 0), Some(inv(x.clone()).neg()));
        assert_eq!(is_summable(&inv(x.clone()), 0), None);
        assert_eq!(is_summable(&RationalFunction::zero(1), 0), Some(RationalFunction::zero(1)));
    }

    #[test]
    fn single_pole_is_its_own_remainder() {
        let f = inv(lin(&[1], 0));
        let r = abramov_reduce(&f, 0);
        assert!(r.summed_part.is_zero());
        assert_eq!(r.remainder, f);
    }

    #[test]
    fn mixed_orbit_merges_to_leftmost() {
        let f = inv(lin(&[1, 1], 3)).add(&inv(lin(&[1, 1], 0)).scale(&q_int(2)));
        let r = abramov_reduce(&f, 0);
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms[0].base, lin(&[1, 1], 0));
        assert_eq!(r.remainder, inv(lin(&[1, 1], 0)).scale(&q_int(3)));
        assert_eq!(delta(&r.summed_part, 0).add(&r.remainder), f);
    }

    #[test]
    fn step_difference_examples() {
        let z = lin(&[1], 0);
        let rhs = inv(lin(&[1], 4)).sub(&inv(z.clone()));
        assert_eq!(solve_step_difference(&rhs, 4), Some(inv(z.clone())));
        let rhs = inv(lin(&[1], 3)).sub(&inv(z.clone()));
        assert_eq!(solve_step_difference(&rhs, 3), Some(inv(z.clone())));
        assert_eq!(solve_step_difference(&RationalFunction::zero(1), 2), Some(RationalFunction::zero(1)));
        let rhs = inv(lin(&[1], -1)).sub(&inv(z.clone()));
        assert_eq!(solve_step_difference(&rhs, -1), Some(inv(z.clone())));
        assert_eq!(solve_step_difference(&inv(z), 2), None);
    }
}
