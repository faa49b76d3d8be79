//! Orbital residues with respect to the shift group of one variable.
//!
//! A residue at `d` of multiplicity `j` is a numerator over `d^j`, so it is
//! only meaningful modulo `d`. Orbit classes therefore compare numerators
//! after reduction modulo their base, moving numerator and base together.

use crate::abramov::{abramov_reduce, shift_equivalent};
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::fpoly::FPoly;
use crate::poly::Poly;
use crate::rational::RationalFunction;

/// The `⟨σ_i⟩`-orbit of a residue `representative / base^multiplicity`.
/// Equality compares orbits, not representatives.
#[derive(Clone, Debug)]
pub struct OrbitClass {
    /// Numerator relative to `base`, reduced to degree below `deg_{x_i}(base)`.
    pub representative: RationalFunction,
    pub base: Poly,
    pub multiplicity: u32,
    pub var: usize,
}

fn reduce_mod(r: &RationalFunction, base: &Poly, i: usize) -> RationalFunction {
    FPoly::from_rf(r, i).rem(&FPoly::from_poly(base, i)).to_rf()
}

impl OrbitClass {
    pub fn new(representative: &RationalFunction, base: Poly, multiplicity: u32, var: usize) -> Self {
        let representative = reduce_mod(representative, &base, var);
        OrbitClass { representative, base, multiplicity, var }
    }

    /// True when `numerator / base^multiplicity` has this residue at `base`.
    pub fn matches(&self, numerator: &RationalFunction) -> bool {
        numerator.denom().is_free_of(self.var) && reduce_mod(numerator, &self.base, self.var) == self.representative
    }

    /// Numerator relative to the primitive part of the base.
    fn normalized(&self) -> (Poly, RationalFunction) {
        let c = self.base.content();
        let scale = num_traits::pow(c.recip(), self.multiplicity as usize);
        (self.base.primitive(), self.representative.scale(&scale))
    }

    /// The `m` with `σ_i^m` carrying this class's base onto `other`'s base.
    pub fn shift_to(&self, other: &OrbitClass) -> Option<i64> {
        if self.var != other.var || self.multiplicity != other.multiplicity {
            return None;
        }
        let (b1, n1) = self.normalized();
        let (b2, n2) = other.normalized();
        let m = shift_equivalent(&b1, &b2, self.var)?;
        (n1.shift_var(self.var, m) == n2).then_some(m)
    }
}

impl PartialEq for OrbitClass {
    fn eq(&self, other: &Self) -> bool {
        self.shift_to(other).is_some()
    }
}

/// `res_{σ_i}(f, d, j)` expressed relative to `d`; `None` is the zero residue.
pub fn orbital_residue(f: &RationalFunction, d: &Poly, j: u32, i: usize) -> Result<Option<OrbitClass>> {
    if j == 0 {
        return Err(Error::InvalidInput("multiplicity must be positive".into()));
    }
    if d.is_free_of(i) {
        return Err(Error::InvalidInput("d must involve the shifted variable".into()));
    }
    let fac = factor(d);
    let mut moving = fac.factors.iter().filter(|(g, _)| !g.is_free_of(i));
    let (Some((dhat, 1)), None) = (moving.next(), moving.next()) else {
        return Err(Error::InvalidInput("d is reducible".into()));
    };
    let cofactor = RationalFunction::new(d.clone(), dhat.clone())?;
    let reduced = abramov_reduce(f, i);
    for t in reduced.terms.iter().filter(|t| t.multiplicity == j) {
        if let Some(m) = shift_equivalent(&t.base, dhat, i) {
            let r = t.numerator.shift_var(i, m).mul(&cofactor.pow(j as i32)?);
            return Ok(Some(OrbitClass::new(&r, d.clone(), j, i)));
        }
    }
    Ok(None)
}
