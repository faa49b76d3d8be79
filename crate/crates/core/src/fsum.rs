//! Sums of rational functions whose denominators come factored.
//!
//! Merging in a balanced tree over a shared factor list avoids the large
//! gcd computations of repeated pairwise addition; cancellation at the end
//! is detected by trial division with the known factors.

use std::collections::HashMap;

use num_traits::One;

use crate::factor::{factor, Factorization};
use crate::poly::{Poly, Q};
use crate::rational::RationalFunction;

struct Leaf {
    num: Poly,
    /// `(factor index, exponent)`, sorted by index.
    exps: Vec<(usize, u32)>,
}

pub(crate) struct FactoredSum {
    nvars: usize,
    index: HashMap<Poly, usize>,
    factors: Vec<Poly>,
    leaves: Vec<Leaf>,
}

/// Factorization of a canonical denominator.
pub(crate) fn factor_den(f: &RationalFunction) -> Factorization {
    factor(f.denom())
}

impl FactoredSum {
    pub fn new(nvars: usize) -> Self {
        FactoredSum { nvars, index: HashMap::new(), factors: Vec::new(), leaves: Vec::new() }
    }

    /// Adds `num / (unit · Π fᵉ)`; the `f` need not be normalized.
    pub fn add(&mut self, num: Poly, unit: &Q, den: impl IntoIterator<Item = (Poly, u32)>) {
        if num.is_zero() {
            return;
        }
        let mut scale = unit.clone();
        let mut exps: Vec<(usize, u32)> = Vec::new();
        for (f, e) in den {
            if f.is_constant() {
                scale *= pow_q(&f.constant_value().expect("constant"), e);
                continue;
            }
            let c = f.content();
            let f = f.primitive();
            scale *= pow_q(&c, e);
            let next = self.factors.len();
            let k = *self.index.entry(f.clone()).or_insert(next);
            if k == next {
                self.factors.push(f);
            }
            match exps.iter_mut().find(|(j, _)| *j == k) {
                Some((_, x)) => *x += e,
                None => exps.push((k, e)),
            }
        }
        exps.sort_unstable();
        self.leaves.push(Leaf { num: num.scale(&scale.recip()), exps });
    }

    /// Adds `sign · σ^shift(f)` where `fac` factors the denominator of `f`.
    pub fn add_shifted(&mut self, f: &RationalFunction, fac: &Factorization, shift: &[i64], sign: &Q) {
        let unit = &fac.unit / sign;
        self.add(f.numer().shift(shift), &unit, fac.factors.iter().map(|(b, e)| (b.shift(shift), *e)));
    }

    fn cofactor(&self, have: &[(usize, u32)], want: &[(usize, u32)]) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for &(k, e) in want {
            let h = have.iter().find(|(j, _)| *j == k).map_or(0, |x| x.1);
            if e > h {
                acc = acc.mul(&self.factors[k].pow(e - h));
            }
        }
        acc
    }

    fn merge(&self, a: Leaf, b: Leaf) -> Leaf {
        let mut exps = a.exps.clone();
        for &(k, e) in &b.exps {
            match exps.iter_mut().find(|(j, _)| *j == k) {
                Some((_, x)) => *x = (*x).max(e),
                None => exps.push((k, e)),
            }
        }
        exps.sort_unstable();
        let num = a.num.mul(&self.cofactor(&a.exps, &exps)).add(&b.num.mul(&self.cofactor(&b.exps, &exps)));
        Leaf { num, exps }
    }

    fn combine(mut self) -> (Option<Leaf>, Vec<Poly>) {
        while self.leaves.len() > 1 {
            let mut next = Vec::with_capacity(self.leaves.len().div_ceil(2));
            let mut it = std::mem::take(&mut self.leaves).into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(self.merge(a, b)),
                    None => next.push(a),
                }
            }
            self.leaves = next;
        }
        (self.leaves.pop(), self.factors)
    }

    pub fn sums_to_zero(self) -> bool {
        self.combine().0.is_none_or(|l| l.num.is_zero())
    }

    /// The reduced sum together with the factorization of its denominator.
    pub fn finish(self) -> (RationalFunction, Factorization) {
        let n = self.nvars;
        let (leaf, factors) = self.combine();
        let empty = Factorization { unit: Q::one(), factors: Vec::new() };
        let Some(Leaf { mut num, exps }) = leaf else {
            return (RationalFunction::zero(n), empty);
        };
        if num.is_zero() {
            return (RationalFunction::zero(n), empty);
        }
        let mut den_factors = Vec::new();
        for (k, mut e) in exps {
            while e > 0 {
                match num.div_exact(&factors[k]) {
                    Some(q) => {
                        num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                den_factors.push((factors[k].clone(), e));
            }
        }
        den_factors.sort_by(|a, b| crate::factor::poly_cmp(&a.0, &b.0));
        let fac = Factorization { unit: Q::one(), factors: den_factors };
        let den = fac.expand(n);
        (RationalFunction::normalized(num, den), fac)
    }
}

fn pow_q(c: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |a, _| a * c)
}
