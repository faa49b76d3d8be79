//! Seeded random additive representations for round-trip fuzzing.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::additive::{AdditiveRepresentation, UniformPart};
use crate::intlinear::IntegerLinearType;
use crate::poly::{Monomial, Poly, Q};
use crate::rational::RationalFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    /// Number of variables.
    pub n: usize,
    pub max_types: usize,
    /// Maximum degree of the denominator of each `r_v`.
    pub max_deg: u32,
    /// Bound on the absolute value of every coefficient.
    pub coeff_bound: i64,
    /// Bound on the absolute value of every type entry.
    pub type_bound: i64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { n: 3, max_types: 3, max_deg: 3, coeff_bound: 9, type_bound: 2 }
    }
}

fn coeff(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let c = coeff(rng, bound);
        if c != 0 {
            return c;
        }
    }
}

fn random_linear(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Poly {
    loop {
        let v: Vec<i64> = (0..n).map(|_| coeff(rng, 3)).collect();
        if v.iter().any(|&c| c != 0) {
            return Poly::linear(&v, Q::from_integer(coeff(rng, bound).into()));
        }
    }
}

fn random_exact(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> RationalFunction {
    let mut num = Poly::zero(n);
    for _ in 0..rng.gen_range(0..=3) {
        let mut e = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=2) {
            e[rng.gen_range(0..n)] += 1;
        }
        num = num.add(&Poly::monomial(Monomial::from_exponents(&e), Q::from_integer(nonzero(rng, bound).into())));
    }
    let mut den = Poly::one(n);
    for _ in 0..rng.gen_range(0..=2) {
        let f = if rng.gen_ratio(1, 4) {
            let i = rng.gen_range(0..n);
            Poly::var(n, i).pow(2).add(&Poly::from_int(n, rng.gen_range(1..=bound.max(1))))
        } else {
            random_linear(rng, n, bound)
        };
        den = den.mul(&f);
    }
    RationalFunction::new(num, den).expect("nonzero denominator")
}

fn random_type(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntegerLinearType {
    loop {
        let v: Vec<i64> = (0..n).map(|_| coeff(rng, bound)).collect();
        let g = v.iter().fold(0i64, |g, &c| g.gcd(&c));
        if g == 0 {
            continue;
        }
        let sign = if v.iter().find(|&&c| c != 0).copied().unwrap_or(1) < 0 { -g } else { g };
        return IntegerLinearType::new(v.iter().map(|c| c / sign).collect()).expect("primitive");
    }
}

fn random_r(rng: &mut ChaCha8Rng, max_deg: u32, bound: i64) -> RationalFunction {
    let z = Poly::var(1, 0);
    loop {
        let d = rng.gen_range(1..=max_deg.max(1));
        let mut den = Poly::one(1);
        let mut left = d;
        while left > 0 {
            if left >= 2 && rng.gen_ratio(1, 4) {
                den = den.mul(&z.pow(2).add(&Poly::from_int(1, rng.gen_range(1..=bound.max(1)))));
                left -= 2;
            } else {
                den = den.mul(&z.add(&Poly::from_int(1, coeff(rng, bound))));
                left -= 1;
            }
        }
        let mut num = Poly::zero(1);
        for k in 0..d {
            num = num.add(&z.pow(k).scale(&Q::from_integer(coeff(rng, bound).into())));
        }
        let r = RationalFunction::new(num, den).expect("nonzero denominator");
        if !r.is_zero() {
            return r;
        }
    }
}

/// A deterministic random representation. `r_v` are proper with denominators
/// split into linear factors and irreducible quadratics `Z^2 + c`.
pub fn random_additive_rep(seed: u64, params: &RandomParams) -> AdditiveRepresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.n.max(1);
    let exact_part = random_exact(&mut rng, n, params.coeff_bound);
    let count = rng.gen_range(0..=params.max_types);
    let mut uniform: Vec<UniformPart> = Vec::new();
    for _ in 0..count {
        let v = random_type(&mut rng, n, params.type_bound.max(1));
        let r = random_r(&mut rng, params.max_deg, params.coeff_bound);
        if uniform.iter().all(|u| u.v != v) {
            uniform.push(UniformPart { v, r });
        }
    }
    AdditiveRepresentation::new(exact_part, uniform).expect("valid by construction")
}
