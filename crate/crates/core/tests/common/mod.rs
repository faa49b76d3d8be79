#![allow(dead_code)]

use std::path::PathBuf;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use wzforms::{parse_expression, Monomial, Poly, RationalFunction, Q};

pub fn names(s: &[&str]) -> Vec<String> {
    s.iter().map(|x| x.to_string()).collect()
}

pub fn xyz() -> Vec<String> {
    names(&["x", "y", "z"])
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str, vars: &[String]) -> RationalFunction {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    parse_expression(&text, vars).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn expr(text: &str, vars: &[String]) -> RationalFunction {
    parse_expression(text, vars).unwrap()
}

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `Σ c_k x^k` over `n` variables with total degree at most `deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, deg: u32, terms: usize, bound: i64) -> Poly {
    Poly::from_terms(
        n,
        (0..terms).map(|_| {
            let mut left = deg;
            let exps: Vec<u32> = (0..n)
                .map(|_| {
                    let e = rng.gen_range(0..=left);
                    left -= e;
                    e
                })
                .collect();
            (Monomial::from_exponents(&exps), q(rng.gen_range(-bound..=bound)))
        }),
    )
}

pub fn random_nonzero_poly(rng: &mut ChaCha8Rng, n: usize, deg: u32, terms: usize, bound: i64) -> Poly {
    loop {
        let p = random_poly(rng, n, deg, terms, bound);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_rf(rng: &mut ChaCha8Rng, n: usize) -> RationalFunction {
    let num = random_poly(rng, n, 2, 3, 5);
    let den = random_nonzero_poly(rng, n, 2, 3, 5);
    RationalFunction::new(num, den).unwrap()
}

/// Exact value at an integer point, `None` at a pole.
pub fn value(f: &RationalFunction, point: &[i64]) -> Option<Q> {
    let pt: Vec<Q> = point.iter().map(|&a| q(a)).collect();
    let d = f.denom().eval(&pt);
    (!d.is_zero()).then(|| f.numer().eval(&pt) / d)
}

/// `σ^m f` evaluated at `point` as `f(point + m)`.
pub fn shifted_value(f: &RationalFunction, point: &[i64], m: &[i64]) -> Option<Q> {
    let p: Vec<i64> = point.iter().zip(m).map(|(a, b)| a + b).collect();
    value(f, &p)
}
