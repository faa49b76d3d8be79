//! Integer-linear polynomials and rational functions, and unimodular completion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Q};
use crate::rational::RationalFunction;

/// A nonzero integer direction `v` whose entries have gcd one.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct IntegerLinearType(Vec<i64>);

impl IntegerLinearType {
    pub fn new(v: Vec<i64>) -> Result<Self> {
        if v.iter().all(|&a| a == 0) {
            return Err(Error::InvalidInput("type vector must be nonzero".into()));
        }
        if v.iter().fold(0i64, |g, &a| g.gcd(&a)) != 1 {
            return Err(Error::InvalidInput(format!("type vector {v:?} must have entry gcd 1")));
        }
        Ok(IntegerLinearType(v))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        IntegerLinearType(self.0.iter().map(|a| -a).collect())
    }

    /// The linear form `v·x`.
    pub fn linear_form(&self) -> Poly {
        Poly::linear(&self.0, Q::zero())
    }

    /// First index with a nonzero entry.
    pub fn pivot(&self) -> usize {
        self.0.iter().position(|&a| a != 0).expect("nonzero type")
    }
}

/// `p = P(v·x)` with `P` univariate (one variable `Z`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerLinearDecomposition {
    pub p: Poly,
    pub v: IntegerLinearType,
}

/// Primitive integer vector proportional to the given rationals.
fn primitive_direction(ratios: &[Q]) -> Vec<i64> {
    let lcm = ratios.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let ints: Vec<BigInt> = ratios.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    ints.iter().map(|a| (a / &g).to_i64().expect("type entries fit in i64")).collect()
}

/// Restriction of `f` to the pivot axis: `x_k = Z/v_k`, all other variables zero.
fn along_axis(f: &Poly, v: &[i64], k: usize) -> Poly {
    let n = f.nvars();
    let images: Vec<Poly> = (0..n)
        .map(|i| if i == k { Poly::var(1, 0).scale(&Q::new(BigInt::one(), BigInt::from(v[k]))) } else { Poly::zero(1) })
        .collect();
    f.compose(&images)
}

/// `P(Z) ↦ P(-Z)`.
fn reflect(p: &Poly) -> Poly {
    p.compose(&[Poly::var(1, 0).neg()])
}

/// Decides whether `p = P(v·x)` and returns `(P, v)` under the sign rule:
/// leading coefficient of `P` positive, and for even degree the first
/// nonzero entry of `v` positive.
pub fn integer_linear_decompose(p: &Poly) -> Result<Option<IntegerLinearDecomposition>> {
    if p.is_constant() {
        return Err(Error::InvalidInput("integer-linear test of a constant".into()));
    }
    let n = p.nvars();
    let d = p.total_degree();
    let top = p.homogeneous_part(d);
    let pure = |k: usize, e: u32| {
        let mut ex = vec![0u32; n];
        ex[k] = e;
        Monomial::from_exponents(&ex)
    };
    let Some(k) = (0..n).find(|&k| !top.coeff(&pure(k, d)).is_zero()) else {
        return Ok(None);
    };
    let ck = top.coeff(&pure(k, d)) * Q::from_integer(d.into());
    let ratios: Vec<Q> = (0..n)
        .map(|j| {
            if j == k {
                return Q::one();
            }
            let mut ex = vec![0u32; n];
            ex[k] = d - 1;
            ex[j] += 1;
            top.coeff(&Monomial::from_exponents(&ex)) / &ck
        })
        .collect();
    let mut v = primitive_direction(&ratios);
    let mut big_p = along_axis(p, &v, k);
    if big_p.compose(&[Poly::linear(&v, Q::zero())]) != *p {
        return Ok(None);
    }
    let flip =
        if d % 2 == 1 { big_p.leading_coeff().is_negative() } else { v[v.iter().position(|&a| a != 0).unwrap()] < 0 };
    if flip {
        v.iter_mut().for_each(|a| *a = -*a);
        big_p = reflect(&big_p);
    }
    Ok(Some(IntegerLinearDecomposition { p: big_p, v: IntegerLinearType(v) }))
}

/// Decides whether `f = u(v·x)`, returning the univariate `u` and `v`.
pub fn integer_linear_type_rf(f: &RationalFunction) -> Result<Option<(RationalFunction, IntegerLinearType)>> {
    if f.is_constant() {
        return Err(Error::InvalidInput("integer-linear test of a constant".into()));
    }
    let decomp = |p: &Poly| -> Result<Option<IntegerLinearDecomposition>> {
        if p.is_constant() {
            Ok(Some(IntegerLinearDecomposition {
                p: Poly::constant(1, p.constant_value().unwrap()),
                v: IntegerLinearType(Vec::new()),
            }))
        } else {
            integer_linear_decompose(p)
        }
    };
    let (Some(mut num), Some(mut den)) = (decomp(f.numer())?, decomp(f.denom())?) else {
        return Ok(None);
    };
    let v = if den.v.is_empty() { num.v.clone() } else { den.v.clone() };
    for part in [&mut num, &mut den] {
        if part.v.is_empty() || part.v == v {
            continue;
        }
        if part.v.negated() == v {
            part.p = reflect(&part.p);
        } else {
            return Ok(None);
        }
    }
    let u = RationalFunction::new(num.p, den.p)?;
    Ok(Some((u, v)))
}

/// `D` with first row `v` and `det(D) = gcd(v)`, and its rational inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnimodularCompletion {
    pub d: Vec<Vec<i64>>,
    pub dinv: Vec<Vec<Q>>,
}

/// Extended gcd `(g, s, t)` with `s·a + t·b = g ≥ 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn complete_unimodular(v: &[i64]) -> Result<UnimodularCompletion> {
    let n = v.len();
    if v.iter().all(|&a| a == 0) {
        return Err(Error::InvalidInput("unimodular completion of the zero vector".into()));
    }
    let mut w = v.to_vec();
    // Rows of `uinv` track U^{-1} for the column operations with v·U = (g, 0, …, 0).
    let mut uinv: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut det_sign = 1i64;
    for j in 1..n {
        let (a, b) = (w[0], w[j]);
        if b == 0 {
            continue;
        }
        let (g, s, t) = ext_gcd(a, b);
        w[0] = g;
        w[j] = 0;
        let (r0, rj) = (uinv[0].clone(), uinv[j].clone());
        for c in 0..n {
            uinv[0][c] = (a / g) * r0[c] + (b / g) * rj[c];
            uinv[j][c] = -t * r0[c] + s * rj[c];
        }
    }
    if w[0] < 0 {
        w[0] = -w[0];
        uinv[0].iter_mut().for_each(|x| *x = -*x);
        det_sign = -det_sign;
    }
    let g = w[0];
    let mut d = uinv;
    d[0].iter_mut().for_each(|x| *x *= g);
    debug_assert_eq!(d[0], v);
    if det_sign < 0 && n > 1 {
        d[n - 1].iter_mut().for_each(|x| *x = -*x);
    }
    let dinv = invert(&d).expect("completion is nonsingular");
    Ok(UnimodularCompletion { d, dinv })
}

/// Gauss-Jordan inverse over the rationals.
pub(crate) fn invert(m: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| Q::from_integer(x.into())).collect();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        a[c].iter_mut().for_each(|x| *x *= &inv);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                a[r].iter_mut().zip(pivot.iter()).for_each(|(x, y)| *x -= &f * y);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            let pivot = a[c].clone();
            a[r].iter_mut().zip(pivot.iter()).for_each(|(x, y)| *x -= &f * y);
        }
    }
    det.to_integer()
}
