//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in descending graded-lexicographic order with no stored
//! zero coefficients, so two polynomials describing the same function are
//! structurally equal.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

/// Coefficient field.
pub type Q = BigRational;

pub(crate) fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, Q)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, q_int(c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Poly { nvars, terms: vec![(Monomial::var(nvars, i), Q::one())] }
    }

    pub fn monomial(mono: Monomial, c: Q) -> Self {
        let nvars = mono.0.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(mono, c)] }
    }

    /// Linear form `Σ coeffs[i]·x_i + constant`.
    pub fn linear(coeffs: &[i64], constant: Q) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (Monomial::var(n, i), q_int(c)))
                .chain(std::iter::once((Monomial::one(n), constant))),
        )
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(nvars: usize, terms: I) -> Self {
        let mut acc: HashMap<Monomial, Q> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), nvars);
            if c.is_zero() {
                continue;
            }
            *acc.entry(m).or_insert_with(Q::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, Q>) -> Self {
        let mut terms: Vec<(Monomial, Q)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { nvars, terms }
    }

    /// Terms already sorted descending with no duplicates and no zeros.
    fn from_sorted(nvars: usize, terms: Vec<(Monomial, Q)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Value of a constant polynomial; `None` when the polynomial is not constant.
    pub fn constant_value(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Q {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Q::zero(),
        }
    }

    pub fn coeff(&self, mono: &Monomial) -> Q {
        self.terms.binary_search_by(|(m, _)| mono.cmp(m)).map(|k| self.terms[k].1.clone()).unwrap_or_else(|_| Q::zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Leading coefficient in graded-lex order (zero for the zero polynomial).
    pub fn leading_coeff(&self) -> Q {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[i]).max().unwrap_or(0)
    }

    pub fn is_free_of(&self, i: usize) -> bool {
        self.terms.iter().all(|(m, _)| m.0[i] == 0)
    }

    /// Indices of the variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| !self.is_free_of(i)).collect()
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable sets");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &other.terms[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        Poly::from_sorted(self.nvars, out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable sets");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if let Some(p) = self.mul_packed(other) {
            return p;
        }
        let mut acc: HashMap<Monomial, Q> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        Poly::from_map(self.nvars, acc)
    }

    /// Multiplication over the integers with monomials packed into `u64`
    /// keys; `None` when the degrees do not fit the packing.
    fn mul_packed(&self, other: &Poly) -> Option<Poly> {
        let n = self.nvars;
        if n == 0 {
            return None;
        }
        let bits = (64 / n as u32).min(32);
        if self.total_degree() + other.total_degree() >= 1 << (bits.min(31)) {
            return None;
        }
        let pack = |m: &Monomial| -> u64 {
            let mut k = m.degree() as u64;
            for &e in &m.0[..n - 1] {
                k = (k << bits) | e as u64;
            }
            k
        };
        let (la, a) = integer_coeffs(&self.terms);
        let (lb, b) = integer_coeffs(&other.terms);
        let ka: Vec<u64> = self.terms.iter().map(|(m, _)| pack(m)).collect();
        let kb: Vec<u64> = other.terms.iter().map(|(m, _)| pack(m)).collect();
        let small = |v: &[BigInt]| v.iter().map(i64::try_from).collect::<std::result::Result<Vec<i64>, _>>().ok();
        let mut merged: Vec<(u64, BigInt)> = Vec::new();
        let mut done = false;
        if let (Some(sa), Some(sb)) = (small(&a), small(&b)) {
            let mut prods: Vec<(u64, i128)> = Vec::with_capacity(sa.len() * sb.len());
            for (x, &ca) in ka.iter().zip(&sa) {
                for (y, &cb) in kb.iter().zip(&sb) {
                    prods.push((x + y, ca as i128 * cb as i128));
                }
            }
            prods.sort_unstable_by_key(|p| std::cmp::Reverse(p.0));
            let mut ok = true;
            let mut out: Vec<(u64, i128)> = Vec::new();
            for (k, c) in prods {
                match out.last_mut() {
                    Some((lk, lc)) if *lk == k => match lc.checked_add(c) {
                        Some(v) => *lc = v,
                        None => {
                            ok = false;
                            break;
                        }
                    },
                    _ => out.push((k, c)),
                }
            }
            if ok {
                merged = out.into_iter().filter(|p| p.1 != 0).map(|(k, c)| (k, BigInt::from(c))).collect();
                done = true;
            }
        }
        if !done {
            let mut prods: Vec<(u64, BigInt)> = Vec::with_capacity(a.len() * b.len());
            for (x, ca) in ka.iter().zip(&a) {
                for (y, cb) in kb.iter().zip(&b) {
                    prods.push((x + y, ca * cb));
                }
            }
            prods.sort_unstable_by_key(|p| std::cmp::Reverse(p.0));
            for (k, c) in prods {
                match merged.last_mut() {
                    Some((lk, lc)) if *lk == k => *lc += c,
                    _ => merged.push((k, c)),
                }
            }
            merged.retain(|p| !p.1.is_zero());
        }
        let mask = (1u64 << bits) - 1;
        let scale = la * lb;
        let terms = merged
            .into_iter()
            .map(|(k, c)| {
                let mut e: SmallVec<[u32; 4]> = SmallVec::from_elem(0, n);
                let mut rest = k;
                for i in (0..n - 1).rev() {
                    e[i] = (rest & mask) as u32;
                    rest >>= bits;
                }
                e[n - 1] = rest as u32 - e[..n - 1].iter().sum::<u32>();
                let c = if scale.is_one() { Q::from_integer(c) } else { Q::new(c, scale.clone()) };
                (Monomial(e), c)
            })
            .collect();
        Some(Poly::from_sorted(n, terms))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = (&d.terms[0].0, d.terms[0].1.clone());
        if self.total_degree() < d.total_degree() {
            return None;
        }
        let mut rem: std::collections::BTreeMap<Monomial, Q> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.checked_div(lm)?;
            let qc = &c / &lc;
            for (dm, dc) in &d.terms[1..] {
                let key = qm.mul(dm);
                let delta = &qc * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly::from_sorted(self.nvars, quot))
    }

    /// Coefficients with respect to `x_i`: entry `k` is the coefficient of
    /// `x_i^k`, a polynomial free of `x_i` (same variable set).
    pub fn coeffs_in(&self, i: usize) -> Vec<Poly> {
        let d = self.degree_in(i) as usize;
        let mut buckets: Vec<Vec<(Monomial, Q)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            buckets[e].push((m.with_exponent(i, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut ts| {
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Poly::from_sorted(self.nvars, ts)
            })
            .collect()
    }

    /// Inverse of [`Poly::coeffs_in`].
    pub fn from_coeffs_in(nvars: usize, i: usize, coeffs: &[Poly]) -> Poly {
        Poly::from_terms(
            nvars,
            coeffs.iter().enumerate().flat_map(|(k, c)| {
                c.terms.iter().map(move |(m, a)| {
                    debug_assert_eq!(m.0[i], 0);
                    (m.with_exponent(i, k as u32), a.clone())
                })
            }),
        )
    }

    /// Leading coefficient with respect to `x_i`.
    pub fn lead_coeff_in(&self, i: usize) -> Poly {
        let d = self.degree_in(i);
        Poly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(m, _)| m.0[i] == d).map(|(m, c)| (m.with_exponent(i, 0), c.clone())),
        )
    }

    /// Substitutes the rational value `a` for `x_i`.
    pub fn eval_var(&self, i: usize, a: &Q) -> Poly {
        if a.is_zero() {
            return Poly::from_terms(self.nvars, self.terms.iter().filter(|(m, _)| m.0[i] == 0).cloned());
        }
        let d = self.degree_in(i) as usize;
        let mut powers = Vec::with_capacity(d + 1);
        powers.push(Q::one());
        for k in 1..=d {
            let next = &powers[k - 1] * a;
            powers.push(next);
        }
        Poly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.with_exponent(i, 0), c * &powers[m.0[i] as usize])),
        )
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Composition `self(images[0], …, images[n-1])`; all images live in a
    /// common ring (which may have a different number of variables).
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut acc = Poly::zero(target);
        let mut pieces: Vec<Poly> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[v].len() <= e as usize {
                    let next = cache[v].last().unwrap().mul(&images[v]);
                    cache[v].push(next);
                }
                t = t.mul(&cache[v][e as usize]);
            }
            pieces.push(t);
        }
        for p in pieces {
            acc = acc.add(&p);
        }
        acc
    }

    /// Taylor shift `x_i ↦ x_i + k`.
    pub fn shift_var(&self, i: usize, k: &Q) -> Poly {
        if k.is_zero() || self.is_free_of(i) {
            return self.clone();
        }
        let d = self.degree_in(i) as usize;
        let mut kpow = Vec::with_capacity(d + 1);
        kpow.push(Q::one());
        for j in 1..=d {
            let next = &kpow[j - 1] * k;
            kpow.push(next);
        }
        let binom = binomial_rows(d);
        let mut acc: HashMap<Monomial, Q> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            for j in 0..=e {
                let coeff = c * &binom[e][j] * &kpow[e - j];
                *acc.entry(m.with_exponent(i, j as u32)).or_insert_with(Q::zero) += coeff;
            }
        }
        Poly::from_map(self.nvars, acc)
    }

    /// `p(x + m)` for an integer shift vector.
    pub fn shift(&self, m: &[i64]) -> Poly {
        assert_eq!(m.len(), self.nvars);
        let mut p = self.clone();
        for (i, &k) in m.iter().enumerate() {
            if k != 0 {
                p = p.shift_var(i, &q_int(k));
            }
        }
        p
    }

    pub fn derivative(&self, i: usize) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
                let e = m.0[i];
                (m.with_exponent(i, e - 1), c * q_int(e as i64))
            }),
        )
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly::from_sorted(self.nvars, self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect())
    }

    pub fn map_coeffs<F: Fn(&Q) -> Q>(&self, f: F) -> Poly {
        Poly::from_sorted(
            self.nvars,
            self.terms
                .iter()
                .filter_map(|(m, c)| {
                    let v = f(c);
                    (!v.is_zero()).then(|| (m.clone(), v))
                })
                .collect(),
        )
    }

    /// Re-embeds the polynomial into a ring with `nvars` variables, sending
    /// variable `k` to variable `positions[k]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Poly {
        assert_eq!(positions.len(), self.nvars);
        Poly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = Monomial::one(nvars);
                for (k, &p) in positions.iter().enumerate() {
                    e.0[p] += m.0[k];
                }
                (e, c.clone())
            }),
        )
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Rational `c` such that `self / c` has coprime integer coefficients and
    /// a positive leading coefficient. Returns one for the zero polynomial.
    pub fn content(&self) -> Q {
        if self.is_zero() {
            return Q::one();
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
            if num_gcd.is_one() {
                break;
            }
        }
        let c = Q::new(num_gcd, den_lcm);
        if self.terms[0].1.is_negative() {
            -c
        } else {
            c
        }
    }

    /// Primitive integer polynomial with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.content().recip())
    }

    /// Monic version (leading coefficient one).
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Plain text with explicit `*`, parseable back.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names, style: Style::Plain }
    }

    /// Implicit-multiplication rendering for human-facing output.
    pub fn pretty<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names, style: Style::Pretty }
    }

    pub fn latex<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names, style: Style::Latex }
    }
}

/// `(L, [L·c])` with `L` the lcm of the coefficient denominators.
fn integer_coeffs(terms: &[(Monomial, Q)]) -> (BigInt, Vec<BigInt>) {
    let l = terms.iter().fold(BigInt::one(), |l, (_, c)| if c.denom().is_one() { l } else { l.lcm(c.denom()) });
    let v =
        terms.iter().map(|(_, c)| if l.is_one() { c.numer().clone() } else { c.numer() * (&l / c.denom()) }).collect();
    (l, v)
}

fn binomial_rows(d: usize) -> Vec<Vec<Q>> {
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(d + 1);
    for n in 0..=d {
        let mut row = vec![Q::one(); n + 1];
        for k in 1..n {
            row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
        }
        rows.push(row);
    }
    rows
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Style {
    Plain,
    Pretty,
    Latex,
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
    style: Style,
}

impl<'a> PolyDisplay<'a> {
    pub(crate) fn new(poly: &'a Poly, names: &'a [String], style: Style) -> Self {
        PolyDisplay { poly, names, style }
    }
}

pub(crate) fn write_rational(f: &mut fmt::Formatter<'_>, c: &Q, style: Style) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else if style == Style::Latex {
        let sign = if c.is_negative() { "-" } else { "" };
        write!(f, "{sign}\\frac{{{}}}{{{}}}", c.numer().abs(), c.denom())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, names: &[String], style: Style) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first && style == Style::Plain {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", names[i])?;
        if e > 1 {
            match style {
                Style::Latex => write!(f, "^{{{e}}}")?,
                _ => write!(f, "^{e}")?,
            }
        }
    }
    Ok(())
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names;
        assert!(names.len() >= self.poly.nvars, "not enough variable names");
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            if m.is_one() {
                write_rational(f, &a, self.style)?;
                continue;
            }
            if !a.is_one() {
                match self.style {
                    Style::Plain => {
                        write_rational(f, &a, self.style)?;
                        write!(f, "*")?;
                    }
                    Style::Pretty if !a.is_integer() => {
                        write!(f, "(")?;
                        write_rational(f, &a, self.style)?;
                        write!(f, ")")?;
                    }
                    _ => write_rational(f, &a, self.style)?,
                }
            }
            write_monomial(f, m, names, self.style)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn grlex_order_and_printing() {
        let p = &(&x().pow(2) + &y()) + &Poly::from_int(3, -1);
        assert_eq!(p.display(&names()).to_string(), "x^2+y-1");
        let q = Poly::linear(&[4, 6, 5], q_int(0));
        assert_eq!(q.display(&names()).to_string(), "4*x+6*y+5*z");
        assert_eq!(q.pretty(&names()).to_string(), "4x+6y+5z");
        let r = x().mul(&y()).scale(&Q::new(BigInt::from(-3), BigInt::from(2)));
        assert_eq!(r.display(&names()).to_string(), "-3/2*x*y");
        assert_eq!(r.latex(&names()).to_string(), "-\\frac{3}{2}xy");
    }

    #[test]
    fn exact_division() {
        let a = &x() - &y();
        let b = &x() + &y();
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&(&x() + &Poly::one(3))), None);
    }

    #[test]
    fn shift_matches_compose() {
        let p = &x().pow(3).mul(&y()) + &y().pow(2);
        let shifted = p.shift(&[2, -1, 0]);
        let images = [&x() + &Poly::from_int(3, 2), &y() - &Poly::one(3), Poly::var(3, 2)];
        assert_eq!(shifted, p.compose(&images));
    }

    #[test]
    fn content_and_primitive() {
        let p = Poly::linear(&[2, 2, 0], q_int(0)).scale(&Q::new(BigInt::from(-1), BigInt::from(3)));
        assert_eq!(p.content(), Q::new(BigInt::from(-2), BigInt::from(3)));
        assert_eq!(p.primitive(), Poly::linear(&[1, 1, 0], q_int(0)));
    }

    #[test]
    fn coefficient_round_trip() {
        let p = &(&x().pow(2).mul(&y()) + &x()) + &y().pow(3);
        let cs = p.coeffs_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(Poly::from_coeffs_in(3, 0, &cs), p);
        assert_eq!(p.lead_coeff_in(0), y());
    }
}
