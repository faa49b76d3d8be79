//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

mod common;

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use wzforms::batch::round_trips;
use wzforms::{
    abramov_reduce, apply_shift, complete_unimodular, conjugate_polygamma, cyclic_apply, decompose, delta, generate,
    is_wz_form, orbital_residue, AdditiveRepresentation, Error, OrbitClass, Poly, RationalFunction, WZForm, Q,
};

type Outcome = Result<String, String>;

const SEEDS: u64 = 200;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn b(k: i64) -> Poly {
    Poly::linear(&[4, 6, 5], q(k))
}

/// `r ≡ target (mod base)` for a base linear in `x`, by substituting the root in `x`.
fn congruent_mod_linear(r: &RationalFunction, target: &RationalFunction, base: &Poly) -> bool {
    let c = base.coeffs_in(0);
    let root = c[0].scale(&(-c[1].constant_value().unwrap().recip()));
    let images = [root, Poly::var(3, 1), Poly::var(3, 2)];
    r.sub(target).substitute(&images).map(|d| d.is_zero()).unwrap_or(false)
}

fn residue_example() -> RationalFunction {
    fixture("residue.txt", &xyz())
}

fn residue_at(f: &RationalFunction, k: i64) -> Result<OrbitClass, String> {
    orbital_residue(f, &b(k), 2, 0).map_err(|e| e.to_string())?.ok_or_else(|| format!("zero residue at b{k:+}"))
}

fn criterion_1() -> Outcome {
    let v = xyz();
    let f = residue_example();
    for (k, expected) in [(0, "x"), (-3, "3*x+y-1"), (3, "2*x+3")] {
        let res = residue_at(&f, k)?;
        let want = expr(expected, &v);
        check(res == OrbitClass::new(&want, b(k), 2, 0), format!("res at b{k:+} is not [{expected}]"))?;
        check(congruent_mod_linear(&res.representative, &want, &b(k)), format!("representative at b{k:+} off"))?;
    }
    check(residue_at(&f, 0)? != residue_at(&f, -3)?, "distinct orbits compare equal")?;
    Ok("[x], [3x+y-1], [2x+3]".into())
}

fn criterion_2() -> Outcome {
    let v = xyz();
    let f = residue_example();
    let red = abramov_reduce(&f, 0);
    check(delta(&red.summed_part, 0).add(&red.remainder) == f, "reduction does not recombine")?;
    for (k, expected, first) in [(0, "x", 0), (5, "3*x+y+5", -3), (15, "2*x+9", 3)] {
        let want = expr(expected, &v);
        let res = residue_at(&f, k)?;
        check(res == OrbitClass::new(&want, b(k), 2, 0), format!("res at b{k:+} is not [{expected}]"))?;
        check(congruent_mod_linear(&res.representative, &want, &b(k)), format!("representative at b{k:+} off"))?;
        check(res == residue_at(&f, first)?, format!("res at b{k:+} not orbit-equal to res at b{first:+}"))?;
        let term = red
            .terms
            .iter()
            .find(|t| t.multiplicity == 2 && wzforms::shift_equivalent(&t.base, &b(k), 0).is_some())
            .ok_or_else(|| format!("no remainder term in the orbit of b{k:+}"))?;
        check(res == OrbitClass::new(&term.numerator, term.base.clone(), 2, 0), "remainder term off")?;
    }
    let double = red.terms.iter().filter(|t| t.multiplicity == 2).count();
    check(double == 3, format!("{double} remainder terms of multiplicity 2"))?;
    Ok("[x], [3x+y+5], [2x+9]".into())
}

fn two_types() -> Result<(WZForm, AdditiveRepresentation), String> {
    let v = xyz();
    let comps = ["two_types_f.txt", "two_types_g.txt", "two_types_h.txt"].map(|n| fixture(n, &v));
    let w = WZForm::new(comps.to_vec()).map_err(|e| e.to_string())?;
    let rep = decompose(&w).map_err(|e| e.to_string())?;
    Ok((w, rep))
}

fn criterion_3() -> Outcome {
    let (w, rep) = two_types()?;
    let z = names(&["Z"]);
    check(rep.exact_part.is_zero(), "nonzero exact part")?;
    let mut types: Vec<Vec<i64>> = rep.uniform.iter().map(|u| u.v.entries().to_vec()).collect();
    types.sort();
    check(types == vec![vec![0, 3, 2], vec![4, 6, 5]], format!("types {types:?}"))?;
    for u in &rep.uniform {
        check(u.r == expr("1/Z", &z), format!("r = {}", u.r.display(&z)))?;
    }
    check(generate(&rep) == w, "generate does not reproduce (f,g,h)")?;
    Ok("types (4,6,5), (0,3,2) with r = 1/Z, exact part 0".into())
}

fn criterion_4() -> Outcome {
    let v = xyz();
    let z = names(&["Z"]);
    let comps: Vec<RationalFunction> =
        ["mixed_f.txt", "mixed_g.txt", "mixed_h.txt"].iter().map(|n| fixture(n, &v)).collect();
    let broken = fixture("mixed_f_broken.txt", &v);
    check(!is_wz_form(&[broken, comps[1].clone(), comps[2].clone()]), "uncorrected triple passes")?;
    let w = WZForm::new(comps).map_err(|e| e.to_string())?;
    let rep = decompose(&w).map_err(|e| e.to_string())?;
    check(rep.uniform.len() == 1, format!("|V| = {}", rep.uniform.len()))?;
    let u = &rep.uniform[0];
    let t = u.v.entries();
    check(t == [1, -1, -1] || t == [-1, 1, 1], format!("type {t:?}"))?;
    // (v, r(Z)) and (-v, -r(-Z-1)) describe the same uniform form.
    let reoriented = if t[0] > 0 { u.r.substitute(&[Poly::linear(&[-1], q(-1))]).unwrap().neg() } else { u.r.clone() };
    check(reoriented == expr("1/Z", &z), format!("r_(-1,1,1) = {}", reoriented.display(&z)))?;
    check(generate(&rep) == w, "generate does not reproduce the triple")?;
    let a = rep.exact_part.display(&v).to_string();
    Ok(format!("type {t:?} with r = {}, r_(-1,1,1) = 1/Z, exact part {a}", u.r.display(&z)))
}

fn criterion_5() -> Outcome {
    let seeds: Vec<u64> = (0..SEEDS).collect();
    let start = Instant::now();
    let results = round_trips(&seeds);
    let failures: Vec<String> =
        results.iter().filter_map(|r| r.as_ref().err()).map(|c| format!("seed {}: {}", c.seed, c.reason)).collect();
    check(failures.is_empty(), failures.join("; "))?;
    Ok(format!("{SEEDS}/{SEEDS} round trips in {:.1?}", start.elapsed()))
}

/// A pair `(i, j)` and integer point where `Δ_i f_j ≠ Δ_j f_i`.
fn witness(comps: &[RationalFunction], rng: &mut ChaCha8Rng) -> Option<(usize, usize, Vec<i64>)> {
    let n = comps.len();
    for _ in 0..20 {
        let p: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let mut ei = vec![0; n];
                ei[i] = 1;
                let mut ej = vec![0; n];
                ej[j] = 1;
                let vals = (
                    shifted_value(&comps[j], &p, &ei),
                    value(&comps[j], &p),
                    shifted_value(&comps[i], &p, &ej),
                    value(&comps[i], &p),
                );
                if let (Some(a), Some(b), Some(c), Some(d)) = vals {
                    if a - b != c - d {
                        return Some((i, j, p));
                    }
                }
            }
        }
    }
    None
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut tested = 0;
    while tested < 50 {
        let n = rng.gen_range(2..=3);
        let comps: Vec<RationalFunction> = (0..n).map(|_| random_rf(&mut rng, n)).collect();
        if witness(&comps, &mut rng).is_none() {
            continue;
        }
        tested += 1;
        check(!is_wz_form(&comps), format!("tuple {tested} accepted by is_wz_form"))?;
        match WZForm::new(comps) {
            Err(Error::NotAWZForm(_)) => {}
            other => return Err(format!("tuple {tested}: {other:?}")),
        }
    }
    Ok("50/50 non-WZ tuples rejected".into())
}

/// Independent shift test for bases of equal degree in `x`: `b2 = λ·b(x+m)`.
fn shift_related(b: &Poly, b2: &Poly) -> bool {
    let d = b.degree_in(0);
    if d == 0 || d != b2.degree_in(0) {
        return false;
    }
    let (c, c2) = (b.coeffs_in(0), b2.coeffs_in(0));
    let lam = c2[d as usize].leading_coeff() / c[d as usize].leading_coeff();
    if c2[d as usize] != c[d as usize].scale(&lam) {
        return false;
    }
    let diff = c2[d as usize - 1].scale(&lam.recip()).sub(&c[d as usize - 1]);
    let Some(m) = diff.div_exact(&c[d as usize].scale(&q(d as i64))).filter(Poly::is_constant) else {
        return false;
    };
    let m = m.constant_term();
    m.is_integer() && *b2 == b.shift_var(0, &m).scale(&lam)
}

fn random_base(rng: &mut ChaCha8Rng) -> Poly {
    let c = q(rng.gen_range(-5..=5));
    if rng.gen_bool(0.7) {
        let a = rng.gen_range(1..=3);
        let bb = rng.gen_range(-3..=3);
        Poly::linear(&[a, bb], c)
    } else {
        let x = Poly::var(2, 0);
        x.mul(&x).add(&Poly::var(2, 1)).add(&Poly::constant(2, c))
    }
}

fn random_summand_input(rng: &mut ChaCha8Rng) -> RationalFunction {
    let bases: Vec<Poly> = (0..rng.gen_range(1..=2)).map(|_| random_base(rng)).collect();
    let mut f = RationalFunction::zero(2);
    for _ in 0..rng.gen_range(1..=4) {
        let base = &bases[rng.gen_range(0..bases.len())];
        let s = rng.gen_range(-3..=3);
        let e = rng.gen_range(1..=2);
        let num = random_poly(rng, 2, 1, 2, 4);
        let den = base.shift_var(0, &q(s)).pow(e);
        f = f.add(&RationalFunction::new(num, den).unwrap());
    }
    f
}

fn explicit_cyclic(h: &RationalFunction, i: usize, m: i64) -> RationalFunction {
    let n = h.nvars();
    let shift = |k: i64| {
        let mut s = vec![0; n];
        s[i] = k;
        apply_shift(h, &s)
    };
    if m >= 0 {
        (0..m).fold(RationalFunction::zero(n), |acc, k| acc.add(&shift(k)))
    } else {
        (m..0).fold(RationalFunction::zero(n), |acc, k| acc.sub(&shift(k)))
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for t in 0..500 {
        let n = rng.gen_range(1..=3);
        let h = random_rf(&mut rng, n);
        let i = rng.gen_range(0..n);
        let m = rng.gen_range(-4..=4);
        let c = cyclic_apply(&h, i, m);
        check(c == explicit_cyclic(&h, i, m), format!("cyclic case {t}: operator differs from the sum"))?;
        let mut s = vec![0; n];
        s[i] = m;
        check(delta(&c, i) == apply_shift(&h, &s).sub(&h), format!("cyclic case {t}: telescoping fails"))?;
    }
    for t in 0..500 {
        let f = random_summand_input(&mut rng);
        let red = abramov_reduce(&f, 0);
        check(delta(&red.summed_part, 0).add(&red.remainder) == f, format!("Abramov case {t}: f != Δg + rem"))?;
        let p: Vec<i64> = vec![rng.gen_range(-40..=40), rng.gen_range(-40..=40)];
        if let (Some(fv), Some(g1), Some(g0), Some(rv)) = (
            value(&f, &p),
            shifted_value(&red.summed_part, &p, &[1, 0]),
            value(&red.summed_part, &p),
            value(&red.remainder, &p),
        ) {
            check(fv == g1 - g0 + rv, format!("Abramov case {t}: pointwise identity fails"))?;
        }
        let total = red.terms.iter().fold(RationalFunction::zero(2), |acc, term| {
            acc.add(&term.numerator.div(&RationalFunction::from_poly(term.base.pow(term.multiplicity))).unwrap())
        });
        check(total == red.remainder, format!("Abramov case {t}: terms do not sum to the remainder"))?;
        for (k, a) in red.terms.iter().enumerate() {
            check(a.numerator.denom().is_free_of(0), format!("Abramov case {t}: numerator depends on x"))?;
            check(
                a.numerator.numer().degree_in(0) < a.base.degree_in(0),
                format!("Abramov case {t}: numerator degree"),
            )?;
            for bt in &red.terms[k + 1..] {
                check(
                    !shift_related(&a.base, &bt.base) || a.base == bt.base,
                    format!("Abramov case {t}: bases in one orbit"),
                )?;
            }
        }
    }
    Ok("500 cyclic telescoping and 500 Abramov cases".into())
}

fn criterion_8() -> Outcome {
    let (_, rep) = two_types()?;
    let s = conjugate_polygamma(&rep).display(&xyz());
    check(s == "ψ^{(0)}(4x+6y+5z) + ψ^{(0)}(3y+2z)", format!("printed {s}"))?;
    Ok(s)
}

/// Bareiss determinant over the integers.
fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                a[r][c] = (&a[k][k] * &a[r][c] - &a[r][k] * &a[k][c]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * prev
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for t in 0..500 {
        let n = rng.gen_range(2..=6);
        let v: Vec<i64> = loop {
            let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-30..=30)).collect();
            if v.iter().any(|&a| a != 0) {
                break v;
            }
        };
        let g = v.iter().fold(0i64, |acc, &a| acc.gcd(&a));
        let c = complete_unimodular(&v).map_err(|e| e.to_string())?;
        check(c.d[0] == v, format!("case {t}: first row {:?} for {v:?}", c.d[0]))?;
        check(det(&c.d) == BigInt::from(g), format!("case {t}: det {} for {v:?}", det(&c.d)))?;
        for r in 0..n {
            for col in 0..n {
                let e: Q = (0..n).map(|k| &c.dinv[r][k] * q(c.d[k][col])).sum();
                check(e == if r == col { Q::one() } else { Q::zero() }, format!("case {t}: inverse"))?;
            }
        }
    }
    for a in 1..=20 {
        let c = complete_unimodular(&[a]).map_err(|e| e.to_string())?;
        check(c.d == vec![vec![a]] && det(&c.d).abs() == BigInt::from(a), format!("n = 1, v = ({a})"))?;
    }
    Ok("500 vectors, det(D) = gcd(v) and first row v".into())
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (k, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("criterion {k}: PASS ({msg}) [{:.1?}]", start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {k}: FAIL ({msg}) [{:.1?}]", start.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
