mod common;

use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::*;
use wzforms::intlinear::determinant;
use wzforms::polygamma::PolygammaShift;
use wzforms::{
    abramov_reduce, apply_shift, complete_unimodular, conjugate_polygamma, cyclic_apply, decompose, delta, generate,
    integer_linear_decompose, integer_linear_type_rf, is_wz_form, parse_expression, partial_fraction,
    poly_antidifference, random_additive_rep, shift_equivalent, signed_range_sum, AdditiveRepresentation,
    IntegerLinearType, Monomial, Poly, RandomParams, RationalFunction, UniformPart, Q,
};

fn poly_strategy(n: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=deg, n), -6i64..=6), 0..=max_terms).prop_map(move |ts| {
        Poly::from_terms(
            n,
            ts.into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= deg)
                .map(|(e, c)| (Monomial::from_exponents(&e), q(c))),
        )
    })
}

fn nonzero_poly(n: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    poly_strategy(n, deg, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn rf_strategy(n: usize) -> impl Strategy<Value = RationalFunction> {
    (poly_strategy(n, 2, 3), nonzero_poly(n, 2, 3)).prop_map(|(a, b)| RationalFunction::new(a, b).unwrap())
}

/// A sum of a few terms over shifts of one or two bases, so reductions have work to do.
fn summand_strategy() -> impl Strategy<Value = RationalFunction> {
    let base = (1i64..=3, -3i64..=3, -4i64..=4, any::<bool>()).prop_map(|(a, b, c, quad)| {
        if quad {
            let x = Poly::var(2, 0);
            x.mul(&x).add(&Poly::linear(&[0, b], q(c)))
        } else {
            Poly::linear(&[a, b], q(c))
        }
    });
    (
        prop::collection::vec(base, 1..=2),
        prop::collection::vec((0usize..2, -3i64..=3, 1u32..=2, poly_strategy(2, 1, 2)), 1..=4),
    )
        .prop_map(|(bases, terms)| {
            terms.into_iter().fold(RationalFunction::zero(2), |acc, (k, s, e, num)| {
                let den = bases[k % bases.len()].shift_var(0, &q(s)).pow(e);
                acc.add(&RationalFunction::new(num, den).unwrap())
            })
        })
}

fn type_strategy(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, n).prop_filter("nonzero primitive", |v| v.iter().fold(0i64, |g, a| g.gcd(a)) == 1)
}

/// Univariate `r` whose denominator splits into linear factors over Q.
fn split_r_strategy() -> impl Strategy<Value = RationalFunction> {
    (prop::collection::vec((-4i64..=4, 1u32..=2), 1..=2), prop::collection::vec(-5i64..=5, 1..=2)).prop_filter_map(
        "nonzero proper",
        |(roots, num)| {
            let den = roots.iter().fold(Poly::one(1), |acc, &(a, e)| acc.mul(&Poly::linear(&[1], q(a)).pow(e)));
            let num = Poly::from_terms(
                1,
                num.iter().enumerate().map(|(k, &c)| (Monomial::from_exponents(&[k as u32]), q(c))),
            );
            let r = RationalFunction::new(num, den).ok()?;
            (!r.is_zero() && r.numer().degree_in(0) < r.denom().degree_in(0)).then_some(r)
        },
    )
}

fn unit(n: usize, i: usize, k: i64) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = k;
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in rf_strategy(2), b in rf_strategy(2), c in rf_strategy(2)) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.recip().unwrap()), RationalFunction::one(2));
        }
        for p in [[3, -2], [7, 5], [-11, 4]] {
            if let (Some(x), Some(y), Some(s)) = (value(&a, &p), value(&b, &p), value(&a.add(&b), &p)) {
                prop_assert_eq!(s, x + y);
            }
        }
    }

    #[test]
    fn canonical_form(a in poly_strategy(2, 3, 4), b in nonzero_poly(2, 3, 4), k in nonzero_poly(2, 1, 2)) {
        let f = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let g = RationalFunction::new(a.mul(&k), b.mul(&k)).unwrap();
        prop_assert_eq!(&f, &g);
        prop_assert!(f.denom().leading_coeff() > Q::zero());
        let names = names(&["x", "y"]);
        prop_assert_eq!(parse_expression(&f.display(&names).to_string(), &names).unwrap(), f);
    }

    #[test]
    fn partial_fractions_recombine(f in summand_strategy()) {
        let pf = partial_fraction(&f, 0);
        prop_assert_eq!(pf.recombine(), f);
        for t in &pf.terms {
            prop_assert!(t.numerator.numer().degree_in(0) < t.base.degree_in(0));
            prop_assert!(t.numerator.denom().is_free_of(0));
        }
    }

    #[test]
    fn polynomial_antidifference(p in poly_strategy(2, 4, 5), i in 0usize..2) {
        let s = poly_antidifference(&p, i);
        prop_assert_eq!(delta(&RationalFunction::from_poly(s), i), RationalFunction::from_poly(p));
    }

    #[test]
    fn cyclic_telescoping(h in rf_strategy(2), i in 0usize..2, m in -4i64..=4) {
        let n = 2;
        prop_assert_eq!(delta(&cyclic_apply(&h, i, m), i), apply_shift(&h, &unit(n, i, m)).sub(&h));
        prop_assert!(cyclic_apply(&h, i, 0).is_zero());
    }

    #[test]
    fn shift_composition(f in rf_strategy(3), m1 in prop::collection::vec(-3i64..=3, 3), m2 in prop::collection::vec(-3i64..=3, 3)) {
        let m: Vec<i64> = m1.iter().zip(&m2).map(|(a, b)| a + b).collect();
        prop_assert_eq!(apply_shift(&apply_shift(&f, &m1), &m2), apply_shift(&f, &m));
        let back: Vec<i64> = m.iter().map(|a| -a).collect();
        prop_assert_eq!(apply_shift(&apply_shift(&f, &m), &back), f);
    }

    #[test]
    fn abramov_postconditions(f in summand_strategy()) {
        let red = abramov_reduce(&f, 0);
        prop_assert_eq!(delta(&red.summed_part, 0).add(&red.remainder), f);
        for (k, a) in red.terms.iter().enumerate() {
            prop_assert!(a.numerator.numer().degree_in(0) < a.base.degree_in(0));
            for b in &red.terms[k + 1..] {
                prop_assert!(a.base == b.base || shift_equivalent(&a.base, &b.base, 0).is_none());
            }
        }
    }

    #[test]
    fn summable_inputs_reduce_to_zero(g in rf_strategy(2)) {
        let red = abramov_reduce(&delta(&g, 0), 0);
        prop_assert!(red.remainder.is_zero());
    }

    #[test]
    fn unimodular_completion(v in prop::collection::vec(-40i64..=40, 1..=6)) {
        prop_assume!(v.iter().any(|&a| a != 0));
        let c = complete_unimodular(&v).unwrap();
        let g = v.iter().fold(0i64, |g, a| g.gcd(a));
        prop_assert_eq!(&c.d[0], &v);
        let det = determinant(&c.d);
        if v.len() > 1 || v[0] > 0 {
            prop_assert_eq!(det, g.into());
        }
    }

    #[test]
    fn integer_linear_soundness(v in type_strategy(3), big_p in nonzero_poly(1, 3, 4)) {
        prop_assume!(!big_p.is_constant());
        let p = big_p.compose(&[Poly::linear(&v, Q::zero())]);
        let d = integer_linear_decompose(&p).unwrap().expect("P(v·x) is integer-linear");
        prop_assert!(d.v.entries() == v.as_slice() || d.v.negated().entries() == v.as_slice());
        prop_assert_eq!(d.p.compose(&[d.v.linear_form()]), p);
    }

    #[test]
    fn integer_linear_rejects_mixed_directions(v in type_strategy(2), w in type_strategy(2)) {
        prop_assume!(v != w && v.iter().map(|a| -a).collect::<Vec<_>>() != w);
        let p = Poly::linear(&v, q(1)).mul(&Poly::linear(&w, q(2)));
        prop_assert!(integer_linear_decompose(&p).unwrap().is_none());
    }

    #[test]
    fn rational_type_soundness(v in type_strategy(3), r in split_r_strategy()) {
        let f = r.substitute(&[Poly::linear(&v, Q::zero())]).unwrap();
        let (u, t) = integer_linear_type_rf(&f).unwrap().unwrap();
        prop_assert_eq!(u.substitute(&[t.linear_form()]).unwrap(), f);
    }

    #[test]
    fn uniform_components_have_their_type(v in type_strategy(3), r in split_r_strategy()) {
        let t = IntegerLinearType::new(v.clone()).unwrap();
        let comps: Vec<RationalFunction> = (0..3).map(|i| signed_range_sum(&r, &t, i)).collect();
        prop_assert!(is_wz_form(&comps));
        for c in comps.iter().filter(|c| !c.is_zero() && !c.is_constant()) {
            let (_, w) = integer_linear_type_rf(c).unwrap().expect("uniform component is integer-linear");
            prop_assert!(w == t || w.negated() == t);
        }
    }

    #[test]
    fn bivariate_uniform_parts_are_cyclic_pairs(seed in 0u64..10_000) {
        let params = RandomParams { n: 2, max_types: 2, max_deg: 2, ..RandomParams::default() };
        let rep = random_additive_rep(seed, &params);
        let back = decompose(&generate(&rep)).unwrap();
        for u in &back.uniform {
            let f = signed_range_sum(&u.r, &u.v, 0);
            let g = signed_range_sum(&u.r, &u.v, 1);
            prop_assert_eq!(delta(&f, 1), delta(&g, 0));
        }
        prop_assert_eq!(generate(&back), generate(&rep));
    }

    #[test]
    fn random_reps_generate_wz_forms(seed in 0u64..10_000, n in 1usize..=3) {
        let params = RandomParams { n, max_types: 2, max_deg: 2, ..RandomParams::default() };
        let rep = random_additive_rep(seed, &params);
        prop_assert_eq!(&rep, &random_additive_rep(seed, &params));
        prop_assert!(is_wz_form(generate(&rep).components()));
    }

    #[test]
    fn polygamma_soundness(
        a in poly_strategy(2, 2, 2),
        parts in prop::collection::vec((type_strategy(2), split_r_strategy()), 0..=2),
    ) {
        let mut uniform: Vec<UniformPart> = Vec::new();
        for (v, r) in parts {
            let v = IntegerLinearType::new(v).unwrap();
            if uniform.iter().all(|u| u.v != v && u.v != v.negated()) {
                uniform.push(UniformPart { v, r });
            }
        }
        let rep = AdditiveRepresentation::new(RationalFunction::from_poly(a), uniform).unwrap();
        let expr = conjugate_polygamma(&rep);
        let target = generate(&rep);
        for j in 0..2 {
            // Δ_j ψ^{(t)}(v·x+α) = Σ_ℓ (-1)^t t!/(v·x+α+ℓ)^{t+1}, signed for v_j < 0.
            let mut acc = delta(&expr.rational_part, j);
            for t in &expr.terms {
                let PolygammaShift::Rational(alpha) = &t.shift else { panic!("split r gave a root sum") };
                let beta = t.coefficient.constant_value().unwrap();
                let fact: Q = (1..=t.order).map(|k| q(k as i64)).product();
                let sign = if t.order % 2 == 1 { -Q::one() } else { Q::one() };
                let vj = t.v.entries()[j];
                let (range, s) = if vj >= 0 { (0..vj, Q::one()) } else { (vj..0, -Q::one()) };
                for l in range {
                    let den = Poly::linear(t.v.entries(), alpha + q(l)).pow(t.order + 1);
                    let term = RationalFunction::new(Poly::constant(2, &beta * &sign * &fact * &s), den).unwrap();
                    acc = acc.add(&term);
                }
            }
            prop_assert_eq!(&acc, &target.components()[j]);
            prop_assert_eq!(expr.certificate(j).unwrap(), acc);
        }
    }
}
