//! Property tests for the order axioms, the ring laws, the division
//! contracts, and the representation round trips.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use symgb::buchberger::{divide, reduce};
use symgb::coeff::{Coeff, FieldCoeff, Fp};
use symgb::gin::monomials_of_degree;
use symgb::invariant::{expand, product, remainder, Representation};
use symgb::monomial::{grevlex_cmp, Monomial};
use symgb::param::{c_var, ParamFrac};
use symgb::poly::Poly;
use symgb::text::parse_qq_poly;

fn q(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn arb_monomial(max_var: u32, max_deg: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec((1..=max_var, 1..=2u32), 0..=max_deg as usize)
        .prop_map(|pairs| Monomial::from_pairs(pairs))
}

fn arb_qq_poly(max_var: u32, terms: usize) -> impl Strategy<Value = Poly<BigRational>> {
    prop::collection::vec((-9i64..=9, arb_monomial(max_var, 3)), 0..=terms)
        .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|(c, m)| (q(c), m))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn grevlex_is_a_total_multiplicative_order(
        a in arb_monomial(6, 5),
        b in arb_monomial(6, 5),
        c in arb_monomial(6, 5),
    ) {
        prop_assert_eq!(grevlex_cmp(&a, &b), grevlex_cmp(&b, &a).reverse());
        prop_assert_eq!(grevlex_cmp(&a, &b) == std::cmp::Ordering::Equal, a == b);
        prop_assert_eq!(grevlex_cmp(&a.mul(&c), &b.mul(&c)), grevlex_cmp(&a, &b));
        // 1 is the smallest monomial of its degree class and degree rules
        prop_assert!(a.mul(&c) >= a);
    }

    #[test]
    fn polynomial_ring_laws(
        f in arb_qq_poly(4, 5),
        g in arb_qq_poly(4, 5),
        h in arb_qq_poly(4, 5),
    ) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn division_reconstructs_and_terminates(
        h in arb_qq_poly(4, 6),
        d1 in arb_qq_poly(4, 3),
        d2 in arb_qq_poly(4, 3),
    ) {
        let divisors: Vec<Poly<BigRational>> =
            [d1, d2].into_iter().filter(|f| !f.is_zero()).map(|f| f.make_monic()).collect();
        let (quotients, r) = divide(&h, &divisors);
        let mut rebuilt = r.clone();
        for (qi, fi) in quotients.iter().zip(&divisors) {
            rebuilt = rebuilt.add(&qi.mul(fi));
        }
        prop_assert_eq!(rebuilt, h);
        for (_, m) in r.terms() {
            prop_assert!(divisors.iter().all(|f| !f.lmon().divides(m)));
        }
    }

    #[test]
    fn printing_round_trips(f in arb_qq_poly(5, 6)) {
        let printed = f.to_string();
        let parsed = parse_qq_poly(&printed).unwrap();
        prop_assert_eq!(parsed, f);
    }

    #[test]
    fn rational_and_modular_division_agree(
        h in arb_qq_poly(3, 5),
        d in arb_qq_poly(3, 3),
    ) {
        // F_p agrees with Q reduced mod p when no denominator in sight is
        // divisible by p
        prop_assume!(!d.is_zero());
        let divisors = vec![d.make_monic()];
        let (_, r) = divide(&h, &divisors);
        for p in [101u64, 4999, 10_007] {
            let to_fp = |f: &Poly<BigRational>| -> Option<Poly<Fp>> {
                let mut terms = Vec::new();
                for (c, m) in f.terms() {
                    let den = Fp::from_bigint(c.denom(), p);
                    if Coeff::is_zero(&den) {
                        return None;
                    }
                    let num = Fp::from_bigint(c.numer(), p);
                    terms.push((num.div(&den), m.clone()));
                }
                Some(Poly::from_terms(terms))
            };
            if let (Some(hp), Some(dp), Some(rp)) =
                (to_fp(&h), to_fp(&divisors[0]), to_fp(&r))
            {
                if !dp.is_zero() && dp.lmon() == divisors[0].lmon() {
                    let (_, r_mod) = divide(&hp, &[dp]);
                    prop_assert_eq!(r_mod, rp, "disagreement mod {}", p);
                }
            }
        }
    }
}

fn arb_representation(n: u32, d: u32) -> impl Strategy<Value = Representation<BigRational>> {
    let reps: Vec<Monomial> = monomials_of_degree(n + d, d)
        .into_iter()
        .filter(|m| m.is_orbit_max(n))
        .collect();
    prop::collection::vec(-5i64..=5, reps.len()).prop_map(move |coeffs| {
        Representation::new(
            n,
            d,
            Poly::from_terms(
                coeffs.into_iter().zip(reps.iter().cloned()).map(|(c, m)| (q(c), m)),
            ),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn expansion_tower_collapses(
        r in (0u32..=2, 1u32..=3).prop_flat_map(|(n, d)| arb_representation(n, d)),
        step in 0u32..=2,
        step2 in 0u32..=2,
    ) {
        let n = r.level();
        let m = n + step;
        let m2 = m + step2;
        let once = expand(&r, m2).unwrap();
        let twice = expand(&expand(&r, m).unwrap(), m2).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn truncations_are_encoding_independent(
        r in (0u32..=2, 1u32..=3).prop_flat_map(|(n, d)| arb_representation(n, d)),
        step in 0u32..=2,
        cap in 0u32..=6,
    ) {
        // f^(M) does not depend on the level the series is encoded at
        let e = expand(&r, r.level() + step).unwrap();
        prop_assert_eq!(r.truncation(cap), e.truncation(cap));
    }

    #[test]
    fn refiltering_recovers_the_expansion(
        r in (0u32..=2, 1u32..=2).prop_flat_map(|(n, d)| arb_representation(n, d)),
        step in 0u32..=2,
    ) {
        // keeping the orbit-maximal terms of a deep enough truncation is
        // exactly the m-expansion
        let m = r.level() + step;
        let trunc = r.truncation(m + r.degree());
        let filtered = Poly::from_terms(
            trunc.terms().iter().filter(|(_, mo)| mo.is_orbit_max(m)).cloned(),
        );
        let expanded = expand(&r, m).unwrap();
        prop_assert_eq!(&filtered, expanded.body());
    }

    #[test]
    fn product_commutes_with_truncation(
        pair in (1u32..=2, 1u32..=2, 1u32..=2).prop_flat_map(|(n, d1, d2)| {
            (arb_representation(n, d1), arb_representation(n, d2))
                .prop_map(move |(f, h)| (n, f, h))
        }),
        m in 0u32..=5,
    ) {
        let (n, f, h) = pair;
        let p = product(n, &f, &h).unwrap();
        let cap = (n + f.degree() + h.degree()).min(m);
        let lhs = p.truncation(cap);
        let rhs = f.truncation(cap).mul(&h.truncation(cap)).truncate(cap);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn remainder_contract_on_representations(
        h in (1u32..=2, 2u32..=3).prop_flat_map(|(n, d)| arb_representation(n, d).prop_map(move |r| (n, r))),
    ) {
        let (n, h) = h;
        // divisor: a generic visible degree-1 series at the same level
        let divisor = Representation::new(
            n,
            1,
            Poly::from_terms(
                (1..=n + 1).map(|i| (q(1), Monomial::var(i))),
            ),
        )
        .unwrap();
        let r = remainder(n, &h, &[divisor.clone()]).unwrap();
        for (_, m) in r.body().terms() {
            prop_assert!(!divisor.lmon().unwrap().divides(m));
        }
        // membership of h - r in the divisor ideal, checked on truncations
        for cap in n + 1..=n + 3 {
            let diff = h.truncation(cap).sub(&r.truncation(cap));
            let gb = symgb::buchberger::buchberger(&[divisor.truncation(cap)]);
            prop_assert!(reduce(&diff, &gb).is_zero());
        }
    }

    #[test]
    fn fraction_field_laws(
        a in -6i64..=6,
        b in -6i64..=6,
        c in 1i64..=4,
    ) {
        let x = ParamFrac::from_element(c_var(1, Monomial::var(1)).scale(&BigInt::from(a)));
        let y = ParamFrac::from_element(
            c_var(1, Monomial::var(2)).scale(&BigInt::from(b)).add(&Poly::constant(BigInt::from(c))),
        );
        let z = ParamFrac::from_int(c);
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        if !Coeff::is_zero(&y) {
            let w = x.div(&y);
            prop_assert!(Coeff::is_zero(&w.mul(&y).sub(&x)));
        }
    }
}
