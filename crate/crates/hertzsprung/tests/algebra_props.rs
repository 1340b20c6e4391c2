//! Property tests for the algebra layer (ring laws, substitution
//! homomorphisms, cross-multiplied equality, series truncation) and for
//! the permutation primitives (round-trips, involutions, occurrence
//! bookkeeping).

use proptest::prelude::*;

use hertzsprung::perm::{
    avoids, count_occurrences, find_occurrences, standardize, Permutation,
};
use hertzsprung::poly::{fsum_series, series_from_rational, PolyError, VarRegistry, RegistryRef};
use hertzsprung::{Int, Poly, Rat, RatFun};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn test_registry() -> RegistryRef {
    VarRegistry::new(vec![p("12"), p("21")])
}

/// Sparse polynomials in u₀, u₁, x with small exponents and small
/// rational coefficients.
fn arb_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(
        (0u16..4, 0u16..4, 0u16..4, -3i64..=3, 1i64..=3),
        0..6,
    )
    .prop_map(|terms| {
        let reg = test_registry();
        terms.into_iter().fold(Poly::zero(&reg), |acc, (a, b, e, num, den)| {
            let c = Rat::new(Int::from(num), Int::from(den));
            &acc + &Poly::from_exponents(&reg, &[a, b, e], c)
        })
    })
}

fn arb_scalar() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rat::new(Int::from(n), Int::from(d)))
}

fn arb_perm(max_len: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_len)
        .prop_flat_map(|n| Just((1..=n as u16).collect::<Vec<u16>>()).prop_shuffle())
        .prop_map(|values| Permutation::new(values).unwrap())
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes_over_addition(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn additive_and_multiplicative_identities(a in arb_poly()) {
        let reg = a.registry().clone();
        prop_assert_eq!(&a + &Poly::zero(&reg), a.clone());
        prop_assert_eq!(&a * &Poly::one(&reg), a.clone());
        prop_assert_eq!(&a * &Poly::zero(&reg), Poly::zero(&reg));
        let minus = a.scale(&Rat::from_integer(Int::from(-1)));
        prop_assert!((&a + &minus).is_zero());
    }

    #[test]
    fn marker_substitution_is_a_ring_homomorphism(
        a in arb_poly(),
        b in arb_poly(),
        c in arb_scalar(),
    ) {
        let sum = (&a + &b).substitute_all_markers(&c);
        prop_assert_eq!(sum, &a.substitute_all_markers(&c) + &b.substitute_all_markers(&c));
        let prod = (&a * &b).substitute_all_markers(&c);
        prop_assert_eq!(prod, &a.substitute_all_markers(&c) * &b.substitute_all_markers(&c));
    }

    #[test]
    fn single_marker_substitution_is_a_ring_homomorphism(
        a in arb_poly(),
        b in arb_poly(),
        r in arb_poly(),
    ) {
        let lhs = (&a * &b).substitute_marker(0, &r).unwrap();
        let rhs = &a.substitute_marker(0, &r).unwrap() * &b.substitute_marker(0, &r).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = (&a + &b).substitute_marker(1, &r).unwrap();
        let rhs = &a.substitute_marker(1, &r).unwrap() + &b.substitute_marker(1, &r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_equality_ignores_common_factors(
        a in arb_poly(),
        b in arb_poly(),
        r in arb_poly(),
    ) {
        prop_assume!(!b.is_zero());
        prop_assume!(!r.is_zero());
        let plain = RatFun::new(a.clone(), b.clone()).unwrap();
        let inflated = RatFun::new(&a * &r, &b * &r).unwrap();
        prop_assert_eq!(&plain, &inflated);
        let reg = a.registry().clone();
        prop_assert_eq!(
            RatFun::from_poly(a.clone()),
            RatFun::new(a.clone(), Poly::one(&reg)).unwrap()
        );
    }

    #[test]
    fn adding_a_polynomial_to_a_quotient(
        a in arb_poly(),
        b in arb_poly(),
        t in arb_poly(),
    ) {
        prop_assume!(!b.is_zero());
        let sum = RatFun::new(a.clone(), b.clone()).unwrap().add_poly(&t).unwrap();
        let direct = RatFun::new(&a + &(&t * &b), b.clone()).unwrap();
        prop_assert_eq!(sum, direct);
    }

    #[test]
    fn series_coefficients_do_not_depend_on_the_truncation_order(
        num in arb_poly(),
        d in arb_poly(),
    ) {
        let reg = num.registry().clone();
        // Denominator 1 − x·d always has an invertible constant term.
        let den = &Poly::one(&reg) - &(&Poly::x(&reg) * &d);
        let rf = RatFun::new(num, den).unwrap();
        let short = series_from_rational(&rf, 5).unwrap();
        let long = series_from_rational(&rf, 9).unwrap();
        for n in 0..=5 {
            prop_assert_eq!(short.coeff(n), long.coeff(n), "n = {}", n);
        }
        prop_assert_eq!(&long.truncated(5), &short);
    }

    #[test]
    fn slot_sum_respects_truncation(
        num in arb_poly(),
        d in arb_poly(),
    ) {
        let reg = num.registry().clone();
        // Valuation ≥ 1 numerator, unit constant term denominator.
        let x = Poly::x(&reg);
        let rf = RatFun::new(&x * &num, &Poly::one(&reg) - &(&x * &d)).unwrap();
        let base = series_from_rational(&rf, 8).unwrap();
        let full = fsum_series(&base, 8).unwrap();
        let clipped = fsum_series(&base.truncated(5), 5).unwrap();
        for n in 0..=5 {
            prop_assert_eq!(full.coeff(n), clipped.coeff(n), "n = {}", n);
        }
    }

    #[test]
    fn mismatched_registries_are_rejected(a in arb_poly()) {
        let other = Poly::x(&VarRegistry::x_only());
        let add_rejected = matches!(
            a.checked_add(&other),
            Err(PolyError::RegistryMismatch { .. })
        );
        let mul_rejected = matches!(
            a.checked_mul(&other),
            Err(PolyError::RegistryMismatch { .. })
        );
        prop_assert!(add_rejected);
        prop_assert!(mul_rejected);
    }

    #[test]
    fn permutation_text_round_trip(pi in arb_perm(12)) {
        let text = pi.to_string();
        prop_assert_eq!(text.parse::<Permutation>().unwrap(), pi);
    }

    #[test]
    fn lex_rank_round_trip(pi in arb_perm(8)) {
        let rank = pi.lex_rank();
        prop_assert_eq!(Permutation::from_lex_rank(pi.len(), rank), pi);
    }

    #[test]
    fn reverse_and_complement_are_commuting_involutions(pi in arb_perm(9)) {
        prop_assert_eq!(pi.reverse().reverse(), pi.clone());
        prop_assert_eq!(pi.complement().complement(), pi.clone());
        prop_assert_eq!(pi.reverse().complement(), pi.complement().reverse());
    }

    #[test]
    fn standardizing_a_whole_permutation_is_the_identity(pi in arb_perm(9)) {
        let word = pi.factor(1, pi.len());
        prop_assert!(word.is_interval_valued());
        prop_assert_eq!(standardize(&word), pi);
    }

    #[test]
    fn occurrence_bookkeeping_is_consistent(pi in arb_perm(7), tau in arb_perm(4)) {
        let hits = find_occurrences(&tau, &pi);
        prop_assert_eq!(hits.len(), count_occurrences(&tau, &pi));
        prop_assert_eq!(avoids(&pi, std::slice::from_ref(&tau)), hits.is_empty());
        // Occurrences really are consecutive interval factors.
        for start in hits {
            let factor = pi.factor(start, tau.len());
            prop_assert!(factor.is_interval_valued());
            prop_assert_eq!(&standardize(&factor), &tau);
        }
    }

    #[test]
    fn occurrences_commute_with_symmetry(pi in arb_perm(7), tau in arb_perm(4)) {
        // Reversal maps occurrences to occurrences of the reversed
        // pattern; complementation likewise.
        prop_assert_eq!(
            count_occurrences(&tau, &pi),
            count_occurrences(&tau.reverse(), &pi.reverse())
        );
        prop_assert_eq!(
            count_occurrences(&tau, &pi),
            count_occurrences(&tau.complement(), &pi.complement())
        );
    }
}
