//! Property suites for the order, blowup, cone and series invariants.

use proptest::prelude::*;
use puiseux_core::blowup::{check_principalization, principalize, principalize_sequential};
use puiseux_core::lattice::{ExponentVector, LatticeSet, ProductOrder};
use puiseux_core::plant::{random_blowdown_word, random_blowup_word, random_quadrant_series};
use puiseux_core::rational::{rat, rint, DegreeBound, Rational};
use puiseux_core::series::PuiseuxSeries;
use puiseux_core::{cone, Cone, MonomialMap};
use num_traits::Zero;
use std::cmp::Ordering;

fn ev(coords: Vec<i64>) -> ExponentVector {
    ExponentVector::from_ints(&coords)
}

fn small_vec(n: usize) -> impl Strategy<Value = ExponentVector> {
    prop::collection::vec(-6i64..=6, n).prop_map(ev)
}

fn nonneg_vec(n: usize) -> impl Strategy<Value = ExponentVector> {
    prop::collection::vec(0i64..=8, n).prop_map(ev)
}

proptest! {
    // lex order is a group order: a < b implies a + c < b + c
    #[test]
    fn lex_order_is_translation_invariant(
        a in small_vec(3),
        b in small_vec(3),
        c in small_vec(3),
    ) {
        let ord = a.lex_compare(&b).unwrap();
        let shifted = a.add(&c).unwrap().lex_compare(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(ord, shifted);
    }

    // a << b means every coordinate difference is nonnegative
    #[test]
    fn product_order_means_nonnegative_differences(
        a in small_vec(4),
        b in small_vec(4),
    ) {
        if matches!(
            a.product_compare(&b).unwrap(),
            ProductOrder::LessEqual | ProductOrder::Equal
        ) {
            let diff = b.sub(&a).unwrap();
            prop_assert!(diff.is_nonnegative());
        }
    }

    // lex positivity is additively stable
    #[test]
    fn lex_positive_plus_nonnegative_stays_positive(
        a in small_vec(3),
        b in small_vec(3),
    ) {
        prop_assume!(a.first_nonzero_sign() == 1);
        prop_assume!(b.first_nonzero_sign() >= 0);
        prop_assert_eq!(a.add(&b).unwrap().first_nonzero_sign(), 1);
    }

    // the product order is preserved by blowup compositions
    #[test]
    fn blowups_preserve_product_order(
        a in small_vec(3),
        delta in nonneg_vec(3),
        seed in 0u64..1000,
    ) {
        let m = random_blowup_word(seed, 3, 6);
        let b = a.add(&delta).unwrap();
        prop_assert!(a.leq_product(&b));
        prop_assert!(m.apply(&a).leq_product(&m.apply(&b)));
    }

    // order-preserving elementary maps preserve strict lex order
    #[test]
    fn elementary_maps_preserve_lex_order(
        a in small_vec(3),
        b in small_vec(3),
        i in 0usize..2,
        j in 1usize..3,
        sign in prop::sample::select(vec![1i64, -1]),
    ) {
        prop_assume!(i < j);
        prop_assume!(a.lex_compare(&b).unwrap() == Ordering::Less);
        let m = MonomialMap::elementary(3, i, j, sign).unwrap();
        prop_assert_eq!(
            m.apply(&a).lex_compare(&m.apply(&b)).unwrap(),
            Ordering::Less
        );
    }

    // compose with the inverse gives the identity
    #[test]
    fn inverse_round_trip(seed in 0u64..2000, word in 0usize..10) {
        let m = random_blowdown_word(seed, 4, word);
        prop_assert!(m.compose(&m.inverse()).unwrap().is_identity());
        prop_assert!(m.inverse().compose(&m).unwrap().is_identity());
    }

    // principalization postcondition, checked independently by the product
    // order; the sequential induction agrees with the joint reduction
    #[test]
    fn principalization_postcondition(
        points in prop::collection::vec(nonneg_vec(3), 1..5),
        extra in prop::collection::vec(nonneg_vec(3), 1..4),
    ) {
        let sets = vec![
            LatticeSet::new(points).unwrap(),
            LatticeSet::new(extra).unwrap(),
        ];
        let joint = principalize(&sets, 10_000).unwrap();
        prop_assert!(check_principalization(&sets, &joint).unwrap());
        let sequential = principalize_sequential(&sets, 10_000).unwrap();
        prop_assert!(check_principalization(&sets, &sequential).unwrap());
    }

    // every canonical basis vector lies in the cone of a blow-down
    #[test]
    fn quadrant_inside_blowdown_cone(seed in 0u64..2000, word in 0usize..12) {
        let m = random_blowdown_word(seed, 3, word);
        for i in 0..3 {
            let mut coords = vec![0i64; 3];
            coords[i] = 1;
            prop_assert!(cone::contains(&m, &ev(coords)));
        }
    }

    // reduction to the first quadrant is undone exactly by the inverse map
    #[test]
    fn first_quadrant_reduction_round_trip(seed in 0u64..1000, word in 0usize..8) {
        let m = random_blowdown_word(seed, 3, word);
        let c = Cone::of_blowdown(&m);
        let cert = c.bring_to_first_quadrant(10_000).unwrap();
        let back = cert.reduction.inverse();
        for g in c.generators() {
            let image = cert.reduction.apply(g);
            prop_assert!(image.is_nonnegative());
            prop_assert_eq!(back.apply(&image), g.clone());
        }
    }

    // S-cone recognition only depends on the set of rays
    #[test]
    fn s_cone_invariant_under_presentation(
        seed in 0u64..500,
        word in 0usize..8,
        scale_num in 1i64..5,
        scale_den in 1i64..5,
    ) {
        let m = random_blowdown_word(seed, 3, word);
        let gens = m.rows();
        let base = Cone::new(gens.clone()).unwrap().is_s_cone().unwrap();
        // permute and duplicate
        let mut doubled: Vec<_> = gens.iter().rev().cloned().collect();
        doubled.push(gens[0].clone());
        let permuted = Cone::new(doubled).unwrap().is_s_cone().unwrap();
        prop_assert_eq!(base, permuted);
        // positive rational scaling
        let factor = rat(scale_num, scale_den);
        let scaled: Vec<_> = gens.iter().map(|g| g.scale(&factor)).collect();
        let scaled = Cone::new(scaled).unwrap().is_s_cone().unwrap();
        prop_assert_eq!(base, scaled);
    }

    // automorphism round trip on series
    #[test]
    fn apply_map_round_trip(fseed in 0u64..2000, mseed in 0u64..2000, word in 0usize..8) {
        let f = random_quadrant_series(fseed, 3, 5);
        let m = random_blowdown_word(mseed, 3, word);
        prop_assert_eq!(f.apply_map(&m).apply_map(&m.inverse()), f);
    }

    // apply_map is a ring homomorphism
    #[test]
    fn apply_map_is_multiplicative(aseed in 0u64..1000, bseed in 0u64..1000, mseed in 0u64..1000) {
        let f = random_quadrant_series(aseed, 2, 4);
        let g = random_quadrant_series(bseed, 2, 4);
        let m = random_blowup_word(mseed, 2, 5);
        let lhs = f.mul(&g).unwrap().apply_map(&m);
        let rhs = f.apply_map(&m).mul(&g.apply_map(&m)).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs_add = f.add(&g).unwrap().apply_map(&m);
        let rhs_add = f.apply_map(&m).add(&g.apply_map(&m)).unwrap();
        prop_assert_eq!(lhs_add, rhs_add);
    }

    // diagram of a product sits in the Minkowski sum, and lex-leading terms
    // multiply
    #[test]
    fn product_diagram_in_minkowski_sum(aseed in 0u64..1000, bseed in 0u64..1000) {
        let f = random_quadrant_series(aseed, 2, 4);
        let g = random_quadrant_series(bseed, 2, 4);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let p = f.mul(&g).unwrap();
        let df = f.newton_diagram();
        let dg = g.newton_diagram();
        for e in p.newton_diagram() {
            let in_sum = df
                .iter()
                .any(|a| dg.iter().any(|b| a.add(b).unwrap() == e));
            prop_assert!(in_sum);
        }
        let (ef, cf) = f.leading_term().unwrap();
        let (eg, cg) = g.leading_term().unwrap();
        let (ep, cp) = p.leading_term().unwrap();
        prop_assert_eq!(ep.clone(), ef.add(eg).unwrap());
        prop_assert_eq!(cp.clone(), cf * cg);
    }

    // f * invert_unit(f) - 1 has no term below the bound
    #[test]
    fn unit_inverse_is_exact_below_bound(seed in 0u64..1000) {
        let tail = random_quadrant_series(seed, 2, 4);
        let f = PuiseuxSeries::one(2).add(&tail).unwrap();
        prop_assume!(!f.constant_coefficient().is_zero());
        let t = DegreeBound::Finite(rint(5));
        let inv = f.invert_unit(&t).unwrap();
        let residue = f.mul(&inv).unwrap().sub(&PuiseuxSeries::one(2)).unwrap();
        for e in residue.newton_diagram() {
            prop_assert!(e.total_degree() >= rint(5));
        }
    }
}

// A planted multiset of small rational roots is recovered exactly.
proptest! {
    #[test]
    fn univariate_oracle_recovers_planted_roots(
        roots in prop::collection::vec((-4i64..=4, 1i64..=3), 1..5),
    ) {
        use puiseux_core::{univariate_roots, UnivariatePoly};
        let mut planted: Vec<Rational> = roots.iter().map(|&(p, q)| rat(p, q)).collect();
        planted.sort();
        // expand prod (q x - p) to keep integer coefficients
        let mut coeffs = vec![rint(1)];
        for r in &planted {
            let mut next = vec![rint(0); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        let found = univariate_roots(&UnivariatePoly::new(coeffs)).unwrap();
        let mut recovered = Vec::new();
        for (root, mult) in found {
            for _ in 0..mult {
                recovered.push(root.clone());
            }
        }
        prop_assert_eq!(recovered, planted);
    }
}
