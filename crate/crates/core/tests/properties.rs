//! Randomized invariants.
mod common;

use indefinite_theta::harness::suites::{composition_ratio, quasi_shift_residual};
use indefinite_theta::koszul::{
    chain_map_failure, gr_multiply, koszul_d, koszul_d_with, subsets, telescope_decompose, ChainMap, GroupRingElement, KoszulChain,
};
use indefinite_theta::lattice::words::{random_gamma12_word, random_symplectic_word};
use indefinite_theta::lattice::{enumerate_cone, is_symplectic_matrix, transform_basis, ConeSpec, SplitBasis};
use indefinite_theta::modular::omega_transform;
use indefinite_theta::numeric::{principal_sqrt, signature, sym_inverse, ComplexMatrix, KahanSum, RealSymmetricMatrix, C64};
use indefinite_theta::reduced::{interior_residual, partial_sum_preimage, shift_delta, CoefficientArray};
use indefinite_theta::theta::{sample_points, Characteristic};
use num_bigint::BigInt;
use num_rational::Rational64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;

fn element(dim: usize) -> impl Strategy<Value = GroupRingElement> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, dim), -3i64..=3), 0..4)
        .prop_map(move |ts| GroupRingElement::from_terms(dim, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn chain(m: usize, p: usize) -> impl Strategy<Value = KoszulChain> {
    let count = subsets(m, p).len();
    prop::collection::vec(element(m), count).prop_map(move |coefs| {
        subsets(m, p).iter().zip(coefs).fold(KoszulChain::zero(m, p), |acc, (s, c)| acc.add(&KoszulChain::single(m, s, c)))
    })
}

fn omega_2x2() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![C64::new(0.1, -1.0), C64::new(0.3, 0.2)], vec![C64::new(0.3, 0.2), C64::new(-0.2, 1.5)]]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_ring_is_associative_and_distributive(a in element(2), b in element(2), c in element(2)) {
        prop_assert_eq!(gr_multiply(&gr_multiply(&a, &b), &c), gr_multiply(&a, &gr_multiply(&b, &c)));
        prop_assert_eq!(gr_multiply(&a, &(&b + &c)), &gr_multiply(&a, &b) + &gr_multiply(&a, &c));
        prop_assert_eq!(gr_multiply(&a, &b), gr_multiply(&b, &a));
        prop_assert_eq!(gr_multiply(&a, &b).augmentation(), a.augmentation() * b.augmentation());
    }

    #[test]
    fn koszul_d_squares_to_zero(c in chain(4, 2), c3 in chain(4, 3)) {
        prop_assert!(koszul_d(&koszul_d(&c)).is_zero());
        prop_assert!(koszul_d(&koszul_d(&c3)).is_zero());
    }

    #[test]
    fn koszul_d_squares_to_zero_for_any_generators(seed in any::<u64>(), c in chain(4, 3)) {
        let mut rng = SplitMix64::seed_from_u64(seed);
        let (_, s) = random_symplectic_word(&mut rng, 2, 3);
        let gens: Vec<Vec<i64>> = (0..4).map(|j| s.column(j).iter().copied().collect()).collect();
        prop_assert!(koszul_d_with(&koszul_d_with(&c, &gens), &gens).is_zero());
    }

    #[test]
    fn telescope_reconstructs(exp in prop::collection::vec(-4i64..=4, 3), order in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let r = telescope_decompose(&exp, &order);
        let mut acc = GroupRingElement::one(3);
        for (j, rj) in r.iter().enumerate() {
            let mut e = vec![0; 3];
            e[j] = 1;
            acc = &acc + &gr_multiply(rj, &GroupRingElement::minus_one(&e));
        }
        prop_assert_eq!(acc, GroupRingElement::monomial(exp, BigInt::from(1)));
    }

    #[test]
    fn chain_map_commutes_with_d(seed in any::<u64>(), len in 1usize..=4) {
        let mut rng = SplitMix64::seed_from_u64(seed);
        let (kinds, s) = random_symplectic_word(&mut rng, 2, len);
        prop_assert!(is_symplectic_matrix(&s));
        let failure = chain_map_failure(&ChainMap::new(&s).unwrap(), 2);
        prop_assert!(failure.is_none(), "{:?} {:?}", kinds, failure);
    }

    #[test]
    fn preimage_inverts_the_shift(vals in prop::collection::vec(-5i64..=5, 81), q in 1usize..=2) {
        let mut it = vals.into_iter();
        let a = CoefficientArray::from_fn(2, 4, |_| it.next().unwrap());
        let b = partial_sum_preimage(&a, q).unwrap();
        prop_assert_eq!(interior_residual(&b, &a, q), 0);
    }

    #[test]
    fn shift_of_a_compact_array_has_zero_sum(vals in prop::collection::vec(-5i64..=5, 7)) {
        let mut it = vals.into_iter();
        let a = CoefficientArray::from_fn(1, 4, |p| if p[0].abs() <= 3 { it.next().unwrap() } else { 0 });
        prop_assert_eq!(shift_delta(&a, 1).unwrap().total_sum(), 0);
    }

    #[test]
    fn period_matrix_round_trip(seed in any::<u64>(), len in 1usize..=5) {
        let mut rng = SplitMix64::seed_from_u64(seed);
        let g = random_gamma12_word(&mut rng, 2, len);
        let om = omega_2x2();
        let og = omega_transform(&g, &om).unwrap();
        let back = omega_transform(&g.inverse(), &og).unwrap();
        prop_assert!(back.max_abs_diff(&om) < 1e-8 * og.max_abs().max(1.0));
        prop_assert_eq!(signature(&og.im_form()).unwrap(), (1, 1));
        let a = ComplexMatrix::from_int(g.a());
        let b = ComplexMatrix::from_int(g.b());
        let c = ComplexMatrix::from_int(g.c());
        let d = ComplexMatrix::from_int(g.d());
        let direct = &(&(&a * &og) + &b) * &sym_inverse(&(&(&c * &og) + &d)).unwrap();
        prop_assert!(direct.max_abs_diff(&om) < 1e-8 * og.max_abs().max(1.0));
    }

    #[test]
    fn transforms_compose_up_to_a_root_of_unity(seed in any::<u64>()) {
        let mut rng = SplitMix64::seed_from_u64(seed);
        let g = random_gamma12_word(&mut rng, 2, 2);
        let h = random_gamma12_word(&mut rng, 2, 2);
        let (spread, eighth) = composition_ratio(&g, &h, &omega_2x2(), &sample_points(2, seed, 3)).unwrap();
        prop_assert!(spread < 1e-8 && eighth < 1e-8, "{} {}", spread, eighth);
    }

    #[test]
    fn quasi_shift(seed in any::<u64>(), k in prop::collection::vec(-2i64..=2, 2), m in prop::collection::vec(-2i64..=2, 2), nv in prop::collection::vec(-1i64..=1, 2)) {
        let mut rng = SplitMix64::seed_from_u64(seed);
        let g = random_gamma12_word(&mut rng, 2, 3);
        let z = sample_points(2, seed, 1).remove(0);
        let r = quasi_shift_residual(&g, &omega_2x2(), &k, &m, &nv, &z).unwrap();
        prop_assert!(r < 1e-8, "{}", r);
    }

    #[test]
    fn transformed_bases_stay_symplectic(seed in any::<u64>()) {
        let mut rng = SplitMix64::seed_from_u64(seed);
        let g = random_gamma12_word(&mut rng, 2, 3);
        let (b, s) = transform_basis(&g, &SplitBasis::reference(2, 1).lattice_basis()).unwrap();
        prop_assert!(is_symplectic_matrix(b.matrix()) && is_symplectic_matrix(&s));
    }

    #[test]
    fn cone_enumeration_is_norm_ordered_and_nested(r in 0.5f64..4.0, extra in 0.1f64..2.0, a in 0.5f64..2.0, b in -0.4f64..0.4) {
        let q = RealSymmetricMatrix::from_rows(&[vec![a, b], vec![b, 1.0]]).unwrap();
        prop_assume!(q.is_positive_definite());
        let small = enumerate_cone(&ConeSpec::full(2, r).unwrap(), &q).unwrap();
        let big = enumerate_cone(&ConeSpec::full(2, r + extra).unwrap(), &q).unwrap();
        prop_assert!(small.windows(2).all(|w| w[0].norm <= w[1].norm));
        prop_assert_eq!(&big[..small.len()], &small[..]);
        // brute-force count
        let count = (-20i64..=20).flat_map(|x| (-20i64..=20).map(move |y| (x, y)))
            .filter(|&(x, y)| q.quad(&[x as f64, y as f64]) <= r * r + 1e-12 * (r * r).max(1.0))
            .count();
        prop_assert_eq!(small.len(), count);
    }

    #[test]
    fn characteristics_reduce_mod_one(num in -7i64..=7, shift in -3i64..=3) {
        let a = Characteristic::new(vec![Rational64::new(num, 2), Rational64::new(0, 1)], vec![2, 2]).unwrap();
        let b = Characteristic::new(vec![Rational64::new(num, 2) + shift, Rational64::from_integer(shift)], vec![2, 2]).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn principal_sqrt_squares_back(re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let z = C64::new(re, im);
        let s = principal_sqrt(z);
        prop_assert!((s * s - z).norm() < 1e-12 * z.norm().max(1.0));
        prop_assert!(s.re >= 0.0);
    }

    #[test]
    fn compensated_sum_beats_cancellation(n in 1usize..200) {
        let mut terms = vec![C64::new(1e16, 0.0)];
        terms.extend(std::iter::repeat_n(C64::new(1.0, 0.0), n));
        terms.push(C64::new(-1e16, 0.0));
        let s: KahanSum = terms.into_iter().collect();
        prop_assert_eq!(s.value(), C64::new(n as f64, 0.0));
    }
}

#[test]
fn product_lattice_factorizes() {
    let om = common::diag2(common::I, common::I);
    let v = common::box_sum(2, 6, &[C64::new(0.0, 0.0); 2], &om, |_| true);
    let one_d = common::box_sum(1, 6, &[C64::new(0.0, 0.0)], &[vec![common::I]], |_| true);
    assert!((v - one_d * one_d).norm() < 1e-14);
}
