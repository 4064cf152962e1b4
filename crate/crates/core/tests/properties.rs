use kmx_core::affine::{self, residue_cocycle, AffineElement};
use kmx_core::charclass::{ring_mul, TruncatedClass};
use kmx_core::dynkin::{self, binom3, index_string_sum, index_weight_sum};
use kmx_core::field::Field;
use kmx_core::laurent::LaurentPoly;
use kmx_core::matrix::Matrix;
use kmx_core::repchar::{self, weight_multiplicities};
use kmx_core::rootsys::{all_types_up_to, build_root_system, Weight};
use kmx_core::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -5i64..=5, 1i64..=3), 0..5).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(k, p, q)| (k, Rational::new(p.into(), q.into()))))
    })
}

fn small_type() -> impl Strategy<Value = (kmx_core::rootsys::TypeLabel, usize)> {
    prop::sample::select(all_types_up_to(3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_display_parses_back(p in laurent()) {
        prop_assert_eq!(LaurentPoly::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn derivatives_have_no_residue(p in laurent()) {
        prop_assert!(p.derivative().residue().is_zero());
    }

    #[test]
    fn residue_cocycle_is_antisymmetric(p in laurent(), q in laurent()) {
        prop_assert_eq!(residue_cocycle(&p, &q), -residue_cocycle(&q, &p));
    }

    #[test]
    fn inverse_series_inverts(p in laurent(), c in 1i64..5) {
        let unit = &p.truncate_below(4).shift(0) + &LaurentPoly::constant(Rational::from_i64(c));
        let unit = LaurentPoly::from_terms(unit.terms().filter(|(k, _)| *k >= 0).map(|(k, v)| (k, v.clone())));
        prop_assume!(!unit.coeff(0).is_zero());
        let inv = unit.inverse_series(6).unwrap();
        prop_assert_eq!((&unit * &inv).truncate_below(6), LaurentPoly::one());
    }

    #[test]
    fn truncated_rings_commute_and_associate(a in prop::array::uniform4(-5i64..5), b in prop::array::uniform4(-5i64..5), c in prop::array::uniform4(-5i64..5)) {
        let (x, y, z) = (TruncatedClass::cx(a), TruncatedClass::cx(b), TruncatedClass::cx(c));
        prop_assert_eq!(ring_mul(&x, &y).unwrap(), ring_mul(&y, &x).unwrap());
        prop_assert_eq!(
            ring_mul(&ring_mul(&x, &y).unwrap(), &z).unwrap(),
            ring_mul(&x, &ring_mul(&y, &z).unwrap()).unwrap()
        );
        let (s, t) = (TruncatedClass::s4(a[0], a[1]), TruncatedClass::s4(b[0], b[1]));
        prop_assert_eq!(ring_mul(&s, &t).unwrap(), ring_mul(&t, &s).unwrap());
    }

    #[test]
    fn characters_match_weyl_dimension((label, rank) in small_type(), seed in any::<u64>()) {
        let rs = build_root_system(label, rank).unwrap();
        let lambda = Weight((0..rank).map(|i| ((seed >> (2 * i)) & 1) as i64).collect());
        let ch = weight_multiplicities(&rs, &lambda).unwrap();
        prop_assert_eq!(BigInt::from(ch.dimension()), repchar::dimension(&rs, &lambda).unwrap());
        prop_assert!(ch.is_weyl_invariant(&rs));
        let strings = repchar::sl2_theta_decompose(&rs, &ch).unwrap();
        prop_assert_eq!(strings.total_dimension(), ch.dimension());
        prop_assert_eq!(index_weight_sum(&rs, &ch), Rational::from_i64(index_string_sum(&strings) as i64));
    }

    #[test]
    fn tensor_products_add_indices((label, rank) in small_type(), i in 0usize..3, j in 0usize..3) {
        // m_{V ⊗ W} = dim W · m_V + dim V · m_W
        let rs = build_root_system(label, rank).unwrap();
        let v = weight_multiplicities(&rs, &Weight::fundamental(rank, i % rank)).unwrap();
        let w = weight_multiplicities(&rs, &Weight::fundamental(rank, j % rank)).unwrap();
        let lhs = index_weight_sum(&rs, &v.tensor(&w));
        let rhs = index_weight_sum(&rs, &v) * Rational::from_i64(w.dimension() as i64)
            + index_weight_sum(&rs, &w) * Rational::from_i64(v.dimension() as i64);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_antisymmetric(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = affine::random_element(&mut rng, n, 3, 4);
        let y = affine::random_element(&mut rng, n, 3, 4);
        let sum = affine::bracket(&x, &y).unwrap().add(&affine::bracket(&y, &x).unwrap()).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn central_term_of_opposite_monomials(k in -5i64..=5, a in -3i64..=3, b in -3i64..=3) {
        // [E ⊗ t^k, F ⊗ t^{-k}] = H ⊗ 1 + k tr(EF) K
        let e = Matrix::unit(2, 0, 1).scale(&Rational::from_i64(a));
        let f = Matrix::unit(2, 1, 0).scale(&Rational::from_i64(b));
        let z = affine::bracket(&AffineElement::monomial(&e, k).unwrap(), &AffineElement::monomial(&f, -k).unwrap()).unwrap();
        prop_assert_eq!(z.central_coefficient().clone(), Rational::from_i64(k * a * b));
        prop_assert_eq!(z.components().get(&0).cloned().unwrap_or(Matrix::zero(2, 2)), e.commutator(&f));
    }
}

#[test]
fn irreducible_trace_ratios_are_binomials() {
    for m in 0..=8usize {
        let ratio = dynkin::index_trace_ratio(&dynkin::sl2_irrep_matrices(m)).unwrap();
        assert_eq!(ratio, Rational::from_i64(binom3(m as u64 + 2) as i64));
    }
}

#[test]
fn clebsch_gordan_with_standard() {
    for m in 0..=10u64 {
        let product = repchar::sl2_character(m).tensor(&repchar::sl2_character(1));
        let a1 = build_root_system(kmx_core::rootsys::TypeLabel::A, 1).unwrap();
        let strings = repchar::sl2_theta_decompose(&a1, &product).unwrap();
        let want: Vec<u64> = repchar::clebsch_gordan_with_w1(m).iter().map(|x| x + 1).collect();
        assert_eq!(strings.dims, want);
    }
}
