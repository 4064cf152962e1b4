use std::collections::HashSet;

use kmx_core::affweyl::{build_affine_weyl, min_lattice_level};
use kmx_core::field::{Field, Fp};
use kmx_core::laurent::LaurentPoly;
use kmx_core::latgrass::{
    self, base_point, cocharacter_point, count_points, embed_next, enumerate_points, is_lattice_point, LatticeSubspace,
    LoopMatrix, TruncWindow,
};
use kmx_core::rootsys::{build_root_system, TypeLabel};
use kmx_core::{Error, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type F2 = Fp<2>;

/// Every subspace of `F_2^dim` of dimension `k`, from all `k`-tuples of vectors.
fn all_subspaces_f2(window: &TruncWindow, k: usize) -> HashSet<LatticeSubspace<F2>> {
    let dim = window.dimension();
    let vectors: Vec<Vec<F2>> =
        (0u32..1 << dim).map(|bits| (0..dim).map(|i| F2::new(((bits >> i) & 1) as i64)).collect()).collect();
    let mut out = HashSet::new();
    let mut pick = vec![0usize; k];
    loop {
        let span = LatticeSubspace::from_vectors(window.clone(), pick.iter().map(|&i| vectors[i].clone()).collect()).unwrap();
        if span.dimension() == k {
            out.insert(span);
        }
        let mut i = 0;
        while i < k {
            pick[i] += 1;
            if pick[i] < vectors.len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == k {
            return out;
        }
    }
}

#[test]
fn echelon_scan_matches_raw_subspace_scan() {
    let window = TruncWindow::new::<F2>(2, 1);
    let stable: HashSet<_> = all_subspaces_f2(&window, 2).into_iter().filter(is_lattice_point).collect();
    let scanned: HashSet<_> = enumerate_points::<2>(2, 1).into_iter().collect();
    assert_eq!(stable, scanned);
    assert_eq!(count_points(2, 1, 2, u64::MAX).unwrap(), stable.len() as u64);
}

#[test]
fn scan_regression_fixtures() {
    assert_eq!(count_points(2, 0, 2, u64::MAX).unwrap(), 1);
    assert_eq!(count_points(2, 1, 2, u64::MAX).unwrap(), 7);
    assert_eq!(count_points(2, 1, 3, u64::MAX).unwrap(), 13);
}

#[test]
fn embedding_is_injective_on_f2_points() {
    let points = enumerate_points::<2>(2, 1);
    let images: HashSet<_> = points.iter().map(|p| embed_next(p).unwrap()).collect();
    assert_eq!(images.len(), points.len());
    assert!(images.iter().all(is_lattice_point));
    assert!(embed_next(&LatticeSubspace::<F2>::from_vectors(TruncWindow::new::<F2>(2, 1), vec![]).unwrap()).is_err());
}

#[test]
fn base_point_embeds_to_base_point() {
    for depth in 0..3 {
        assert_eq!(embed_next(&base_point::<Rational>(3, depth)).unwrap(), base_point(3, depth + 1));
    }
}

#[test]
fn sl3_points_match_cells() {
    // the scan over F_2 for SL_3 at depth 1 against cells of affine A2 inside the window
    let g = build_affine_weyl(&build_root_system(TypeLabel::A, 2).unwrap());
    let cells: u64 = g
        .enumerate_cosets_upto(8)
        .iter()
        .filter(|c| min_lattice_level(c).unwrap() <= 1)
        .map(|c| 2u64.pow(c.min_length as u32))
        .sum();
    assert_eq!(count_points(3, 1, 2, u64::MAX).unwrap(), cells);
}

#[test]
fn window_containment_matches_level() {
    let g = build_affine_weyl(&build_root_system(TypeLabel::A, 1).unwrap());
    for c in g.enumerate_cosets_upto(6) {
        let level = min_lattice_level(&c).unwrap() as usize;
        let mu = c.sl_cocharacter.clone().unwrap();
        for depth in 0..=4 {
            let p = cocharacter_point::<Rational>(&mu, depth);
            assert_eq!(p.is_ok(), level <= depth, "{mu:?} at {depth}");
        }
        if level > 0 {
            assert_eq!(cocharacter_point::<Rational>(&mu, level - 1).unwrap_err(), Error::OutOfWindow { n: level - 1, min_n: level });
        }
    }
}

#[test]
fn normalized_determinant_is_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let p = latgrass::random_polynomial_sl(&mut rng, 3, 5, 2);
        assert_eq!(p.det(), LaurentPoly::one());
        let g = p.mul(&LoopMatrix::diagonal(vec![
            LaurentPoly::monomial(Rational::from_i64(3), 2),
            LaurentPoly::one(),
            LaurentPoly::one(),
        ]));
        let h = latgrass::normalize_determinant(&g, 8).unwrap();
        assert_eq!(h.det(), LaurentPoly::one());
    }
}

#[test]
fn group_lattices_are_coset_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = LoopMatrix::<Rational>::cocharacter(&[1, 0, -1]).mul(&latgrass::random_polynomial_sl(&mut rng, 3, 4, 1));
    let depth = latgrass::minimal_depth(&g).unwrap();
    let base = latgrass::lattice_from_group(&g, depth).unwrap();
    assert_eq!(base.dimension(), 3 * depth);
    for _ in 0..20 {
        let p = latgrass::random_polynomial_sl(&mut rng, 3, 4, 2);
        assert_eq!(latgrass::lattice_from_group(&g.mul(&p), depth).unwrap(), base);
    }
}
