use syzygy_core::cocycles::{
    claim_witness_check, cocycle_vertical, independence_and_count, verify_cocycle, CocycleError, Point,
};
use syzygy_core::koszul::{BettiEngine, EngineConfig};
use syzygy_core::linalg::{kernel_basis, FieldChoice, PrimeField};
use syzygy_core::resolutions::{
    en_resolution_degree_piece, kernel_map, mapping_cone_ledger, verify_chain_map_squares, verify_en_exactness,
    verify_kernel_lemma, verify_relative_resolution, EnComplex,
};
use syzygy_core::rings::{Bidegree, MonomialAlgebra, ScrollInvariants};

#[test]
fn en_exact_over_rationals() {
    for (e, c) in [(vec![1, 2], 1), (vec![2, 2], 2), (vec![1, 1, 2], 1)] {
        let rep = verify_en_exactness(&e, c, 3, FieldChoice::Rational).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn en_ranks() {
    // f = 3, c = 1: Λ^0F⊗V_1, Λ^1F⊗V_0, then Λ^3F⊗V_0 on the first row
    let inv = ScrollInvariants::new(vec![1, 2], 1).unwrap();
    let en = EnComplex::new(inv, 1).unwrap();
    let ranks: Vec<usize> = (0..en.len()).map(|n| en.free_module(n).rank()).collect();
    assert_eq!(ranks, vec![2, 3, 1]);
    // M_1 first, then the free terms
    assert_eq!(en_resolution_degree_piece(&en, 0), vec![2, 2, 0, 0]);
    let d2 = en_resolution_degree_piece(&en, 2);
    assert_eq!(d2[0] + d2[2], d2[1] + d2[3]);
}

#[test]
fn relative_resolution_rectangular() {
    let rep = verify_relative_resolution(2, 3, 4, FieldChoice::default()).unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn chain_maps_commute_rectangular() {
    let rep = verify_chain_map_squares(3, 4, 2, 1).unwrap();
    assert!(rep.passed(), "{rep}");
    assert!(verify_chain_map_squares(3, 4, 1, 1).is_err());
}

/// At the threshold the cone ledger bound `Q_{0,p}` plus the kernel is the
/// engine's Betti number.
#[test]
fn ledger_bound_is_sharp() {
    let engine = BettiEngine::new(EngineConfig::default()).unwrap();
    let f = PrimeField::default();
    for (a, b) in [(3, 3), (3, 4)] {
        let ledger = mapping_cone_ledger(a, b).unwrap();
        let p = ledger.threshold();
        let kernel = kernel_basis(&f, &kernel_map(a, b).unwrap().matrix).len() as u128;
        let alg = MonomialAlgebra::segre(a, b).unwrap();
        for q in [p, p + 1, p + 2] {
            let bound = ledger.first_row_bound(q, kernel).unwrap();
            assert_eq!(bound, engine.betti_number(&alg, q, 1).unwrap() as u128, "({a},{b}) p={q}");
        }
        assert_eq!(ledger.first_row_bound(p - 1, kernel), None);
    }
}

#[test]
fn kernel_lemma_square_four() {
    let rep = verify_kernel_lemma(4, 4, FieldChoice::default()).unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn cocycles_rectangular_family() {
    let engine = BettiEngine::new(EngineConfig::default()).unwrap();
    let rep = independence_and_count(3, 4, &engine).unwrap();
    assert!(rep.passed(), "{rep}");
    assert!(rep.lines.iter().any(|l| l.text.contains("rank 238")));
}

#[test]
fn vertical_expression_for_a_partial_point_set() {
    // drop (1,2) from {0..3} x {0..3}
    let points: Vec<Point> = (0..=3).flat_map(|x| (0..4).map(move |y| (x, y))).filter(|&p| p != (1, 2)).collect();
    let (sx, sy) = points.iter().fold((0, 0), |(x, y), p| (x + p.0, y + p.1));
    for j in [0, 6, 13] {
        let v = cocycle_vertical(3, 4, j, &points).unwrap();
        assert!(!v.is_zero());
        assert!(verify_cocycle(&v));
        assert_eq!(v.bidegree(), Some(Bidegree::new(sx, sy + j + 1)));
    }
    assert!(matches!(cocycle_vertical(3, 4, 14, &points), Err(CocycleError::InvalidParameters(_))));
    let mut off = points.clone();
    off[0] = (0, 4);
    assert!(matches!(cocycle_vertical(3, 4, 0, &off), Err(CocycleError::InvalidPointSet(_))));
}

#[test]
fn claim_witness_extremes() {
    assert!(claim_witness_check(3, 3, 0).unwrap());
    assert!(claim_witness_check(3, 3, 10).unwrap());
}
