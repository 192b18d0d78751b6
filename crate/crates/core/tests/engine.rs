use syzygy_core::koszul::{closed_form_a2, BettiEngine, EngineConfig};
use syzygy_core::linalg::FieldChoice;
use syzygy_core::rings::{Bidegree, MonomialAlgebra, ScrollInvariants};

fn engine(reduce: bool) -> BettiEngine {
    BettiEngine::new(EngineConfig { reduce, ..Default::default() }).unwrap()
}

fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k as i128).fold(1, |acc, i| acc * (n as i128 - i) / (i + 1))
}

/// `Σ_p (-1)^p κ_{p,d-p}` is the coefficient of `t^d` in
/// `(1-t)^N Σ_n (an+1)(bn+1) t^n`.
#[test]
fn euler_characteristic_matches_hilbert_series() {
    let e = engine(true);
    for (a, b) in [(1, 1), (1, 2), (2, 2), (2, 3), (1, 4)] {
        let n = ((a + 1) * (b + 1)) as i64;
        let alg = MonomialAlgebra::segre(a, b).unwrap();
        let table = e.full_betti_table(&alg, (n - 3) as u32).unwrap();
        for d in 0..=n + 2 {
            let numerator: i128 = (0..=d)
                .map(|k| {
                    let h = (a as i128 * (d - k) as i128 + 1) * (b as i128 * (d - k) as i128 + 1);
                    let s = if k % 2 == 0 { 1 } else { -1 };
                    s * binom(n, k) * h
                })
                .sum();
            let chi: i128 = (0..=d.min(n - 3))
                .filter(|&p| d - p <= 3)
                .map(|p| {
                    let s = if p % 2 == 0 { 1 } else { -1 };
                    s * table.get(p as u32, (d - p) as u32) as i128
                })
                .sum();
            assert_eq!(chi, numerator, "({a},{b}) degree {d}");
        }
    }
}

#[test]
fn swapping_factors_transposes_bidegrees() {
    let e = engine(true);
    for (a, b, p, q) in [(1, 2, 2, 1), (2, 3, 5, 1), (2, 3, 8, 2), (1, 3, 3, 1)] {
        let x = e.bidegree_table(&MonomialAlgebra::segre(a, b).unwrap(), p, q).unwrap();
        let y = e.bidegree_table(&MonomialAlgebra::segre(b, a).unwrap(), p, q).unwrap();
        assert_eq!(x.total(), y.total());
        for (bd, d) in &x.entries {
            assert_eq!(y.get(Bidegree::new(bd.u2, bd.u1)), *d);
        }
    }
}

#[test]
fn reduced_and_full_engines_agree() {
    let (r, f) = (engine(true), engine(false));
    for (a, b, p, q) in [(2, 2, 3, 1), (2, 2, 6, 2), (2, 3, 4, 1), (3, 3, 11, 1), (3, 3, 10, 2), (1, 3, 2, 1)] {
        let alg = MonomialAlgebra::segre(a, b).unwrap();
        assert_eq!(r.bidegree_table(&alg, p, q).unwrap(), f.bidegree_table(&alg, p, q).unwrap(), "({a},{b}) p={p} q={q}");
    }
    let scroll = MonomialAlgebra::scroll(ScrollInvariants::new(vec![1, 2, 2], 0).unwrap());
    assert_eq!(r.bidegree_table(&scroll, 3, 1).unwrap(), f.bidegree_table(&scroll, 3, 1).unwrap());
}

#[test]
fn a2_tables_match_closed_forms() {
    let e = engine(true);
    for b in [2, 3, 4] {
        let alg = MonomialAlgebra::segre(2, b).unwrap();
        let max_p = 3 * (b + 1) - 3;
        let table = e.full_betti_table(&alg, max_p).unwrap();
        for p in 1..=max_p {
            for q in [1, 2] {
                assert_eq!(table.get(p, q) as u128, closed_form_a2(b, p, q).unwrap(), "b={b} p={p} q={q}");
            }
            assert_eq!(table.get(p, 3), 0);
        }
    }
}

#[test]
fn rational_and_prime_tables_agree() {
    let q = BettiEngine::new(EngineConfig { field: FieldChoice::Rational, ..Default::default() }).unwrap();
    let g = engine(true);
    let alg = MonomialAlgebra::segre(2, 3).unwrap();
    assert_eq!(q.full_betti_table(&alg, 9).unwrap().entries, g.full_betti_table(&alg, 9).unwrap().entries);
}

/// A rational normal scroll of degree f has `κ_{p,1} = p C(f, p+1)`.
#[test]
fn scroll_first_row() {
    let e = engine(true);
    let inv = ScrollInvariants::segre_scroll(3, 4).unwrap();
    let scroll = MonomialAlgebra::scroll(inv);
    assert_eq!(e.betti_number(&scroll, 14, 1).unwrap(), 14 * 16);
    assert_eq!(e.betti_number(&scroll, 15, 1).unwrap(), 15);
    let small = MonomialAlgebra::scroll(ScrollInvariants::new(vec![2, 3], 0).unwrap());
    for p in 1..=4 {
        assert_eq!(e.betti_number(&small, p, 1).unwrap() as i128, p as i128 * binom(5, p as i64 + 1));
        assert_eq!(e.betti_number(&small, p, 2).unwrap(), 0);
    }
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let alg = MonomialAlgebra::segre(2, 2).unwrap();
    let cold = engine(true).with_cache(std::sync::Arc::new(syzygy_core::cache::BlockCache::new(dir.path())));
    let first = cold.bidegree_table(&alg, 5, 1).unwrap();
    let warm = engine(true).with_cache(std::sync::Arc::new(syzygy_core::cache::BlockCache::new(dir.path())));
    assert_eq!(warm.bidegree_table(&alg, 5, 1).unwrap(), first);
    assert_eq!(first.total(), 20);
}
