//! Explicit Koszul cocycles for `K_{p,1}` of the Segre ring at
//! `p = ab + a - 1`, written in `Λ^{p-1} V ⊗ S^2 V`.
//!
//! Grid points `(x, y)` of `{0..a} x {0..b}` are numbered `x (b+1) + y`. A
//! cocycle is an element whose quadric parts lie in the ideal `I` of the
//! Segre embedding and which the Koszul differential into
//! `Λ^{p-2} V ⊗ S^3 V` kills.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::koszul::{binomial, subsets, BettiEngine, EngineError, WedgeMonomial};
use crate::linalg::{vector_rank, Field};
use crate::report::Report;
use crate::rings::{Bidegree, MonomialAlgebra};
use crate::with_field;

pub type Point = (u32, u32);

/// An unordered pair of grid points, stored with the smaller index first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymPair(pub u8, pub u8);

impl SymPair {
    pub fn new(x: u8, y: u8) -> Self {
        if x <= y {
            Self(x, y)
        } else {
            Self(y, x)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Vertical { j: u32, points: Vec<Point> },
    Horizontal { j: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleExpression {
    pub a: u32,
    pub b: u32,
    pub p: u32,
    pub terms: BTreeMap<(WedgeMonomial, SymPair), i64>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CocycleError {
    #[error("invalid point set: {0}")]
    InvalidPointSet(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

impl From<CocycleError> for EngineError {
    fn from(e: CocycleError) -> Self {
        EngineError::InvalidParameters(e.to_string())
    }
}

fn index(b: u32, (x, y): Point) -> usize {
    (x * (b + 1) + y) as usize
}

fn point(b: u32, k: usize) -> Point {
    (k as u32 / (b + 1), k as u32 % (b + 1))
}

impl CocycleExpression {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn term_bidegree(&self, w: WedgeMonomial, q: SymPair) -> Bidegree {
        let (mut u1, mut u2) = (0, 0);
        for k in w.indices().chain([q.0 as usize, q.1 as usize]) {
            let (x, y) = point(self.b, k);
            u1 += x;
            u2 += y;
        }
        Bidegree::new(u1, u2)
    }

    /// Common bidegree of all terms, or `None` if the terms disagree or
    /// there are none.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys().map(|&(w, q)| self.term_bidegree(w, q));
        let first = it.next()?;
        it.all(|u| u == first).then_some(first)
    }

    /// Wedge parts of all terms.
    pub fn wedges(&self) -> impl Iterator<Item = WedgeMonomial> + '_ {
        let mut last = None;
        self.terms.keys().filter_map(move |&(w, _)| {
            let new = last != Some(w);
            last = Some(w);
            new.then_some(w)
        })
    }
}

fn check_ab(a: u32, b: u32) -> Result<u32, CocycleError> {
    if a < 1 || a > b {
        return Err(CocycleError::InvalidParameters(format!("need 1 <= a <= b, got ({a},{b})")));
    }
    if (a + 1) * (b + 1) > 64 {
        return Err(CocycleError::InvalidParameters(format!("(a+1)(b+1) = {} exceeds 64", (a + 1) * (b + 1))));
    }
    Ok(a * b + a - 1)
}

/// The shared shape of both families: for ordered points `P_1..P_{p+1}`,
///
/// `Σ_e Σ_{l_1>..>l_{p-1}} (-1)^{l_1+..+l_{p-1}} v_{P_{l_1}+e_1} ∧ .. ∧ v_{P_{l_{p-1}}+e_{p-1}}
///    ⊗ (v_{P_{l'_1}+s} v_{P_{l'_2}} - v_{P_{l'_1}} v_{P_{l'_2}+s})`
///
/// with each `e_t` in `{0, s}`, exactly `j` of them equal to `s`, and
/// `l'_1 < l'_2` the two missing indices.
fn staircase(a: u32, b: u32, pts: &[Point], shift: Point, j: u32) -> BTreeMap<(WedgeMonomial, SymPair), i64> {
    let n = pts.len();
    let moved = |q: Point| -> usize {
        let r = (q.0 + shift.0, q.1 + shift.1);
        debug_assert!(r.0 <= a && r.1 <= b);
        index(b, r)
    };
    let mut acc: FxHashMap<(WedgeMonomial, SymPair), i64> = FxHashMap::default();
    let mut idx = Vec::with_capacity(n);
    for m1 in 0..n {
        for m2 in m1 + 1..n {
            // l_1 > .. > l_{p-1}: remaining positions, decreasing
            let rest: Vec<usize> = (0..n).rev().filter(|&l| l != m1 && l != m2).collect();
            let lsum: usize = rest.iter().map(|l| l + 1).sum();
            let lsign = if lsum.is_multiple_of(2) { 1 } else { -1 };
            let quad = [
                (SymPair::new(moved(pts[m1]) as u8, index(b, pts[m2]) as u8), 1),
                (SymPair::new(index(b, pts[m1]) as u8, moved(pts[m2]) as u8), -1),
            ];
            for e in subsets(rest.len(), j as usize) {
                idx.clear();
                idx.extend(rest.iter().enumerate().map(|(t, &l)| {
                    if e.contains(t) {
                        moved(pts[l])
                    } else {
                        index(b, pts[l])
                    }
                }));
                let Some((w, s)) = WedgeMonomial::from_unsorted(&idx) else { continue };
                for (q, c) in quad {
                    *acc.entry((w, q)).or_insert(0) += lsign * s * c;
                }
            }
        }
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// The vertical expression for a set of `p + 1` distinct points of
/// `{0..a} x {0..b-1}` (taken in lexicographic order) and `0 <= j <= p-1`.
pub fn cocycle_vertical(a: u32, b: u32, j: u32, points: &[Point]) -> Result<CocycleExpression, CocycleError> {
    let p = check_ab(a, b)?;
    if j > p - 1 {
        return Err(CocycleError::InvalidParameters(format!("j={j} exceeds p-1={}", p - 1)));
    }
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() != points.len() || pts.len() != p as usize + 1 {
        return Err(CocycleError::InvalidPointSet(format!("need {} distinct points, got {:?}", p + 1, points)));
    }
    if let Some(bad) = pts.iter().find(|&&(x, y)| x > a || y >= b) {
        return Err(CocycleError::InvalidPointSet(format!("{bad:?} is outside {{0..{a}}}x{{0..{}}}", b - 1)));
    }
    let terms = staircase(a, b, &pts, (0, 1), j);
    Ok(CocycleExpression { a, b, p, terms, provenance: Provenance::Vertical { j, points: pts } })
}

/// The fixed ordering `P_{y+(b+1)x+1} = (x, y)` of `{0..a-1} x {0..b}`.
pub fn horizontal_points(a: u32, b: u32) -> Vec<Point> {
    (0..a).flat_map(|x| (0..=b).map(move |y| (x, y))).collect()
}

/// The horizontal expression for `0 <= j <= p-1`.
pub fn cocycle_horizontal(a: u32, b: u32, j: u32) -> Result<CocycleExpression, CocycleError> {
    let p = check_ab(a, b)?;
    if j > p - 1 {
        return Err(CocycleError::InvalidParameters(format!("j={j} exceeds p-1={}", p - 1)));
    }
    let terms = staircase(a, b, &horizontal_points(a, b), (1, 0), j);
    Ok(CocycleExpression { a, b, p, terms, provenance: Provenance::Horizontal { j } })
}

/// `I ⊂ S^2 V`, spanned by the binomials `v_P v_Q - v_P' v_Q'` with
/// `P + Q = P' + Q'`. For every sum `u` the pair listed first is the
/// reference; the basis is the differences with it.
#[derive(Debug, Clone)]
pub struct QuadricIdealBasis {
    pub a: u32,
    pub b: u32,
    fibres: BTreeMap<Point, Vec<SymPair>>,
}

impl QuadricIdealBasis {
    pub fn new(a: u32, b: u32) -> Self {
        let n = ((a + 1) * (b + 1)) as usize;
        let mut fibres: BTreeMap<Point, Vec<SymPair>> = BTreeMap::new();
        for x in 0..n {
            for y in x..n {
                let (p, q) = (point(b, x), point(b, y));
                fibres.entry((p.0 + q.0, p.1 + q.1)).or_default().push(SymPair(x as u8, y as u8));
            }
        }
        Self { a, b, fibres }
    }

    /// `(reference, other)` pairs; each stands for `v_other - v_reference`.
    pub fn basis(&self) -> Vec<(SymPair, SymPair)> {
        self.fibres.values().flat_map(|f| f[1..].iter().map(move |&q| (f[0], q))).collect()
    }

    pub fn dim(&self) -> usize {
        self.fibres.values().map(|f| f.len() - 1).sum()
    }

    /// Reduces `q` against the basis; `q` is in `I` iff nothing is left on
    /// the reference pairs.
    pub fn contains(&self, q: &BTreeMap<SymPair, i64>) -> bool {
        let mut left: BTreeMap<Point, i64> = BTreeMap::new();
        for (&pair, &c) in q {
            let (p, r) = (point(self.b, pair.0 as usize), point(self.b, pair.1 as usize));
            // subtracting c (v_pair - v_ref) moves the coefficient onto the reference
            *left.entry((p.0 + r.0, p.1 + r.1)).or_insert(0) += c;
        }
        left.values().all(|&c| c == 0)
    }
}

/// Image under `Λ^{p-1} V ⊗ S^2 V -> Λ^{p-2} V ⊗ S^3 V`,
/// `w_1 ∧ .. ∧ w_k ⊗ q ↦ Σ_l (-1)^l (.. ŵ_l ..) ⊗ w_l q`.
pub fn koszul_image(expr: &CocycleExpression) -> FxHashMap<(WedgeMonomial, [u8; 3]), i64> {
    let mut out: FxHashMap<(WedgeMonomial, [u8; 3]), i64> = FxHashMap::default();
    for (&(w, q), &c) in &expr.terms {
        for k in w.indices() {
            let (rest, sign) = w.remove(k).unwrap();
            let mut t = [q.0, q.1, k as u8];
            t.sort_unstable();
            *out.entry((rest, t)).or_insert(0) += sign * c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// True iff every quadric part of `expr` lies in `I` and the Koszul
/// differential into `Λ^{p-2} V ⊗ S^3 V` kills it.
pub fn verify_cocycle(expr: &CocycleExpression) -> bool {
    let ideal = QuadricIdealBasis::new(expr.a, expr.b);
    let mut by_wedge: BTreeMap<WedgeMonomial, BTreeMap<SymPair, i64>> = BTreeMap::new();
    for (&(w, q), &c) in &expr.terms {
        by_wedge.entry(w).or_default().insert(q, c);
    }
    by_wedge.values().all(|q| ideal.contains(q)) && koszul_image(expr).is_empty()
}

/// All vertical expressions: every `(p+1)`-subset of `{0..a} x {0..b-1}`
/// in lexicographic order, each with `j = 0..p-1`.
pub fn vertical_family(a: u32, b: u32) -> Result<Vec<CocycleExpression>, CocycleError> {
    let p = check_ab(a, b)?;
    let grid: Vec<Point> = (0..=a).flat_map(|x| (0..b).map(move |y| (x, y))).collect();
    let jobs: Vec<(Vec<Point>, u32)> = subsets(grid.len(), p as usize + 1)
        .flat_map(|s| {
            let pts: Vec<Point> = s.indices().map(|k| grid[k]).collect();
            (0..p).map(move |j| (pts.clone(), j))
        })
        .collect();
    jobs.into_par_iter().map(|(pts, j)| cocycle_vertical(a, b, j, &pts)).collect()
}

pub fn horizontal_family(a: u32, b: u32) -> Result<Vec<CocycleExpression>, CocycleError> {
    let p = check_ab(a, b)?;
    (0..p).into_par_iter().map(|j| cocycle_horizontal(a, b, j)).collect()
}

fn family_rank<F: Field>(f: &F, family: &[&CocycleExpression]) -> usize {
    let mut coords: FxHashMap<(WedgeMonomial, SymPair), usize> = FxHashMap::default();
    let vectors: Vec<Vec<(usize, F::Elem)>> = family
        .iter()
        .map(|e| {
            e.terms
                .iter()
                .map(|(key, &c)| {
                    let next = coords.len();
                    (*coords.entry(*key).or_insert(next), f.from_int(c))
                })
                .collect()
        })
        .collect();
    vector_rank(f, &vectors, coords.len())
}

/// Builds both families, checks each expression, and compares the rank of
/// the family with `p C((a+1)b, p+1) + p` and with the engine's `κ_{p,1}`.
pub fn independence_and_count(a: u32, b: u32, engine: &BettiEngine) -> Result<Report, EngineError> {
    if a < 3 || a > b {
        return Err(EngineError::InvalidParameters(format!("need 3 <= a <= b, got ({a},{b})")));
    }
    let p = check_ab(a, b)?;
    let mut rep = Report::new(format!("explicit cocycles for ({a},{b}), p={p}"));
    let vertical = vertical_family(a, b)?;
    let horizontal = horizontal_family(a, b)?;
    let family: Vec<&CocycleExpression> = vertical.iter().chain(&horizontal).collect();
    let expected = p as u128 * binomial(((a + 1) * b) as i64, p as i64 + 1) + p as u128;
    rep.check(
        family.len() as u128 == expected,
        format!("{} vertical + {} horizontal = {} expressions", vertical.len(), horizontal.len(), family.len()),
    );

    let valid: Vec<bool> = family.par_iter().map(|e| !e.is_zero() && verify_cocycle(e)).collect();
    rep.check(valid.iter().all(|&v| v), format!("{} of {} expressions are nonzero cocycles", valid.iter().filter(|&&v| v).count(), valid.len()));

    let degrees: Vec<Option<Bidegree>> = family.iter().map(|e| e.bidegree()).collect();
    rep.check(degrees.iter().all(Option::is_some), "every expression is bidegree-homogeneous");
    let mut horizontal_degrees: Vec<Bidegree> = degrees[vertical.len()..].iter().flatten().copied().collect();
    let expected_h: Vec<Bidegree> =
        (0..p).map(|j| Bidegree::new(a * (a - 1) * (b + 1) / 2 + j + 1, a * b * (b + 1) / 2)).collect();
    rep.check(horizontal_degrees == expected_h, "horizontal bidegrees are (a(a-1)(b+1)/2+j+1, ab(b+1)/2)");
    horizontal_degrees.dedup();
    rep.check(horizontal_degrees.len() == p as usize, "horizontal bidegrees are pairwise distinct");

    let mut blocks: BTreeMap<Bidegree, Vec<&CocycleExpression>> = BTreeMap::new();
    for (e, d) in family.iter().zip(&degrees) {
        if let Some(d) = d {
            blocks.entry(*d).or_default().push(e);
        }
    }
    let field = engine.config().field;
    let (blockwise, global) = with_field!(field, |f| {
        let blockwise: usize = blocks.values().map(|fam| family_rank(&f, fam)).sum();
        (blockwise, family_rank(&f, &family))
    });
    rep.check(blockwise == global, format!("blockwise rank {blockwise} = global rank {global}"));
    rep.check(global as u128 == expected, format!("rank {global} = p C((a+1)b, p+1) + p = {expected}"));

    let kappa = engine.betti_number(&MonomialAlgebra::segre(a, b)?, p, 1)?;
    rep.check(global as u64 == kappa, format!("rank equals engine kappa_({p},1) = {kappa}"));
    Ok(rep)
}

/// The wedge part of the term of `cocycle_horizontal(j)` singled out in the
/// independence argument: with `k = y + (b+1) x`, the points `P_k` with
/// `k < p-j-1` unmoved and the points `P_k + (1,0)` with `k > p-j`.
pub fn claim_witness(a: u32, b: u32, j: u32) -> Result<WedgeMonomial, CocycleError> {
    let p = check_ab(a, b)?;
    let pts = horizontal_points(a, b);
    let mut w = 0u64;
    for (k, &(x, y)) in pts.iter().enumerate() {
        let k = k as i64;
        if k < p as i64 - j as i64 - 1 {
            w |= 1 << index(b, (x, y));
        } else if k > p as i64 - j as i64 {
            w |= 1 << index(b, (x + 1, y));
        }
    }
    Ok(WedgeMonomial(w))
}

fn full_columns(b: u32, w: WedgeMonomial, a: u32) -> Vec<u32> {
    (0..=a).filter(|&x| (0..=b).all(|y| w.contains(index(b, (x, y))))).collect()
}

fn horizontal_claim(a: u32, b: u32, p: u32, j: u32) -> Result<bool, CocycleError> {
    let h = cocycle_horizontal(a, b, j)?;
    let w = claim_witness(a, b, j)?;
    let occurs = h.terms.keys().any(|&(x, _)| x == w);
    let cols = full_columns(b, w, a);
    let mut ok = occurs && !cols.is_empty();
    if j > b {
        ok &= cols.contains(&a);
    }
    if (j as i64) < p as i64 - b as i64 - 1 {
        ok &= cols.contains(&0);
    }
    Ok(ok)
}

/// No term of any vertical expression has a full column in its wedge part.
pub fn vertical_terms_avoid_full_columns(a: u32, b: u32) -> Result<bool, CocycleError> {
    let vertical = vertical_family(a, b)?;
    Ok(vertical.par_iter().all(|e| e.wedges().all(|w| full_columns(b, w, a).is_empty())))
}

/// The witness term occurs in `cocycle_horizontal(j)`, contains a full
/// column (column `a` when `j > b`, column 0 when `j < p-b-1`), and no term
/// of any vertical expression contains a full column.
pub fn claim_witness_check(a: u32, b: u32, j: u32) -> Result<bool, CocycleError> {
    let p = check_ab(a, b)?;
    Ok(horizontal_claim(a, b, p, j)? && vertical_terms_avoid_full_columns(a, b)?)
}

/// [`claim_witness_check`] for every `j`, building the vertical family once.
pub fn claim_witness_checks(a: u32, b: u32) -> Result<Vec<bool>, CocycleError> {
    let p = check_ab(a, b)?;
    let vertical_ok = vertical_terms_avoid_full_columns(a, b)?;
    (0..p).map(|j| Ok(vertical_ok && horizontal_claim(a, b, p, j)?)).collect()
}
