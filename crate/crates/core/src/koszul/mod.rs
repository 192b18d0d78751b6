//! Koszul cohomology `K_{p,q}` of monomial algebras, block by torus weight.
//!
//! The strand `Λ^{p+1}V⊗R_{q-1} -> Λ^pV⊗R_q -> Λ^{p-1}V⊗R_{q+1}` splits into
//! blocks of constant fine weight, each small enough for dense elimination.

mod closed_form;
mod wedge;

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::cache::{BlockCache, BlockRecord, CacheError, StrandKey};
use crate::linalg::{rank_with, FieldChoice, LinalgError, RankOptions, SparseMatrix};
use crate::rings::{weight_add, AlgebraKind, Bidegree, MonomialAlgebra, RingError, Weight};
use crate::with_field;

pub use closed_form::{binomial, closed_form_a2, closed_form_first_row};
pub use wedge::{subsets, WedgeMonomial};

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("p={p} is below the range p >= {min_p} covered by the formula")]
    OutOfTheoremRange { p: u32, min_p: u32 },
    #[error("outside the implemented range: {0}")]
    OutOfImplementedRange(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("could not start worker threads: {0}")]
    Threads(String),
}

/// One weight block of a strand, with both differentials.
#[derive(Debug, Clone)]
pub struct KoszulBlock {
    pub weight: Weight,
    pub bidegree: Bidegree,
    /// Dimensions of `Λ^{p+1}V⊗R_{q-1}`, `Λ^pV⊗R_q`, `Λ^{p-1}V⊗R_{q+1}` in this block.
    pub dims: [usize; 3],
    pub d_in: SparseMatrix,
    pub d_out: SparseMatrix,
}

/// Basis elements `g_S ⊗ m` of one term, grouped by total weight.
type Term = Vec<(Weight, Vec<(u64, Weight)>)>;

fn term(alg: &MonomialAlgebra, p: i64, n: i64) -> Term {
    let gens: Vec<Weight> = alg.generators().iter().map(|g| g.weight).collect();
    if p < 0 || n < 0 || p as usize > gens.len() {
        return Vec::new();
    }
    let ring = alg.basis(n as u32);
    let mut all: Vec<(Weight, u64, Weight)> = Vec::new();
    for s in subsets(gens.len(), p as usize) {
        let sw = s.indices().fold([0; crate::rings::WEIGHT_DIM], |acc, k| weight_add(&acc, &gens[k]));
        for w in &ring {
            all.push((weight_add(&sw, w), s.0, *w));
        }
    }
    all.sort_unstable();
    let mut out: Term = Vec::new();
    for (total, mask, w) in all {
        match out.last_mut() {
            Some((t, v)) if *t == total => v.push((mask, w)),
            _ => out.push((total, vec![(mask, w)])),
        }
    }
    out
}

fn lookup<'a>(t: &'a Term, w: &Weight) -> &'a [(u64, Weight)] {
    t.binary_search_by(|e| e.0.cmp(w)).map_or(&[], |i| &t[i].1)
}

/// Matrix of the Koszul differential from `src` to `dst` (column convention).
fn koszul_matrix(gens: &[Weight], src: &[(u64, Weight)], dst: &[(u64, Weight)]) -> SparseMatrix {
    let index: FxHashMap<(u64, Weight), usize> = dst.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut triplets = Vec::new();
    for (col, (mask, w)) in src.iter().enumerate() {
        let mut m = *mask;
        let mut pos = 0;
        while m != 0 {
            let k = m.trailing_zeros() as usize;
            m &= m - 1;
            if let Some(&row) = index.get(&(mask & !(1 << k), weight_add(w, &gens[k]))) {
                triplets.push((row, col, if pos % 2 == 0 { 1 } else { -1 }));
            }
            pos += 1;
        }
    }
    SparseMatrix::from_triplets(dst.len(), src.len(), triplets)
}

struct Strand {
    gens: Vec<Weight>,
    inn: Term,
    mid: Term,
    out: Term,
}

impl Strand {
    fn new(alg: &MonomialAlgebra, p: u32, q: u32) -> Self {
        let (p, q) = (p as i64, q as i64);
        Self {
            gens: alg.generators().iter().map(|g| g.weight).collect(),
            inn: term(alg, p + 1, q - 1),
            mid: term(alg, p, q),
            out: term(alg, p - 1, q + 1),
        }
    }

    /// All weights occurring in any of the three terms, sorted.
    fn weights(&self) -> Vec<Weight> {
        let mut w: Vec<Weight> = self.inn.iter().chain(&self.mid).chain(&self.out).map(|e| e.0).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    fn block(&self, alg: &MonomialAlgebra, w: &Weight) -> KoszulBlock {
        let (inn, mid, out) = (lookup(&self.inn, w), lookup(&self.mid, w), lookup(&self.out, w));
        KoszulBlock {
            weight: *w,
            bidegree: alg.bidegree(w),
            dims: [inn.len(), mid.len(), out.len()],
            d_in: koszul_matrix(&self.gens, inn, mid),
            d_out: koszul_matrix(&self.gens, mid, out),
        }
    }
}

/// All weight blocks of the `(p,q)` strand of `alg`, sorted by weight.
pub fn koszul_strand(alg: &MonomialAlgebra, p: u32, q: u32) -> Vec<KoszulBlock> {
    let strand = Strand::new(alg, p, q);
    strand.weights().iter().map(|w| strand.block(alg, w)).collect()
}

/// `κ_{p,q}` split by torus bidegree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BidegreeTable {
    pub p: u32,
    pub q: u32,
    pub entries: BTreeMap<Bidegree, u64>,
}

impl BidegreeTable {
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Smallest box `(u1 range, u2 range)` containing all nonzero entries.
    pub fn support(&self) -> Option<((u32, u32), (u32, u32))> {
        let nz: Vec<&Bidegree> = self.entries.iter().filter(|e| *e.1 > 0).map(|e| e.0).collect();
        let u1 = nz.iter().map(|b| b.u1);
        let u2 = nz.iter().map(|b| b.u2);
        Some(((u1.clone().min()?, u1.max()?), (u2.clone().min()?, u2.max()?)))
    }

    pub fn get(&self, b: Bidegree) -> u64 {
        self.entries.get(&b).copied().unwrap_or(0)
    }
}

/// Graded Betti numbers `κ_{p,q}` for `0 <= p <= max_p`, `0 <= q <= 3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub algebra: String,
    pub field: String,
    pub max_p: u32,
    pub max_q: u32,
    pub entries: BTreeMap<(u32, u32), u64>,
}

impl BettiTable {
    pub fn get(&self, p: u32, q: u32) -> u64 {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub field: FieldChoice,
    /// Worker threads; 0 uses the global pool.
    pub threads: usize,
    /// Pass to the quotient by a regular sequence of two generators when possible.
    pub reduce: bool,
    pub rank: RankOptions,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self { field: FieldChoice::default(), threads: 0, reduce: true, rank: RankOptions::default() }
    }
}

/// Computes Betti numbers and bidegree tables, optionally memoized on disk.
pub struct BettiEngine {
    config: EngineConfig,
    cache: Option<Arc<BlockCache>>,
    pool: Option<rayon::ThreadPool>,
}

impl BettiEngine {
    pub fn new(config: EngineConfig) -> Result<Self, EngineError> {
        let pool = if config.threads > 0 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(config.threads)
                    .build()
                    .map_err(|e| EngineError::Threads(e.to_string()))?,
            )
        } else {
            None
        };
        Ok(Self { config, cache: None, pool })
    }

    pub fn with_cache(mut self, cache: Arc<BlockCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    /// The algebra actually fed to the block builder and its engine tag.
    fn working_algebra(&self, alg: &MonomialAlgebra, q: u32) -> (MonomialAlgebra, &'static str) {
        if self.config.reduce && !alg.is_quotient() {
            if let Ok(r) = alg.reduce_by_corners(q + 2) {
                return (r, "reduced");
            }
        }
        (alg.clone(), "full")
    }

    /// Per-block dimensions and ranks of the `(p,q)` strand, sorted by weight.
    pub fn strand(&self, alg: &MonomialAlgebra, p: u32, q: u32) -> Result<Arc<Vec<BlockRecord>>, EngineError> {
        let (work, engine) = self.working_algebra(alg, q);
        let compute = || self.compute_strand(alg, &work, engine, p, q);
        match &self.cache {
            None => Ok(Arc::new(compute()?)),
            Some(cache) => {
                let key = StrandKey {
                    algebra: alg.descriptor(),
                    p,
                    q,
                    field: self.config.field.descriptor(),
                    engine: engine.to_string(),
                };
                cache.get_or_insert_with(&key, compute)
            }
        }
    }

    fn compute_strand(
        &self,
        alg: &MonomialAlgebra,
        work: &MonomialAlgebra,
        engine: &str,
        p: u32,
        q: u32,
    ) -> Result<Vec<BlockRecord>, EngineError> {
        let strand = Strand::new(work, p, q);
        // blocks with an empty middle term have no homology
        let weights: Vec<Weight> = strand.mid.iter().map(|e| e.0).collect();
        let field = self.config.field;
        let opts = self.config.rank;
        let eval = |w: &Weight| -> Result<BlockRecord, EngineError> {
            let block = strand.block(work, w);
            let (rank_in, rank_out) = with_field!(field, |f| {
                if !block.d_out.mul(&block.d_in)?.is_zero_in(&f) {
                    return Err(LinalgError::CompositionNonzero { nonzero_entries: 0 }.into());
                }
                (rank_with(&f, &block.d_in, opts), rank_with(&f, &block.d_out, opts))
            });
            Ok(self.record(alg, engine, p, q, &block, rank_in, rank_out))
        };
        let run = || weights.par_iter().map(eval).collect::<Result<Vec<_>, _>>();
        match &self.pool {
            Some(pool) => pool.install(run),
            None => run(),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn record(
        &self,
        alg: &MonomialAlgebra,
        engine: &str,
        p: u32,
        q: u32,
        block: &KoszulBlock,
        rank_in: usize,
        rank_out: usize,
    ) -> BlockRecord {
        let (a, b, e, c) = match alg.kind() {
            AlgebraKind::Segre { a, b } => (Some(*a), Some(*b), None, None),
            AlgebraKind::Scroll { inv } => (None, None, Some(inv.e().to_vec()), None),
            AlgebraKind::ScrollModule { inv, c } => (None, None, Some(inv.e().to_vec()), Some(*c)),
        };
        BlockRecord {
            algebra: alg.family().to_string(),
            a,
            b,
            e,
            c,
            p,
            q,
            bidegree: [block.bidegree.u1, block.bidegree.u2],
            weight: block.weight[..alg.weight_dim()].to_vec(),
            dims: block.dims,
            rank_in,
            rank_out,
            field: self.config.field.descriptor(),
            engine: engine.to_string(),
        }
    }

    pub fn betti_number(&self, alg: &MonomialAlgebra, p: u32, q: u32) -> Result<u64, EngineError> {
        Ok(self.strand(alg, p, q)?.iter().map(|r| r.homology() as u64).sum())
    }

    pub fn bidegree_table(&self, alg: &MonomialAlgebra, p: u32, q: u32) -> Result<BidegreeTable, EngineError> {
        let mut entries = BTreeMap::new();
        for r in self.strand(alg, p, q)?.iter() {
            let h = r.homology() as u64;
            if h > 0 {
                *entries.entry(Bidegree::new(r.bidegree[0], r.bidegree[1])).or_insert(0) += h;
            }
        }
        Ok(BidegreeTable { p, q, entries })
    }

    /// Rows `q = 0..=3` for `p = 0..=max_p`; requires `max_p <= N - 3`.
    pub fn full_betti_table(&self, alg: &MonomialAlgebra, max_p: u32) -> Result<BettiTable, EngineError> {
        let n = alg.base_generators().len() as u32;
        if max_p + 3 > n {
            return Err(EngineError::InvalidParameters(format!("max_p={max_p} exceeds N-3={}", n as i64 - 3)));
        }
        let mut entries = BTreeMap::new();
        for q in 0..=3 {
            for p in 0..=max_p {
                entries.insert((p, q), self.betti_number(alg, p, q)?);
            }
        }
        Ok(BettiTable {
            algebra: alg.descriptor(),
            field: self.config.field.descriptor(),
            max_p,
            max_q: 3,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    fn engine(reduce: bool) -> BettiEngine {
        BettiEngine::new(EngineConfig { reduce, ..Default::default() }).unwrap()
    }

    #[test]
    fn quadric_surface() {
        let s = MonomialAlgebra::segre(1, 1).unwrap();
        for reduce in [false, true] {
            let e = engine(reduce);
            assert_eq!(e.betti_number(&s, 0, 0).unwrap(), 1);
            assert_eq!(e.betti_number(&s, 0, 1).unwrap(), 0);
            assert_eq!(e.betti_number(&s, 1, 1).unwrap(), 1);
            assert_eq!(e.betti_number(&s, 1, 2).unwrap(), 0);
        }
    }

    #[test]
    fn strand_blocks_are_complexes() {
        let s = MonomialAlgebra::segre(2, 2).unwrap();
        let f = PrimeField::default();
        for block in koszul_strand(&s, 3, 1) {
            assert!(block.d_out.mul(&block.d_in).unwrap().is_zero_in(&f));
            assert!(block.bidegree.u1 <= 4 * 2 && block.bidegree.u2 <= 4 * 2);
        }
    }

    #[test]
    fn scroll_first_row() {
        // rational normal scroll with f = 4: κ_{p,1} = p·C(f, p+1)
        let inv = crate::rings::ScrollInvariants::segre_scroll(1, 2).unwrap();
        let sc = MonomialAlgebra::scroll(inv);
        for reduce in [false, true] {
            let e = engine(reduce);
            for p in 1..=3 {
                assert_eq!(e.betti_number(&sc, p, 1).unwrap() as u128, p as u128 * binomial(4, p as i64 + 1));
            }
        }
    }
}
