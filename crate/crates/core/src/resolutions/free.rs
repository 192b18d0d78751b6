//! Graded free modules over a polynomial ring and maps between them.
//!
//! A map is stored by the images of the source generators, each a sparse
//! combination of (target generator, monomial). Degree slices turn a map
//! into a matrix over the integers.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::linalg::SparseMatrix;
use crate::rings::{weight_add, MonomialAlgebra, Weight, WEIGHT_DIM};

/// A monomial as the sorted multiset of its variable indices.
pub type Mono = Vec<u16>;

pub fn mono_mul(x: &[u16], y: &[u16]) -> Mono {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        if x[i] <= y[j] {
            out.push(x[i]);
            i += 1;
        } else {
            out.push(y[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    out
}

/// All monomials of degree `deg` in `nvars` variables, in lexicographic order.
pub fn monomials(nvars: usize, deg: i64) -> Vec<Mono> {
    let mut out = Vec::new();
    if deg < 0 {
        return out;
    }
    fn rec(nvars: usize, left: usize, start: u16, cur: &mut Mono, out: &mut Vec<Mono>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..nvars as u16 {
            cur.push(v);
            rec(nvars, left - 1, v, cur, out);
            cur.pop();
        }
    }
    rec(nvars, deg as usize, 0, &mut Vec::new(), &mut out);
    out
}

/// Element of a free module: `(generator, monomial) -> coefficient`.
pub type FreeElem = BTreeMap<(u32, Mono), i64>;

pub fn add_term(e: &mut FreeElem, gen: u32, mono: Mono, coef: i64) {
    if coef == 0 {
        return;
    }
    match e.entry((gen, mono)) {
        Entry::Vacant(v) => {
            v.insert(coef);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += coef;
            if *o.get() == 0 {
                o.remove();
            }
        }
    }
}

/// Generators of a graded free module, each with its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    pub labels: Vec<String>,
    pub degrees: Vec<i64>,
}

impl FreeModule {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Dimension of the degree-`d` slice.
    pub fn slice_dim(&self, nvars: usize, d: i64) -> u128 {
        self.degrees
            .iter()
            .map(|&g| if d < g { 0 } else { crate::koszul::binomial(nvars as i64 + d - g - 1, d - g) })
            .sum()
    }

    /// Basis of the degree-`d` slice: `(generator, monomial)` pairs.
    pub fn slice_basis(&self, nvars: usize, d: i64) -> Vec<(u32, Mono)> {
        let mut cache: BTreeMap<i64, Vec<Mono>> = BTreeMap::new();
        let mut out = Vec::new();
        for (k, &g) in self.degrees.iter().enumerate() {
            let monos = cache.entry(d - g).or_insert_with(|| monomials(nvars, d - g));
            out.extend(monos.iter().map(|m| (k as u32, m.clone())));
        }
        out
    }
}

/// A map of graded free modules given on generators.
#[derive(Debug, Clone)]
pub struct FreeMap {
    pub source: FreeModule,
    pub target: FreeModule,
    pub images: Vec<FreeElem>,
}

impl FreeMap {
    /// `self ∘ first`.
    pub fn compose(&self, first: &FreeMap) -> FreeMap {
        let images = first
            .images
            .iter()
            .map(|img| {
                let mut out = FreeElem::new();
                for ((g, mu), c) in img {
                    for ((h, nu), d) in &self.images[*g as usize] {
                        add_term(&mut out, *h, mono_mul(mu, nu), c * d);
                    }
                }
                out
            })
            .collect();
        FreeMap { source: first.source.clone(), target: self.target.clone(), images }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|e| e.is_empty())
    }

    /// Every image term has the degree of its source generator.
    pub fn is_homogeneous(&self) -> bool {
        self.images.iter().enumerate().all(|(k, img)| {
            img.keys().all(|(h, mu)| self.target.degrees[*h as usize] + mu.len() as i64 == self.source.degrees[k])
        })
    }

    /// True when no entry is a nonzero constant, i.e. the map vanishes after
    /// tensoring with the residue field.
    pub fn is_minimal(&self) -> bool {
        self.images.iter().all(|img| img.keys().all(|(_, mu)| !mu.is_empty()))
    }

    /// Matrix of the degree-`d` slice, columns and rows ordered as in
    /// [`FreeModule::slice_basis`].
    pub fn slice(&self, nvars: usize, d: i64) -> SparseMatrix {
        let cols = self.source.slice_basis(nvars, d);
        let rows = self.target.slice_basis(nvars, d);
        let index: FxHashMap<u128, usize> = rows.iter().enumerate().map(|(i, (g, m))| (pack(*g, m, &[]), i)).collect();
        let mut triplets = Vec::new();
        for (c, (g, mu)) in cols.iter().enumerate() {
            for ((h, nu), v) in &self.images[*g as usize] {
                triplets.push((index[&pack(*h, mu, nu)], c, *v));
            }
        }
        SparseMatrix::from_triplets(rows.len(), cols.len(), triplets)
    }
}

/// Packs a generator and the product of two monomials into one hash key.
/// Monomials of degree above 12 or variables above 255 are not supported.
fn pack(gen: u32, x: &[u16], y: &[u16]) -> u128 {
    assert!(x.len() + y.len() <= 12, "monomial degree too large for a slice key");
    let mut key = gen as u128;
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let v = if j == y.len() || (i < x.len() && x[i] <= y[j]) {
            i += 1;
            x[i - 1]
        } else {
            j += 1;
            y[j - 1]
        };
        debug_assert!(v < 255);
        key = (key << 8) | (v as u128 + 1);
    }
    key
}

/// A map from a free module onto a monomial module, sending each generator
/// to a combination of basis weights of degree equal to its own degree.
#[derive(Debug, Clone)]
pub struct Augmentation {
    pub source: FreeModule,
    pub images: Vec<Vec<(Weight, i64)>>,
}

impl Augmentation {
    /// Matrix of the degree-`d` slice into `target`, whose generators are
    /// the polynomial ring's variables.
    pub fn slice(&self, target: &MonomialAlgebra, d: i64) -> SparseMatrix {
        let vars: Vec<Weight> = target.generators().iter().map(|g| g.weight).collect();
        let cols = self.source.slice_basis(vars.len(), d);
        let rows = if d < 0 { Vec::new() } else { target.basis(d as u32) };
        let index: FxHashMap<Weight, usize> = rows.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let mut triplets = Vec::new();
        for (c, (g, mu)) in cols.iter().enumerate() {
            let shift = mu.iter().fold([0; WEIGHT_DIM], |acc, &v| weight_add(&acc, &vars[v as usize]));
            for (w, v) in &self.images[*g as usize] {
                let r = index[&weight_add(&shift, w)];
                triplets.push((r, c, *v));
            }
        }
        SparseMatrix::from_triplets(rows.len(), cols.len(), triplets)
    }

    /// `self ∘ first` as module elements, generator by generator.
    pub fn compose_free(&self, first: &FreeMap, vars: &[Weight]) -> Vec<BTreeMap<Weight, i64>> {
        first
            .images
            .iter()
            .map(|img| {
                let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
                for ((g, mu), c) in img {
                    let shift = mu.iter().fold([0; WEIGHT_DIM], |acc, &v| weight_add(&acc, &vars[v as usize]));
                    for (w, d) in &self.images[*g as usize] {
                        *out.entry(weight_add(&shift, w)).or_insert(0) += c * d;
                    }
                }
                out.retain(|_, v| *v != 0);
                out
            })
            .collect()
    }
}
