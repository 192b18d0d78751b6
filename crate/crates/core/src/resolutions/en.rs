//! The Eagon-Northcott type resolution of the scroll module `M_{e,c}` over
//! the polynomial ring on the variables `b_{i,j}`, `0 <= j <= e_i`.
//!
//! Position `n <= c` holds `Λ^n F ⊗ V_{c-n}` in degree `n` (the second row);
//! position `n >= c+1` holds `Λ^{n+1} F ⊗ V_{n-c-1}` in degree `n+1` (the
//! first row). `F` has basis `f_{i,j}`, `1 <= j <= e_i`, and `V_k` has basis
//! `B_0..B_k`.

use std::sync::OnceLock;

use rustc_hash::FxHashMap;

use super::clamp;
use super::free::{add_term, Augmentation, FreeElem, FreeMap, FreeModule};
use crate::koszul::{binomial, subsets, EngineError, WedgeMonomial};
use crate::linalg::FieldChoice;
use crate::report::Report;
use crate::rings::{MonomialAlgebra, ScrollInvariants, WEIGHT_DIM};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnRow {
    First,
    Second,
}

/// One term `Λ^m F ⊗ V_k` with generators `f_I ⊗ B_p`.
#[derive(Debug, Clone)]
pub struct EnTerm {
    pub row: EnRow,
    pub wedge: usize,
    /// `k` in `V_k`.
    pub v: usize,
    pub degree: i64,
    pub gens: Vec<(WedgeMonomial, u32)>,
    index: FxHashMap<(WedgeMonomial, u32), u32>,
}

impl EnTerm {
    fn new(row: EnRow, wedge: usize, v: usize, degree: i64, f: usize) -> Self {
        let gens: Vec<_> = subsets(f, wedge).flat_map(|s| (0..=v as u32).map(move |p| (s, p))).collect();
        let index = gens.iter().enumerate().map(|(k, g)| (*g, k as u32)).collect();
        Self { row, wedge, v, degree, gens, index }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn index_of(&self, s: WedgeMonomial, p: u32) -> Option<u32> {
        self.index.get(&(s, p)).copied()
    }

    fn module(&self, f_labels: &[(u32, u32)]) -> FreeModule {
        let labels = self
            .gens
            .iter()
            .map(|(s, p)| {
                let fs: Vec<String> = s.indices().map(|k| format!("f{},{}", f_labels[k].0, f_labels[k].1)).collect();
                format!("{}⊗B{p}", if fs.is_empty() { "1".to_string() } else { fs.join("∧") })
            })
            .collect();
        FreeModule { labels, degrees: vec![self.degree; self.gens.len()] }
    }
}

#[derive(Debug, Clone)]
pub struct EnComplex {
    inv: ScrollInvariants,
    c: u32,
    module: MonomialAlgebra,
    f_labels: Vec<(u32, u32)>,
    var_index: FxHashMap<(u32, u32), u16>,
    /// `(row, wedge, v, degree)` per position; terms and maps are built on
    /// first use since high exterior powers get large.
    shapes: Vec<(EnRow, usize, usize, i64)>,
    terms: Vec<OnceLock<EnTerm>>,
    /// `maps[n-1]` goes from position `n` to position `n-1`.
    maps: Vec<OnceLock<FreeMap>>,
    augmentation: Augmentation,
}

impl EnComplex {
    pub fn new(inv: ScrollInvariants, c: u32) -> Result<Self, EngineError> {
        let f_labels: Vec<(u32, u32)> = inv.indices().flat_map(|i| (1..=inv.e_of(i)).map(move |j| (i, j))).collect();
        let f = f_labels.len();
        if f > 64 {
            return Err(EngineError::InvalidParameters(format!("rank of F is {f}, at most 64 supported")));
        }
        let module = MonomialAlgebra::scroll_module(inv.clone(), c);
        let var_index = module.generators().iter().enumerate().map(|(k, g)| (g.label, k as u16)).collect();
        let c_us = c as usize;
        let mut shapes = Vec::new();
        for n in 0..=c_us.min(f) {
            shapes.push((EnRow::Second, n, c_us - n, n as i64));
        }
        if shapes.len() == c_us + 1 {
            for m in c_us + 2..=f {
                shapes.push((EnRow::First, m, m - c_us - 2, m as i64));
            }
        }
        let terms = shapes.iter().map(|_| OnceLock::new()).collect();
        let maps = shapes.iter().skip(1).map(|_| OnceLock::new()).collect();
        let mut en = Self {
            inv,
            c,
            module,
            f_labels,
            var_index,
            shapes,
            terms,
            maps,
            augmentation: Augmentation { source: FreeModule { labels: vec![], degrees: vec![] }, images: vec![] },
        };
        en.augmentation = Augmentation {
            source: en.free_module(0),
            images: en
                .term(0)
                .unwrap()
                .gens
                .iter()
                .map(|&(_, p)| {
                    let mut w = [0; WEIGHT_DIM];
                    w[en.inv.ell()] = p as i32;
                    vec![(w, 1)]
                })
                .collect(),
        };
        Ok(en)
    }

    pub fn invariants(&self) -> &ScrollInvariants {
        &self.inv
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    /// The resolved module.
    pub fn module(&self) -> &MonomialAlgebra {
        &self.module
    }

    pub fn nvars(&self) -> usize {
        self.var_index.len()
    }

    pub fn f_labels(&self) -> &[(u32, u32)] {
        &self.f_labels
    }

    pub fn f_index(&self, i: u32, j: u32) -> Option<usize> {
        self.f_labels.iter().position(|&l| l == (i, j))
    }

    pub fn var(&self, i: u32, j: u32) -> u16 {
        self.var_index[&(i, j)]
    }

    /// Number of positions.
    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn term(&self, n: usize) -> Option<&EnTerm> {
        let &(row, wedge, v, degree) = self.shapes.get(n)?;
        Some(self.terms[n].get_or_init(|| EnTerm::new(row, wedge, v, degree, self.f_labels.len())))
    }

    pub fn free_module(&self, n: usize) -> FreeModule {
        self.term(n).unwrap().module(&self.f_labels)
    }

    /// Differential from position `n >= 1` to `n - 1`.
    pub fn map(&self, n: usize) -> &FreeMap {
        self.maps[n - 1].get_or_init(|| self.build_map(n))
    }

    pub fn augmentation(&self) -> &Augmentation {
        &self.augmentation
    }

    fn build_map(&self, n: usize) -> FreeMap {
        let src = self.term(n).unwrap();
        let dst = self.term(n - 1).unwrap();
        let images = src
            .gens
            .iter()
            .map(|&(s, p)| match src.row {
                EnRow::Second => self.linear_image(s, p, 1, dst),
                EnRow::First if dst.row == EnRow::First => self.linear_image(s, p, -1, dst),
                EnRow::First => self.quadratic_image(s, dst),
            })
            .collect();
        FreeMap { source: src.module(&self.f_labels), target: dst.module(&self.f_labels), images }
    }

    /// `Σ_a (-1)^a b_{i_a,j_a-1} f_{I\a} ⊗ B_{p+shift} - Σ_a (-1)^a b_{i_a,j_a} f_{I\a} ⊗ B_p`,
    /// with `a` 1-based and out-of-range `B` terms dropped.
    fn linear_image(&self, s: WedgeMonomial, p: u32, shift: i64, dst: &EnTerm) -> FreeElem {
        let mut out = FreeElem::new();
        for k in s.indices() {
            let (rest, sign) = s.remove(k).unwrap();
            let (i, j) = self.f_labels[k];
            // (-1)^a with a = l + 1
            let sign = -sign;
            let top = dst.v as i64;
            if let Some(q) = clamp(p as i64 + shift, 0, top) {
                add_term(&mut out, dst.index_of(rest, q).unwrap(), vec![self.var(i, j - 1)], sign);
            }
            if let Some(q) = clamp(p as i64, 0, top) {
                add_term(&mut out, dst.index_of(rest, q).unwrap(), vec![self.var(i, j)], -sign);
            }
        }
        out
    }

    /// `Σ_{a1<a2} (-1)^{a1+a2} (b_{i1,j1} b_{i2,j2-1} - b_{i1,j1-1} b_{i2,j2}) f_{I\{a1,a2}}`.
    fn quadratic_image(&self, s: WedgeMonomial, dst: &EnTerm) -> FreeElem {
        let mut out = FreeElem::new();
        let ix: Vec<usize> = s.indices().collect();
        for (l1, &k1) in ix.iter().enumerate() {
            for (l2, &k2) in ix.iter().enumerate().skip(l1 + 1) {
                let rest = WedgeMonomial(s.0 & !(1 << k1) & !(1 << k2));
                let g = dst.index_of(rest, 0).expect("target has B_0");
                let sign = if (l1 + l2) % 2 == 0 { 1 } else { -1 };
                let (i1, j1) = self.f_labels[k1];
                let (i2, j2) = self.f_labels[k2];
                let mut m1 = vec![self.var(i1, j1), self.var(i2, j2 - 1)];
                m1.sort_unstable();
                let mut m2 = vec![self.var(i1, j1 - 1), self.var(i2, j2)];
                m2.sort_unstable();
                add_term(&mut out, g, m1, sign);
                add_term(&mut out, g, m2, -sign);
            }
        }
        out
    }

    /// Expected rank `C(f, m) (k + 1)` of the term at position `n`.
    pub fn expected_rank(&self, n: usize) -> u128 {
        let (_, wedge, v, _) = self.shapes[n];
        binomial(self.f_labels.len() as i64, wedge as i64) * (v as u128 + 1)
    }
}

/// The degree-`deg` piece of the EN complex: dimensions of the augmented
/// complex `P_len -> ... -> P_0 -> M_c`, listed from `M_c` upward.
pub fn en_resolution_degree_piece(en: &EnComplex, deg: i64) -> Vec<usize> {
    let nvars = en.nvars();
    let mut dims = vec![if deg < 0 { 0 } else { en.module().dim(deg as u32) }];
    dims.extend((0..en.len()).map(|n| en.free_module(n).slice_basis(nvars, deg).len()));
    dims
}

pub(crate) fn slice_rank(field: FieldChoice, m: &crate::linalg::SparseMatrix) -> usize {
    crate::with_field!(field, |f| crate::linalg::rank(&f, m))
}

/// Checks that the EN complex of `M_{e,c}` is a minimal free resolution:
/// consecutive maps compose to zero, maps are homogeneous and minimal, term
/// ranks match `C(f,m)(k+1)`, and every degree slice up to `max_deg` of the
/// augmented complex is exact.
pub fn verify_en_exactness(e: &[u32], c: u32, max_deg: i64, field: FieldChoice) -> Result<Report, EngineError> {
    let inv = ScrollInvariants::new(e.to_vec(), 1)?;
    let en = EnComplex::new(inv, c)?;
    let mut rep = Report::new(format!("EN resolution of M_(e={e:?}, c={c})"));
    let vars: Vec<_> = en.module().generators().iter().map(|g| g.weight).collect();

    for n in 0..en.len() {
        let t = en.term(n).unwrap();
        rep.check(
            t.rank() as u128 == en.expected_rank(n),
            format!("position {n}: rank {} = C(f,{})*{}", t.rank(), t.wedge, t.v + 1),
        );
    }
    for n in 1..en.len() {
        let d = en.map(n);
        rep.check(d.is_homogeneous() && d.is_minimal(), format!("d_{n} homogeneous and minimal"));
        if n >= 2 {
            rep.check(en.map(n - 1).compose(d).is_zero(), format!("d_{} d_{n} = 0", n - 1));
        }
    }
    if en.len() >= 2 {
        let comp = en.augmentation().compose_free(en.map(1), &vars);
        rep.check(comp.iter().all(|x| x.is_empty()), "augmentation kills the image of d_1");
    }

    let nvars = en.nvars();
    for deg in 0..=max_deg {
        let dims = en_resolution_degree_piece(&en, deg);
        // ranks[k]: map out of complex index k (0 = module, k = position k-1)
        let mut ranks = vec![0usize; dims.len() + 1];
        ranks[1] = slice_rank(field, &en.augmentation().slice(en.module(), deg));
        for n in 1..en.len() {
            ranks[n + 1] = slice_rank(field, &en.map(n).slice(nvars, deg));
        }
        let homology: Vec<usize> = (0..dims.len()).map(|k| dims[k] - ranks[k] - ranks[k + 1]).collect();
        rep.check(
            homology.iter().all(|&h| h == 0),
            format!("degree {deg}: dims {dims:?}, homology {homology:?}"),
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn en_small_cases_are_exact() {
        for (e, c) in [(vec![1, 2], 0), (vec![1, 2], 1), (vec![2, 3, 3], 0), (vec![2], 0), (vec![3], 1)] {
            let rep = verify_en_exactness(&e, c, 3, FieldChoice::default()).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }
}
