//! The map whose kernel bounds `κ_{p,1}` at `p = ab + a - 1`.
//!
//! With `W = {0..a} x {0..b-1}` and the rectangle `{0..a-1} x {0..b-1}`, the
//! map is
//!
//! `Λ^b V_W ⊗ G_{a-1} -> Λ^{b-1} V_W ⊗ V_rect ⊗ G_{a-2}`,
//! `v_{P_1} ∧ ... ∧ v_{P_b} ⊗ g_h ↦ Σ_l (-1)^l (..v̂_{P_l}..) ⊗ v_{P_l} ⊗ g_{h-1}
//!                                 - Σ_l (-1)^l (..v̂_{P_l}..) ⊗ v_{P_l-(1,0)} ⊗ g_h`,
//!
//! dropping terms whose point or `g` index is out of range. Points are
//! numbered lexicographically, `(x, y) ↦ x b + y`.

use rustc_hash::FxHashMap;

use super::chainmap::HorizontalMaps;
use super::clamp;
use crate::koszul::{subsets, EngineError, WedgeMonomial};
use crate::linalg::{kernel_basis, rank, vector_rank, Field, FieldChoice, SparseMatrix};
use crate::report::Report;
use crate::with_field;

/// A map between finite-dimensional spaces with labelled bases.
#[derive(Debug, Clone)]
pub struct KernelMap {
    pub a: u32,
    pub b: u32,
    /// `(wedge, h)`.
    pub domain: Vec<(WedgeMonomial, u32)>,
    /// `(wedge, point or B-index, h)`.
    pub codomain: Vec<(WedgeMonomial, u32, u32)>,
    pub matrix: SparseMatrix,
}

impl KernelMap {
    pub fn domain_index(&self, s: WedgeMonomial, h: u32) -> Option<usize> {
        self.domain.iter().position(|&d| d == (s, h))
    }
}

fn check(a: u32, b: u32) -> Result<(), EngineError> {
    if a < 3 || a > b {
        return Err(EngineError::InvalidParameters(format!("the kernel lemma needs 3 <= a <= b, got ({a},{b})")));
    }
    if (a + 1) * b > 64 {
        return Err(EngineError::InvalidParameters(format!("(a+1)b = {} exceeds 64", (a + 1) * b)));
    }
    Ok(())
}

struct Builder {
    codomain: Vec<(WedgeMonomial, u32, u32)>,
    index: FxHashMap<(WedgeMonomial, u32, u32), usize>,
    triplets: Vec<(usize, usize, i64)>,
}

impl Builder {
    fn new() -> Self {
        Self { codomain: Vec::new(), index: FxHashMap::default(), triplets: Vec::new() }
    }

    fn push(&mut self, key: (WedgeMonomial, u32, u32), col: usize, v: i64) {
        let next = self.codomain.len();
        let row = *self.index.entry(key).or_insert(next);
        if row == next {
            self.codomain.push(key);
        }
        self.triplets.push((row, col, v));
    }

    /// Sorts the codomain so the result does not depend on visiting order.
    fn finish(self, a: u32, b: u32, domain: Vec<(WedgeMonomial, u32)>) -> KernelMap {
        let mut order: Vec<usize> = (0..self.codomain.len()).collect();
        order.sort_by_key(|&r| self.codomain[r]);
        let mut rank_of = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            rank_of[old] = new;
        }
        let codomain: Vec<_> = order.iter().map(|&r| self.codomain[r]).collect();
        let trip = self.triplets.into_iter().map(|(r, c, v)| (rank_of[r], c, v));
        let matrix = SparseMatrix::from_triplets(codomain.len(), domain.len(), trip);
        KernelMap { a, b, domain, codomain, matrix }
    }
}

fn wedge_domain(npoints: usize, k: usize, a: u32) -> Vec<(WedgeMonomial, u32)> {
    subsets(npoints, k).flat_map(|s| (1..a).map(move |h| (s, h))).collect()
}

/// The simplified map after complementation. Only rows that can be hit are
/// listed in the codomain, which does not change the kernel.
pub fn kernel_map(a: u32, b: u32) -> Result<KernelMap, EngineError> {
    check(a, b)?;
    let (ai, bi) = (a as i64, b as i64);
    let domain = wedge_domain(((a + 1) * b) as usize, b as usize, a);
    let mut out = Builder::new();
    for (col, &(s, h)) in domain.iter().enumerate() {
        for k in s.indices() {
            let (rest, rsign) = s.remove(k).unwrap();
            // (-1)^l with l the 1-based position
            let sign = -rsign;
            let (x, y) = (k as i64 / bi, k as i64 % bi);
            if let (Some(_), Some(h1)) = (clamp(x, 0, ai - 1), clamp(h as i64 - 1, 1, ai - 2)) {
                out.push((rest, k as u32, h1), col, sign);
            }
            if let (Some(x1), Some(h0)) = (clamp(x - 1, 0, ai - 1), clamp(h as i64, 1, ai - 2)) {
                out.push((rest, (x1 as i64 * bi + y) as u32, h0), col, -sign);
            }
        }
    }
    Ok(out.finish(a, b, domain))
}

/// The same map before complementation:
/// `Λ^{ab} V_W ⊗ G_{a-1} -> Λ^{ab+1} V_W ⊗ V_rect ⊗ G_{a-2}`,
/// `v_S ⊗ g_h ↦ Σ_P v_P ∧ v_S ⊗ v_P ⊗ g_{h-1} - Σ_P v_{P+(1,0)} ∧ v_S ⊗ v_P ⊗ g_h`.
pub fn uncomplemented_kernel_map(a: u32, b: u32) -> Result<KernelMap, EngineError> {
    check(a, b)?;
    let ai = a as i64;
    let domain = wedge_domain(((a + 1) * b) as usize, (a * b) as usize, a);
    let mut out = Builder::new();
    for (col, &(s, h)) in domain.iter().enumerate() {
        for p in 0..(a * b) as usize {
            if let Some(h1) = clamp(h as i64 - 1, 1, ai - 2) {
                if let Some((w, sign)) = s.insert_front(p) {
                    out.push((w, p as u32, h1), col, sign);
                }
            }
            if let Some(h0) = clamp(h as i64, 1, ai - 2) {
                if let Some((w, sign)) = s.insert_front(p + b as usize) {
                    out.push((w, p as u32, h0), col, -sign);
                }
            }
        }
    }
    Ok(out.finish(a, b, domain))
}

/// The first chain map `Q_{n,p-n} ⊗ k -> Q_{n-1,p-n} ⊗ k` (with `n = a-1`,
/// `p = ab+a-1`) assembled directly from the last differential of the
/// relative resolution, with each `β_{i0}` replaced by `α_{i0,ab}`. Columns
/// are `f_S ⊗ g_h`; rows are `f_S' ⊗ B_l ⊗ (omitted g) ⊗ g_h'`, the omitted
/// `g` packed into the `h` field as `q * a + h'`.
pub fn first_chain_map(a: u32, b: u32) -> Result<KernelMap, EngineError> {
    check(a, b)?;
    let ai = a as i64;
    let hm = HorizontalMaps::new(a, b, a * b)?;
    let pos = (a * b) as usize;
    let alphas: Vec<_> = (0..=a).map(|i0| hm.alpha(i0, pos)).collect::<Result<_, _>>()?;
    let src = hm.source().term(pos).unwrap();
    let dst = hm.target().term(pos).unwrap();
    let domain = wedge_domain(hm.source().f_labels().len(), pos, a);
    let mut out = Builder::new();
    let full = WedgeMonomial((1u64 << a) - 1);
    for (col, &(s, h)) in domain.iter().enumerate() {
        let g = src.index_of(s, 0).unwrap() as usize;
        for t in full.indices() {
            let (_, rsign) = full.remove(t).unwrap();
            let sign = -rsign;
            let jq = t as u32 + 1;
            let mut emit = |i0: u32, hh: i64, coef: i64| {
                let Some(hh) = clamp(hh, 1, ai - 2) else { return };
                for ((tg, mono), v) in &alphas[i0 as usize].images[g] {
                    debug_assert!(mono.is_empty());
                    let (w, l) = dst.gens[*tg as usize];
                    out.push((w, l, jq * a + hh), col, coef * v);
                }
            };
            emit(jq - 1, h as i64 - 1, sign);
            emit(jq, h as i64, -sign);
        }
    }
    Ok(out.finish(a, b, domain))
}

/// One kernel vector per `h` in `1..=a(b+1)-1`, in the domain coordinates of
/// [`kernel_map`]: the sum over `(i_0..i_{b-1})` in `{0..a}^b` with
/// `1 <= h - Σi <= a-1` of `v_{(i_0,0)} ∧ ... ∧ v_{(i_{b-1},b-1)} ⊗ g_{h-Σi}`.
pub fn kernel_basis_expressions(a: u32, b: u32) -> Result<Vec<Vec<(usize, i64)>>, EngineError> {
    check(a, b)?;
    let km = kernel_map(a, b)?;
    let index: FxHashMap<(WedgeMonomial, u32), usize> = km.domain.iter().enumerate().map(|(k, d)| (*d, k)).collect();
    let mut out = Vec::new();
    for h in 1..=(a * (b + 1) - 1) as i64 {
        let mut acc: FxHashMap<usize, i64> = FxHashMap::default();
        let mut is = vec![0u32; b as usize];
        loop {
            let sum: i64 = is.iter().map(|&x| x as i64).sum();
            if let Some(g) = clamp(h - sum, 1, a as i64 - 1) {
                let pts: Vec<usize> = is.iter().enumerate().map(|(y, &x)| (x * b) as usize + y).collect();
                let (w, sign) = WedgeMonomial::from_unsorted(&pts).expect("points are distinct");
                *acc.entry(index[&(w, g)]).or_insert(0) += sign;
            }
            // next tuple in {0..a}^b
            let mut k = 0;
            while k < is.len() && is[k] == a {
                is[k] = 0;
                k += 1;
            }
            if k == is.len() {
                break;
            }
            is[k] += 1;
        }
        let mut v: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, x)| x != 0).collect();
        v.sort_unstable();
        out.push(v);
    }
    Ok(out)
}

fn to_field<F: Field>(f: &F, v: &[(usize, i64)]) -> Vec<(usize, F::Elem)> {
    v.iter().map(|&(c, x)| (c, f.from_int(x))).collect()
}

/// Kernel dimension of each form of the map, the expressions' membership and
/// independence, and equality of their span with a computed kernel basis.
pub fn verify_kernel_lemma(a: u32, b: u32, field: FieldChoice) -> Result<Report, EngineError> {
    let expected = (a * (b + 1) - 1) as usize;
    let mut rep = Report::new(format!("kernel lemma for ({a},{b}), expected kernel dim {expected}"));
    let km = kernel_map(a, b)?;
    let ncols = km.matrix.ncols();
    let kdim = ncols - with_field!(field, |f| rank(&f, &km.matrix));
    rep.check(kdim == expected, format!("complemented map: domain {ncols}, kernel {kdim}"));

    for (name, m) in [("uncomplemented map", uncomplemented_kernel_map(a, b)?), ("assembled chain map", first_chain_map(a, b)?)] {
        let n = m.matrix.ncols();
        let k = n - with_field!(field, |f| rank(&f, &m.matrix));
        rep.check(k == expected, format!("{name}: domain {n}, kernel {k}"));
    }

    let exprs = kernel_basis_expressions(a, b)?;
    rep.check(exprs.len() == expected, format!("{} expressions", exprs.len()));
    let annihilated = exprs.iter().all(|v| {
        let mut x = vec![0i64; ncols];
        for &(c, val) in v {
            x[c] = val;
        }
        km.matrix.apply(&x).iter().all(|&y| y == 0)
    });
    rep.check(annihilated, "every expression is in the kernel");
    let (r_expr, r_kernel, r_both) = with_field!(field, |f| {
        let e: Vec<_> = exprs.iter().map(|v| to_field(&f, v)).collect();
        let k = kernel_basis(&f, &km.matrix);
        let mut both = e.clone();
        both.extend(k.iter().cloned());
        (vector_rank(&f, &e, ncols), vector_rank(&f, &k, ncols), vector_rank(&f, &both, ncols))
    });
    rep.check(r_expr == exprs.len(), format!("expressions independent (rank {r_expr})"));
    rep.check(
        r_expr == r_kernel && r_both == r_kernel,
        format!("span equals computed kernel (ranks {r_expr}, {r_kernel}, joint {r_both})"),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_lemma_small() {
        let km = kernel_map(3, 3).unwrap();
        assert_eq!(km.matrix.ncols(), 440);
        let rep = verify_kernel_lemma(3, 3, FieldChoice::default()).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}
