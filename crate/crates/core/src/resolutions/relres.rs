//! Resolution of the Segre ring `R_{a,b}` over the scroll ring `R_b̄`,
//! `b̄ = (b, ..., b)` with `a + 1` entries:
//!
//! `0 -> M_{ab} ⊗ Λ^a G ⊗ G_{a-1}(-a) -> ... -> M_{2b} ⊗ Λ^2 G ⊗ G_1(-2) -> R_b̄ -> R_{a,b}`
//!
//! where `G` has basis `g_1..g_a` and `G_k` has basis `g_1..g_k`. Only degree
//! slices are built; they are finite-dimensional with monomial bases.

use rustc_hash::FxHashMap;

use super::clamp;
use super::en::slice_rank;
use crate::koszul::{binomial, subsets, EngineError, WedgeMonomial};
use crate::linalg::{FieldChoice, SparseMatrix};
use crate::report::Report;
use crate::rings::{MonomialAlgebra, ScrollInvariants, Weight, WEIGHT_DIM};

/// One degree slice of the augmented relative resolution.
///
/// Index 0 is `R_{a,b}`, index 1 is `R_b̄`, index `p` (for `2 <= p <= a`) is
/// the term `M_{pb} ⊗ Λ^p G ⊗ G_{p-1}(-p)`. `maps[k]` goes from index `k+1`
/// to index `k`.
#[derive(Debug, Clone)]
pub struct RelativeSlice {
    pub degree: u32,
    pub dims: Vec<usize>,
    pub maps: Vec<SparseMatrix>,
}

type TermBasis = Vec<(Weight, WedgeMonomial, u32)>;

fn term_basis(inv: &ScrollInvariants, a: u32, b: u32, p: u32, n: u32) -> TermBasis {
    if n < p {
        return Vec::new();
    }
    let m = MonomialAlgebra::scroll_module(inv.clone(), p * b);
    let mut out = Vec::new();
    for w in m.basis(n - p) {
        for s in subsets(a as usize, p as usize) {
            for h in 1..p {
                out.push((w, s, h));
            }
        }
    }
    out
}

fn add_index(w: &Weight, x: u32) -> Weight {
    let mut w = *w;
    w[x as usize] += 1;
    w
}

pub fn relative_resolution_degree_piece(a: u32, b: u32, n: u32) -> Result<RelativeSlice, EngineError> {
    let inv = ScrollInvariants::segre_scroll(a, b)?;
    let segre = MonomialAlgebra::segre(a, b)?;
    let scroll = MonomialAlgebra::scroll(inv.clone());
    let jpos = inv.ell();

    let target = segre.basis(n);
    let ring = scroll.basis(n);
    let mut bases: Vec<TermBasis> = vec![Vec::new(), Vec::new()];
    for p in 2..=a {
        bases.push(term_basis(&inv, a, b, p, n));
    }
    let mut dims = vec![target.len(), ring.len()];
    dims.extend(bases[2..].iter().map(Vec::len));

    let mut maps = Vec::new();
    // R_b̄ -> R_{a,b}
    let tindex: FxHashMap<Weight, usize> = target.iter().enumerate().map(|(k, w)| (*w, k)).collect();
    let trip = ring.iter().enumerate().map(|(c, w)| {
        let mut s = [0; WEIGHT_DIM];
        s[0] = (0..=a).map(|i| i as i32 * w[i as usize]).sum();
        s[1] = w[jpos];
        (tindex[&s], c, 1)
    });
    maps.push(SparseMatrix::from_triplets(target.len(), ring.len(), trip));

    if a >= 2 {
        // M_{2b} ⊗ Λ^2 G -> R_b̄: g_{j1} ∧ g_{j2} ↦ b_{j1-1} b_{j2} - b_{j1} b_{j2-1}
        let rindex: FxHashMap<Weight, usize> = ring.iter().enumerate().map(|(k, w)| (*w, k)).collect();
        let mut trip = Vec::new();
        for (c, (w, s, _)) in bases[2].iter().enumerate() {
            let ix: Vec<u32> = s.indices().map(|t| t as u32 + 1).collect();
            let (j1, j2) = (ix[0], ix[1]);
            trip.push((rindex[&add_index(&add_index(w, j1 - 1), j2)], c, 1));
            trip.push((rindex[&add_index(&add_index(w, j1), j2 - 1)], c, -1));
        }
        maps.push(SparseMatrix::from_triplets(ring.len(), bases[2].len(), trip));
    }

    for p in 3..=a {
        let src = &bases[p as usize];
        let dst = &bases[p as usize - 1];
        let index: FxHashMap<(Weight, WedgeMonomial, u32), usize> =
            dst.iter().enumerate().map(|(k, x)| (*x, k)).collect();
        let mut trip = Vec::new();
        for (c, (w, s, h)) in src.iter().enumerate() {
            for t in s.indices() {
                let (rest, sign) = s.remove(t).unwrap();
                // (-1)^q with q the 1-based position
                let sign = -sign;
                let jq = t as u32 + 1;
                let top = p as i64 - 2;
                if let Some(h1) = clamp(*h as i64 - 1, 1, top) {
                    trip.push((index[&(add_index(w, jq - 1), rest, h1)], c, sign));
                }
                if let Some(h0) = clamp(*h as i64, 1, top) {
                    trip.push((index[&(add_index(w, jq), rest, h0)], c, -sign));
                }
            }
        }
        maps.push(SparseMatrix::from_triplets(dst.len(), src.len(), trip));
    }
    Ok(RelativeSlice { degree: n, dims, maps })
}

/// Checks, for each degree `n <= max_deg`, that the slice of the augmented
/// relative resolution is a complex, is exact everywhere (including
/// surjectivity onto `R_{a,b}`), and has the expected dimensions.
pub fn verify_relative_resolution(a: u32, b: u32, max_deg: u32, field: FieldChoice) -> Result<Report, EngineError> {
    let mut rep = Report::new(format!("relative resolution of R_({a},{b}) over the scroll"));
    for n in 0..=max_deg {
        let s = relative_resolution_degree_piece(a, b, n)?;
        let mut composite_zero = true;
        for k in 1..s.maps.len() {
            composite_zero &= s.maps[k - 1].mul(&s.maps[k])?.is_zero();
        }
        rep.check(composite_zero, format!("degree {n}: consecutive maps compose to zero"));

        let nn = n as i64;
        let mut expected = vec![((nn * a as i64 + 1) * (nn * b as i64 + 1)) as u128];
        for p in 1..=a as i64 {
            let m = if p == 1 { 0 } else { p };
            let copies = if p == 1 { 1 } else { binomial(a as i64, p) * (p as u128 - 1) };
            expected.push(binomial(nn - m + a as i64, a as i64) * (nn as u128 * b as u128 + 1) * copies);
        }
        let got: Vec<u128> = s.dims.iter().map(|&d| d as u128).collect();
        rep.check(got == expected, format!("degree {n}: dims {:?}", s.dims));

        let mut ranks = vec![0usize; s.dims.len() + 1];
        for (k, m) in s.maps.iter().enumerate() {
            ranks[k + 1] = slice_rank(field, m);
        }
        let homology: Vec<usize> = (0..s.dims.len()).map(|k| s.dims[k] - ranks[k] - ranks[k + 1]).collect();
        rep.check(homology.iter().all(|&h| h == 0), format!("degree {n}: homology {homology:?}"));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_resolution_small() {
        for (a, b) in [(1, 1), (2, 2), (2, 3), (3, 3)] {
            let rep = verify_relative_resolution(a, b, 4, FieldChoice::default()).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }
}
