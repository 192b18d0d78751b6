//! Horizontal chain maps between EN resolutions of `M_{b̄,c}` and
//! `M_{b̄,c-b}` lifting `β_{i0}: b_{I,c,j} ↦ b_{I+i0,c-b,j}`.
//!
//! `β_{i0}` raises the untwisted degree by one, so the source generators are
//! given degree one more than in the EN complex; with that shift every `α`
//! is homogeneous of degree zero.

use std::collections::BTreeMap;

use super::clamp;
use super::en::EnComplex;
use super::free::{add_term, FreeElem, FreeMap, FreeModule};
use crate::koszul::EngineError;
use crate::report::Report;
use crate::rings::{ScrollInvariants, Weight, WEIGHT_DIM};

/// Explicit degree slices with more rows or columns than this are not built;
/// the generator-level identity already covers them.
const SLICE_SIZE_CAP: u128 = 100_000;

/// The pair of EN complexes for `M_{b̄,c}` and `M_{b̄,c-b}`.
#[derive(Debug, Clone)]
pub struct HorizontalMaps {
    a: u32,
    b: u32,
    c: u32,
    src: EnComplex,
    dst: EnComplex,
}

fn shifted(m: &FreeModule, by: i64) -> FreeModule {
    FreeModule { labels: m.labels.clone(), degrees: m.degrees.iter().map(|d| d + by).collect() }
}

impl HorizontalMaps {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self, EngineError> {
        if c < b || !c.is_multiple_of(b) {
            return Err(EngineError::InvalidParameters(format!("c={c} must be a positive multiple of b={b}")));
        }
        let inv = ScrollInvariants::segre_scroll(a, b)?;
        let src = EnComplex::new(inv.clone(), c)?;
        let dst = EnComplex::new(inv, c - b)?;
        Ok(Self { a, b, c, src, dst })
    }

    pub fn source(&self) -> &EnComplex {
        &self.src
    }

    pub fn target(&self) -> &EnComplex {
        &self.dst
    }

    fn check(&self, i0: u32, n: usize) -> Result<(), EngineError> {
        if i0 > self.a {
            return Err(EngineError::InvalidParameters(format!("i0={i0} exceeds a={}", self.a)));
        }
        if n > self.c as usize {
            return Err(EngineError::OutOfImplementedRange(format!(
                "horizontal map at position {n} > c={}",
                self.c
            )));
        }
        Ok(())
    }

    /// `α_{i0,0}` from its own two-case definition.
    pub fn alpha_base(&self, i0: u32) -> Result<FreeMap, EngineError> {
        self.check(i0, 0)?;
        let (b, src, dst) = (self.b, &self.src, &self.dst);
        let t = dst.term(0).unwrap();
        let images = src.term(0).unwrap().gens.iter().map(|&(s, j)| {
            let mut out = FreeElem::new();
            if j <= b {
                add_term(&mut out, t.index_of(s, 0).unwrap(), vec![dst.var(i0, j)], 1);
            } else {
                add_term(&mut out, t.index_of(s, j - b).unwrap(), vec![dst.var(i0, b)], 1);
            }
            out
        });
        Ok(FreeMap { source: shifted(&src.free_module(0), 1), target: dst.free_module(0), images: images.collect() })
    }

    /// `α_{i0,n}` for `0 <= n <= c`.
    pub fn alpha(&self, i0: u32, n: usize) -> Result<FreeMap, EngineError> {
        self.check(i0, n)?;
        let (b, c, src, dst) = (self.b as i64, self.c as usize, &self.src, &self.dst);
        let t = dst.term(n).unwrap();
        let tail = n > c - b as usize;
        let images = src.term(n).unwrap().gens.iter().map(|&(s, j)| {
            let mut out = FreeElem::new();
            let j = j as i64;
            if tail {
                // (-1)^{n-c+b-1} Σ_{l=0}^{n-c+b-1} f_{i0,j+l+1} ∧ f_I ⊗ B_l
                let top = n as i64 - c as i64 + b - 1;
                let sign = if top % 2 == 0 { 1 } else { -1 };
                for l in 0..=top {
                    let Some(jj) = clamp(j + l + 1, 1, b) else { continue };
                    let k = dst.f_index(i0, jj).unwrap();
                    if let Some((w, s2)) = s.insert_front(k) {
                        add_term(&mut out, t.index_of(w, l as u32).unwrap(), Vec::new(), sign * s2);
                    }
                }
            } else if j < b {
                add_term(&mut out, t.index_of(s, 0).unwrap(), vec![dst.var(i0, j as u32)], 1);
                let k0 = dst.f_index(i0, j as u32 + 1).unwrap();
                for k in s.indices() {
                    let (rest, rsign) = s.remove(k).unwrap();
                    // (-1)^l with l the 1-based position
                    let sign = -rsign;
                    let (il, jl) = dst.f_labels()[k];
                    if let Some((w, s2)) = rest.insert_front(k0) {
                        add_term(&mut out, t.index_of(w, 0).unwrap(), vec![dst.var(il, jl - 1)], sign * s2);
                    }
                }
            } else {
                add_term(&mut out, t.index_of(s, (j - b) as u32).unwrap(), vec![dst.var(i0, b as u32)], 1);
            }
            out
        });
        Ok(FreeMap { source: shifted(&src.free_module(n), 1), target: dst.free_module(n), images: images.collect() })
    }
}

/// The matrix of `α_{i0,n}` on generators, for `M_{b̄,c} -> M_{b̄,c-b}` with
/// `b̄` the scroll of `R_{a,b}`.
pub fn horizontal_chain_map(a: u32, b: u32, c: u32, i0: u32, n: usize) -> Result<FreeMap, EngineError> {
    HorizontalMaps::new(a, b, c)?.alpha(i0, n)
}

/// `left == right` on every degree slice `deg(gen) + δ` with `δ <= max_delta`
/// whose size stays under the cap. Returns the largest `δ` built.
fn slices_agree(left: &[FreeMap; 2], right: &[FreeMap; 2], nvars: usize, base: i64, max_delta: i64) -> (bool, i64) {
    let mut built = -1;
    for delta in 0..=max_delta {
        let d = base + delta;
        let widest = [&left[0], &left[1], &right[0], &right[1]]
            .iter()
            .map(|m| m.source.slice_dim(nvars, d).max(m.target.slice_dim(nvars, d)))
            .max()
            .unwrap();
        if widest > SLICE_SIZE_CAP {
            break;
        }
        let l = left[1].slice(nvars, d).mul(&left[0].slice(nvars, d)).expect("shapes agree");
        let r = right[1].slice(nvars, d).mul(&right[0].slice(nvars, d)).expect("shapes agree");
        if l != r {
            return (false, delta);
        }
        built = delta;
    }
    (true, built)
}

/// Checks that the `α_{i0,n}` form chain maps over `β_{i0}` for every
/// `i0 in 0..=a`, for the step of the relative resolution starting at
/// `M_{b̄,p b}`. Each square is compared on generator images (which fixes
/// every degree slice, the maps being linear over the polynomial ring) and,
/// where small enough, on explicit slices up to `max_deg` above the source
/// generator degree.
pub fn verify_chain_map_squares(a: u32, b: u32, p_index: u32, max_deg: i64) -> Result<Report, EngineError> {
    if p_index < 2 || p_index > a {
        return Err(EngineError::InvalidParameters(format!("need 2 <= p_index <= a, got {p_index}")));
    }
    let c = p_index * b;
    let hm = HorizontalMaps::new(a, b, c)?;
    let (src, dst) = (hm.source(), hm.target());
    let nvars = src.nvars();
    let vars: Vec<Weight> = dst.module().generators().iter().map(|g| g.weight).collect();
    let mut rep = Report::new(format!("horizontal chain maps M_{c} -> M_{} for ({a},{b})", c - b));

    for i0 in 0..=a {
        let base = hm.alpha_base(i0)?;
        let alpha0 = hm.alpha(i0, 0)?;
        rep.check(base.images == alpha0.images, format!("beta_{i0}: base and middle definitions agree at n=0"));

        // augmentation square: both paths send B_j to b_{i0,c-b,j}
        let down = dst.augmentation().compose_free(&alpha0, &vars);
        let across: Vec<BTreeMap<Weight, i64>> = src
            .term(0)
            .unwrap()
            .gens
            .iter()
            .map(|&(_, j)| {
                let mut w = [0; WEIGHT_DIM];
                w[i0 as usize] = 1;
                w[a as usize + 1] = j as i32;
                BTreeMap::from([(w, 1)])
            })
            .collect();
        rep.check(down == across, format!("beta_{i0}: square n=0 (augmentation)"));

        let mut prev = alpha0;
        for n in 1..=c as usize {
            let alpha = hm.alpha(i0, n)?;
            let d = src.map(n);
            let d_shift = FreeMap { source: shifted(&d.source, 1), target: shifted(&d.target, 1), images: d.images.clone() };
            let dd = dst.map(n);
            let left = dd.compose(&alpha);
            let right = prev.compose(&d_shift);
            let generators_ok = left.images == right.images && alpha.is_homogeneous();
            let (slices_ok, built) = slices_agree(
                &[alpha.clone(), dd.clone()],
                &[d_shift, prev.clone()],
                nvars,
                src.term(n).unwrap().degree + 1,
                max_deg,
            );
            let note = if n == (c - b) as usize + 1 { " (worked square)" } else { "" };
            let slices = if built >= 0 { format!("slices δ<={built}") } else { "no slice small enough".to_string() };
            rep.check(
                generators_ok && slices_ok,
                format!("beta_{i0}: square n={n}{note}: {} generators, {slices}", alpha.source.rank()),
            );
            prev = alpha;
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case_values() {
        let hm = HorizontalMaps::new(3, 3, 6).unwrap();
        let al = hm.alpha_base(2).unwrap();
        let t = hm.target().term(0).unwrap();
        let src = hm.source().term(0).unwrap();
        for (k, &(_, j)) in src.gens.iter().enumerate() {
            let (expect_b, expect_var) = if j <= 3 { (0, (2, j)) } else { (j - 3, (2, 3)) };
            let key = (t.index_of(src.gens[k].0, expect_b).unwrap(), vec![hm.target().var(expect_var.0, expect_var.1)]);
            assert_eq!(al.images[k].get(&key), Some(&1));
        }
        assert!(matches!(hm.alpha(0, 7), Err(EngineError::OutOfImplementedRange(_))));
    }

    #[test]
    fn squares_commute_small() {
        for (a, b, p) in [(2, 2, 2), (3, 3, 2), (3, 3, 3), (2, 3, 2)] {
            let rep = verify_chain_map_squares(a, b, p, 2).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }
}
