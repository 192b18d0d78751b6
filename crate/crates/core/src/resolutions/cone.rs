//! Bookkeeping for the iterated mapping cone that resolves `R_{a,b}` over
//! the polynomial ring: the shapes and twists of its summands `Q_{i,j}`,
//! the EN position `j` of the resolution of the relative term `P_i`.

use crate::koszul::{binomial, EngineError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSummand {
    /// Relative-resolution index.
    pub i: u32,
    /// EN position.
    pub j: u32,
    /// Number of copies, `C(a,i+1) i` for `i >= 1` and 1 for `i = 0`.
    pub copies: u128,
    /// Shape `Λ^wedge F ⊗ V_v`.
    pub wedge: u32,
    pub v: u32,
    pub twist: i64,
    /// Total rank as a free module.
    pub rank: u128,
}

/// The summands of `C_p = ⊕ Q_{p-j,j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerPosition {
    pub p: u32,
    pub summands: Vec<ConeSummand>,
}

impl LedgerPosition {
    /// Summands with twist `-(p+1)`, the only ones that can meet `K_{p,1}`.
    pub fn contributing(&self) -> impl Iterator<Item = &ConeSummand> {
        let t = -(self.p as i64) - 1;
        self.summands.iter().filter(move |s| s.twist == t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingConeLedger {
    pub a: u32,
    pub b: u32,
    /// Length of the EN resolution of `R_b̄`, `(a+1)b - 1`.
    pub m: u32,
    /// Length of the relative resolution, `a - 1`.
    pub n: u32,
    pub positions: Vec<LedgerPosition>,
}

fn summand(a: u32, b: u32, i: u32, j: u32) -> ConeSummand {
    let f = ((a + 1) * b) as i64;
    let (copies, c, shift) = if i == 0 {
        (1, 0, 0)
    } else {
        (binomial(a as i64, i as i64 + 1) * i as u128, (i + 1) * b, i as i64 + 1)
    };
    let (wedge, v, deg) = if j <= c { (j, c - j, j as i64) } else { (j + 1, j - c - 1, j as i64 + 1) };
    let rank = copies * binomial(f, wedge as i64) * (v as u128 + 1);
    ConeSummand { i, j, copies, wedge, v, twist: -(deg + shift), rank }
}

pub fn mapping_cone_ledger(a: u32, b: u32) -> Result<MappingConeLedger, EngineError> {
    if a < 3 || a > b {
        return Err(EngineError::InvalidParameters(format!("the ledger needs 3 <= a <= b, got ({a},{b})")));
    }
    let m = (a + 1) * b - 1;
    let n = a - 1;
    let positions = (0..=m + n)
        .map(|p| LedgerPosition {
            p,
            summands: (p.saturating_sub(n)..=p.min(m)).map(|j| summand(a, b, p - j, j)).collect(),
        })
        .collect();
    Ok(MappingConeLedger { a, b, m, n, positions })
}

impl MappingConeLedger {
    pub fn position(&self, p: u32) -> Option<&LedgerPosition> {
        self.positions.get(p as usize)
    }

    /// `dim Q_{0,p} ⊗ k = p C((a+1)b, p+1)`.
    pub fn q0_dim(&self, p: u32) -> u128 {
        p as u128 * binomial(((self.a + 1) * self.b) as i64, p as i64 + 1)
    }

    /// First position past which `K_{p,1}` is exactly `Q_{0,p} ⊗ k`.
    pub fn threshold(&self) -> u32 {
        self.a * self.b + self.a - 1
    }

    /// Upper bound for `κ_{p,1}`: exact value `Q_{0,p}` above the threshold,
    /// `Q_{0,p}` plus the kernel of the first chain map at the threshold,
    /// `None` below it.
    pub fn first_row_bound(&self, p: u32, kernel_dim: u128) -> Option<u128> {
        use std::cmp::Ordering::*;
        match p.cmp(&self.threshold()) {
            Greater => Some(self.q0_dim(p)),
            Equal => Some(self.q0_dim(p) + kernel_dim),
            Less => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_examples() {
        let l = mapping_cone_ledger(3, 3).unwrap();
        assert_eq!((l.m, l.n), (11, 2));
        assert_eq!(l.q0_dim(12), 0);
        assert_eq!(l.first_row_bound(11, 11), Some(22));
        // at p = 12 nothing has twist -13 except possibly Q_{0,12}, which is out of range
        assert_eq!(l.position(12).unwrap().contributing().count(), 0);
        // at the threshold only Q_{0,p} and Q_{n,p-n} carry twist -(p+1)
        let ij: Vec<(u32, u32)> = l.position(11).unwrap().contributing().map(|s| (s.i, s.j)).collect();
        assert_eq!(ij, vec![(2, 9), (0, 11)]);
        let q29 = &l.position(11).unwrap().summands[0];
        assert_eq!((q29.wedge, q29.v, q29.copies, q29.rank), (9, 0, 2, 440));

        let l = mapping_cone_ledger(3, 4).unwrap();
        assert_eq!(l.first_row_bound(15, 0), Some(15));
        assert_eq!(l.first_row_bound(14, 14), Some(14 * 16 + 14));
        assert!(mapping_cone_ledger(2, 3).is_err());
    }
}
