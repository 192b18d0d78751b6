use std::fmt;

/// A basis element `g_{i_1} ∧ ... ∧ g_{i_p}` of an exterior power, stored as
/// a bitmask over at most 64 generators. Indices are implicitly increasing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WedgeMonomial(pub u64);

impl WedgeMonomial {
    pub fn empty() -> Self {
        Self(0)
    }

    /// Wedge of the given indices in increasing order. Returns `None` on a
    /// repeated index (the wedge is zero).
    pub fn from_indices(indices: &[usize]) -> Option<Self> {
        let mut m = 0u64;
        for &i in indices {
            assert!(i < 64, "wedge index {i} out of range");
            if m & (1 << i) != 0 {
                return None;
            }
            m |= 1 << i;
        }
        Some(Self(m))
    }

    /// Like [`from_indices`](Self::from_indices) but for an arbitrary
    /// order: also returns the sign of the sorting permutation.
    pub fn from_unsorted(indices: &[usize]) -> Option<(Self, i64)> {
        let w = Self::from_indices(indices)?;
        let mut inversions = 0;
        for (k, &x) in indices.iter().enumerate() {
            inversions += indices[k + 1..].iter().filter(|&&y| y < x).count();
        }
        Some((w, if inversions % 2 == 0 { 1 } else { -1 }))
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        let mut m = self.0;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                i
            })
        })
    }

    /// Number of factors with index below `i`.
    pub fn rank_of(&self, i: usize) -> usize {
        (self.0 & ((1u64 << i) - 1)).count_ones() as usize
    }

    /// Removes factor `i`; the sign is `(-1)^l` where `l` is its 0-based position.
    pub fn remove(&self, i: usize) -> Option<(Self, i64)> {
        self.contains(i).then(|| {
            let sign = if self.rank_of(i).is_multiple_of(2) { 1 } else { -1 };
            (Self(self.0 & !(1 << i)), sign)
        })
    }

    /// `g_i ∧ self`, rewritten in increasing order.
    pub fn insert_front(&self, i: usize) -> Option<(Self, i64)> {
        (!self.contains(i)).then(|| {
            let sign = if self.rank_of(i).is_multiple_of(2) { 1 } else { -1 };
            (Self(self.0 | (1 << i)), sign)
        })
    }

    /// `self ∧ other` with the sign of merging two increasing sequences.
    pub fn wedge(&self, other: &WedgeMonomial) -> Option<(Self, i64)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0;
        for i in self.indices() {
            inversions += other.rank_of(i);
        }
        Some((Self(self.0 | other.0), if inversions % 2 == 0 { 1 } else { -1 }))
    }
}

impl fmt::Debug for WedgeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ix: Vec<usize> = self.indices().collect();
        write!(f, "∧{ix:?}")
    }
}

/// All `p`-element subsets of `0..n` as bitmasks, in increasing numeric order.
pub fn subsets(n: usize, p: usize) -> impl Iterator<Item = WedgeMonomial> {
    assert!(n <= 64, "at most 64 generators");
    let limit: u128 = 1u128 << n;
    let mut next: Option<u128> = if p > n {
        None
    } else if p == 0 {
        Some(0)
    } else {
        Some((1u128 << p) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < limit).then_some(nxt)
        };
        Some(WedgeMonomial(cur as u64))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(5, 2).count(), 10);
        assert_eq!(subsets(5, 0).count(), 1);
        assert_eq!(subsets(5, 5).count(), 1);
        assert_eq!(subsets(5, 6).count(), 0);
        assert_eq!(subsets(64, 63).count(), 64);
        let v: Vec<u64> = subsets(4, 2).map(|w| w.0).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn signs() {
        let w = WedgeMonomial::from_indices(&[1, 3, 4]).unwrap();
        assert_eq!(w.remove(1).unwrap().1, 1);
        assert_eq!(w.remove(3).unwrap().1, -1);
        assert_eq!(w.remove(4).unwrap().1, 1);
        assert_eq!(w.insert_front(2).unwrap().1, -1);
        assert_eq!(WedgeMonomial::from_unsorted(&[3, 1, 2]).unwrap().1, 1);
        assert_eq!(WedgeMonomial::from_unsorted(&[2, 1]).unwrap().1, -1);
        assert!(WedgeMonomial::from_unsorted(&[2, 2]).is_none());
        let a = WedgeMonomial::from_indices(&[2]).unwrap();
        let b = WedgeMonomial::from_indices(&[0, 1]).unwrap();
        assert_eq!(a.wedge(&b).unwrap().1, 1);
        let b = WedgeMonomial::from_indices(&[0, 3]).unwrap();
        assert_eq!(a.wedge(&b).unwrap().1, -1);
    }
}
