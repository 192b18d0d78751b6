//! Graded bases of the Segre ring, scroll rings and scroll modules.
//!
//! All of these are semigroup algebras (or modules over one): every basis
//! element is a lattice point, and multiplying basis elements adds points.
//! [`MonomialAlgebra`] exposes that common shape to the Koszul engine.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("cannot multiply two module elements")]
    BothModuleElements,
    #[error("element {0} is not a basis element of this object")]
    InvalidElement(String),
    #[error("the generators {0} do not form a regular sequence (checked through degree {1})")]
    NotRegular(String, usize),
}

/// Torus bidegree of a basis element or a Koszul block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Bidegree {
    pub u1: u32,
    pub u2: u32,
}

impl Bidegree {
    pub fn new(u1: u32, u2: u32) -> Self {
        Self { u1, u2 }
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.u1 + o.u1, self.u2 + o.u2)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u1, self.u2)
    }
}

/// `b_{n,i,j}`, the basis element of bidegree `(i,j)` in degree `n` of `R_{a,b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SegreBasisElement {
    pub n: u32,
    pub i: u32,
    pub j: u32,
}

impl SegreBasisElement {
    pub fn unit() -> Self {
        Self { n: 0, i: 0, j: 0 }
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(self.i, self.j)
    }

    pub fn is_valid(&self, a: u32, b: u32) -> bool {
        self.i <= self.n * a && self.j <= self.n * b
    }
}

fn check_segre_params(a: u32, b: u32) -> Result<(), RingError> {
    if a < 1 || a > b {
        return Err(RingError::InvalidParameters(format!("need 1 <= a <= b, got a={a}, b={b}")));
    }
    Ok(())
}

/// Basis of the degree-`n` piece of `R_{a,b}`, sorted lexicographically by `(i,j)`.
pub fn segre_graded_basis(a: u32, b: u32, n: u32) -> Result<Vec<SegreBasisElement>, RingError> {
    check_segre_params(a, b)?;
    Ok((0..=n * a)
        .flat_map(|i| (0..=n * b).map(move |j| SegreBasisElement { n, i, j }))
        .collect())
}

pub fn segre_multiply(x: SegreBasisElement, y: SegreBasisElement) -> SegreBasisElement {
    SegreBasisElement { n: x.n + y.n, i: x.i + y.i, j: x.j + y.j }
}

/// Invariants `e_1, ..., e_l` of a rational normal scroll.
///
/// `offset` is the index of the first variable: 1 for the generic
/// construction with variables `x_1..x_l`, 0 for the scroll containing the
/// Segre surface, whose variables run `x_0..x_a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScrollInvariants {
    e: Vec<u32>,
    offset: u32,
}

impl ScrollInvariants {
    pub fn new(e: Vec<u32>, offset: u32) -> Result<Self, RingError> {
        if e.is_empty() || e.contains(&0) {
            return Err(RingError::InvalidParameters(format!("scroll invariants must be positive, got {e:?}")));
        }
        if e.len() >= WEIGHT_DIM {
            return Err(RingError::InvalidParameters(format!(
                "at most {} scroll invariants are supported",
                WEIGHT_DIM - 1
            )));
        }
        Ok(Self { e, offset })
    }

    /// The scroll `b̄ = (b, ..., b)` with `a+1` entries and variables `0..=a`.
    pub fn segre_scroll(a: u32, b: u32) -> Result<Self, RingError> {
        if a < 1 || b < 1 {
            return Err(RingError::InvalidParameters(format!("need a, b >= 1, got a={a}, b={b}")));
        }
        Self::new(vec![b; a as usize + 1], 0)
    }

    pub fn e(&self) -> &[u32] {
        &self.e
    }

    pub fn ell(&self) -> usize {
        self.e.len()
    }

    pub fn f(&self) -> u32 {
        self.e.iter().sum()
    }

    pub fn offset(&self) -> u32 {
        self.offset
    }

    /// Variable indices in the scroll's own numbering.
    pub fn indices(&self) -> std::ops::Range<u32> {
        self.offset..self.offset + self.e.len() as u32
    }

    /// `e_i` for a variable index `i` in the scroll's numbering.
    pub fn e_of(&self, i: u32) -> u32 {
        self.e[(i - self.offset) as usize]
    }

    fn contains_index(&self, i: u32) -> bool {
        self.indices().contains(&i)
    }
}

/// `b_{i_1..i_n,c,j}`; the ring case is `c = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScrollBasisElement {
    indices: Vec<u32>,
    pub c: u32,
    pub j: u32,
}

impl ScrollBasisElement {
    /// Builds an element, sorting the index multiset and checking bounds.
    pub fn new(inv: &ScrollInvariants, mut indices: Vec<u32>, c: u32, j: u32) -> Result<Self, RingError> {
        indices.sort_unstable();
        let x = Self { indices, c, j };
        if x.indices.iter().any(|&i| !inv.contains_index(i)) || j > x.j_bound(inv) {
            return Err(RingError::InvalidElement(format!("{x}")));
        }
        Ok(x)
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn degree(&self) -> u32 {
        self.indices.len() as u32
    }

    /// Largest allowed `j`: `e_{i_1} + ... + e_{i_n} + c`.
    pub fn j_bound(&self, inv: &ScrollInvariants) -> u32 {
        self.indices.iter().map(|&i| inv.e_of(i)).sum::<u32>() + self.c
    }
}

impl fmt::Display for ScrollBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b_{{")?;
        for i in &self.indices {
            write!(f, "{i},")?;
        }
        if self.c > 0 {
            write!(f, "{},", self.c)?;
        }
        write!(f, "{}}}", self.j)
    }
}

/// Product in `R_e`, or the action of `R_e` on `M_{e,c}` when one factor has `c > 0`.
pub fn scroll_multiply(x: &ScrollBasisElement, y: &ScrollBasisElement) -> Result<ScrollBasisElement, RingError> {
    if x.c > 0 && y.c > 0 {
        return Err(RingError::BothModuleElements);
    }
    let mut indices = x.indices.clone();
    indices.extend_from_slice(&y.indices);
    indices.sort_unstable();
    Ok(ScrollBasisElement { indices, c: x.c + y.c, j: x.j + y.j })
}

/// The surjection `R_b̄ -> R_{a,b}`, `b_{i_1..i_n,j} -> b_{n, i_1+..+i_n, j}`.
pub fn scroll_projection(x: &ScrollBasisElement, a: u32, b: u32) -> Result<SegreBasisElement, RingError> {
    let n = x.degree();
    let i: u32 = x.indices.iter().sum();
    if x.c != 0 || x.indices.iter().any(|&k| k > a) || x.j > n * b {
        return Err(RingError::InvalidElement(format!("{x} is not in the scroll ring for a={a}, b={b}")));
    }
    Ok(SegreBasisElement { n, i, j: x.j })
}

/// Number of coordinates of a [`Weight`].
pub const WEIGHT_DIM: usize = 8;

/// Fine torus weight of a monomial. Segre weights use coordinates `[i, j]`;
/// scroll weights use one count per variable followed by `j`. Unused
/// coordinates stay zero.
pub type Weight = [i32; WEIGHT_DIM];

#[inline]
pub fn weight_add(x: &Weight, y: &Weight) -> Weight {
    let mut out = *x;
    for (o, v) in out.iter_mut().zip(y) {
        *o += v;
    }
    out
}

#[inline]
pub fn weight_sub(x: &Weight, y: &Weight) -> Weight {
    let mut out = *x;
    for (o, v) in out.iter_mut().zip(y) {
        *o -= v;
    }
    out
}

/// Which family a [`MonomialAlgebra`] belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraKind {
    Segre { a: u32, b: u32 },
    Scroll { inv: ScrollInvariants },
    ScrollModule { inv: ScrollInvariants, c: u32 },
}

/// A degree-one generator with its fine weight and bidegree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    /// `(i, j)`: `v_{(i,j)}` for Segre, `b_{i,j}` for scrolls.
    pub label: (u32, u32),
    pub weight: Weight,
    pub bidegree: Bidegree,
}

/// A graded semigroup algebra or module, possibly modulo two generators.
///
/// The degree-`n` basis is a finite set of weights; a generator acts by
/// adding its weight, and the product is zero when the sum leaves the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialAlgebra {
    kind: AlgebraKind,
    base_generators: Vec<Generator>,
    /// Indices into `base_generators` of the generators factored out.
    quotient: Option<(usize, usize)>,
    generators: Vec<Generator>,
}

impl MonomialAlgebra {
    /// The Segre ring `R_{a,b}`. Unlike [`segre_graded_basis`] this accepts
    /// `a > b`, which is handy for symmetry checks.
    pub fn segre(a: u32, b: u32) -> Result<Self, RingError> {
        if a < 1 || b < 1 {
            return Err(RingError::InvalidParameters(format!("need a, b >= 1, got a={a}, b={b}")));
        }
        let gens = (0..=a)
            .flat_map(|i| {
                (0..=b).map(move |j| {
                    let mut w = [0; WEIGHT_DIM];
                    w[0] = i as i32;
                    w[1] = j as i32;
                    Generator { label: (i, j), weight: w, bidegree: Bidegree::new(i, j) }
                })
            })
            .collect();
        Ok(Self::from_parts(AlgebraKind::Segre { a, b }, gens))
    }

    pub fn scroll(inv: ScrollInvariants) -> Self {
        let gens = scroll_generators(&inv);
        Self::from_parts(AlgebraKind::Scroll { inv }, gens)
    }

    /// The module `M_{e,c}` over the polynomial ring on the scroll's degree-one elements.
    pub fn scroll_module(inv: ScrollInvariants, c: u32) -> Self {
        let gens = scroll_generators(&inv);
        Self::from_parts(AlgebraKind::ScrollModule { inv, c }, gens)
    }

    fn from_parts(kind: AlgebraKind, gens: Vec<Generator>) -> Self {
        Self { kind, generators: gens.clone(), base_generators: gens, quotient: None }
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn is_quotient(&self) -> bool {
        self.quotient.is_some()
    }

    /// Degree-one generators acting on the algebra, in lexicographic label order.
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Generators of the unreduced algebra.
    pub fn base_generators(&self) -> &[Generator] {
        &self.base_generators
    }

    /// Short tag used in cache keys and reports, e.g. `segre` or `scroll`.
    pub fn family(&self) -> &'static str {
        match self.kind {
            AlgebraKind::Segre { .. } => "segre",
            AlgebraKind::Scroll { .. } => "scroll",
            AlgebraKind::ScrollModule { .. } => "scroll_module",
        }
    }

    /// Parameter string used in cache file names, e.g. `segre-3-4`.
    pub fn descriptor(&self) -> String {
        let join = |e: &[u32]| e.iter().map(u32::to_string).collect::<Vec<_>>().join(".");
        match &self.kind {
            AlgebraKind::Segre { a, b } => format!("segre-{a}-{b}"),
            AlgebraKind::Scroll { inv } => format!("scroll-e{}-o{}", join(&inv.e), inv.offset),
            AlgebraKind::ScrollModule { inv, c } => {
                format!("scroll_module-e{}-o{}-c{c}", join(&inv.e), inv.offset)
            }
        }
    }

    /// Number of meaningful coordinates in this algebra's weights.
    pub fn weight_dim(&self) -> usize {
        match &self.kind {
            AlgebraKind::Segre { .. } => 2,
            AlgebraKind::Scroll { inv } | AlgebraKind::ScrollModule { inv, .. } => inv.ell() + 1,
        }
    }

    /// Membership of `w` in the degree-`n` basis.
    pub fn contains(&self, n: u32, w: &Weight) -> bool {
        if !self.base_contains(n, w) {
            return false;
        }
        match self.quotient {
            None => true,
            Some((x, y)) => {
                n == 0
                    || !(self.base_contains(n - 1, &weight_sub(w, &self.base_generators[x].weight))
                        || self.base_contains(n - 1, &weight_sub(w, &self.base_generators[y].weight)))
            }
        }
    }

    fn base_contains(&self, n: u32, w: &Weight) -> bool {
        match &self.kind {
            AlgebraKind::Segre { a, b } => {
                w[2..].iter().all(|&x| x == 0)
                    && (0..=(n * a) as i32).contains(&w[0])
                    && (0..=(n * b) as i32).contains(&w[1])
            }
            AlgebraKind::Scroll { inv } => scroll_contains(inv, 0, n, w),
            AlgebraKind::ScrollModule { inv, c } => scroll_contains(inv, *c, n, w),
        }
    }

    /// Degree-`n` basis, sorted.
    pub fn basis(&self, n: u32) -> Vec<Weight> {
        let mut out: Vec<Weight> = match &self.kind {
            AlgebraKind::Segre { a, b } => (0..=n * a)
                .flat_map(|i| {
                    (0..=n * b).map(move |j| {
                        let mut w = [0; WEIGHT_DIM];
                        w[0] = i as i32;
                        w[1] = j as i32;
                        w
                    })
                })
                .collect(),
            AlgebraKind::Scroll { inv } => scroll_basis(inv, 0, n),
            AlgebraKind::ScrollModule { inv, c } => scroll_basis(inv, *c, n),
        };
        if self.quotient.is_some() {
            out.retain(|w| self.contains(n, w));
        }
        out.sort_unstable();
        out
    }

    pub fn dim(&self, n: u32) -> usize {
        self.basis(n).len()
    }

    /// Bidegree of a basis weight. For scrolls this is
    /// `(sum of index * count, j)` using the scroll's own variable numbering.
    pub fn bidegree(&self, w: &Weight) -> Bidegree {
        match &self.kind {
            AlgebraKind::Segre { .. } => Bidegree::new(w[0] as u32, w[1] as u32),
            AlgebraKind::Scroll { inv } | AlgebraKind::ScrollModule { inv, .. } => {
                let ell = inv.ell();
                let u1: i32 = (0..ell).map(|k| (k as i32 + inv.offset as i32) * w[k]).sum();
                Bidegree::new(u1 as u32, w[ell] as u32)
            }
        }
    }

    /// Bidegree of the generator with the given label.
    pub fn generator_bidegree(&self, label: (u32, u32)) -> Result<Bidegree, RingError> {
        self.base_generators
            .iter()
            .find(|g| g.label == label)
            .map(|g| g.bidegree)
            .ok_or_else(|| RingError::InvalidElement(format!("generator {label:?}")))
    }

    /// The two "opposite corner" generators: `v_{(0,0)}`, `v_{(a,b)}` for
    /// Segre, and the first and last `b_{i,j}` for scrolls.
    pub fn corner_generators(&self) -> (usize, usize) {
        (0, self.base_generators.len() - 1)
    }

    /// The quotient by the two corner generators, together with the check
    /// that they form a regular sequence through degree `max_deg`.
    ///
    /// For a regular sequence of linear forms the Koszul cohomology of the
    /// algebra agrees with that of the quotient over the remaining
    /// generators, weight by weight, which is what makes large strands
    /// tractable.
    pub fn reduce_by_corners(&self, max_deg: u32) -> Result<Self, RingError> {
        let (x, y) = self.corner_generators();
        self.reduce_by(x, y, max_deg)
    }

    pub fn reduce_by(&self, x: usize, y: usize, max_deg: u32) -> Result<Self, RingError> {
        if self.quotient.is_some() {
            return Err(RingError::InvalidParameters("algebra is already a quotient".into()));
        }
        let n = self.base_generators.len();
        if x >= n || y >= n || x == y {
            return Err(RingError::InvalidParameters(format!("bad generator pair ({x},{y})")));
        }
        let generators = self
            .base_generators
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != x && *k != y)
            .map(|(_, g)| g.clone())
            .collect();
        let reduced = Self {
            kind: self.kind.clone(),
            base_generators: self.base_generators.clone(),
            quotient: Some((x, y)),
            generators,
        };
        // The algebra is torsion free over its generators, so x is regular
        // and y is regular modulo x exactly when the Hilbert function drops
        // by the second difference.
        let h = |d: i64| if d < 0 { 0 } else { self.dim(d as u32) as i64 };
        for d in 0..=max_deg as i64 {
            let expected = h(d) - 2 * h(d - 1) + h(d - 2);
            if reduced.dim(d as u32) as i64 != expected {
                let (gx, gy) = (&self.base_generators[x], &self.base_generators[y]);
                return Err(RingError::NotRegular(format!("{:?}, {:?}", gx.label, gy.label), d as usize));
            }
        }
        Ok(reduced)
    }
}

fn scroll_generators(inv: &ScrollInvariants) -> Vec<Generator> {
    let ell = inv.ell();
    inv.indices()
        .enumerate()
        .flat_map(|(k, i)| {
            (0..=inv.e_of(i)).map(move |j| {
                let mut w = [0; WEIGHT_DIM];
                w[k] = 1;
                w[ell] = j as i32;
                Generator {
                    label: (i, j),
                    weight: w,
                    bidegree: Bidegree::new(i, j),
                }
            })
        })
        .collect()
}

fn scroll_contains(inv: &ScrollInvariants, c: u32, n: u32, w: &Weight) -> bool {
    let ell = inv.ell();
    if w[..ell].iter().any(|&x| x < 0) || w[ell + 1..].iter().any(|&x| x != 0) {
        return false;
    }
    if w[..ell].iter().sum::<i32>() != n as i32 {
        return false;
    }
    let bound: i32 = w[..ell].iter().zip(&inv.e).map(|(&k, &e)| k * e as i32).sum::<i32>() + c as i32;
    (0..=bound).contains(&w[ell])
}

fn scroll_basis(inv: &ScrollInvariants, c: u32, n: u32) -> Vec<Weight> {
    let ell = inv.ell();
    let mut out = Vec::new();
    let mut counts = vec![0u32; ell];
    compositions(n, 0, &mut counts, &mut |counts| {
        let bound: u32 = counts.iter().zip(&inv.e).map(|(k, e)| k * e).sum::<u32>() + c;
        for j in 0..=bound {
            let mut w = [0; WEIGHT_DIM];
            for (x, &k) in w.iter_mut().zip(counts.iter()) {
                *x = k as i32;
            }
            w[ell] = j as i32;
            out.push(w);
        }
    });
    out
}

/// Calls `f` on every vector of `counts.len()` non-negative integers summing to `n`.
fn compositions(n: u32, pos: usize, counts: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if pos + 1 == counts.len() {
        counts[pos] = n;
        f(counts);
        return;
    }
    for k in 0..=n {
        counts[pos] = k;
        compositions(n - k, pos + 1, counts, f);
    }
}

/// Weight of a scroll basis element.
pub fn scroll_weight(inv: &ScrollInvariants, x: &ScrollBasisElement) -> Weight {
    let ell = inv.ell();
    let mut w = [0; WEIGHT_DIM];
    for &i in x.indices() {
        w[(i - inv.offset) as usize] += 1;
    }
    w[ell] = x.j as i32;
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segre_basis_sizes() {
        assert_eq!(segre_graded_basis(1, 1, 1).unwrap().len(), 4);
        assert_eq!(segre_graded_basis(3, 4, 0).unwrap(), vec![SegreBasisElement::unit()]);
        assert_eq!(segre_graded_basis(3, 4, 2).unwrap().len(), 63);
        assert!(segre_graded_basis(4, 3, 1).is_err());
        assert!(segre_graded_basis(0, 3, 1).is_err());
    }

    #[test]
    fn segre_products() {
        let x = SegreBasisElement { n: 1, i: 0, j: 0 };
        let y = SegreBasisElement { n: 1, i: 3, j: 4 };
        assert_eq!(segre_multiply(x, y), SegreBasisElement { n: 2, i: 3, j: 4 });
        assert_eq!(segre_multiply(SegreBasisElement::unit(), y), y);
        let p = segre_multiply(SegreBasisElement { n: 1, i: 1, j: 0 }, SegreBasisElement { n: 1, i: 0, j: 1 });
        assert_eq!(p, SegreBasisElement { n: 2, i: 1, j: 1 });
    }

    #[test]
    fn scroll_example_product() {
        let inv = ScrollInvariants::new(vec![2, 3, 3], 1).unwrap();
        let x = ScrollBasisElement::new(&inv, vec![1], 0, 1).unwrap();
        let y = ScrollBasisElement::new(&inv, vec![1], 0, 2).unwrap();
        let xy = scroll_multiply(&x, &y).unwrap();
        assert_eq!(xy, ScrollBasisElement::new(&inv, vec![1, 1], 0, 3).unwrap());

        let x = ScrollBasisElement::new(&inv, vec![1], 0, 0).unwrap();
        let y = ScrollBasisElement::new(&inv, vec![2], 0, 3).unwrap();
        let xy = scroll_multiply(&x, &y).unwrap();
        assert_eq!(xy.indices(), &[1, 2]);
        assert!(xy.j <= xy.j_bound(&inv));
        assert_eq!(xy.j_bound(&inv), 5);
    }

    #[test]
    fn module_products() {
        let inv = ScrollInvariants::new(vec![1, 2], 1).unwrap();
        let m = ScrollBasisElement::new(&inv, vec![], 2, 1).unwrap();
        let r = ScrollBasisElement::new(&inv, vec![2], 0, 2).unwrap();
        let unit = ScrollBasisElement::new(&inv, vec![], 0, 0).unwrap();
        assert_eq!(scroll_multiply(&unit, &m).unwrap(), m);
        let rm = scroll_multiply(&r, &m).unwrap();
        assert_eq!((rm.c, rm.j), (2, 3));
        assert_eq!(scroll_multiply(&m, &m), Err(RingError::BothModuleElements));
        assert!(ScrollBasisElement::new(&inv, vec![], 2, 3).is_err());
    }

    #[test]
    fn projection() {
        let inv = ScrollInvariants::segre_scroll(3, 3).unwrap();
        let x = ScrollBasisElement::new(&inv, vec![0, 0], 0, 5).unwrap();
        assert_eq!(scroll_projection(&x, 3, 3).unwrap(), SegreBasisElement { n: 2, i: 0, j: 5 });
        let x = ScrollBasisElement::new(&inv, vec![1, 2], 0, 4).unwrap();
        assert_eq!(scroll_projection(&x, 3, 3).unwrap(), SegreBasisElement { n: 2, i: 3, j: 4 });
    }

    #[test]
    fn generator_bidegrees() {
        let s = MonomialAlgebra::segre(3, 4).unwrap();
        assert_eq!(s.generator_bidegree((3, 4)).unwrap(), Bidegree::new(3, 4));
        assert_eq!(s.generators().len(), 20);
        let sc = MonomialAlgebra::scroll(ScrollInvariants::segre_scroll(3, 4).unwrap());
        for g in sc.generators() {
            assert_eq!(g.bidegree, Bidegree::new(g.label.0, g.label.1));
            assert_eq!(sc.bidegree(&g.weight), g.bidegree);
        }
    }

    #[test]
    fn hilbert_functions() {
        let s = MonomialAlgebra::segre(3, 3).unwrap();
        assert_eq!(s.dim(2), 49);
        let inv = ScrollInvariants::new(vec![2, 3, 3], 1).unwrap();
        let r = MonomialAlgebra::scroll(inv.clone());
        // degree one: 3 + 4 + 4 dots; degree two: six rows of lengths 5,6,6,7,7,7
        assert_eq!(r.dim(1), 11);
        assert_eq!(r.dim(2), 38);
        assert_eq!(MonomialAlgebra::scroll_module(inv, 2).dim(0), 3);
    }

    #[test]
    fn corner_quotients() {
        let s = MonomialAlgebra::segre(3, 3).unwrap().reduce_by_corners(4).unwrap();
        assert_eq!(s.generators().len(), 14);
        assert_eq!(s.dim(1), 14);
        assert_eq!(s.dim(2), 18);
        assert_eq!(s.dim(3), 18);
        let t = MonomialAlgebra::segre(3, 4).unwrap().reduce_by_corners(4).unwrap();
        assert_eq!((t.dim(1), t.dim(2)), (18, 24));
        // two generators in the same row are not a regular sequence
        let s = MonomialAlgebra::segre(2, 2).unwrap();
        assert!(matches!(s.reduce_by(0, 1, 3), Err(RingError::NotRegular(..))));
    }
}
