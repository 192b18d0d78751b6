//! Rank, kernels and homology over an exact field.

use rustc_hash::FxHashMap;

use super::field::Field;
use super::matrix::SparseMatrix;
use super::LinalgError;

/// Tuning knobs for [`rank_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankOptions {
    /// Components whose smaller side exceeds this use sparse elimination
    /// instead of a dense echelon form.
    pub sparse_threshold: usize,
}

impl Default for RankOptions {
    fn default() -> Self {
        Self { sparse_threshold: 2000 }
    }
}

type SparseVec<E> = Vec<(u32, E)>;

/// Rank of `m` over `field` with default options.
pub fn rank<F: Field>(field: &F, m: &SparseMatrix) -> usize {
    rank_with(field, m, RankOptions::default())
}

pub fn rank_with<F: Field>(field: &F, m: &SparseMatrix, opts: RankOptions) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let vectors = m.field_rows(field);
    rank_of_vectors(field, vectors, m.ncols(), opts)
}

/// Rank of a list of sparse field vectors with coordinates in `0..len`,
/// e.g. the output of [`kernel_basis`] together with other vectors.
pub fn vector_rank<F: Field>(field: &F, vectors: &[Vec<(usize, F::Elem)>], len: usize) -> usize {
    let vectors = vectors
        .iter()
        .map(|v| {
            let mut v: SparseVec<F::Elem> =
                v.iter().filter(|(_, x)| !field.is_zero(x)).map(|(c, x)| (*c as u32, x.clone())).collect();
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    rank_of_vectors(field, vectors, len, RankOptions::default())
}

/// Rank of a list of sparse vectors with coordinates in `0..len`.
pub(crate) fn rank_of_vectors<F: Field>(
    field: &F,
    vectors: Vec<SparseVec<F::Elem>>,
    len: usize,
    opts: RankOptions,
) -> usize {
    let (mut rank, vectors) = pre_eliminate(vectors, len);
    for (vecs, width) in split_components(vectors, len) {
        rank += component_rank(field, vecs, width, opts);
    }
    rank
}

/// Peels off vectors that are forced into (or out of) a basis.
///
/// A coordinate carried by a single vector makes that vector independent of
/// the rest; a vector with a single coordinate is a pivot that clears the
/// coordinate everywhere else. Returns the rank found this way and the
/// surviving vectors restricted to the surviving coordinates.
fn pre_eliminate<E: Clone>(vectors: Vec<SparseVec<E>>, len: usize) -> (usize, Vec<SparseVec<E>>) {
    let n = vectors.len();
    let mut occurs: Vec<Vec<u32>> = vec![Vec::new(); len];
    for (i, v) in vectors.iter().enumerate() {
        for &(c, _) in v {
            occurs[c as usize].push(i as u32);
        }
    }
    let mut coord_count: Vec<u32> = occurs.iter().map(|o| o.len() as u32).collect();
    let mut coord_live = vec![true; len];
    let mut vec_alive = vec![true; n];
    let mut vec_live: Vec<u32> = vectors.iter().map(|v| v.len() as u32).collect();

    let mut coord_queue: Vec<u32> = (0..len as u32).filter(|&c| coord_count[c as usize] == 1).collect();
    let mut vec_queue: Vec<u32> = (0..n as u32).filter(|&i| vec_live[i as usize] <= 1).collect();
    let mut rank = 0;

    loop {
        if let Some(i) = vec_queue.pop() {
            let i = i as usize;
            if !vec_alive[i] || vec_live[i] > 1 {
                continue;
            }
            vec_alive[i] = false;
            if vec_live[i] == 0 {
                continue;
            }
            rank += 1;
            let c = vectors[i]
                .iter()
                .map(|e| e.0 as usize)
                .find(|&c| coord_live[c])
                .expect("live coordinate");
            coord_live[c] = false;
            for &u in &occurs[c] {
                let u = u as usize;
                if vec_alive[u] {
                    vec_live[u] -= 1;
                    if vec_live[u] <= 1 {
                        vec_queue.push(u as u32);
                    }
                }
            }
        } else if let Some(c) = coord_queue.pop() {
            let c = c as usize;
            if !coord_live[c] || coord_count[c] != 1 {
                continue;
            }
            let Some(i) = occurs[c].iter().map(|&u| u as usize).find(|&u| vec_alive[u]) else {
                continue;
            };
            rank += 1;
            vec_alive[i] = false;
            coord_live[c] = false;
            for &(c2, _) in &vectors[i] {
                let c2 = c2 as usize;
                if coord_live[c2] {
                    coord_count[c2] -= 1;
                    if coord_count[c2] == 1 {
                        coord_queue.push(c2 as u32);
                    }
                }
            }
        } else {
            break;
        }
    }

    let rest = vectors
        .into_iter()
        .zip(vec_alive)
        .filter(|(_, alive)| *alive)
        .map(|(v, _)| v.into_iter().filter(|e| coord_live[e.0 as usize]).collect::<Vec<_>>())
        .filter(|v| !v.is_empty())
        .collect();
    (rank, rest)
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Groups vectors into blocks sharing no coordinate, renumbering coordinates
/// within each block. Blocks come out ordered by their smallest coordinate.
fn split_components<E>(vectors: Vec<SparseVec<E>>, len: usize) -> Vec<(Vec<SparseVec<E>>, usize)> {
    let mut uf = UnionFind::new(len);
    for v in &vectors {
        for w in v.windows(2) {
            uf.union(w[0].0, w[1].0);
        }
    }
    let mut block_of_root: FxHashMap<u32, usize> = FxHashMap::default();
    let mut local = vec![u32::MAX; len];
    let mut widths: Vec<usize> = Vec::new();
    let mut blocks: Vec<Vec<SparseVec<E>>> = Vec::new();
    let mut used = vec![false; len];
    for v in &vectors {
        for &(c, _) in v {
            used[c as usize] = true;
        }
    }
    for c in 0..len as u32 {
        if !used[c as usize] {
            continue;
        }
        let r = uf.find(c);
        let b = *block_of_root.entry(r).or_insert_with(|| {
            widths.push(0);
            blocks.push(Vec::new());
            widths.len() - 1
        });
        local[c as usize] = widths[b] as u32;
        widths[b] += 1;
    }
    for v in vectors {
        let b = block_of_root[&uf.find(v[0].0)];
        blocks[b].push(v.into_iter().map(|(c, e)| (local[c as usize], e)).collect());
    }
    blocks.into_iter().zip(widths).collect()
}

fn component_rank<F: Field>(field: &F, vectors: Vec<SparseVec<F::Elem>>, width: usize, opts: RankOptions) -> usize {
    let n = vectors.len();
    if n == 0 {
        return 0;
    }
    if n.min(width) > opts.sparse_threshold {
        return sparse_rank(field, vectors);
    }
    let dense: Vec<Vec<F::Elem>> = if width <= n {
        vectors.into_iter().map(|v| densify(field, &v, width)).collect()
    } else {
        // transpose so that dense vectors have the shorter length
        let mut cols = vec![vec![field.zero(); n]; width];
        for (i, v) in vectors.into_iter().enumerate() {
            for (c, e) in v {
                cols[c as usize][i] = e;
            }
        }
        cols
    };
    field.dense_rank(dense)
}

fn densify<F: Field>(field: &F, v: &[(u32, F::Elem)], width: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); width];
    for (c, e) in v {
        out[*c as usize] = e.clone();
    }
    out
}

/// Gaussian elimination on sparse vectors keyed by leading coordinate.
fn sparse_rank<F: Field>(field: &F, mut vectors: Vec<SparseVec<F::Elem>>) -> usize {
    vectors.sort_by_key(Vec::len);
    let mut pivots: FxHashMap<u32, SparseVec<F::Elem>> = FxHashMap::default();
    for mut v in vectors {
        while let Some((lead, coef)) = v.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => v = axpy(field, &v, &field.neg(&coef), p),
                None => {
                    let inv = field.inv(&coef);
                    let normalized = v.into_iter().map(|(c, e)| (c, field.mul(&e, &inv))).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `x + a * y` for sorted sparse vectors.
fn axpy<F: Field>(field: &F, x: &[(u32, F::Elem)], a: &F::Elem, y: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, field.mul(a, &y[j].1)));
            j += 1;
        } else {
            let e = field.add(&x[i].1, &field.mul(a, &y[j].1));
            if !field.is_zero(&e) {
                out.push((x[i].0, e));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A basis of the right kernel `{x : m x = 0}` as sparse vectors
/// `(column, value)`.
///
/// The basis is the standard one attached to the reduced row echelon form:
/// each non-pivot column contributes one vector with a 1 in that column.
/// Vectors are listed in order of their free column.
pub fn kernel_basis<F: Field>(field: &F, m: &SparseMatrix) -> Vec<Vec<(usize, F::Elem)>> {
    let ncols = m.ncols();
    let rows: Vec<SparseVec<F::Elem>> = m.field_rows(field).into_iter().filter(|r| !r.is_empty()).collect();

    let mut uf = UnionFind::new(ncols);
    for r in &rows {
        for w in r.windows(2) {
            uf.union(w[0].0, w[1].0);
        }
    }
    let mut members: FxHashMap<u32, Vec<u32>> = FxHashMap::default();
    let mut touched = vec![false; ncols];
    for r in &rows {
        for &(c, _) in r {
            touched[c as usize] = true;
        }
    }
    for c in 0..ncols as u32 {
        if touched[c as usize] {
            members.entry(uf.find(c)).or_default().push(c);
        }
    }
    let mut rows_of: FxHashMap<u32, Vec<SparseVec<F::Elem>>> = FxHashMap::default();
    for r in rows {
        rows_of.entry(uf.find(r[0].0)).or_default().push(r);
    }

    let mut out: Vec<(usize, Vec<(usize, F::Elem)>)> = Vec::new();
    for (c, _) in touched.iter().enumerate().filter(|t| !*t.1) {
        out.push((c, vec![(c, field.one())]));
    }
    for (root, cols) in members {
        let mut local: FxHashMap<u32, usize> = FxHashMap::default();
        for (i, &c) in cols.iter().enumerate() {
            local.insert(c, i);
        }
        let dense: Vec<Vec<F::Elem>> = rows_of
            .remove(&root)
            .unwrap_or_default()
            .into_iter()
            .map(|r| {
                let mut d = vec![field.zero(); cols.len()];
                for (c, e) in r {
                    d[local[&c]] = e;
                }
                d
            })
            .collect();
        for v in dense_kernel(field, dense, cols.len()) {
            let free = cols[v[0].0] as usize;
            let mut global: Vec<(usize, F::Elem)> = v.into_iter().map(|(i, e)| (cols[i] as usize, e)).collect();
            global.sort_by_key(|e| e.0);
            out.push((free, global));
        }
    }
    out.sort_by_key(|e| e.0);
    out.into_iter().map(|e| e.1).collect()
}

/// Kernel of a dense matrix given by rows. Each returned vector lists its
/// free column first.
fn dense_kernel<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>, width: usize) -> Vec<Vec<(usize, F::Elem)>> {
    let (rref, pivot_cols) = reduced_echelon(field, rows, width);
    let mut is_pivot = vec![false; width];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    (0..width)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![(f, field.one())];
            for (row, &pc) in rref.iter().zip(&pivot_cols) {
                if !field.is_zero(&row[f]) {
                    v.push((pc, field.neg(&row[f])));
                }
            }
            v
        })
        .collect()
}

/// Reduced row echelon form; returns the nonzero rows with their pivot
/// columns, sorted by pivot column.
pub(crate) fn reduced_echelon<F: Field>(
    field: &F,
    rows: Vec<Vec<F::Elem>>,
    width: usize,
) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut pivots: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    for mut v in rows {
        debug_assert_eq!(v.len(), width);
        for (col, p) in &pivots {
            if !field.is_zero(&v[*col]) {
                let f = v[*col].clone();
                field.sub_scaled(&mut v[*col..], &f, &p[*col..]);
            }
        }
        if let Some(col) = v.iter().position(|x| !field.is_zero(x)) {
            let inv = field.inv(&v[col]);
            for x in v[col..].iter_mut() {
                *x = field.mul(x, &inv);
            }
            pivots.push((col, v));
        }
    }
    pivots.sort_by_key(|p| p.0);
    // back substitution
    for i in (0..pivots.len()).rev() {
        let (col, p) = pivots[i].clone();
        for (_, q) in pivots[..i].iter_mut() {
            if !field.is_zero(&q[col]) {
                let f = q[col].clone();
                field.sub_scaled(&mut q[col..], &f, &p[col..]);
            }
        }
    }
    let cols = pivots.iter().map(|p| p.0).collect();
    (pivots.into_iter().map(|p| p.1).collect(), cols)
}

/// Dimension of `ker(d_out) / im(d_in)` at the middle term of
/// `C_{i+1} --d_in--> C_i --d_out--> C_{i-1}`.
///
/// Fails with [`LinalgError::CompositionNonzero`] if `d_out * d_in` does not
/// vanish over `field`.
pub fn homology_dim<F: Field>(field: &F, d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize, LinalgError> {
    homology_dim_with(field, d_in, d_out, RankOptions::default())
}

pub fn homology_dim_with<F: Field>(
    field: &F,
    d_in: &SparseMatrix,
    d_out: &SparseMatrix,
    opts: RankOptions,
) -> Result<usize, LinalgError> {
    let comp = d_out.mul(d_in)?;
    if !comp.is_zero_in(field) {
        return Err(LinalgError::CompositionNonzero { nonzero_entries: comp.nnz() });
    }
    let mid = d_out.ncols();
    Ok(mid - rank_with(field, d_out, opts) - rank_with(field, d_in, opts))
}
