use std::fmt;
use std::hash::Hash;

use rustc_hash::FxHashSet;

use super::field::Field;
use super::LinalgError;

/// A sparse matrix with exact integer entries.
///
/// Maps are stored in the column convention: the matrix of `f: A -> B`
/// has one row per basis element of `B` and one column per basis element
/// of `A`. Rows are kept sorted by column index and never hold zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        Self { nrows: n, ncols: n, rows: (0..n).map(|i| vec![(i as u32, 1)]).collect() }
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions
    /// are summed and zero sums dropped.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut t: Vec<(usize, usize, i64)> = triplets.into_iter().collect();
        t.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut rows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); nrows];
        for (r, c, v) in t {
            assert!(r < nrows && c < ncols, "entry ({r},{c}) outside {nrows}x{ncols}");
            let row = &mut rows[r];
            match row.last_mut() {
                Some(last) if last.0 == c as u32 => last.1 += v,
                _ => row.push((c as u32, v)),
            }
        }
        for row in &mut rows {
            row.retain(|&(_, v)| v != 0);
        }
        Self { nrows, ncols, rows }
    }

    /// Builds a matrix column by column from the images of domain basis elements.
    pub fn from_columns(nrows: usize, columns: &[Vec<(usize, i64)>]) -> Self {
        let triplets = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)));
        Self::from_triplets(nrows, columns.len(), triplets)
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let triplets = rows.iter().enumerate().flat_map(|(r, row)| {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            row.iter().enumerate().map(move |(c, &v)| (r, c, v))
        });
        Self::from_triplets(rows.len(), ncols, triplets)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(u32, i64)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.rows[r]
            .binary_search_by_key(&(c as u32), |e| e.0)
            .map_or(0, |i| self.rows[r][i].1)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// Iterates over `(row, col, value)` of stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c as usize, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.ncols];
        for (r, c, v) in self.entries() {
            rows[c].push((r as u32, v));
        }
        Self { nrows: self.ncols, ncols: self.nrows, rows }
    }

    /// Integer product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.ncols != rhs.nrows {
            return Err(LinalgError::DimensionMismatch {
                left: (self.nrows, self.ncols),
                right: (rhs.nrows, rhs.ncols),
            });
        }
        let mut out = Vec::with_capacity(self.nrows);
        let mut acc = vec![0i64; rhs.ncols];
        let mut seen = vec![false; rhs.ncols];
        let mut touched: Vec<u32> = Vec::new();
        for row in &self.rows {
            for &(k, v) in row {
                for &(c, w) in &rhs.rows[k as usize] {
                    if !seen[c as usize] {
                        seen[c as usize] = true;
                        touched.push(c);
                    }
                    acc[c as usize] += v * w;
                }
            }
            touched.sort_unstable();
            let mut r = Vec::with_capacity(touched.len());
            for &c in &touched {
                let x = std::mem::take(&mut acc[c as usize]);
                seen[c as usize] = false;
                if x != 0 {
                    r.push((c, x));
                }
            }
            touched.clear();
            out.push(r);
        }
        Ok(SparseMatrix { nrows: self.nrows, ncols: rhs.ncols, rows: out })
    }

    /// Applies the matrix to an integer vector.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.ncols);
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(c, v)| v * x[c as usize]).sum())
            .collect()
    }

    /// True when every entry vanishes after reduction into `field`.
    pub fn is_zero_in<F: Field>(&self, field: &F) -> bool {
        self.entries().all(|(_, _, v)| field.is_zero(&field.from_int(v)))
    }

    /// Entries mapped into `field`, zero images dropped, one sparse vector per row.
    pub(crate) fn field_rows<F: Field>(&self, field: &F) -> Vec<Vec<(u32, F::Elem)>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|&(c, v)| {
                        let e = field.from_int(v);
                        (!field.is_zero(&e)).then_some((c, e))
                    })
                    .collect()
            })
            .collect()
    }

    /// Stacks `blocks` along the diagonal.
    pub fn block_diagonal(blocks: &[SparseMatrix]) -> SparseMatrix {
        let nrows = blocks.iter().map(|b| b.nrows).sum();
        let ncols = blocks.iter().map(|b| b.ncols).sum();
        let mut rows = Vec::with_capacity(nrows);
        let mut col_off = 0u32;
        for b in blocks {
            for row in &b.rows {
                rows.push(row.iter().map(|&(c, v)| (c + col_off, v)).collect());
            }
            col_off += b.ncols as u32;
        }
        SparseMatrix { nrows, ncols, rows }
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}, nnz={})", self.nrows, self.ncols, self.nnz())?;
        if self.nrows * self.ncols <= 64 {
            for r in 0..self.nrows {
                let row: Vec<i64> = (0..self.ncols).map(|c| self.get(r, c)).collect();
                write!(f, "\n  {row:?}")?;
            }
        }
        Ok(())
    }
}

/// A [`SparseMatrix`] together with the basis labels of its codomain (rows)
/// and domain (columns).
#[derive(Clone, Debug)]
pub struct LabeledMatrix<R, C = R> {
    pub row_labels: Vec<R>,
    pub col_labels: Vec<C>,
    pub matrix: SparseMatrix,
}

impl<R: Clone + Eq + Hash, C: Clone + Eq + Hash> LabeledMatrix<R, C> {
    pub fn new(row_labels: Vec<R>, col_labels: Vec<C>, matrix: SparseMatrix) -> Result<Self, LinalgError> {
        if row_labels.len() != matrix.nrows() || col_labels.len() != matrix.ncols() {
            return Err(LinalgError::DimensionMismatch {
                left: (row_labels.len(), col_labels.len()),
                right: (matrix.nrows(), matrix.ncols()),
            });
        }
        if !all_distinct(&row_labels) || !all_distinct(&col_labels) {
            return Err(LinalgError::DuplicateLabel);
        }
        Ok(Self { row_labels, col_labels, matrix })
    }
}

fn all_distinct<T: Eq + Hash>(items: &[T]) -> bool {
    let mut seen = FxHashSet::default();
    items.iter().all(|x| seen.insert(x))
}
