use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::{ExactScalar, LinAlgError, SparseVec};

/// An ordered list of unique basis labels, shared between matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct Basis(Arc<Vec<String>>);

impl Basis {
    pub fn new(labels: Vec<String>) -> Result<Self, LinAlgError> {
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(LinAlgError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Basis(Arc::new(labels)))
    }

    /// Labels `e0, e1, ...`; used for anonymous coordinate spaces.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        Basis(Arc::new((0..n).map(|i| format!("{prefix}{i}")).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn same_as(&self, other: &Basis) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// Renders a vector over this basis as `c*label + ...`.
    pub fn render(&self, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (i, x)) in v.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            if x.is_one() {
                s.push_str(self.label(*i));
            } else {
                s.push_str(&format!("({x})*{}", self.label(*i)));
            }
        }
        s
    }
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// An exact matrix between two labelled bases, stored column-wise and sparse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    rows: Basis,
    cols: Basis,
    columns: Vec<SparseVec>,
}

impl BlockMatrix {
    pub fn from_columns(rows: Basis, cols: Basis, columns: Vec<SparseVec>) -> Result<Self, LinAlgError> {
        if columns.len() != cols.len() {
            return Err(LinAlgError::DimensionMismatch { expected: cols.len(), found: columns.len() });
        }
        for c in &columns {
            if let Some(i) = c.max_index() {
                if i >= rows.len() {
                    return Err(LinAlgError::IndexOutOfRange { index: i, len: rows.len() });
                }
            }
        }
        Ok(BlockMatrix { rows, cols, columns })
    }

    pub fn from_triplets<I>(rows: Basis, cols: Basis, triplets: I) -> Result<Self, LinAlgError>
    where
        I: IntoIterator<Item = (usize, usize, ExactScalar)>,
    {
        let mut buckets: Vec<Vec<(usize, ExactScalar)>> = vec![Vec::new(); cols.len()];
        for (i, j, x) in triplets {
            if j >= cols.len() {
                return Err(LinAlgError::IndexOutOfRange { index: j, len: cols.len() });
            }
            buckets[j].push((i, x));
        }
        let columns = buckets.into_iter().map(SparseVec::from_pairs).collect();
        Self::from_columns(rows, cols, columns)
    }

    /// Dense row-major input, mainly for tests and tiny blocks.
    pub fn from_dense(rows: Basis, cols: Basis, data: &[Vec<ExactScalar>]) -> Result<Self, LinAlgError> {
        if data.len() != rows.len() {
            return Err(LinAlgError::DimensionMismatch { expected: rows.len(), found: data.len() });
        }
        let mut trip = Vec::new();
        for (i, row) in data.iter().enumerate() {
            if row.len() != cols.len() {
                return Err(LinAlgError::DimensionMismatch { expected: cols.len(), found: row.len() });
            }
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    trip.push((i, j, x.clone()));
                }
            }
        }
        Self::from_triplets(rows, cols, trip)
    }

    pub fn zero(rows: Basis, cols: Basis) -> Self {
        let columns = vec![SparseVec::new(); cols.len()];
        BlockMatrix { rows, cols, columns }
    }

    pub fn identity(basis: Basis) -> Self {
        let columns = (0..basis.len()).map(SparseVec::unit).collect();
        BlockMatrix { rows: basis.clone(), cols: basis, columns }
    }

    pub fn diagonal(basis: Basis, diag: &[ExactScalar]) -> Result<Self, LinAlgError> {
        if diag.len() != basis.len() {
            return Err(LinAlgError::DimensionMismatch { expected: basis.len(), found: diag.len() });
        }
        let columns = diag
            .iter()
            .enumerate()
            .map(|(i, x)| SparseVec::from_pairs([(i, x.clone())]))
            .collect();
        Ok(BlockMatrix { rows: basis.clone(), cols: basis, columns })
    }

    pub fn rows(&self) -> &Basis {
        &self.rows
    }

    pub fn cols(&self) -> &Basis {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> ExactScalar {
        self.columns[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn fill_ratio(&self) -> f64 {
        let cells = self.nrows() * self.ncols();
        if cells == 0 {
            0.0
        } else {
            self.nnz() as f64 / cells as f64
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &ExactScalar)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, x)| (*i, j, x)))
    }

    pub fn transpose(&self) -> BlockMatrix {
        let mut buckets: Vec<Vec<(usize, ExactScalar)>> = vec![Vec::new(); self.nrows()];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c.iter() {
                buckets[*i].push((j, x.clone()));
            }
        }
        // Columns are visited in order, so each bucket is already sorted.
        let columns = buckets.into_iter().map(SparseVec::from_sorted_unchecked).collect();
        BlockMatrix { rows: self.cols.clone(), cols: self.rows.clone(), columns }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> Result<SparseVec, LinAlgError> {
        if let Some(i) = v.max_index() {
            if i >= self.ncols() {
                return Err(LinAlgError::IndexOutOfRange { index: i, len: self.ncols() });
            }
        }
        let mut acc = Vec::new();
        for (j, x) in v.iter() {
            for (i, y) in self.columns[*j].iter() {
                acc.push((*i, x * y));
            }
        }
        Ok(SparseVec::from_pairs(acc))
    }

    /// `self * rhs`; the inner bases must agree.
    pub fn mul(&self, rhs: &BlockMatrix) -> Result<BlockMatrix, LinAlgError> {
        if !self.cols.same_as(&rhs.rows) {
            return Err(LinAlgError::BasisMismatch);
        }
        let columns = rhs
            .columns
            .iter()
            .map(|c| self.mul_vec(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BlockMatrix { rows: self.rows.clone(), cols: rhs.cols.clone(), columns })
    }

    fn check_same_shape(&self, rhs: &BlockMatrix) -> Result<(), LinAlgError> {
        if !self.rows.same_as(&rhs.rows) || !self.cols.same_as(&rhs.cols) {
            return Err(LinAlgError::BasisMismatch);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &BlockMatrix) -> Result<BlockMatrix, LinAlgError> {
        self.check_same_shape(rhs)?;
        let columns = self.columns.iter().zip(&rhs.columns).map(|(a, b)| a.add(b)).collect();
        Ok(BlockMatrix { rows: self.rows.clone(), cols: self.cols.clone(), columns })
    }

    pub fn sub(&self, rhs: &BlockMatrix) -> Result<BlockMatrix, LinAlgError> {
        self.check_same_shape(rhs)?;
        let columns = self.columns.iter().zip(&rhs.columns).map(|(a, b)| a.sub(b)).collect();
        Ok(BlockMatrix { rows: self.rows.clone(), cols: self.cols.clone(), columns })
    }

    pub fn scale(&self, c: &ExactScalar) -> BlockMatrix {
        let columns = self.columns.iter().map(|v| v.scale(c)).collect();
        BlockMatrix { rows: self.rows.clone(), cols: self.cols.clone(), columns }
    }

    /// The l1 operator norm: the largest column sum of absolute values.
    pub fn max_column_l1_norm(&self) -> ExactScalar {
        self.columns.iter().map(SparseVec::l1_norm).max().unwrap_or_else(ExactScalar::zero)
    }

    /// Same matrix over reordered row/column bases. `row_perm[i]` is the new
    /// position of old row `i`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<BlockMatrix, LinAlgError> {
        let (m, n) = (self.nrows(), self.ncols());
        if row_perm.len() != m || col_perm.len() != n {
            return Err(LinAlgError::DimensionMismatch { expected: m, found: row_perm.len() });
        }
        let mut row_labels = vec![String::new(); m];
        for (old, &new) in row_perm.iter().enumerate() {
            row_labels[new] = self.rows.label(old).to_string();
        }
        let mut col_labels = vec![String::new(); n];
        for (old, &new) in col_perm.iter().enumerate() {
            col_labels[new] = self.cols.label(old).to_string();
        }
        let trip: Vec<_> = self.triplets().map(|(i, j, x)| (row_perm[i], col_perm[j], x.clone())).collect();
        Self::from_triplets(Basis::new(row_labels)?, Basis::new(col_labels)?, trip)
    }

    /// Restriction to a subset of columns (in the given order).
    pub fn select_columns(&self, cols: &[usize]) -> BlockMatrix {
        let labels = cols.iter().map(|&j| self.cols.label(j).to_string()).collect();
        let columns = cols.iter().map(|&j| self.columns[j].clone()).collect();
        BlockMatrix {
            rows: self.rows.clone(),
            cols: Basis(Arc::new(labels)),
            columns,
        }
    }
}
