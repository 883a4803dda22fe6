//! Exact rational scalars and the sparse linear algebra every homology
//! computation reduces to.

mod echelon;
mod matrix;
mod scalar;
mod vector;

pub use echelon::{dense_rank, Echelon, Insert};
pub use matrix::{Basis, BlockMatrix};
pub use scalar::{ExactScalar, ParseScalarError};
pub use vector::SparseVec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("bases do not match")]
    BasisMismatch,
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular (rank {rank} < {size})")]
    Singular { rank: usize, size: usize },
    #[error("vectors are linearly dependent (rank {rank} < {count})")]
    Dependent { rank: usize, count: usize },
}

/// A linearly independent family of vectors in a labelled ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient: Basis,
    vectors: Vec<SparseVec>,
}

impl SubspaceBasis {
    /// Checks independence by an exact rank computation.
    pub fn new(ambient: Basis, vectors: Vec<SparseVec>) -> Result<Self, LinAlgError> {
        let r = rank_of_vectors(ambient.len(), &vectors)?;
        if r != vectors.len() {
            return Err(LinAlgError::Dependent { rank: r, count: vectors.len() });
        }
        Ok(SubspaceBasis { ambient, vectors })
    }

    pub(crate) fn trusted(ambient: Basis, vectors: Vec<SparseVec>) -> Self {
        SubspaceBasis { ambient, vectors }
    }

    pub fn empty(ambient: Basis) -> Self {
        SubspaceBasis { ambient, vectors: Vec::new() }
    }

    pub fn ambient(&self) -> &Basis {
        &self.ambient
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut e = Echelon::new(self.ambient.len());
        for w in &self.vectors {
            e.insert(w);
        }
        e.contains(v)
    }

    /// The vectors as the columns of a matrix into the ambient space.
    pub fn as_matrix(&self) -> BlockMatrix {
        BlockMatrix::from_columns(
            self.ambient.clone(),
            Basis::indexed("v", self.vectors.len()),
            self.vectors.clone(),
        )
        .expect("subspace vectors lie in the ambient space")
    }
}

fn rank_of_vectors(dim: usize, vectors: &[SparseVec]) -> Result<usize, LinAlgError> {
    let mut e = Echelon::new(dim);
    for v in vectors {
        if let Some(i) = v.max_index() {
            if i >= dim {
                return Err(LinAlgError::IndexOutOfRange { index: i, len: dim });
            }
        }
        e.insert(v);
    }
    Ok(e.rank())
}

/// Exact rank over the rationals.
pub fn rank(m: &BlockMatrix) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    // Small, well-filled blocks go through the dense routine.
    if m.fill_ratio() > 0.25 && m.nrows() * m.ncols() <= 1 << 16 {
        let mut data = vec![vec![ExactScalar::zero(); m.ncols()]; m.nrows()];
        for (i, j, x) in m.triplets() {
            data[i][j] = x.clone();
        }
        return dense_rank(m.nrows(), m.ncols(), &mut data);
    }
    rank_sparse(m)
}

/// Rank through the sparse echelon path only.
pub fn rank_sparse(m: &BlockMatrix) -> usize {
    let mut e = Echelon::new(m.nrows());
    for c in m.columns() {
        e.insert(c);
        if e.rank() == m.nrows() {
            break;
        }
    }
    e.rank()
}

/// Rank of the span of arbitrary vectors of length `dim`.
pub fn rank_vectors<'a, I: IntoIterator<Item = &'a SparseVec>>(dim: usize, vectors: I) -> usize {
    let mut e = Echelon::new(dim);
    for v in vectors {
        e.insert(v);
        if e.rank() == dim {
            break;
        }
    }
    e.rank()
}

/// Basis of `{v : m v = 0}`, one vector per dependent column.
pub fn kernel_basis(m: &BlockMatrix) -> SubspaceBasis {
    let mut e = Echelon::with_tracking(m.nrows());
    let mut kernel = Vec::new();
    for c in m.columns() {
        if let Insert::Dependent(Some(rel)) = e.insert(c) {
            kernel.push(rel);
        }
    }
    SubspaceBasis::trusted(m.cols().clone(), kernel)
}

/// Basis of the column space, made of the independent original columns.
pub fn image_basis(m: &BlockMatrix) -> SubspaceBasis {
    let cols = pivot_columns(m);
    let vectors = cols.iter().map(|&j| m.column(j).clone()).collect();
    SubspaceBasis::trusted(m.rows().clone(), vectors)
}

/// Indices of the columns that extend the span when scanned left to right.
pub fn pivot_columns(m: &BlockMatrix) -> Vec<usize> {
    let mut e = Echelon::new(m.nrows());
    let mut out = Vec::new();
    for (j, c) in m.columns().iter().enumerate() {
        if let Insert::Independent(_) = e.insert(c) {
            out.push(j);
        }
    }
    out
}

/// `span(a) ⊆ span(b)`.
pub fn subspace_contains(b: &SubspaceBasis, a: &SubspaceBasis) -> Result<bool, LinAlgError> {
    if !a.ambient.same_as(&b.ambient) {
        return Err(LinAlgError::BasisMismatch);
    }
    let mut e = Echelon::new(b.ambient.len());
    for v in &b.vectors {
        e.insert(v);
    }
    let base = e.rank();
    for v in &a.vectors {
        e.insert(v);
        if e.rank() > base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality of spans, by containment in both directions.
pub fn subspace_equal(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<bool, LinAlgError> {
    Ok(subspace_contains(b, a)? && subspace_contains(a, b)?)
}

/// Some exact `v` with `m v = b`, or `None` when the system is inconsistent.
pub fn solve(m: &BlockMatrix, b: &SparseVec) -> Result<Option<SparseVec>, LinAlgError> {
    Factorization::new(m).solve(b)
}

/// Exact inverse of a square nonsingular matrix.
pub fn invert(m: &BlockMatrix) -> Result<BlockMatrix, LinAlgError> {
    if m.nrows() != m.ncols() {
        return Err(LinAlgError::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let mut f = Factorization::new(m);
    if f.rank() < m.nrows() {
        return Err(LinAlgError::Singular { rank: f.rank(), size: m.nrows() });
    }
    let columns = (0..m.nrows())
        .map(|i| f.solve(&SparseVec::unit(i)).map(|v| v.expect("nonsingular")))
        .collect::<Result<Vec<_>, _>>()?;
    BlockMatrix::from_columns(m.cols().clone(), m.rows().clone(), columns)
}

/// A reusable elimination of a matrix's columns, for repeated solves.
pub struct Factorization {
    rows: usize,
    echelon: Echelon,
}

impl Factorization {
    pub fn new(m: &BlockMatrix) -> Self {
        let mut echelon = Echelon::with_tracking(m.nrows());
        for c in m.columns() {
            echelon.insert(c);
        }
        Factorization { rows: m.nrows(), echelon }
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn solve(&mut self, b: &SparseVec) -> Result<Option<SparseVec>, LinAlgError> {
        if let Some(i) = b.max_index() {
            if i >= self.rows {
                return Err(LinAlgError::IndexOutOfRange { index: i, len: self.rows });
            }
        }
        Ok(self.echelon.express(b))
    }
}
