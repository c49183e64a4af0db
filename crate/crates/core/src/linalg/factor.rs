use serde::{Deserialize, Serialize};

use super::{DenseMatrix, SparseMatrix};
use crate::error::Result;

/// Column-wise read access shared by dense and sparse operands.
///
/// Sketches only ever stream over stored entries column by column, which is
/// what makes their cost proportional to `nnz`.
pub trait ColumnSource {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// Number of stored entries (all entries for dense storage).
    fn stored(&self) -> usize;
    /// Calls `f(row, value)` for every stored entry of column `j`.
    fn for_each_in_col<F: FnMut(usize, f64)>(&self, j: usize, f: F);

    fn matvec(&self, x: &[f64]) -> Vec<f64>;
    fn matvec_t(&self, y: &[f64]) -> Vec<f64>;

    /// Densified columns `c0..c1`.
    fn dense_block(&self, c0: usize, c1: usize) -> DenseMatrix;
}

impl ColumnSource for DenseMatrix {
    fn nrows(&self) -> usize {
        self.rows()
    }
    fn ncols(&self) -> usize {
        self.cols()
    }
    fn stored(&self) -> usize {
        self.rows() * self.cols()
    }
    #[inline]
    fn for_each_in_col<F: FnMut(usize, f64)>(&self, j: usize, mut f: F) {
        for (i, &v) in self.col(j).iter().enumerate() {
            f(i, v);
        }
    }
    fn matvec(&self, x: &[f64]) -> Vec<f64> {
        DenseMatrix::matvec(self, x)
    }
    fn matvec_t(&self, y: &[f64]) -> Vec<f64> {
        DenseMatrix::matvec_t(self, y)
    }
    fn dense_block(&self, c0: usize, c1: usize) -> DenseMatrix {
        self.submatrix(0, self.rows(), c0, c1)
    }
}

impl ColumnSource for SparseMatrix {
    fn nrows(&self) -> usize {
        self.rows()
    }
    fn ncols(&self) -> usize {
        self.cols()
    }
    fn stored(&self) -> usize {
        self.nnz()
    }
    #[inline]
    fn for_each_in_col<F: FnMut(usize, f64)>(&self, j: usize, mut f: F) {
        let (ri, vs) = self.col(j);
        for (&i, &v) in ri.iter().zip(vs) {
            f(i, v);
        }
    }
    fn matvec(&self, x: &[f64]) -> Vec<f64> {
        SparseMatrix::matvec(self, x)
    }
    fn matvec_t(&self, y: &[f64]) -> Vec<f64> {
        SparseMatrix::matvec_t(self, y)
    }
    fn dense_block(&self, c0: usize, c1: usize) -> DenseMatrix {
        self.dense_columns(c0, c1)
    }
}

/// A matrix operand stored either densely or in CSC form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "storage", rename_all = "lowercase")]
pub enum Factor {
    Dense(DenseMatrix),
    Sparse(SparseMatrix),
}

impl Factor {
    pub fn is_sparse(&self) -> bool {
        matches!(self, Factor::Sparse(_))
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            Factor::Dense(d) => d.clone(),
            Factor::Sparse(s) => s.to_dense(),
        }
    }

    /// `selfᵀ self`, using the sparse kernel when applicable.
    pub fn gram(&self) -> DenseMatrix {
        match self {
            Factor::Dense(d) => d.t_matmul(d).expect("square gram"),
            Factor::Sparse(s) => s.gram(),
        }
    }

    /// `selfᵀ other` for two operands with the same row count.
    pub fn cross_gram(&self, other: &Factor) -> Result<DenseMatrix> {
        match (self, other) {
            (Factor::Dense(a), Factor::Dense(b)) => a.t_matmul(b),
            (Factor::Sparse(a), b) => {
                let bd = b.to_dense();
                Ok(a.transpose().spmm(&bd)?)
            }
            (Factor::Dense(a), Factor::Sparse(b)) => Ok(b.transpose().spmm(a)?.transpose()),
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Factor {
        match self {
            Factor::Dense(d) => Factor::Dense(d.select_columns(idx)),
            Factor::Sparse(s) => Factor::Sparse(s.select_columns(idx)),
        }
    }

    pub fn scale_columns(&mut self, scales: &[f64]) {
        match self {
            Factor::Dense(d) => d.scale_columns(scales),
            Factor::Sparse(s) => s.scale_columns(scales),
        }
    }

    /// Euclidean norm of each column.
    pub fn column_norms(&self) -> Vec<f64> {
        match self {
            Factor::Dense(d) => (0..d.cols()).map(|j| super::dense::norm2(d.col(j))).collect(),
            Factor::Sparse(s) => (0..s.cols()).map(|j| super::dense::norm2(s.col(j).1)).collect(),
        }
    }
}

impl From<DenseMatrix> for Factor {
    fn from(d: DenseMatrix) -> Self {
        Factor::Dense(d)
    }
}

impl From<SparseMatrix> for Factor {
    fn from(s: SparseMatrix) -> Self {
        Factor::Sparse(s)
    }
}

impl ColumnSource for Factor {
    fn nrows(&self) -> usize {
        match self {
            Factor::Dense(d) => d.rows(),
            Factor::Sparse(s) => s.rows(),
        }
    }
    fn ncols(&self) -> usize {
        match self {
            Factor::Dense(d) => d.cols(),
            Factor::Sparse(s) => s.cols(),
        }
    }
    fn stored(&self) -> usize {
        match self {
            Factor::Dense(d) => d.stored(),
            Factor::Sparse(s) => s.stored(),
        }
    }
    #[inline]
    fn for_each_in_col<F: FnMut(usize, f64)>(&self, j: usize, f: F) {
        match self {
            Factor::Dense(d) => d.for_each_in_col(j, f),
            Factor::Sparse(s) => s.for_each_in_col(j, f),
        }
    }
    fn matvec(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Factor::Dense(d) => d.matvec(x),
            Factor::Sparse(s) => s.matvec(x),
        }
    }
    fn matvec_t(&self, y: &[f64]) -> Vec<f64> {
        match self {
            Factor::Dense(d) => d.matvec_t(y),
            Factor::Sparse(s) => s.matvec_t(y),
        }
    }
    fn dense_block(&self, c0: usize, c1: usize) -> DenseMatrix {
        match self {
            Factor::Dense(d) => d.dense_block(c0, c1),
            Factor::Sparse(s) => s.dense_block(c0, c1),
        }
    }
}
