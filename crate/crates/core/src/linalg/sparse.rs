use serde::{Deserialize, Serialize};

use super::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Compressed sparse column matrix.
///
/// Row indices are strictly increasing within each column and no explicit
/// zeros are stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Validates raw CSC arrays. Explicit zeros are pruned.
    pub fn new(
        rows: usize,
        cols: usize,
        col_ptr: Vec<usize>,
        row_idx: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if col_ptr.len() != cols + 1 {
            return Err(Error::dims(format!(
                "col_ptr has length {}, expected {}",
                col_ptr.len(),
                cols + 1
            )));
        }
        if col_ptr[0] != 0 || col_ptr[cols] != row_idx.len() || row_idx.len() != values.len() {
            return Err(Error::arg("col_ptr must start at 0 and end at nnz"));
        }
        for j in 0..cols {
            let (s, e) = (col_ptr[j], col_ptr[j + 1]);
            if s > e {
                return Err(Error::arg(format!("col_ptr decreases at column {j}")));
            }
            for p in s..e {
                if row_idx[p] >= rows {
                    return Err(Error::arg(format!(
                        "row index {} out of range in column {j}",
                        row_idx[p]
                    )));
                }
                if p > s && row_idx[p] <= row_idx[p - 1] {
                    return Err(Error::arg(format!(
                        "row indices not strictly increasing in column {j}"
                    )));
                }
                if !values[p].is_finite() {
                    return Err(Error::arg(format!("non-finite value in column {j}")));
                }
            }
        }
        let mut m = Self {
            rows,
            cols,
            col_ptr,
            row_idx,
            values,
        };
        m.prune();
        Ok(m)
    }

    /// Builds a matrix from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut counts = vec![0usize; cols + 1];
        for &(i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::arg(format!(
                    "entry ({i}, {j}) outside {rows}x{cols}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::arg(format!("non-finite value at ({i}, {j})")));
            }
            counts[j + 1] += 1;
        }
        for j in 0..cols {
            counts[j + 1] += counts[j];
        }
        let mut next = counts.clone();
        let mut entries = vec![(0usize, 0.0f64); triplets.len()];
        for &(i, j, v) in triplets {
            entries[next[j]] = (i, v);
            next[j] += 1;
        }
        let mut col_ptr = Vec::with_capacity(cols + 1);
        let mut row_idx = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());
        col_ptr.push(0);
        for j in 0..cols {
            let col = &mut entries[counts[j]..counts[j + 1]];
            col.sort_by_key(|e| e.0);
            let mut k = 0;
            while k < col.len() {
                let (i, mut v) = col[k];
                k += 1;
                while k < col.len() && col[k].0 == i {
                    v += col[k].1;
                    k += 1;
                }
                if v != 0.0 {
                    row_idx.push(i);
                    values.push(v);
                }
            }
            col_ptr.push(row_idx.len());
        }
        Ok(Self {
            rows,
            cols,
            col_ptr,
            row_idx,
            values,
        })
    }

    pub fn from_dense(a: &DenseMatrix) -> Self {
        let mut col_ptr = vec![0];
        let mut row_idx = Vec::new();
        let mut values = Vec::new();
        for j in 0..a.cols() {
            for (i, &v) in a.col(j).iter().enumerate() {
                if v != 0.0 {
                    row_idx.push(i);
                    values.push(v);
                }
            }
            col_ptr.push(row_idx.len());
        }
        Self {
            rows: a.rows(),
            cols: a.cols(),
            col_ptr,
            row_idx,
            values,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            col_ptr: (0..=n).collect(),
            row_idx: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    fn prune(&mut self) {
        if self.values.iter().all(|&v| v != 0.0) {
            return;
        }
        let mut w = 0;
        let mut start = 0;
        for j in 0..self.cols {
            let end = self.col_ptr[j + 1];
            for p in start..end {
                if self.values[p] != 0.0 {
                    self.row_idx[w] = self.row_idx[p];
                    self.values[w] = self.values[p];
                    w += 1;
                }
            }
            start = end;
            self.col_ptr[j + 1] = w;
        }
        self.row_idx.truncate(w);
        self.values.truncate(w);
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn col_ptr(&self) -> &[usize] {
        &self.col_ptr
    }

    pub fn row_idx(&self) -> &[usize] {
        &self.row_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Row indices and values of column `j`.
    #[inline]
    pub fn col(&self, j: usize) -> (&[usize], &[f64]) {
        let (s, e) = (self.col_ptr[j], self.col_ptr[j + 1]);
        (&self.row_idx[s..e], &self.values[s..e])
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.rows, self.cols);
        for j in 0..self.cols {
            let (ri, vs) = self.col(j);
            let dst = out.col_mut(j);
            for (&i, &v) in ri.iter().zip(vs) {
                dst[i] = v;
            }
        }
        out
    }

    /// Dense block of columns `c0..c1`.
    pub fn dense_columns(&self, c0: usize, c1: usize) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.rows, c1 - c0);
        for j in c0..c1 {
            let (ri, vs) = self.col(j);
            let dst = out.col_mut(j - c0);
            for (&i, &v) in ri.iter().zip(vs) {
                dst[i] = v;
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut counts = vec![0usize; self.rows + 1];
        for &i in &self.row_idx {
            counts[i + 1] += 1;
        }
        for i in 0..self.rows {
            counts[i + 1] += counts[i];
        }
        let mut next = counts.clone();
        let mut row_idx = vec![0; self.nnz()];
        let mut values = vec![0.0; self.nnz()];
        for j in 0..self.cols {
            let (ri, vs) = self.col(j);
            for (&i, &v) in ri.iter().zip(vs) {
                row_idx[next[i]] = j;
                values[next[i]] = v;
                next[i] += 1;
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            col_ptr: counts,
            row_idx,
            values,
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "matvec dimension mismatch");
        let mut y = vec![0.0; self.rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0.0 {
                continue;
            }
            let (ri, vs) = self.col(j);
            for (&i, &v) in ri.iter().zip(vs) {
                y[i] += v * xj;
            }
        }
        y
    }

    pub fn matvec_t(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.rows, "matvec_t dimension mismatch");
        (0..self.cols)
            .map(|j| {
                let (ri, vs) = self.col(j);
                ri.iter().zip(vs).map(|(&i, &v)| v * y[i]).sum()
            })
            .collect()
    }

    /// Sparse-dense product `self * b`.
    pub fn spmm(&self, b: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != b.rows() {
            return Err(Error::dims(format!(
                "cannot multiply sparse {}x{} by {}x{}",
                self.rows,
                self.cols,
                b.rows(),
                b.cols()
            )));
        }
        let mut out = DenseMatrix::zeros(self.rows, b.cols());
        for c in 0..b.cols() {
            let bc = b.col(c);
            let dst = out.col_mut(c);
            for (j, &bj) in bc.iter().enumerate() {
                if bj == 0.0 {
                    continue;
                }
                let (ri, vs) = self.col(j);
                for (&i, &v) in ri.iter().zip(vs) {
                    dst[i] += v * bj;
                }
            }
        }
        Ok(out)
    }

    /// Gram matrix `selfᵀ self`, exploiting sparsity of both operands.
    pub fn gram(&self) -> DenseMatrix {
        let t = self.transpose();
        let mut g = DenseMatrix::zeros(self.cols, self.cols);
        // accumulate row outer products: row i of self is column i of t
        for i in 0..t.cols {
            let (cj, vs) = t.col(i);
            for (a, (&ja, &va)) in cj.iter().zip(vs).enumerate() {
                for (&jb, &vb) in cj[a..].iter().zip(&vs[a..]) {
                    g[(ja, jb)] += va * vb;
                }
            }
        }
        for j in 0..self.cols {
            for i in (j + 1)..self.cols {
                g[(i, j)] = g[(j, i)];
            }
        }
        g
    }

    pub fn select_columns(&self, idx: &[usize]) -> SparseMatrix {
        let mut col_ptr = vec![0];
        let mut row_idx = Vec::new();
        let mut values = Vec::new();
        for &j in idx {
            let (ri, vs) = self.col(j);
            row_idx.extend_from_slice(ri);
            values.extend_from_slice(vs);
            col_ptr.push(row_idx.len());
        }
        SparseMatrix {
            rows: self.rows,
            cols: idx.len(),
            col_ptr,
            row_idx,
            values,
        }
    }

    pub fn scale_columns(&mut self, scales: &[f64]) {
        assert_eq!(scales.len(), self.cols);
        for (j, &s) in scales.iter().enumerate() {
            let (a, b) = (self.col_ptr[j], self.col_ptr[j + 1]);
            self.values[a..b].iter_mut().for_each(|v| *v *= s);
        }
        self.prune();
    }

    pub fn frobenius_norm(&self) -> f64 {
        super::dense::norm2(&self.values)
    }
}
