//! CP tensors `X = Σ_r λ_r a(1)_r ∘ … ∘ a(N)_r` and their interpolative
//! decomposition.
//!
//! `M = (A(1) ⊙ … ⊙ A(N)) diag(λ)` denotes the `Ĩ x R` matrix whose columns
//! are the vectorized rank-1 terms (`Ĩ = Π I_n`). It is never formed by the
//! library code paths; [`CpTensor::m_matrix`] exists for verification.

mod gram;
pub mod io;
mod tensor_id;

pub use gram::{cp_diff_norm, cp_norm, gram_hadamard, hadamard_of_grams};
pub(crate) use tensor_id::check_sketch;
pub use tensor_id::{
    gaussian_tensor_id, gram_tensor_id, sketch_tensor, tensor_id, tensor_id_from_sketch, tensorsketch_id,
    TensorIdMethod, TensorIdResult,
};

use crate::error::{Error, Result};
use crate::linalg::{ColumnSource, DenseMatrix, Factor, SparseMatrix};
use crate::sketch::for_each_multi_index;

#[derive(Debug, Clone, PartialEq)]
pub struct CpTensor {
    svalues: Vec<f64>,
    factors: Vec<Factor>,
    zero_columns: Vec<usize>,
}

impl CpTensor {
    /// Builds a CP tensor, rescaling every factor column to unit norm and
    /// folding the norms (and any negative sign) into `svalues`.
    ///
    /// A term with a zero column in some mode gets `λ_r = 0` and the unit
    /// vector `e_0` in place of that column; its index is listed by
    /// [`CpTensor::zero_columns`].
    pub fn new(svalues: Vec<f64>, factors: Vec<Factor>) -> Result<Self> {
        let r = check_shapes(&svalues, &factors)?;
        let mut lambda = svalues;
        let mut zero = vec![false; r];
        let mut out = Vec::with_capacity(factors.len());
        for f in factors {
            let (unit, norms) = unit_columns(f);
            for (c, &nrm) in norms.iter().enumerate() {
                if nrm == 0.0 {
                    zero[c] = true;
                } else {
                    lambda[c] *= nrm;
                }
            }
            out.push(unit);
        }
        let zero_columns: Vec<usize> = (0..r).filter(|&c| zero[c]).collect();
        for &c in &zero_columns {
            lambda[c] = 0.0;
        }
        if lambda.iter().any(|v| !v.is_finite()) {
            return Err(Error::arg("s-values overflow after normalization"));
        }
        if lambda.iter().any(|&v| v < 0.0) {
            let signs: Vec<f64> = lambda.iter().map(|&v| if v < 0.0 { -1.0 } else { 1.0 }).collect();
            out[0].scale_columns(&signs);
            lambda.iter_mut().for_each(|v| *v = v.abs());
        }
        Ok(Self {
            svalues: lambda,
            factors: out,
            zero_columns,
        })
    }

    /// Wraps factors whose columns are already unit norm; `svalues` may
    /// carry signs. Used for tensors assembled from columns of a normalized
    /// tensor.
    pub(crate) fn from_unit_columns(svalues: Vec<f64>, factors: Vec<Factor>) -> Result<Self> {
        check_shapes(&svalues, &factors)?;
        Ok(Self {
            svalues,
            factors,
            zero_columns: Vec::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.factors.len()
    }

    pub fn rank(&self) -> usize {
        self.svalues.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.nrows()).collect()
    }

    /// `Π I_n`, or `None` on overflow.
    pub fn total_size(&self) -> Option<usize> {
        self.factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.nrows()))
    }

    pub fn svalues(&self) -> &[f64] {
        &self.svalues
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor(&self, n: usize) -> &Factor {
        &self.factors[n]
    }

    /// Terms that had a zero column in some mode at construction.
    pub fn zero_columns(&self) -> &[usize] {
        &self.zero_columns
    }

    /// Total stored entries over all factors.
    pub fn nnz(&self) -> usize {
        self.factors.iter().map(|f| f.stored()).sum()
    }

    /// Keeps the terms listed in `idx` (in that order) with new s-values.
    pub fn select_terms(&self, idx: &[usize], svalues: Vec<f64>) -> Result<CpTensor> {
        if let Some(&bad) = idx.iter().find(|&&c| c >= self.rank()) {
            return Err(Error::arg(format!("term index {bad} out of range")));
        }
        CpTensor::from_unit_columns(svalues, self.factors.iter().map(|f| f.select_columns(idx)).collect())
    }

    /// Densified `M`, `Ĩ x R`, rows in Khatri-Rao order (first mode slowest).
    pub fn m_matrix(&self) -> Result<DenseMatrix> {
        let total = self
            .total_size()
            .ok_or_else(|| Error::arg("tensor too large to densify"))?;
        let dense: Vec<DenseMatrix> = self.factors.iter().map(|f| f.to_dense()).collect();
        let mut m = DenseMatrix::zeros(total, self.rank());
        for (r, &lam) in self.svalues.iter().enumerate() {
            let col = m.col_mut(r);
            for_each_multi_index(&self.dims(), |lin, idx| {
                col[lin] = lam * idx.iter().zip(&dense).map(|(&i, a)| a[(i, r)]).product::<f64>();
            });
        }
        Ok(m)
    }

    /// The full tensor, vectorized in Khatri-Rao order.
    pub fn to_dense_vec(&self) -> Result<Vec<f64>> {
        let m = self.m_matrix()?;
        Ok((0..m.rows()).map(|i| (0..m.cols()).map(|r| m[(i, r)]).sum()).collect())
    }
}

fn check_shapes(svalues: &[f64], factors: &[Factor]) -> Result<usize> {
    if factors.is_empty() {
        return Err(Error::arg("a CP tensor needs at least one factor"));
    }
    let r = svalues.len();
    for (n, f) in factors.iter().enumerate() {
        if f.ncols() != r {
            return Err(Error::dims(format!(
                "factor {} has {} columns but there are {r} s-values",
                n + 1,
                f.ncols()
            )));
        }
        if f.nrows() == 0 {
            return Err(Error::arg(format!("factor {} has no rows", n + 1)));
        }
    }
    if svalues.iter().any(|v| !v.is_finite()) {
        return Err(Error::arg("s-values must be finite"));
    }
    Ok(r)
}

/// Unit-norm copy of `f` and the original column norms. Zero columns become
/// `e_0`.
fn unit_columns(f: Factor) -> (Factor, Vec<f64>) {
    let norms = f.column_norms();
    let inv: Vec<f64> = norms.iter().map(|&n| if n > 0.0 { 1.0 / n } else { 1.0 }).collect();
    let mut f = f;
    f.scale_columns(&inv);
    if norms.iter().all(|&n| n > 0.0) {
        return (f, norms);
    }
    let f = match f {
        Factor::Dense(mut d) => {
            for (c, &n) in norms.iter().enumerate() {
                if n == 0.0 {
                    d.col_mut(c)[0] = 1.0;
                }
            }
            Factor::Dense(d)
        }
        Factor::Sparse(s) => {
            let mut trip = Vec::with_capacity(s.nnz() + 1);
            for c in 0..s.cols() {
                if norms[c] == 0.0 {
                    trip.push((0, c, 1.0));
                }
                let (ri, vs) = s.col(c);
                trip.extend(ri.iter().zip(vs).map(|(&i, &v)| (i, c, v)));
            }
            Factor::Sparse(SparseMatrix::from_triplets(s.rows(), s.cols(), &trip).expect("valid triplets"))
        }
    };
    (f, norms)
}
