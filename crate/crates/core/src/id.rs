//! Interpolative decomposition `A ≈ A[:, j] P` of matrices.
//!
//! All four methods share one kernel: a rank-`K` column-pivoted QR of a
//! (possibly sketched) matrix `Y`, after which `P` is assembled as
//! `[I  R11⁻¹ R12] Πᵀ`. Sketched methods run the kernel on `Y = S A` and
//! return column indices of `A`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cpqr_with_tol, solve_upper, ColumnSource, DenseMatrix, DEFAULT_RANK_TOL};
use crate::sketch::{CountSketchMode, CountSketchOp, GaussianOp, SrftOp};

/// Default oversampling `L - K` for sketched IDs.
pub const DEFAULT_OVERSAMPLING: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdMethod {
    Deterministic,
    Gaussian,
    Srft,
    CountSketch,
}

impl IdMethod {
    pub const ALL: [IdMethod; 4] = [
        IdMethod::Deterministic,
        IdMethod::Gaussian,
        IdMethod::Srft,
        IdMethod::CountSketch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdMethod::Deterministic => "deterministic",
            IdMethod::Gaussian => "gaussian",
            IdMethod::Srft => "srft",
            IdMethod::CountSketch => "countsketch",
        }
    }

    pub fn is_sketched(self) -> bool {
        self != IdMethod::Deterministic
    }
}

impl fmt::Display for IdMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdMethod::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::arg(format!("unknown matrix ID method '{s}'")))
    }
}

/// Rank-`K` interpolative decomposition `A ≈ A[:, j] P`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpolativeDecomposition {
    /// `K x R` coefficients; `p[:, j]` is exactly the identity.
    pub p: DenseMatrix,
    /// Selected column indices (0-based, distinct).
    pub j: Vec<usize>,
    pub k: usize,
    pub method: IdMethod,
    /// Rank of the factored matrix (the sketch, for sketched methods)
    /// detected among the first `K` pivots.
    pub numerical_rank: usize,
    /// Set when small pivots were floored before the triangular solve.
    pub rank_deficient: bool,
}

impl InterpolativeDecomposition {
    pub fn cols(&self) -> usize {
        self.p.cols()
    }

    /// Largest `|p_ij|`. Pivoted QR does not guarantee the bound of 2 that
    /// strong rank-revealing QR would, so this is reported, not enforced.
    pub fn max_abs_p(&self) -> f64 {
        self.p.max_abs()
    }

    /// `√(4K(R−K)+1)`, the spectral-norm bound on `P` for a strong
    /// rank-revealing factorization.
    pub fn p_norm_bound(&self) -> f64 {
        let (k, r) = (self.k as f64, self.cols() as f64);
        (4.0 * k * (r - k) + 1.0).sqrt()
    }

    /// `A[:, j] P` for an operand with the ID's column count.
    pub fn reconstruct<A: ColumnSource>(&self, a: &A) -> Result<DenseMatrix> {
        self.check_operand(a)?;
        let mut c = DenseMatrix::zeros(a.nrows(), self.k);
        for (t, &col) in self.j.iter().enumerate() {
            let dst = c.col_mut(t);
            a.for_each_in_col(col, |i, v| dst[i] += v);
        }
        c.matmul(&self.p)
    }

    /// `x ↦ A[:, j] (P x) − A x`, the residual applied to a vector.
    pub fn residual_apply<A: ColumnSource>(&self, a: &A, x: &[f64]) -> Vec<f64> {
        let px = self.p.matvec(x);
        let mut y = vec![0.0; a.nrows()];
        for (&col, &w) in self.j.iter().zip(&px) {
            if w != 0.0 {
                a.for_each_in_col(col, |i, v| y[i] += w * v);
            }
        }
        let ax = a.matvec(x);
        y.iter_mut().zip(ax).for_each(|(yi, v)| *yi -= v);
        y
    }

    /// Adjoint of [`Self::residual_apply`]: `y ↦ Pᵀ (A[:, j]ᵀ y) − Aᵀ y`.
    pub fn residual_apply_t<A: ColumnSource>(&self, a: &A, y: &[f64]) -> Vec<f64> {
        let mut cy = vec![0.0; self.k];
        for (t, &col) in self.j.iter().enumerate() {
            let mut s = 0.0;
            a.for_each_in_col(col, |i, v| s += v * y[i]);
            cy[t] = s;
        }
        let mut out = self.p.matvec_t(&cy);
        let aty = a.matvec_t(y);
        out.iter_mut().zip(aty).for_each(|(o, v)| *o -= v);
        out
    }

    fn check_operand<A: ColumnSource>(&self, a: &A) -> Result<()> {
        if a.ncols() != self.cols() {
            return Err(Error::dims(format!(
                "ID has {} columns, operand has {}",
                self.cols(),
                a.ncols()
            )));
        }
        Ok(())
    }
}

/// Coefficients `P = [I  R11⁻¹ R12] Πᵀ` from a `K x R` upper-trapezoidal
/// factor whose columns are in pivoted order.
///
/// Diagonal entries of `R11` below `rank_tol·|r_00|` are floored at that
/// value (keeping their sign) so the solve always succeeds; the returned flag
/// reports whether that happened.
pub(crate) fn coefficients(r: &DenseMatrix, perm: &[usize], rank_tol: f64) -> Result<(DenseMatrix, bool)> {
    let k = r.rows();
    let cols = r.cols();
    let mut r11 = r.submatrix(0, k, 0, k);
    let r12 = r.submatrix(0, k, k, cols);
    let r00 = r11[(0, 0)].abs();

    let mut floored = false;
    let t = if r00 == 0.0 {
        floored = true;
        DenseMatrix::zeros(k, cols - k)
    } else {
        let floor = rank_tol * r00;
        for i in 0..k {
            let d = r11[(i, i)];
            if d.abs() < floor || d == 0.0 {
                r11[(i, i)] = if d < 0.0 { -floor } else { floor };
                floored = true;
            }
        }
        if floor == 0.0 && floored {
            return Err(Error::Numerical("zero pivot with rank_tol = 0".into()));
        }
        solve_upper(&r11, &r12)?
    };
    if !t.is_finite() {
        return Err(Error::Numerical("interpolation coefficients are not finite".into()));
    }

    let mut p = DenseMatrix::zeros(k, cols);
    for (i, &c) in perm.iter().enumerate() {
        if i < k {
            p[(i, c)] = 1.0;
        } else {
            p.col_mut(c).copy_from_slice(t.col(i - k));
        }
    }
    Ok((p, floored))
}

fn id_of(y: &DenseMatrix, k: usize, rank_tol: f64, method: IdMethod) -> Result<InterpolativeDecomposition> {
    if !y.is_finite() {
        return Err(Error::arg("input contains non-finite entries"));
    }
    let qr = cpqr_with_tol(y, k, rank_tol)?;
    let (p, rank_deficient) = coefficients(&qr.r, &qr.perm, rank_tol)?;
    Ok(InterpolativeDecomposition {
        p,
        j: qr.perm[..k].to_vec(),
        k,
        method,
        numerical_rank: qr.numerical_rank,
        rank_deficient,
    })
}

/// Deterministic ID from a rank-`k` column-pivoted QR of `a`.
pub fn matrix_id(a: &DenseMatrix, k: usize) -> Result<InterpolativeDecomposition> {
    matrix_id_with_tol(a, k, DEFAULT_RANK_TOL)
}

pub fn matrix_id_with_tol(a: &DenseMatrix, k: usize, rank_tol: f64) -> Result<InterpolativeDecomposition> {
    id_of(a, k, rank_tol, IdMethod::Deterministic)
}

/// ID computed from an already realized sketch `y = S A`; the returned
/// indices refer to columns of `A`.
pub fn id_from_sketch(y: &DenseMatrix, k: usize, method: IdMethod) -> Result<InterpolativeDecomposition> {
    id_of(y, k, DEFAULT_RANK_TOL, method)
}

pub(crate) fn check_sketch_dims<A: ColumnSource>(a: &A, k: usize, l: usize) -> Result<()> {
    if k == 0 || k > a.ncols() {
        return Err(Error::arg(format!(
            "target rank {k} must lie in 1..={}",
            a.ncols()
        )));
    }
    if l < k {
        return Err(Error::arg(format!("sketch size L = {l} is below the rank K = {k}")));
    }
    if l >= a.nrows() {
        return Err(Error::arg(format!(
            "sketch size L = {l} must be below the row count {}; use the deterministic ID instead",
            a.nrows()
        )));
    }
    Ok(())
}

/// Realizes the `L x R` sketch used by `method` (the input itself, densified,
/// for the deterministic method).
pub fn sketch_matrix<A: ColumnSource>(a: &A, method: IdMethod, l: usize, seed: u64) -> Result<DenseMatrix> {
    let rows = a.nrows();
    match method {
        IdMethod::Deterministic => Ok(a.dense_block(0, a.ncols())),
        IdMethod::Gaussian => GaussianOp::new(rows, l, seed)?.apply(a),
        IdMethod::Srft => SrftOp::new(rows, l, seed)?.apply(a),
        IdMethod::CountSketch => CountSketchOp::new(rows, l, CountSketchMode::Surjective, seed)?.apply(a),
    }
}

/// Rank-`k` ID of `a` by `method`. `l` and `seed` are ignored by the
/// deterministic method.
pub fn interpolative_decomposition<A: ColumnSource>(
    a: &A,
    k: usize,
    method: IdMethod,
    l: usize,
    seed: u64,
) -> Result<InterpolativeDecomposition> {
    if method.is_sketched() {
        check_sketch_dims(a, k, l)?;
    }
    let y = sketch_matrix(a, method, l, seed)?;
    id_of(&y, k, DEFAULT_RANK_TOL, method)
}

/// ID from a surjective CountSketch `Y = S A`, costing `O(nnz(A) + L²R)`.
pub fn countsketch_id<A: ColumnSource>(a: &A, k: usize, l: usize, seed: u64) -> Result<InterpolativeDecomposition> {
    interpolative_decomposition(a, k, IdMethod::CountSketch, l, seed)
}

pub fn gaussian_id<A: ColumnSource>(a: &A, k: usize, l: usize, seed: u64) -> Result<InterpolativeDecomposition> {
    interpolative_decomposition(a, k, IdMethod::Gaussian, l, seed)
}

/// SRFT-sketched ID; sparse inputs are densified in column blocks.
pub fn srft_id<A: ColumnSource>(a: &A, k: usize, l: usize, seed: u64) -> Result<InterpolativeDecomposition> {
    interpolative_decomposition(a, k, IdMethod::Srft, l, seed)
}
