use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{gram_hadamard, CpTensor};
use crate::error::{Error, Result};
use crate::id::coefficients;
use crate::linalg::{cpqr_with_tol, householder_qr_r, numerical_rank, DenseMatrix, DEFAULT_RANK_TOL};
use crate::sketch::{GaussianKrOp, TensorSketchOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorIdMethod {
    TensorSketch,
    Gaussian,
    Gram,
}

impl TensorIdMethod {
    pub const ALL: [TensorIdMethod; 3] = [TensorIdMethod::TensorSketch, TensorIdMethod::Gaussian, TensorIdMethod::Gram];

    pub fn name(self) -> &'static str {
        match self {
            TensorIdMethod::TensorSketch => "tensorsketch",
            TensorIdMethod::Gaussian => "gaussian",
            TensorIdMethod::Gram => "gram",
        }
    }

    pub fn is_sketched(self) -> bool {
        self != TensorIdMethod::Gram
    }
}

impl fmt::Display for TensorIdMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TensorIdMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TensorIdMethod::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::arg(format!("unknown tensor ID method '{s}'")))
    }
}

/// Rank-`K` tensor ID `X̂ = Σ_k λ̂_k a(1)_{j_k} ∘ … ∘ a(N)_{j_k}`.
#[derive(Debug, Clone)]
pub struct TensorIdResult {
    /// Terms `j` of the input with s-values `new_svalues`.
    pub reduced: CpTensor,
    pub j: Vec<usize>,
    /// `K x R` coefficients of the ID of `M`.
    pub p: DenseMatrix,
    /// `λ̂_k = λ_{j_k} Σ_r p_kr`; zero for `k ≥ numerical_rank`.
    pub new_svalues: Vec<f64>,
    pub method: TensorIdMethod,
    pub numerical_rank: usize,
    pub rank_deficient: bool,
}

fn check_rank(x: &CpTensor, k: usize) -> Result<()> {
    if k == 0 || k > x.rank() {
        return Err(Error::arg(format!("target rank {k} must lie in 1..={}", x.rank())));
    }
    Ok(())
}

pub(crate) fn check_sketch(x: &CpTensor, k: usize, l: usize, method: TensorIdMethod) -> Result<()> {
    check_rank(x, k)?;
    if l < k {
        return Err(Error::arg(format!("sketch size L = {l} is below the rank K = {k}")));
    }
    if method == TensorIdMethod::TensorSketch {
        if let Some(total) = x.total_size() {
            if l >= total {
                return Err(Error::arg(format!(
                    "sketch size L = {l} must be below the tensor size {total}"
                )));
            }
        }
    }
    Ok(())
}

/// The matrix the ID is computed from: `T M` (`L x R`) for TensorSketch,
/// `Ω M` for the Khatri-Rao Gaussian sketch, and `MᵀM` (`R x R`) for Gram.
pub fn sketch_tensor(x: &CpTensor, method: TensorIdMethod, l: usize, seed: u64) -> Result<DenseMatrix> {
    match method {
        TensorIdMethod::TensorSketch => TensorSketchOp::new(&x.dims(), l, seed)?.apply(x.factors(), x.svalues()),
        TensorIdMethod::Gaussian => GaussianKrOp::new(&x.dims(), l, seed)?.apply(x.factors(), x.svalues()),
        TensorIdMethod::Gram => Ok(gram_hadamard(x)),
    }
}

/// Completes a tensor ID from the output of [`sketch_tensor`].
pub fn tensor_id_from_sketch(x: &CpTensor, y: &DenseMatrix, k: usize, method: TensorIdMethod) -> Result<TensorIdResult> {
    check_rank(x, k)?;
    if y.cols() != x.rank() {
        return Err(Error::dims("sketch column count differs from the tensor rank"));
    }
    if !y.is_finite() {
        return Err(Error::Numerical("sketch contains non-finite entries".into()));
    }
    let tol = DEFAULT_RANK_TOL;
    let qr = cpqr_with_tol(y, k, tol)?;
    let j = qr.perm[..k].to_vec();
    let (p, rank_deficient, rank) = match method {
        TensorIdMethod::Gram => {
            // B = (G[:, j])ᵀ Π, whose unpivoted QR supplies the coefficients.
            let b = DenseMatrix::from_fn(k, y.cols(), |t, c| y[(j[t], qr.perm[c])]);
            let rt = householder_qr_r(&b);
            let (p, floored) = coefficients(&rt, &qr.perm, tol)?;
            (p, floored, numerical_rank(&rt, tol))
        }
        _ => {
            let (p, floored) = coefficients(&qr.r, &qr.perm, tol)?;
            (p, floored, qr.numerical_rank)
        }
    };

    let lam = x.svalues();
    let new_svalues: Vec<f64> = (0..k)
        .map(|t| {
            if t < rank {
                lam[j[t]] * (0..p.cols()).map(|c| p[(t, c)]).sum::<f64>()
            } else {
                0.0
            }
        })
        .collect();
    let reduced = x.select_terms(&j, new_svalues.clone())?;
    Ok(TensorIdResult {
        reduced,
        j,
        p,
        new_svalues,
        method,
        numerical_rank: rank,
        rank_deficient,
    })
}

/// Tensor ID by `method`; `l` and `seed` are ignored by the Gram method.
pub fn tensor_id(x: &CpTensor, k: usize, method: TensorIdMethod, l: usize, seed: u64) -> Result<TensorIdResult> {
    if method.is_sketched() {
        check_sketch(x, k, l, method)?;
    } else {
        check_rank(x, k)?;
    }
    let y = sketch_tensor(x, method, l, seed)?;
    tensor_id_from_sketch(x, &y, k, method)
}

/// Tensor ID from `Y = T M`, evaluated per mode with FFTs.
pub fn tensorsketch_id(x: &CpTensor, k: usize, l: usize, seed: u64) -> Result<TensorIdResult> {
    tensor_id(x, k, TensorIdMethod::TensorSketch, l, seed)
}

/// Tensor ID from the Khatri-Rao structured Gaussian sketch.
pub fn gaussian_tensor_id(x: &CpTensor, k: usize, l: usize, seed: u64) -> Result<TensorIdResult> {
    tensor_id(x, k, TensorIdMethod::Gaussian, l, seed)
}

/// Tensor ID from the Gram matrix `MᵀM`.
pub fn gram_tensor_id(x: &CpTensor, k: usize) -> Result<TensorIdResult> {
    tensor_id(x, k, TensorIdMethod::Gram, 0, 0)
}
