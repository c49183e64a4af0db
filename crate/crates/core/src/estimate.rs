//! Randomized spectral-norm estimation by power iteration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::id::InterpolativeDecomposition;
use crate::linalg::{dot, norm2, ColumnSource};
use crate::rng;

pub const DEFAULT_ITERS: usize = 10;
pub const DEFAULT_PROBES: usize = 2;

/// Relative tolerance of the adjoint consistency check.
const ADJOINT_TOL: f64 = 1e-10;

/// A lower estimate of a spectral norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub iterations: usize,
    pub probes: usize,
}

/// Estimates `‖B‖₂` for an operator given only through `apply` (`x ↦ Bx`,
/// with `x` of length `cols`) and `apply_adjoint` (`y ↦ Bᵀy`).
///
/// Each probe starts from an independent Gaussian vector, runs `iters` steps
/// of power iteration on `BᵀB` and reports `‖Bv‖/‖v‖` at the last iterate;
/// the estimate is the largest over probes and never exceeds `‖B‖₂`. Before
/// iterating, each probe checks `⟨Bx, y⟩ = ⟨x, Bᵀy⟩` on random vectors.
pub fn est_spectral_norm<F, G>(
    apply: F,
    apply_adjoint: G,
    cols: usize,
    iters: usize,
    probes: usize,
    seed: u64,
) -> Result<NormEstimate>
where
    F: Fn(&[f64]) -> Vec<f64>,
    G: Fn(&[f64]) -> Vec<f64>,
{
    est_spectral_norm_scaled(apply, apply_adjoint, cols, iters, probes, seed, 0.0)
}

/// [`est_spectral_norm`] for operators evaluated as differences of larger
/// terms, such as `A[:, j] P − A`.
///
/// `magnitude` bounds the norm of those terms; the adjoint check is then
/// relative to `magnitude·‖x‖·‖y‖` as well, so cancellation round-off in a
/// small residual is not mistaken for an inconsistent adjoint.
pub fn est_spectral_norm_scaled<F, G>(
    apply: F,
    apply_adjoint: G,
    cols: usize,
    iters: usize,
    probes: usize,
    seed: u64,
    magnitude: f64,
) -> Result<NormEstimate>
where
    F: Fn(&[f64]) -> Vec<f64>,
    G: Fn(&[f64]) -> Vec<f64>,
{
    if cols == 0 || probes == 0 {
        return Err(Error::arg("need at least one column and one probe"));
    }
    let mut best = 0.0f64;
    for probe in 0..probes {
        let mut g = rng::stream(seed, probe as u64);
        let mut v = rng::normal_vec(&mut g, cols);
        let bv = apply(&v);

        let y = rng::normal_vec(&mut g, bv.len());
        let bty = apply_adjoint(&y);
        if bty.len() != cols {
            return Err(Error::dims(format!(
                "adjoint returned length {}, expected {cols}",
                bty.len()
            )));
        }
        let lhs = dot(&bv, &y);
        let rhs = dot(&v, &bty);
        let scale = (norm2(&bv) * norm2(&y))
            .max(norm2(&v) * norm2(&bty))
            .max(magnitude * norm2(&v) * norm2(&y));
        if (lhs - rhs).abs() > ADJOINT_TOL * scale {
            return Err(Error::arg(format!(
                "operator and adjoint disagree: <Bx,y> = {lhs:e}, <x,B'y> = {rhs:e}"
            )));
        }

        let mut w = bv;
        for _ in 0..iters {
            let nw = norm2(&w);
            if nw == 0.0 {
                break;
            }
            v = apply_adjoint(&w);
            let nv = norm2(&v);
            if nv == 0.0 {
                break;
            }
            v.iter_mut().for_each(|e| *e /= nv);
            w = apply(&v);
        }
        let nv = norm2(&v);
        if nv > 0.0 {
            best = best.max(norm2(&w) / nv);
        }
    }
    if !best.is_finite() {
        return Err(Error::Numerical("norm estimate is not finite".into()));
    }
    Ok(NormEstimate {
        value: best,
        iterations: iters,
        probes,
    })
}

/// Estimated spectral norm of a matrix operand.
pub fn operand_norm<A: ColumnSource>(a: &A, iters: usize, probes: usize, seed: u64) -> Result<NormEstimate> {
    est_spectral_norm(|x| a.matvec(x), |y| a.matvec_t(y), a.ncols(), iters, probes, seed)
}

/// Estimated `‖A[:, j] P − A‖₂`, applying the residual without forming it.
pub fn id_residual_norm<A: ColumnSource>(
    a: &A,
    id: &InterpolativeDecomposition,
    iters: usize,
    probes: usize,
    seed: u64,
) -> Result<NormEstimate> {
    if a.ncols() != id.cols() {
        return Err(Error::dims("ID and operand column counts differ"));
    }
    let mut a_fro = 0.0;
    for c in 0..a.ncols() {
        a.for_each_in_col(c, |_, v| a_fro += v * v);
    }
    let magnitude = a_fro.sqrt() * (1.0 + id.p.frobenius_norm());
    est_spectral_norm_scaled(
        |x| id.residual_apply(a, x),
        |y| id.residual_apply_t(a, y),
        a.ncols(),
        iters,
        probes,
        seed,
        magnitude,
    )
}
