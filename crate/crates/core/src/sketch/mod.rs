//! Implicit sketching operators.
//!
//! Every operator stores only its random hashes, signs, sample indices or
//! seed; `apply` streams over the stored entries of the input and never
//! materializes the sketching matrix. `to_dense` materializes it for
//! verification.

mod countsketch;
mod gaussian;
mod srft;
mod tensorsketch;

pub use countsketch::{apply_countsketch, CountSketchMode, CountSketchOp};
pub use gaussian::{apply_gaussian, apply_gaussian_kr, GaussianKrOp, GaussianOp};
pub use srft::{apply_srft, SrftOp, SRFT_BLOCK_COLS};
pub use tensorsketch::{apply_tensorsketch, TensorSketchOp};

use crate::error::{Error, Result};
use crate::linalg::ColumnSource;

/// Calls `f(linear, idx)` for every multi-index of `dims`, with the first mode
/// varying slowest. This is the row order of the Khatri-Rao product
/// `A(1) ⊙ A(2) ⊙ … ⊙ A(N)` used throughout the crate.
pub fn for_each_multi_index(dims: &[usize], mut f: impl FnMut(usize, &[usize])) {
    let total: usize = dims.iter().product();
    if dims.is_empty() || total == 0 {
        return;
    }
    let mut idx = vec![0usize; dims.len()];
    for linear in 0..total {
        f(linear, &idx);
        for n in (0..dims.len()).rev() {
            idx[n] += 1;
            if idx[n] < dims[n] {
                break;
            }
            idx[n] = 0;
        }
    }
}

/// Common shape validation for per-mode operands.
pub(crate) fn check_modes<F: ColumnSource>(dims: &[usize], factors: &[F], scale: &[f64]) -> Result<usize> {
    if factors.is_empty() {
        return Err(Error::arg("at least one factor matrix is required"));
    }
    if factors.len() != dims.len() {
        return Err(Error::dims(format!(
            "operator has {} modes but {} factors were given",
            dims.len(),
            factors.len()
        )));
    }
    let r = factors[0].ncols();
    for (n, (f, &d)) in factors.iter().zip(dims).enumerate() {
        if f.ncols() != r {
            return Err(Error::dims(format!(
                "factor {n} has {} columns, expected {r}",
                f.ncols()
            )));
        }
        if f.nrows() != d {
            return Err(Error::dims(format!(
                "factor {n} has {} rows, operator expects {d}",
                f.nrows()
            )));
        }
    }
    if scale.len() != r {
        return Err(Error::dims(format!(
            "scale has length {}, expected {r}",
            scale.len()
        )));
    }
    Ok(r)
}
