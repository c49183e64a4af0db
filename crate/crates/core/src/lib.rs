//! Randomized interpolative decomposition (ID) of matrices and CP tensors.
//!
//! The crate provides:
//!
//! * dense and compressed-sparse-column matrices with the kernels the
//!   decompositions need ([`linalg`]): column-pivoted Householder QR,
//!   triangular solves and a Jacobi SVD used as an accuracy oracle;
//! * implicit sketch operators ([`sketch`]): CountSketch (standard and
//!   surjective), TensorSketch evaluated through FFTs, SRFT and Gaussian
//!   sketches, including the Khatri-Rao structured Gaussian sketch;
//! * matrix ID ([`id`]) computed deterministically or from a sketch;
//! * CP tensors and tensor ID ([`cp`]) by TensorSketch, Gaussian sketching
//!   or the Gram matrix;
//! * randomized spectral-norm estimation of residuals ([`estimate`]);
//! * synthetic data generators and the experiment runner behind the
//!   `sketchid` command-line tool ([`bench`]).

pub mod bench;
pub mod cp;
pub mod error;
pub mod estimate;
pub mod id;
pub mod linalg;
pub mod rng;
pub mod sketch;

pub use cp::{CpTensor, TensorIdMethod, TensorIdResult};
pub use error::{Error, Result};
pub use estimate::{est_spectral_norm, NormEstimate};
pub use id::{IdMethod, InterpolativeDecomposition};
pub use linalg::{DenseMatrix, Factor, PivotedQr, SparseMatrix};
