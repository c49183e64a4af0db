//! Matrix containers and factorization kernels.

mod dense;
mod factor;
pub mod mtx;
mod qr;
mod sparse;
mod svd;

pub use dense::DenseMatrix;
pub use factor::{ColumnSource, Factor};
pub use qr::{cpqr, cpqr_with_tol, householder_qr_r, solve_upper, PivotedQr, DEFAULT_RANK_TOL};
pub use sparse::SparseMatrix;
pub use svd::svd_values;

pub(crate) use dense::{dot, norm2};
pub(crate) use qr::numerical_rank;
