//! C interface to `sketchid`.
//!
//! Objects are opaque heap handles released with the matching `skid_*_free`
//! function. Every fallible call returns a [`SkidStatus`]; on failure the
//! message is available from [`skid_last_error_message`] on the same thread.
//! Matrices cross the boundary in column-major order and indices are
//! 0-based.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sketchid::bench::{gen_synthetic_matrix, gen_synthetic_tensor_with_decay};
use sketchid::cp::{self, io as cp_io};
use sketchid::estimate::id_residual_norm;
use sketchid::id::interpolative_decomposition;
use sketchid::linalg::{mtx, ColumnSource, DenseMatrix, Factor, SparseMatrix};
use sketchid::{CpTensor, Error, IdMethod, InterpolativeDecomposition, TensorIdMethod, TensorIdResult};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkidStatus {
    Ok = 0,
    NullPointer = 1,
    Argument = 2,
    Numerical = 3,
    Io = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkidIdMethod {
    Deterministic = 0,
    Gaussian = 1,
    Srft = 2,
    CountSketch = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkidTensorIdMethod {
    TensorSketch = 0,
    Gaussian = 1,
    Gram = 2,
}

impl From<SkidIdMethod> for IdMethod {
    fn from(m: SkidIdMethod) -> Self {
        match m {
            SkidIdMethod::Deterministic => IdMethod::Deterministic,
            SkidIdMethod::Gaussian => IdMethod::Gaussian,
            SkidIdMethod::Srft => IdMethod::Srft,
            SkidIdMethod::CountSketch => IdMethod::CountSketch,
        }
    }
}

impl From<SkidTensorIdMethod> for TensorIdMethod {
    fn from(m: SkidTensorIdMethod) -> Self {
        match m {
            SkidTensorIdMethod::TensorSketch => TensorIdMethod::TensorSketch,
            SkidTensorIdMethod::Gaussian => TensorIdMethod::Gaussian,
            SkidTensorIdMethod::Gram => TensorIdMethod::Gram,
        }
    }
}

/// Dense or sparse matrix.
pub struct SkidMatrix(Factor);

/// Matrix interpolative decomposition.
pub struct SkidId(InterpolativeDecomposition);

/// CP tensor with unit-norm factor columns.
pub struct SkidCpTensor(CpTensor);

/// Tensor interpolative decomposition.
pub struct SkidTensorId(TensorIdResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(SkidStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Io(_) => SkidStatus::Io,
            ref e if e.is_argument() => SkidStatus::Argument,
            _ => SkidStatus::Numerical,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SkidStatus::NullPointer, format!("{what} is null"))
}

fn arg(msg: impl Into<String>) -> Failure {
    Failure(SkidStatus::Argument, msg.into())
}

type FfiResult<T> = Result<T, Failure>;

/// Runs `f`, converting errors and panics into a status and the thread's
/// last error message.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> SkidStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SkidStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            SkidStatus::Panic
        }
    }
}

unsafe fn obj<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> FfiResult<&'a mut T> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> FfiResult<&'a [T]> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// Copies `src` into the caller buffer, which must hold exactly `src.len()`
/// elements.
unsafe fn fill<T: Copy>(dst: *mut T, len: usize, src: &[T]) -> FfiResult<()> {
    if len != src.len() {
        return Err(arg(format!("buffer holds {len} elements, {} needed", src.len())));
    }
    if len > 0 {
        if dst.is_null() {
            return Err(null("output buffer"));
        }
        std::slice::from_raw_parts_mut(dst, len).copy_from_slice(src);
    }
    Ok(())
}

unsafe fn path<'a>(p: *const c_char) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| arg("path is not valid UTF-8"))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

unsafe fn release<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn skid_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn skid_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// ---- matrices ----

/// Dense `rows x cols` matrix copied from column-major `data`.
///
/// # Safety
/// `data` must point to `rows * cols` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skid_matrix_dense_new(
    rows: usize,
    cols: usize,
    data: *const f64,
    out: *mut *mut SkidMatrix,
) -> SkidStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let len = rows.checked_mul(cols).ok_or_else(|| arg("matrix too large"))?;
        let d = DenseMatrix::new(rows, cols, slice(data, len, "data")?.to_vec())?;
        *out = boxed(SkidMatrix(Factor::Dense(d)));
        Ok(())
    })
}

/// Sparse matrix from 0-based triplets; duplicates are summed.
///
/// # Safety
/// The three arrays must hold `nnz` elements each and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skid_matrix_sparse_new(
    rows: usize,
    cols: usize,
    nnz: usize,
    row_idx: *const usize,
    col_idx: *const usize,
    values: *const f64,
    out: *mut *mut SkidMatrix,
) -> SkidStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let ri = slice(row_idx, nnz, "row_idx")?;
        let ci = slice(col_idx, nnz, "col_idx")?;
        let vs = slice(values, nnz, "values")?;
        let trip: Vec<(usize, usize, f64)> = (0..nnz).map(|t| (ri[t], ci[t], vs[t])).collect();
        let s = SparseMatrix::from_triplets(rows, cols, &trip)?;
        *out = boxed(SkidMatrix(Factor::Sparse(s)));
        Ok(())
    })
}

/// Reads a Matrix Market file (coordinate files load as sparse).
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skid_matrix_read_mtx(path_: *const c_char, out: *mut *mut SkidMatrix) -> SkidStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let f = mtx::read_path(path(path_)?)?;
        *out = boxed(SkidMatrix(f));
        Ok(())
    })
}

/// # Safety
/// `m` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn skid_matrix_write_mtx(m: *const SkidMatrix, path_: *const c_char) -> SkidStatus {
    guard(|| {
        let m = obj(m, "matrix")?;
        mtx::write_path(path(path_)?, &m.0)?;
        Ok(())
    })
}

/// Synthetic sparse matrix whose spectrum decays to 1e-8 over `k` values.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skid_matrix_gen_synthetic(
    rows: usize,
    cols: usize,
    k: usize,
    density: f64,
    seed: u64,
    out: *mut *mut SkidMatrix,
) -> SkidStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let a = gen_synthetic_matrix(rows, cols, k, density, seed)?;
        *out = boxed(SkidMatrix(Factor::Sparse(a)));
        Ok(())
    })
}

/// Row count, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skid_matrix_rows(m: *const SkidMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.nrows())
}

/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skid_matrix_cols(m: *const SkidMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.ncols())
}

/// Stored entries (`rows * cols` for dense matrices).
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skid_matrix_nnz(m: *const SkidMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.stored())
}

/// 1 for sparse storage, 0 for dense or null.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skid_matrix_is_sparse(m: *const SkidMatrix) -> c_int {
    m.as_ref().map_or(0, |m| c_int::from(m.0.is_sparse()))
}

/// Writes the matrix densely, column-major, into `out[0..len]` with
/// `len == rows * cols`.
///
/// # Safety
/// `m` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn skid_matrix_to_dense(m: *const SkidMatrix, out: *mut f64, len: usize) -> SkidStatus {
    guard(|| {
        let m = obj(m, "matrix")?;
        fill(out, len, m.0.to_dense().data())
    })
}

/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skid_matrix_free(m: *mut SkidMatrix) {
    release(m)
}

// ---- matrix ID ----

/// Rank-`k` ID of `a` with sketch size `l` (ignored by the deterministic
/// method).
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skid_matrix_id(
    a: *const SkidMatrix,
    k: usize,
    method: SkidIdMethod,
    l: usize,
    seed: u64,
    out: *mut *mut SkidId,
) -> SkidStatus {
    guard(|| {
        let a = obj(a, "matrix")?;
        let out = out_ptr(out, "out")?;
        let id = interpolative_decomposition(&a.0, k, method.into(), l, seed)?;
        *out = boxed(SkidId(id));
        Ok(())
    })
}

/// Target rank `k`, or 0 for null.
///
/// # Safety
/// `id` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skid_id_rank(id: *const SkidId) -> usize {
    id.as_ref().map_or(0, |id| id.0.k)
}

/// # Safety
/// `id` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skid_id_cols(id: *const SkidId) -> usize {
    id.as_ref().map_or(0, |id| id.0.cols())
}

/// # Safety
/// `id` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skid_id_numerical_rank(id: *const SkidId) -> usize {
    id.as_ref().map_or(0, |id| id.0.numerical_rank)
}

/// # Safety
/// `id` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skid_id_rank_deficient(id: *const SkidId) -> c_int {
    id.as_ref().map_or(0, |id| c_int::from(id.0.rank_deficient))
}

/// Selected column indices `j` into `out[0..k]`.
///
/// # Safety
/// `id` must be a live handle and `out` must hold `len` elements.
#[no_mangle]
pub unsafe extern "C" fn skid_id_indices(id: *const SkidId, out: *mut usize, len: usize) -> SkidStatus {
    guard(|| fill(out, len, &obj(id, "id")?.0.j))
}

/// Coefficient matrix `P`, `k x cols`, column-major.
///
/// # Safety
/// `id` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn skid_id_coefficients(id: *const SkidId, out: *mut f64, len: usize) -> SkidStatus {
    guard(|| fill(out, len, obj(id, "id")?.0.p.data()))
}

/// Estimated `‖A[:, j] P − A‖₂` by power iteration.
///
/// # Safety
/// `a` and `id` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skid_id_residual_norm(
    a: *const SkidMatrix,
    id: *const SkidId,
    iters: usize,
    probes: usize,
    seed: u64,
    out: *mut f64,
) -> SkidStatus {
    guard(|| {
        let a = obj(a, "matrix")?;
        let id = obj(id, "id")?;
        let out = out_ptr(out, "out")?;
        *out = id_residual_norm(&a.0, &id.0, iters, probes, seed)?.value;
        Ok(())
    })
}

/// # Safety
/// `id` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skid_id_free(id: *mut SkidId) {
    release(id)
}

// ---- CP tensors ----

/// CP tensor from `order` factor matrices sharing `rank` columns and `rank`
/// s-values. Factors are copied; columns are normalized into the s-values.
///
/// # Safety
/// `factors` must hold `order` live matrix handles, `svalues` `rank`
/// doubles, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skid_cp_new(
    order: usize,
    factors: *const *const SkidMatrix,
    rank: usize,
    svalues: *const f64,
    out: *mut *mut SkidCpTensor,
) -> SkidStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let handles = slice(factors, order, "factors")?;
        let fs = handles
            .iter()
            .map(|&h| obj(h, "factor").map(|m| m.0.clone()))
            .collect::<FfiResult<Vec<_>>>()?;
        let lam = slice(svalues, rank, "svalues")?.to_vec();
        *out = boxed(SkidCpTensor(CpTensor::new(lam, fs)?));
        Ok(())
    })
}

/// Reads a CP tensor directory (`meta.json`, `svalues.txt`, `factor_n.mtx`).
///
/// # Safety
/// `dir` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skid_cp_read_dir(dir: *const c_char, out: *mut *mut SkidCpTensor) -> SkidStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = boxed(SkidCpTensor(cp_io::read_dir(path(dir)?)?));
        Ok(())
    })
}

/// # Safety
/// `x` must be a live handle and `dir` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn skid_cp_write_dir(x: *const SkidCpTensor, dir: *const c_char) -> SkidStatus {
    guard(|| {
        let x = obj(x, "tensor")?;
        cp_io::write_dir(path(dir)?, &x.0)?;
        Ok(())
    })
}

/// Synthetic CP tensor with sparse factors; the first `decay_rank` s-values
/// decay geometrically and the rest equal 1e-8.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skid_cp_gen_synthetic(
    order: usize,
    dim: usize,
    rank: usize,
    decay_rank: usize,
    density: f64,
    seed: u64,
    out: *mut *mut SkidCpTensor,
) -> SkidStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let x = gen_synthetic_tensor_with_decay(order, dim, rank, decay_rank, density, seed)?;
        *out = boxed(SkidCpTensor(x));
        Ok(())
    })
}

/// # Safety
/// `x` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skid_cp_order(x: *const SkidCpTensor) -> usize {
    x.as_ref().map_or(0, |x| x.0.order())
}

/// # Safety
/// `x` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skid_cp_rank(x: *const SkidCpTensor) -> usize {
    x.as_ref().map_or(0, |x| x.0.rank())
}

/// Mode dimensions into `out[0..order]`.
///
/// # Safety
/// `x` must be a live handle and `out` must hold `len` elements.
#[no_mangle]
pub unsafe extern "C" fn skid_cp_dims(x: *const SkidCpTensor, out: *mut usize, len: usize) -> SkidStatus {
    guard(|| fill(out, len, &obj(x, "tensor")?.0.dims()))
}

/// # Safety
/// `x` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn skid_cp_svalues(x: *const SkidCpTensor, out: *mut f64, len: usize) -> SkidStatus {
    guard(|| fill(out, len, obj(x, "tensor")?.0.svalues()))
}

/// Copy of factor `n`.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skid_cp_factor(x: *const SkidCpTensor, n: usize, out: *mut *mut SkidMatrix) -> SkidStatus {
    guard(|| {
        let x = obj(x, "tensor")?;
        let out = out_ptr(out, "out")?;
        let f = x.0.factors().get(n).ok_or_else(|| arg(format!("mode {n} out of range")))?;
        *out = boxed(SkidMatrix(f.clone()));
        Ok(())
    })
}

/// Exact Frobenius norm.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skid_cp_norm(x: *const SkidCpTensor, out: *mut f64) -> SkidStatus {
    guard(|| {
        let x = obj(x, "tensor")?;
        *out_ptr(out, "out")? = cp::cp_norm(&x.0);
        Ok(())
    })
}

/// Exact `‖X − Y‖_F`.
///
/// # Safety
/// `x` and `y` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skid_cp_diff_norm(x: *const SkidCpTensor, y: *const SkidCpTensor, out: *mut f64) -> SkidStatus {
    guard(|| {
        let x = obj(x, "x")?;
        let y = obj(y, "y")?;
        *out_ptr(out, "out")? = cp::cp_diff_norm(&x.0, &y.0)?;
        Ok(())
    })
}

/// # Safety
/// `x` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skid_cp_free(x: *mut SkidCpTensor) {
    release(x)
}

// ---- tensor ID ----

/// Rank-`k` tensor ID with sketch size `l` (ignored by the Gram method).
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skid_tensor_id(
    x: *const SkidCpTensor,
    k: usize,
    method: SkidTensorIdMethod,
    l: usize,
    seed: u64,
    out: *mut *mut SkidTensorId,
) -> SkidStatus {
    guard(|| {
        let x = obj(x, "tensor")?;
        let out = out_ptr(out, "out")?;
        let res = cp::tensor_id(&x.0, k, method.into(), l, seed)?;
        *out = boxed(SkidTensorId(res));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skid_tensor_id_rank(t: *const SkidTensorId) -> usize {
    t.as_ref().map_or(0, |t| t.0.j.len())
}

/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skid_tensor_id_numerical_rank(t: *const SkidTensorId) -> usize {
    t.as_ref().map_or(0, |t| t.0.numerical_rank)
}

/// Selected term indices into `out[0..k]`.
///
/// # Safety
/// `t` must be a live handle and `out` must hold `len` elements.
#[no_mangle]
pub unsafe extern "C" fn skid_tensor_id_indices(t: *const SkidTensorId, out: *mut usize, len: usize) -> SkidStatus {
    guard(|| fill(out, len, &obj(t, "tensor id")?.0.j))
}

/// Recomputed s-values of the selected terms.
///
/// # Safety
/// `t` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn skid_tensor_id_svalues(t: *const SkidTensorId, out: *mut f64, len: usize) -> SkidStatus {
    guard(|| fill(out, len, &obj(t, "tensor id")?.0.new_svalues))
}

/// Coefficient matrix `P`, `k x R`, column-major.
///
/// # Safety
/// `t` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn skid_tensor_id_coefficients(t: *const SkidTensorId, out: *mut f64, len: usize) -> SkidStatus {
    guard(|| fill(out, len, obj(t, "tensor id")?.0.p.data()))
}

/// Copy of the reduced rank-`k` tensor.
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skid_tensor_id_reduced(t: *const SkidTensorId, out: *mut *mut SkidCpTensor) -> SkidStatus {
    guard(|| {
        let t = obj(t, "tensor id")?;
        *out_ptr(out, "out")? = boxed(SkidCpTensor(t.0.reduced.clone()));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skid_tensor_id_free(t: *mut SkidTensorId) {
    release(t)
}
