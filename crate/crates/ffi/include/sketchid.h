#ifndef SKETCHID_H
#define SKETCHID_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes of every fallible call.
typedef enum SkidStatus {
  SKID_STATUS_OK = 0,
  SKID_STATUS_NULL_POINTER = 1,
  SKID_STATUS_ARGUMENT = 2,
  SKID_STATUS_NUMERICAL = 3,
  SKID_STATUS_IO = 4,
  SKID_STATUS_PANIC = 5,
} SkidStatus;

typedef enum SkidIdMethod {
  SKID_ID_METHOD_DETERMINISTIC = 0,
  SKID_ID_METHOD_GAUSSIAN = 1,
  SKID_ID_METHOD_SRFT = 2,
  SKID_ID_METHOD_COUNT_SKETCH = 3,
} SkidIdMethod;

typedef enum SkidTensorIdMethod {
  SKID_TENSOR_ID_METHOD_TENSOR_SKETCH = 0,
  SKID_TENSOR_ID_METHOD_GAUSSIAN = 1,
  SKID_TENSOR_ID_METHOD_GRAM = 2,
} SkidTensorIdMethod;

// CP tensor with unit-norm factor columns.
typedef struct SkidCpTensor SkidCpTensor;

// Matrix interpolative decomposition.
typedef struct SkidId SkidId;

// Dense or sparse matrix.
typedef struct SkidMatrix SkidMatrix;

// Tensor interpolative decomposition.
typedef struct SkidTensorId SkidTensorId;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer is
// valid until the next failing call on the same thread.
const char *skid_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *skid_version(void);

// Dense `rows x cols` matrix copied from column-major `data`.
//
// # Safety
// `data` must point to `rows * cols` doubles and `out` must be writable.
enum SkidStatus skid_matrix_dense_new(size_t rows,
                                      size_t cols,
                                      const double *data,
                                      struct SkidMatrix **out);

// Sparse matrix from 0-based triplets; duplicates are summed.
//
// # Safety
// The three arrays must hold `nnz` elements each and `out` must be writable.
enum SkidStatus skid_matrix_sparse_new(size_t rows,
                                       size_t cols,
                                       size_t nnz,
                                       const size_t *row_idx,
                                       const size_t *col_idx,
                                       const double *values,
                                       struct SkidMatrix **out);

// Reads a Matrix Market file (coordinate files load as sparse).
//
// # Safety
// `path` must be a NUL-terminated string and `out` writable.
enum SkidStatus skid_matrix_read_mtx(const char *path_, struct SkidMatrix **out);

// # Safety
// `m` must be a live handle and `path` a NUL-terminated string.
enum SkidStatus skid_matrix_write_mtx(const struct SkidMatrix *m, const char *path_);

// Synthetic sparse matrix whose spectrum decays to 1e-8 over `k` values.
//
// # Safety
// `out` must be writable.
enum SkidStatus skid_matrix_gen_synthetic(size_t rows,
                                          size_t cols,
                                          size_t k,
                                          double density,
                                          uint64_t seed,
                                          struct SkidMatrix **out);

// Row count, or 0 for a null handle.
//
// # Safety
// `m` must be null or a live handle.
size_t skid_matrix_rows(const struct SkidMatrix *m);

// # Safety
// `m` must be null or a live handle.
size_t skid_matrix_cols(const struct SkidMatrix *m);

// Stored entries (`rows * cols` for dense matrices).
//
// # Safety
// `m` must be null or a live handle.
size_t skid_matrix_nnz(const struct SkidMatrix *m);

// 1 for sparse storage, 0 for dense or null.
//
// # Safety
// `m` must be null or a live handle.
int skid_matrix_is_sparse(const struct SkidMatrix *m);

// Writes the matrix densely, column-major, into `out[0..len]` with
// `len == rows * cols`.
//
// # Safety
// `m` must be a live handle and `out` must hold `len` doubles.
enum SkidStatus skid_matrix_to_dense(const struct SkidMatrix *m, double *out, size_t len);

// # Safety
// `m` must be null or a handle not yet freed.
void skid_matrix_free(struct SkidMatrix *m);

// Rank-`k` ID of `a` with sketch size `l` (ignored by the deterministic
// method).
//
// # Safety
// `a` must be a live handle and `out` writable.
enum SkidStatus skid_matrix_id(const struct SkidMatrix *a,
                               size_t k,
                               enum SkidIdMethod method,
                               size_t l,
                               uint64_t seed,
                               struct SkidId **out);

// Target rank `k`, or 0 for null.
//
// # Safety
// `id` must be null or a live handle.
size_t skid_id_rank(const struct SkidId *id);

// # Safety
// `id` must be null or a live handle.
size_t skid_id_cols(const struct SkidId *id);

// # Safety
// `id` must be null or a live handle.
size_t skid_id_numerical_rank(const struct SkidId *id);

// # Safety
// `id` must be null or a live handle.
int skid_id_rank_deficient(const struct SkidId *id);

// Selected column indices `j` into `out[0..k]`.
//
// # Safety
// `id` must be a live handle and `out` must hold `len` elements.
enum SkidStatus skid_id_indices(const struct SkidId *id, size_t *out, size_t len);

// Coefficient matrix `P`, `k x cols`, column-major.
//
// # Safety
// `id` must be a live handle and `out` must hold `len` doubles.
enum SkidStatus skid_id_coefficients(const struct SkidId *id, double *out, size_t len);

// Estimated `‖A[:, j] P − A‖₂` by power iteration.
//
// # Safety
// `a` and `id` must be live handles and `out` writable.
enum SkidStatus skid_id_residual_norm(const struct SkidMatrix *a,
                                      const struct SkidId *id,
                                      size_t iters,
                                      size_t probes,
                                      uint64_t seed,
                                      double *out);

// # Safety
// `id` must be null or a handle not yet freed.
void skid_id_free(struct SkidId *id);

// CP tensor from `order` factor matrices sharing `rank` columns and `rank`
// s-values. Factors are copied; columns are normalized into the s-values.
//
// # Safety
// `factors` must hold `order` live matrix handles, `svalues` `rank`
// doubles, and `out` must be writable.
enum SkidStatus skid_cp_new(size_t order,
                            const struct SkidMatrix *const *factors,
                            size_t rank,
                            const double *svalues,
                            struct SkidCpTensor **out);

// Reads a CP tensor directory (`meta.json`, `svalues.txt`, `factor_n.mtx`).
//
// # Safety
// `dir` must be a NUL-terminated string and `out` writable.
enum SkidStatus skid_cp_read_dir(const char *dir, struct SkidCpTensor **out);

// # Safety
// `x` must be a live handle and `dir` a NUL-terminated string.
enum SkidStatus skid_cp_write_dir(const struct SkidCpTensor *x, const char *dir);

// Synthetic CP tensor with sparse factors; the first `decay_rank` s-values
// decay geometrically and the rest equal 1e-8.
//
// # Safety
// `out` must be writable.
enum SkidStatus skid_cp_gen_synthetic(size_t order,
                                      size_t dim,
                                      size_t rank,
                                      size_t decay_rank,
                                      double density,
                                      uint64_t seed,
                                      struct SkidCpTensor **out);

// # Safety
// `x` must be null or a live handle.
size_t skid_cp_order(const struct SkidCpTensor *x);

// # Safety
// `x` must be null or a live handle.
size_t skid_cp_rank(const struct SkidCpTensor *x);

// Mode dimensions into `out[0..order]`.
//
// # Safety
// `x` must be a live handle and `out` must hold `len` elements.
enum SkidStatus skid_cp_dims(const struct SkidCpTensor *x, size_t *out, size_t len);

// # Safety
// `x` must be a live handle and `out` must hold `len` doubles.
enum SkidStatus skid_cp_svalues(const struct SkidCpTensor *x, double *out, size_t len);

// Copy of factor `n`.
//
// # Safety
// `x` must be a live handle and `out` writable.
enum SkidStatus skid_cp_factor(const struct SkidCpTensor *x, size_t n, struct SkidMatrix **out);

// Exact Frobenius norm.
//
// # Safety
// `x` must be a live handle and `out` writable.
enum SkidStatus skid_cp_norm(const struct SkidCpTensor *x, double *out);

// Exact `‖X − Y‖_F`.
//
// # Safety
// `x` and `y` must be live handles and `out` writable.
enum SkidStatus skid_cp_diff_norm(const struct SkidCpTensor *x,
                                  const struct SkidCpTensor *y,
                                  double *out);

// # Safety
// `x` must be null or a handle not yet freed.
void skid_cp_free(struct SkidCpTensor *x);

// Rank-`k` tensor ID with sketch size `l` (ignored by the Gram method).
//
// # Safety
// `x` must be a live handle and `out` writable.
enum SkidStatus skid_tensor_id(const struct SkidCpTensor *x,
                               size_t k,
                               enum SkidTensorIdMethod method,
                               size_t l,
                               uint64_t seed,
                               struct SkidTensorId **out);

// # Safety
// `t` must be null or a live handle.
size_t skid_tensor_id_rank(const struct SkidTensorId *t);

// # Safety
// `t` must be null or a live handle.
size_t skid_tensor_id_numerical_rank(const struct SkidTensorId *t);

// Selected term indices into `out[0..k]`.
//
// # Safety
// `t` must be a live handle and `out` must hold `len` elements.
enum SkidStatus skid_tensor_id_indices(const struct SkidTensorId *t, size_t *out, size_t len);

// Recomputed s-values of the selected terms.
//
// # Safety
// `t` must be a live handle and `out` must hold `len` doubles.
enum SkidStatus skid_tensor_id_svalues(const struct SkidTensorId *t, double *out, size_t len);

// Coefficient matrix `P`, `k x R`, column-major.
//
// # Safety
// `t` must be a live handle and `out` must hold `len` doubles.
enum SkidStatus skid_tensor_id_coefficients(const struct SkidTensorId *t, double *out, size_t len);

// Copy of the reduced rank-`k` tensor.
//
// # Safety
// `t` must be a live handle and `out` writable.
enum SkidStatus skid_tensor_id_reduced(const struct SkidTensorId *t, struct SkidCpTensor **out);

// # Safety
// `t` must be null or a handle not yet freed.
void skid_tensor_id_free(struct SkidTensorId *t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKETCHID_H */
