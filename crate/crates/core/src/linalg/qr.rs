use super::dense::{axpy, dot, norm2, DenseMatrix};
use crate::error::{Error, Result};

/// Default relative threshold on `|r_ii| / |r_00|` below which a pivot is
/// considered numerically zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-12;

/// Rank-`k` partial column-pivoted QR factorization `A Π ≈ Q R`.
#[derive(Debug, Clone)]
pub struct PivotedQr {
    /// `rows x k`, orthonormal columns.
    pub q: DenseMatrix,
    /// `k x cols`, upper trapezoidal, columns in pivoted order.
    pub r: DenseMatrix,
    /// All column indices; the first `k` are the selected pivots.
    pub perm: Vec<usize>,
    /// Leading pivots with `|r_ii| >= rank_tol * |r_00|`.
    pub numerical_rank: usize,
    pub rank_tol: f64,
}

impl PivotedQr {
    pub fn k(&self) -> usize {
        self.r.rows()
    }

    /// Columns of `a` in pivoted order, `A Π`.
    pub fn permuted(&self, a: &DenseMatrix) -> DenseMatrix {
        a.select_columns(&self.perm)
    }
}

/// Householder reflectors and the triangular factor left in the workspace.
pub(crate) struct Reflected {
    /// Overwritten input: the top `k` rows hold `R`.
    pub work: DenseMatrix,
    pub perm: Vec<usize>,
    /// `(v, beta)` with `H = I - beta v vᵀ` acting on rows `p..`.
    pub reflectors: Vec<(Vec<f64>, f64)>,
}

impl Reflected {
    pub fn r(&self) -> DenseMatrix {
        let k = self.reflectors.len();
        let w = &self.work;
        DenseMatrix::from_fn(k, w.cols(), |i, j| if i <= j { w[(i, j)] } else { 0.0 })
    }

    pub fn q(&self) -> DenseMatrix {
        let rows = self.work.rows();
        let k = self.reflectors.len();
        let mut q = DenseMatrix::zeros(rows, k);
        for c in 0..k {
            let col = q.col_mut(c);
            col[c] = 1.0;
            for (p, (v, beta)) in self.reflectors.iter().enumerate().rev() {
                let seg = &mut col[p..];
                let s = beta * dot(v, seg);
                if s != 0.0 {
                    axpy(-s, v, seg);
                }
            }
        }
        q
    }
}

/// Runs `k` Householder steps on a copy of `a`, with column pivoting when
/// `pivot` is set.
///
/// Pivot norms are recomputed from the updated columns at every step rather
/// than downdated, so the selected `|r_pp|` is exactly the largest remaining
/// column norm. Ties go to the lowest original column index.
pub(crate) fn householder(a: &DenseMatrix, k: usize, pivot: bool) -> Reflected {
    let rows = a.rows();
    let cols = a.cols();
    debug_assert!(k <= rows.min(cols));
    let mut w = a.clone();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut reflectors = Vec::with_capacity(k);

    for p in 0..k {
        if pivot {
            let mut best = p;
            let mut best_norm = -1.0;
            for c in p..cols {
                let nrm = norm2(&w.col(c)[p..]);
                if nrm > best_norm || (nrm == best_norm && perm[c] < perm[best]) {
                    best = c;
                    best_norm = nrm;
                }
            }
            if best != p {
                swap_columns(&mut w, p, best);
                perm.swap(p, best);
            }
        }

        let x = &w.col(p)[p..];
        let xnorm = norm2(x);
        if xnorm == 0.0 {
            reflectors.push((vec![0.0; rows - p], 0.0));
            continue;
        }
        let alpha = if x[0] >= 0.0 { -xnorm } else { xnorm };
        let mut v = x.to_vec();
        v[0] -= alpha;
        let vtv = dot(&v, &v);
        let beta = if vtv > 0.0 { 2.0 / vtv } else { 0.0 };

        {
            let col = &mut w.col_mut(p)[p..];
            col[0] = alpha;
            col[1..].iter_mut().for_each(|e| *e = 0.0);
        }
        if beta != 0.0 {
            for c in (p + 1)..cols {
                let seg = &mut w.col_mut(c)[p..];
                let s = beta * dot(&v, seg);
                if s != 0.0 {
                    axpy(-s, &v, seg);
                }
            }
        }
        reflectors.push((v, beta));
    }

    Reflected {
        work: w,
        perm,
        reflectors,
    }
}

fn swap_columns(m: &mut DenseMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    let rows = m.rows();
    let (lo, hi) = (a.min(b), a.max(b));
    let (left, right) = m.data_mut().split_at_mut(hi * rows);
    left[lo * rows..(lo + 1) * rows].swap_with_slice(&mut right[..rows]);
}

pub(crate) fn numerical_rank(r: &DenseMatrix, rank_tol: f64) -> usize {
    let k = r.rows().min(r.cols());
    if k == 0 {
        return 0;
    }
    let r00 = r[(0, 0)].abs();
    if r00 == 0.0 {
        return 0;
    }
    (0..k)
        .position(|i| r[(i, i)].abs() < rank_tol * r00)
        .unwrap_or(k)
}

fn check_rank(a: &DenseMatrix, k: usize) -> Result<()> {
    if k == 0 || k > a.rows().min(a.cols()) {
        return Err(Error::arg(format!(
            "target rank {k} must lie in 1..={} for a {}x{} matrix",
            a.rows().min(a.cols()),
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// Rank-`k` column-pivoted QR with the default rank tolerance.
pub fn cpqr(a: &DenseMatrix, k: usize) -> Result<PivotedQr> {
    cpqr_with_tol(a, k, DEFAULT_RANK_TOL)
}

pub fn cpqr_with_tol(a: &DenseMatrix, k: usize, rank_tol: f64) -> Result<PivotedQr> {
    check_rank(a, k)?;
    if !(rank_tol >= 0.0) {
        return Err(Error::arg("rank_tol must be nonnegative"));
    }
    let h = householder(a, k, true);
    let r = h.r();
    let q = h.q();
    let numerical_rank = numerical_rank(&r, rank_tol);
    Ok(PivotedQr {
        q,
        r,
        perm: h.perm,
        numerical_rank,
        rank_tol,
    })
}

/// Upper-trapezoidal factor of an unpivoted Householder QR,
/// `min(rows, cols) x cols`.
pub fn householder_qr_r(a: &DenseMatrix) -> DenseMatrix {
    let k = a.rows().min(a.cols());
    householder(a, k, false).r()
}

/// Solves `r x = b` for upper-triangular `r` (the leading square block of
/// `r` is used).
pub fn solve_upper(r: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    let n = r.rows();
    if r.cols() < n {
        return Err(Error::dims(format!(
            "triangular factor {}x{} is not square",
            r.rows(),
            r.cols()
        )));
    }
    if b.rows() != n {
        return Err(Error::dims(format!(
            "right-hand side has {} rows, expected {n}",
            b.rows()
        )));
    }
    if let Some(index) = (0..n).find(|&i| r[(i, i)] == 0.0 || !r[(i, i)].is_finite()) {
        return Err(Error::Singular { index });
    }
    let mut x = b.clone();
    for c in 0..b.cols() {
        let col = x.col_mut(c);
        for i in (0..n).rev() {
            let mut s = col[i];
            for j in (i + 1)..n {
                s -= r[(i, j)] * col[j];
            }
            col[i] = s / r[(i, i)];
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    fn gaussian(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
        let mut g = rng::seeded(seed);
        DenseMatrix::from_raw(rows, cols, rng::normal_vec(&mut g, rows * cols))
    }

    fn rel_residual(a: &DenseMatrix, f: &PivotedQr) -> f64 {
        let qr = f.q.matmul(&f.r).unwrap();
        qr.sub(&f.permuted(a)).unwrap().frobenius_norm() / a.frobenius_norm()
    }

    #[test]
    fn identity_factorizes_to_signed_identity() {
        let a = DenseMatrix::identity(3);
        let f = cpqr(&a, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_eq!(f.r[(i, j)].abs(), expect);
            }
        }
        assert_eq!(f.numerical_rank, 3);
        // ties resolve to the lowest original index
        assert_eq!(f.perm, vec![0, 1, 2]);
    }

    #[test]
    fn two_by_two_pivot_picks_larger_column() {
        let a = DenseMatrix::from_rows(&[&[2.0, 1.0], &[0.0, 0.0]]).unwrap();
        let f = cpqr(&a, 1).unwrap();
        assert_eq!(f.perm[0], 0);
        assert_eq!(f.r[(0, 0)].abs(), 2.0);
    }

    #[test]
    fn rank_is_detected() {
        let b = gaussian(50, 10, 1);
        let c = gaussian(10, 30, 2);
        let a = b.matmul(&c).unwrap();
        let f = cpqr_with_tol(&a, 30, 1e-10).unwrap();
        assert_eq!(f.numerical_rank, 10);
        assert!(rel_residual(&a, &f) < 1e-12);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let a = DenseMatrix::zeros(4, 3);
        let f = cpqr(&a, 2).unwrap();
        assert_eq!(f.numerical_rank, 0);
        assert_eq!(f.perm.len(), 3);
        assert!(f.q.is_finite() && f.r.is_finite());
    }

    #[test]
    fn rank_bounds_are_checked() {
        let a = DenseMatrix::zeros(4, 3);
        assert!(matches!(cpqr(&a, 0), Err(Error::Argument(_))));
        assert!(matches!(cpqr(&a, 4), Err(Error::Argument(_))));
    }

    #[test]
    fn triangular_solve_and_singularity() {
        let r = DenseMatrix::from_rows(&[&[2.0, 1.0], &[0.0, 4.0]]).unwrap();
        let b = DenseMatrix::from_rows(&[&[4.0], &[8.0]]).unwrap();
        let x = solve_upper(&r, &b).unwrap();
        assert_eq!(x.data(), &[1.0, 2.0]);
        let s = DenseMatrix::from_rows(&[&[2.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(solve_upper(&s, &b), Err(Error::Singular { index: 1 })));
        assert!(matches!(
            solve_upper(&r, &DenseMatrix::zeros(3, 1)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn triangular_solve_residual() {
        let mut r = gaussian(30, 30, 9);
        for i in 0..30 {
            for j in 0..i {
                r[(i, j)] = 0.0;
            }
            r[(i, i)] = 3.0 + r[(i, i)].abs();
        }
        let b = gaussian(30, 4, 10);
        let x = solve_upper(&r, &b).unwrap();
        let res = r.matmul(&x).unwrap().sub(&b).unwrap().frobenius_norm() / b.frobenius_norm();
        assert!(res < 1e-10, "{res}");
    }

    #[test]
    fn unpivoted_r_matches_gram() {
        let a = gaussian(12, 5, 3);
        let r = householder_qr_r(&a);
        let rtr = r.t_matmul(&r).unwrap();
        let ata = a.t_matmul(&a).unwrap();
        assert!(rtr.sub(&ata).unwrap().max_abs() < 1e-12 * ata.max_abs());
    }
}
