use super::dense::{dot, DenseMatrix};
use super::qr::householder_qr_r;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Singular values of `a` in nonincreasing order, `min(rows, cols)` of them.
///
/// Tall inputs are first reduced to their square triangular factor; the
/// spectrum is then computed by one-sided Jacobi rotations, which are
/// accurate to high relative precision.
pub fn svd_values(a: &DenseMatrix) -> Result<Vec<f64>> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::arg("svd of an empty matrix"));
    }
    if !a.is_finite() {
        return Err(Error::arg("svd input contains non-finite entries"));
    }
    let tall = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.transpose()
    };
    let mut w = if tall.rows() > tall.cols() {
        householder_qr_r(&tall)
    } else {
        tall
    };
    let n = w.cols();
    let tol = 1e-15;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = dot(w.col(p), w.col(p));
                let beta = dot(w.col(q), w.col(q));
                let gamma = dot(w.col(p), w.col(q));
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "Jacobi SVD did not converge in {MAX_SWEEPS} sweeps"
        )));
    }
    let mut sv: Vec<f64> = (0..n).map(|j| dot(w.col(j), w.col(j)).sqrt()).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

fn rotate(w: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    let rows = w.rows();
    let data = w.data_mut();
    let (left, right) = data.split_at_mut(q * rows);
    let cp = &mut left[p * rows..(p + 1) * rows];
    let cq = &mut right[..rows];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, yq) = (*x, *y);
        *x = c * xp - s * yq;
        *y = s * xp + c * yq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_and_permutation() {
        let d = DenseMatrix::diag(&[3.0, 1.0]);
        assert_eq!(svd_values(&d).unwrap(), vec![3.0, 1.0]);
        let p = DenseMatrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert_eq!(svd_values(&p).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn wide_and_tall_agree() {
        let a = DenseMatrix::from_fn(3, 7, |i, j| ((i * 7 + j) as f64).sin());
        let s1 = svd_values(&a).unwrap();
        let s2 = svd_values(&a.transpose()).unwrap();
        assert_eq!(s1.len(), 3);
        for (x, y) in s1.iter().zip(&s2) {
            assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn empty_is_rejected() {
        assert!(svd_values(&DenseMatrix::zeros(0, 3)).is_err());
        assert_eq!(svd_values(&DenseMatrix::zeros(2, 3)).unwrap(), vec![0.0, 0.0]);
    }
}
