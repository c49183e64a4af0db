use std::collections::HashMap;

use super::CpTensor;
use crate::error::{Error, Result};
use crate::linalg::{ColumnSource, DenseMatrix, Factor, SparseMatrix};

/// `⊛_n A(n)ᵀ A(n)` over a list of factors sharing a column count.
pub fn hadamard_of_grams(factors: &[Factor]) -> DenseMatrix {
    let mut it = factors.iter();
    let mut g = it.next().expect("at least one factor").gram();
    for f in it {
        g.hadamard_assign(&f.gram()).expect("equal column counts");
    }
    g
}

/// `MᵀM = diag(λ) (⊛_n A(n)ᵀ A(n)) diag(λ)`, `R x R`.
pub fn gram_hadamard(x: &CpTensor) -> DenseMatrix {
    let mut g = hadamard_of_grams(x.factors());
    let lam = x.svalues();
    let r = lam.len();
    for c in 0..r {
        for i in 0..r {
            g[(i, c)] *= lam[i] * lam[c];
        }
    }
    g
}

/// `√(cᵀ G c)` with the square root guarded against round-off.
fn quadratic_norm(g: &DenseMatrix, c: &[f64]) -> f64 {
    let gc = g.matvec(c);
    let q: f64 = c.iter().zip(&gc).map(|(a, b)| a * b).sum();
    q.max(0.0).sqrt()
}

/// Exact Frobenius norm of a CP tensor, `√(Σ_{r,r'} λ_r λ_r' Π_n ⟨a(n)_r, a(n)_r'⟩)`.
pub fn cp_norm(x: &CpTensor) -> f64 {
    quadratic_norm(&hadamard_of_grams(x.factors()), x.svalues())
}

/// Exact `‖X − Y‖_F` via the norm of the concatenated tensor `[X, −Y]`.
///
/// Terms of `Y` whose factor columns coincide bit for bit with a term of `X`
/// in every mode are merged into that term first (coefficient `λ_r − μ_s`),
/// which removes the cancellation between large equal terms when `Y` is a
/// reduction of `X`.
pub fn cp_diff_norm(x: &CpTensor, y: &CpTensor) -> Result<f64> {
    if x.dims() != y.dims() {
        return Err(Error::dims(format!(
            "mode dimensions differ: {:?} vs {:?}",
            x.dims(),
            y.dims()
        )));
    }
    let mut index: HashMap<Vec<u64>, usize> = HashMap::with_capacity(x.rank());
    for r in 0..x.rank() {
        index.entry(term_key(x.factors(), r)).or_insert(r);
    }
    let mut coef = x.svalues().to_vec();
    let mut extra = Vec::new();
    for (s, &mu) in y.svalues().iter().enumerate() {
        match index.get(&term_key(y.factors(), s)) {
            Some(&r) => coef[r] -= mu,
            None => {
                extra.push(s);
                coef.push(-mu);
            }
        }
    }
    let factors: Vec<Factor> = x
        .factors()
        .iter()
        .zip(y.factors())
        .map(|(a, b)| hstack(a, &b.select_columns(&extra)))
        .collect();
    Ok(quadratic_norm(&hadamard_of_grams(&factors), &coef))
}

/// Bit pattern of the nonzeros of term `r` across all modes.
fn term_key(factors: &[Factor], r: usize) -> Vec<u64> {
    let mut key = Vec::new();
    for f in factors {
        f.for_each_in_col(r, |i, v| {
            if v != 0.0 {
                key.push(i as u64);
                key.push(v.to_bits());
            }
        });
        key.push(u64::MAX);
    }
    key
}

fn hstack(a: &Factor, b: &Factor) -> Factor {
    match (a, b) {
        (Factor::Dense(x), Factor::Dense(y)) => {
            let mut data = x.data().to_vec();
            data.extend_from_slice(y.data());
            Factor::Dense(DenseMatrix::new(x.rows(), x.cols() + y.cols(), data).expect("finite"))
        }
        _ => {
            let offset = a.ncols();
            let mut trip = Vec::with_capacity(a.stored() + b.stored());
            for c in 0..a.ncols() {
                a.for_each_in_col(c, |i, v| trip.push((i, c, v)));
            }
            for c in 0..b.ncols() {
                b.for_each_in_col(c, |i, v| trip.push((i, offset + c, v)));
            }
            Factor::Sparse(
                SparseMatrix::from_triplets(a.nrows(), offset + b.ncols(), &trip).expect("valid triplets"),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_gram_and_norm() {
        let a = DenseMatrix::from_rows(&[&[0.6], &[0.8]]).unwrap();
        let x = CpTensor::new(vec![5.0], vec![a.clone().into(), a.into()]).unwrap();
        let g = gram_hadamard(&x);
        assert!((g[(0, 0)] - 25.0).abs() < 1e-12);
        assert!((cp_norm(&x) - 5.0).abs() < 1e-12);
        assert!(cp_diff_norm(&x, &x).unwrap() <= 1e-7 * 5.0);
    }

    #[test]
    fn orthonormal_modes_give_diagonal_gram() {
        let e = DenseMatrix::identity(3);
        let x = CpTensor::new(vec![3.0, 2.0, 1.0], vec![e.clone().into(), e.into()]).unwrap();
        let g = gram_hadamard(&x);
        assert_eq!(g, DenseMatrix::diag(&[9.0, 4.0, 1.0]));
    }

    #[test]
    fn diff_norm_of_mixed_storage() {
        let a = DenseMatrix::from_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        let x = CpTensor::new(vec![1.0, 2.0], vec![a.clone().into()]).unwrap();
        let y = CpTensor::new(vec![1.0], vec![SparseMatrix::from_dense(&a.select_columns(&[1])).into()]).unwrap();
        let dx = x.to_dense_vec().unwrap();
        let dy = y.to_dense_vec().unwrap();
        let exact = dx.iter().zip(&dy).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
        assert!((cp_diff_norm(&x, &y).unwrap() - exact).abs() < 1e-12);
        let z = CpTensor::new(vec![1.0], vec![DenseMatrix::zeros(3, 1).into()]).unwrap();
        assert!(cp_diff_norm(&x, &z).is_err());
    }
}
