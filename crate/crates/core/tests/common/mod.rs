//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use sketchid::linalg::{ColumnSource, DenseMatrix, Factor, SparseMatrix};
use sketchid::sketch::{CountSketchOp, TensorSketchOp};

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn gaussian(rows: usize, cols: usize, g: &mut ChaCha20Rng) -> DenseMatrix {
    DenseMatrix::from_fn(rows, cols, |_, _| g.sample(StandardNormal))
}

/// Random sparse matrix with roughly `density` of its entries nonzero.
pub fn sparse(rows: usize, cols: usize, density: f64, g: &mut ChaCha20Rng) -> SparseMatrix {
    let mut trip = Vec::new();
    for j in 0..cols {
        for i in 0..rows {
            if g.random::<f64>() < density {
                trip.push((i, j, g.sample::<f64, _>(StandardNormal)));
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, &trip).unwrap()
}

pub fn to_na(a: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_column_slice(a.rows(), a.cols(), a.data())
}

pub fn from_na(m: &DMatrix<f64>) -> DenseMatrix {
    DenseMatrix::new(m.nrows(), m.ncols(), m.as_slice().to_vec()).unwrap()
}

/// Singular values, descending, from nalgebra's SVD.
pub fn sv_oracle(a: &DenseMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = to_na(a).svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

pub fn spectral_norm(a: &DenseMatrix) -> f64 {
    sv_oracle(a)[0]
}

/// Square roots of the eigenvalues of `aᵀa`, descending.
pub fn gram_eig_oracle(a: &DenseMatrix) -> Vec<f64> {
    let m = to_na(a);
    let e = SymmetricEigen::new(m.transpose() * &m);
    let mut s: Vec<f64> = e.eigenvalues.iter().map(|v| v.max(0.0).sqrt()).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

pub fn min_eigenvalue(a: &DenseMatrix) -> f64 {
    SymmetricEigen::new(to_na(a)).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Orthonormal `rows x cols` basis from a QR of a Gaussian matrix.
pub fn orthonormal(rows: usize, cols: usize, g: &mut ChaCha20Rng) -> DenseMatrix {
    let q = to_na(&gaussian(rows, cols, g)).qr().q();
    from_na(&q)
}

/// Matrix with prescribed singular values `sigma` and random singular
/// vectors.
pub fn with_spectrum(rows: usize, cols: usize, sigma: &[f64], g: &mut ChaCha20Rng) -> DenseMatrix {
    let k = sigma.len();
    let u = to_na(&orthonormal(rows, k, g));
    let v = to_na(&orthonormal(cols, k, g));
    let s = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(sigma));
    from_na(&(u * s * v.transpose()))
}

pub fn rel_fro(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    let d = a.sub(b).unwrap().frobenius_norm();
    let n = b.frobenius_norm();
    if n == 0.0 {
        d
    } else {
        d / n
    }
}

pub fn dense_of<A: ColumnSource>(a: &A) -> DenseMatrix {
    a.dense_block(0, a.ncols())
}

/// Dense `L x I` CountSketch built from the operator's hash and sign tables.
pub fn countsketch_matrix(s: &CountSketchOp) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(s.out_dim(), s.in_dim());
    for i in 0..s.in_dim() {
        m[(s.bucket(i), i)] = s.sign(i);
    }
    m
}

/// All multi-indices of `dims`, first mode slowest.
pub fn multi_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..d).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

/// Explicit Khatri-Rao product `A(1) ⊙ … ⊙ A(N)` times `diag(scale)`.
pub fn khatri_rao(factors: &[DenseMatrix], scale: &[f64]) -> DenseMatrix {
    let dims: Vec<usize> = factors.iter().map(|f| f.rows()).collect();
    let idx = multi_indices(&dims);
    DenseMatrix::from_fn(idx.len(), scale.len(), |row, r| {
        scale[r] * idx[row].iter().zip(factors).map(|(&i, f)| f[(i, r)]).product::<f64>()
    })
}

/// The TensorSketch as an explicit CountSketch on `Π I_n` rows with the
/// composite hash `Σ h_n mod L` and sign `Π s_n`, built from per-mode tables.
pub fn tensorsketch_matrix(t: &TensorSketchOp) -> DenseMatrix {
    let dims = t.mode_dims();
    let idx = multi_indices(&dims);
    let l = t.out_dim();
    let mut m = DenseMatrix::zeros(l, idx.len());
    for (col, ix) in idx.iter().enumerate() {
        let h: usize = ix.iter().enumerate().map(|(n, &i)| t.mode(n).bucket(i)).sum::<usize>() % l;
        let s: f64 = ix.iter().enumerate().map(|(n, &i)| t.mode(n).sign(i)).product();
        m[(h, col)] = s;
    }
    m
}

/// `L x I` real SRFT operator from complex exponentials: row `q` holds
/// `Re − Im` of `exp(−2πi q k / I)`, times the sign `d_k`.
pub fn srft_matrix(i_dim: usize, signs: &[f64], rows: &[usize]) -> DenseMatrix {
    DenseMatrix::from_fn(rows.len(), i_dim, |l, k| {
        let theta = -2.0 * std::f64::consts::PI * (rows[l] * k) as f64 / i_dim as f64;
        let w = Complex::from_polar(1.0, theta);
        signs[k] * (w.re - w.im)
    })
}

pub fn factor_dense(f: &Factor) -> DenseMatrix {
    f.to_dense()
}

pub fn vec_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Checks the structural ID properties: `P[:, j]` is exactly the identity,
/// `σ_min(P) ≥ 1 − 1e-8` and `‖P‖₂ ≤ 10 √(4K(R−K)+1)`.
pub fn check_id_structure(id: &sketchid::InterpolativeDecomposition) -> Result<(), String> {
    let (k, r) = (id.k, id.p.cols());
    if id.j.len() != k || id.p.rows() != k {
        return Err(format!("shape: j has {} entries, P is {}x{}", id.j.len(), id.p.rows(), r));
    }
    let mut seen = vec![false; r];
    for &c in &id.j {
        if c >= r || std::mem::replace(&mut seen[c], true) {
            return Err(format!("index {c} repeated or out of range"));
        }
    }
    for (t, &c) in id.j.iter().enumerate() {
        for s in 0..k {
            let want = if s == t { 1.0 } else { 0.0 };
            if id.p[(s, c)] != want {
                return Err(format!("P[{s}, {c}] = {} is not {want}", id.p[(s, c)]));
            }
        }
    }
    let sv = sv_oracle(&id.p);
    let smin = sv[k - 1];
    if smin < 1.0 - 1e-8 {
        return Err(format!("sigma_min(P) = {smin}"));
    }
    let bound = 10.0 * id.p_norm_bound();
    if sv[0] > bound {
        return Err(format!("||P|| = {} exceeds {bound}", sv[0]));
    }
    Ok(())
}

/// Exact `‖A[:, j] P − A‖₂` from the SVD oracle.
pub fn id_error<A: ColumnSource>(a: &A, id: &sketchid::InterpolativeDecomposition) -> f64 {
    let d = dense_of(a);
    spectral_norm(&id.reconstruct(&d).unwrap().sub(&d).unwrap())
}
