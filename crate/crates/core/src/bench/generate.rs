use crate::cp::CpTensor;
use crate::error::{Error, Result};
use crate::linalg::{Factor, SparseMatrix};
use crate::rng;

/// Value at which synthetic spectra level off.
pub const SPECTRUM_FLOOR: f64 = 1e-8;

/// Target singular values of [`gen_synthetic_matrix`]: `2K` values decaying
/// geometrically from 1 to `1e-8` over the first `K`, then constant.
pub fn matrix_spectrum(k: usize) -> Vec<f64> {
    (0..2 * k)
        .map(|i| {
            if i >= k {
                SPECTRUM_FLOOR
            } else if k == 1 {
                1.0
            } else {
                10f64.powf(-8.0 * i as f64 / (k - 1) as f64)
            }
        })
        .collect()
}

/// S-values of [`gen_synthetic_tensor_with_decay`]: `10^(−8(r−1)/R)` for the
/// first `decay_rank` terms, `1e-8` afterwards.
pub fn tensor_svalues(rank: usize, decay_rank: usize) -> Vec<f64> {
    (0..rank)
        .map(|r| {
            if r < decay_rank {
                10f64.powf(-8.0 * r as f64 / rank as f64)
            } else {
                SPECTRUM_FLOOR
            }
        })
        .collect()
}

fn unit_gaussian(g: &mut rng::SketchRng, n: usize) -> Vec<f64> {
    loop {
        let mut v = rng::normal_vec(g, n);
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm > 0.0 {
            v.iter_mut().for_each(|x| *x /= nrm);
            return v;
        }
    }
}

/// Sparse `rows x cols` matrix `Σ_{i<2K} σ_i u_i v_iᵀ` with the spectrum of
/// [`matrix_spectrum`] and roughly `density·rows·cols` nonzeros.
///
/// Every column belongs to two distinct terms and every term owns at least
/// one column. `u_i` has `round(density·rows/2)` random Gaussian entries, so a
/// column holds about `density·rows` nonzeros. Random sparse directions are
/// nearly orthogonal, so the realized spectrum approximates the targets and
/// `σ_{K+1} ≤ K·1e-8` holds exactly.
pub fn gen_synthetic_matrix(rows: usize, cols: usize, k: usize, density: f64, seed: u64) -> Result<SparseMatrix> {
    if k == 0 || 2 * k > rows.min(cols) {
        return Err(Error::arg(format!(
            "need 1 <= 2K <= min(I, R); got K = {k} for a {rows}x{cols} matrix"
        )));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::arg(format!("density {density} must lie in (0, 1]")));
    }
    if density * rows as f64 <= 4.0 - 1e-12 {
        return Err(Error::arg(format!(
            "density {density} leaves fewer than 4 expected nonzeros per column of length {rows}"
        )));
    }
    let terms = 2 * k;
    let mut g = rng::seeded(seed);

    let mut order: Vec<usize> = (0..terms).collect();
    rng::shuffle(&mut g, &mut order);
    let mut cols_of: Vec<Vec<usize>> = vec![Vec::new(); terms];
    for j in 0..cols {
        let first = if j < terms { order[j] } else { rng::index(&mut g, terms) };
        let mut second = rng::index(&mut g, terms - 1);
        if second >= first {
            second += 1;
        }
        cols_of[first].push(j);
        cols_of[second].push(j);
    }

    let m_u = ((density * rows as f64 / 2.0).round() as usize).clamp(1, rows);
    let sigma = matrix_spectrum(k);
    let mut trip = Vec::with_capacity(2 * cols * m_u);
    for (i, cols_i) in cols_of.iter().enumerate() {
        let u_rows = rng::sample_distinct(&mut g, rows, m_u);
        let u = unit_gaussian(&mut g, m_u);
        let v = unit_gaussian(&mut g, cols_i.len());
        for (&c, &vc) in cols_i.iter().zip(&v) {
            for (&r, &ur) in u_rows.iter().zip(&u) {
                trip.push((r, c, sigma[i] * ur * vc));
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, &trip)
}

/// Order-`order` CP tensor with `dim x rank` sparse factors and the s-values
/// of [`tensor_svalues`] with decay over the first `k` terms.
pub fn gen_synthetic_tensor(order: usize, dim: usize, rank: usize, k: usize, density: f64, seed: u64) -> Result<CpTensor> {
    gen_synthetic_tensor_with_decay(order, dim, rank, k, density, seed)
}

/// As [`gen_synthetic_tensor`] with an explicit decay length.
///
/// Each factor column has `round(density·dim)` nonzeros at random rows with
/// Gaussian values, normalized to unit norm.
pub fn gen_synthetic_tensor_with_decay(
    order: usize,
    dim: usize,
    rank: usize,
    decay_rank: usize,
    density: f64,
    seed: u64,
) -> Result<CpTensor> {
    if order == 0 || dim == 0 || rank == 0 {
        return Err(Error::arg("order, dimension and rank must be positive"));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::arg(format!("density {density} must lie in (0, 1]")));
    }
    if density * (dim as f64) < 1.0 - 1e-12 {
        return Err(Error::arg(format!(
            "density {density} leaves columns of length {dim} empty"
        )));
    }
    let per_col = ((density * dim as f64).round() as usize).clamp(1, dim);
    let factors = (0..order)
        .map(|n| {
            let mut g = rng::stream(seed, n as u64);
            let mut trip = Vec::with_capacity(per_col * rank);
            for c in 0..rank {
                let rows = rng::sample_distinct(&mut g, dim, per_col);
                let vals = unit_gaussian(&mut g, per_col);
                trip.extend(rows.into_iter().zip(vals).map(|(r, v)| (r, c, v)));
            }
            SparseMatrix::from_triplets(dim, rank, &trip).map(Factor::Sparse)
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = CpTensor::new(vec![1.0; rank], factors)?;
    CpTensor::from_unit_columns(tensor_svalues(rank, decay_rank), unit.factors().to_vec())
}
