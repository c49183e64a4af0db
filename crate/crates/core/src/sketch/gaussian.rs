use super::{check_modes, for_each_multi_index};
use crate::error::{Error, Result};
use crate::linalg::{ColumnSource, DenseMatrix};
use crate::rng;

/// Gaussian sketch `Ω` with iid standard normal entries, generated lazily.
///
/// Column `i` of `Ω` (the `L` weights applied to input row `i`) is drawn from
/// its own ChaCha stream, so any subset of columns can be realized on demand
/// and always agrees with the fully materialized operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussianOp {
    in_dim: usize,
    out_dim: usize,
    seed: u64,
}

impl GaussianOp {
    pub fn new(in_dim: usize, out_dim: usize, seed: u64) -> Result<Self> {
        if in_dim == 0 || out_dim == 0 {
            return Err(Error::arg("Gaussian sketch dimensions must be positive"));
        }
        Ok(Self {
            in_dim,
            out_dim,
            seed,
        })
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Column `i` of `Ω`.
    pub fn column(&self, i: usize) -> Vec<f64> {
        let mut g = rng::stream(self.seed, i as u64);
        rng::normal_vec(&mut g, self.out_dim)
    }

    /// `Ω a`. Only the columns of `Ω` that meet a nonzero row of `a` are
    /// generated.
    pub fn apply<A: ColumnSource>(&self, a: &A) -> Result<DenseMatrix> {
        if a.nrows() != self.in_dim {
            return Err(Error::dims(format!(
                "Gaussian sketch expects {} rows, input has {}",
                self.in_dim,
                a.nrows()
            )));
        }
        let l = self.out_dim;
        let mut slot = vec![u32::MAX; self.in_dim];
        let mut used = 0u32;
        for j in 0..a.ncols() {
            a.for_each_in_col(j, |i, v| {
                if v != 0.0 && slot[i] == u32::MAX {
                    slot[i] = used;
                    used += 1;
                }
            });
        }
        let mut omega = vec![0.0; used as usize * l];
        for (i, &s) in slot.iter().enumerate() {
            if s != u32::MAX {
                let mut g = rng::stream(self.seed, i as u64);
                for w in &mut omega[s as usize * l..(s as usize + 1) * l] {
                    *w = rng::normal(&mut g);
                }
            }
        }
        let mut out = DenseMatrix::zeros(l, a.ncols());
        for j in 0..a.ncols() {
            let dst = out.col_mut(j);
            a.for_each_in_col(j, |i, v| {
                if v != 0.0 {
                    let s = slot[i] as usize;
                    for (d, w) in dst.iter_mut().zip(&omega[s * l..(s + 1) * l]) {
                        *d += v * w;
                    }
                }
            });
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.out_dim, self.in_dim);
        for i in 0..self.in_dim {
            for (l, w) in self.column(i).into_iter().enumerate() {
                m[(l, i)] = w;
            }
        }
        m
    }
}

pub fn apply_gaussian<A: ColumnSource>(g: &GaussianOp, a: &A) -> Result<DenseMatrix> {
    g.apply(a)
}

/// Khatri-Rao structured Gaussian sketch `Ω = (Ω(1) ⊙ … ⊙ Ω(N))ᵀ`, where each
/// `Ω(n)ᵀ` is an independent [`GaussianOp`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianKrOp {
    modes: Vec<GaussianOp>,
}

impl GaussianKrOp {
    /// Mode 0 uses `seed` itself, so a single-mode operator coincides with
    /// `GaussianOp::new(I, L, seed)`; later modes use derived seeds.
    pub fn new(mode_dims: &[usize], out_dim: usize, seed: u64) -> Result<Self> {
        if mode_dims.is_empty() {
            return Err(Error::arg("Khatri-Rao Gaussian sketch needs at least one mode"));
        }
        let modes = mode_dims
            .iter()
            .enumerate()
            .map(|(n, &d)| {
                let s = if n == 0 { seed } else { rng::derive_seed(seed, n as u64) };
                GaussianOp::new(d, out_dim, s)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { modes })
    }

    pub fn from_modes(modes: Vec<GaussianOp>) -> Result<Self> {
        let l = modes.first().ok_or_else(|| Error::arg("no modes"))?.out_dim();
        if modes.iter().any(|m| m.out_dim() != l) {
            return Err(Error::dims("per-mode sketches must share the output dimension"));
        }
        Ok(Self { modes })
    }

    pub fn modes(&self) -> &[GaussianOp] {
        &self.modes
    }

    pub fn out_dim(&self) -> usize {
        self.modes[0].out_dim()
    }

    pub fn mode_dims(&self) -> Vec<usize> {
        self.modes.iter().map(|m| m.in_dim()).collect()
    }

    /// `Ω M` with `M = (A(1) ⊙ … ⊙ A(N)) diag(scale)`: starting from
    /// `Ω(1)ᵀ A(1) diag(scale)`, the per-mode sketches are multiplied in
    /// elementwise, giving `y_lr = scale_r Π_n ⟨ω(n)_l, a(n)_r⟩`.
    pub fn apply<F: ColumnSource>(&self, factors: &[F], scale: &[f64]) -> Result<DenseMatrix> {
        check_modes(&self.mode_dims(), factors, scale)?;
        let mut y = self.modes[0].apply(&factors[0])?;
        y.scale_columns(scale);
        for (m, f) in self.modes.iter().zip(factors).skip(1) {
            y.hadamard_assign(&m.apply(f)?)?;
        }
        Ok(y)
    }

    /// The `L x Π I_n` operator, columns in Khatri-Rao row order.
    pub fn to_dense(&self) -> DenseMatrix {
        let dims = self.mode_dims();
        let per_mode: Vec<DenseMatrix> = self.modes.iter().map(|m| m.to_dense()).collect();
        let total: usize = dims.iter().product();
        let l = self.out_dim();
        let mut out = DenseMatrix::zeros(l, total);
        for_each_multi_index(&dims, |lin, idx| {
            for row in 0..l {
                out[(row, lin)] = idx
                    .iter()
                    .zip(&per_mode)
                    .map(|(&i, w)| w[(row, i)])
                    .product();
            }
        });
        out
    }
}

pub fn apply_gaussian_kr<F: ColumnSource>(g: &GaussianKrOp, factors: &[F], scale: &[f64]) -> Result<DenseMatrix> {
    g.apply(factors, scale)
}
