use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::{check_modes, for_each_multi_index, CountSketchMode, CountSketchOp};
use crate::error::{Error, Result};
use crate::linalg::{ColumnSource, DenseMatrix};
use crate::rng;

/// TensorSketch operator on Khatri-Rao structured operands.
///
/// Holds one independent CountSketch `(h_n, s_n)` per mode. The composite
/// hash of a multi-index is `H(i_1..i_N) = (Σ h_n(i_n)) mod L` (0-based) and
/// its sign `S(i_1..i_N) = Π s_n(i_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorSketchOp {
    out_dim: usize,
    modes: Vec<CountSketchOp>,
}

impl TensorSketchOp {
    pub fn new(mode_dims: &[usize], out_dim: usize, seed: u64) -> Result<Self> {
        if mode_dims.is_empty() {
            return Err(Error::arg("TensorSketch needs at least one mode"));
        }
        let modes = mode_dims
            .iter()
            .enumerate()
            .map(|(n, &d)| {
                CountSketchOp::new(d, out_dim, CountSketchMode::Standard, rng::derive_seed(seed, n as u64))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { out_dim, modes })
    }

    /// Operator assembled from explicit per-mode CountSketches sharing `L`.
    pub fn from_modes(modes: Vec<CountSketchOp>) -> Result<Self> {
        let out_dim = modes.first().ok_or_else(|| Error::arg("no modes"))?.out_dim();
        if modes.iter().any(|m| m.out_dim() != out_dim) {
            return Err(Error::dims("per-mode sketches must share the output dimension"));
        }
        Ok(Self { out_dim, modes })
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn order(&self) -> usize {
        self.modes.len()
    }

    pub fn mode_dims(&self) -> Vec<usize> {
        self.modes.iter().map(|m| m.in_dim()).collect()
    }

    pub fn mode(&self, n: usize) -> &CountSketchOp {
        &self.modes[n]
    }

    /// Composite hash `H` of a multi-index (0-based bucket).
    pub fn composite_hash(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.modes)
            .map(|(&i, m)| m.bucket(i))
            .sum::<usize>()
            % self.out_dim
    }

    /// Composite sign `S` of a multi-index.
    pub fn composite_sign(&self, idx: &[usize]) -> f64 {
        idx.iter().zip(&self.modes).map(|(&i, m)| m.sign(i)).product()
    }

    /// `T M` with `M = (A(1) ⊙ … ⊙ A(N)) diag(scale)`, evaluated as
    /// `IFFT(Π_n FFT(S(n) A(n)))` column by column, never forming `M`.
    pub fn apply<F: ColumnSource>(&self, factors: &[F], scale: &[f64]) -> Result<DenseMatrix> {
        let r = check_modes(&self.mode_dims(), factors, scale)?;
        let l = self.out_dim;
        let sketches = self
            .modes
            .iter()
            .zip(factors)
            .map(|(m, f)| m.apply(f))
            .collect::<Result<Vec<_>>>()?;

        let mut planner = FftPlanner::<f64>::new();
        let fwd = planner.plan_fft_forward(l);
        let inv = planner.plan_fft_inverse(l);
        let mut scratch = vec![Complex64::default(); fwd.get_inplace_scratch_len().max(inv.get_inplace_scratch_len())];
        let mut acc = vec![Complex64::default(); l];
        let mut buf = vec![Complex64::default(); l];
        let mut out = DenseMatrix::zeros(l, r);
        let norm = 1.0 / l as f64;

        for c in 0..r {
            for (n, y) in sketches.iter().enumerate() {
                let target = if n == 0 { &mut acc } else { &mut buf };
                for (t, &v) in target.iter_mut().zip(y.col(c)) {
                    *t = Complex64::new(v, 0.0);
                }
                fwd.process_with_scratch(target, &mut scratch);
                if n > 0 {
                    acc.iter_mut().zip(&buf).for_each(|(a, b)| *a *= b);
                }
            }
            inv.process_with_scratch(&mut acc, &mut scratch);
            let s = scale[c] * norm;
            for (o, a) in out.col_mut(c).iter_mut().zip(&acc) {
                *o = a.re * s;
            }
        }
        Ok(out)
    }

    /// The `L x Π I_n` matrix with entry `S(idx)` at row `H(idx)`, columns in
    /// Khatri-Rao row order (first mode slowest).
    pub fn to_dense(&self) -> DenseMatrix {
        let dims = self.mode_dims();
        let total: usize = dims.iter().product();
        let mut t = DenseMatrix::zeros(self.out_dim, total);
        for_each_multi_index(&dims, |lin, idx| {
            t[(self.composite_hash(idx), lin)] = self.composite_sign(idx);
        });
        t
    }
}

pub fn apply_tensorsketch<F: ColumnSource>(t: &TensorSketchOp, factors: &[F], scale: &[f64]) -> Result<DenseMatrix> {
    t.apply(factors, scale)
}
