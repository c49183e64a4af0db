use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::linalg::{ColumnSource, DenseMatrix};
use crate::rng;

/// Maximum number of input columns densified at once by [`SrftOp::apply`].
pub const SRFT_BLOCK_COLS: usize = 1024;

/// Subsampled randomized Fourier transform `S_sub F D`.
///
/// `F` is the unnormalized DFT of length `I` (no padding; any length is
/// handled by a mixed-radix or Bluestein transform). Its complex output is
/// mapped to reals row by row as `Re(F x)_q - Im(F x)_q`, i.e. the real row
/// `Σ_k x_k (cos(2πqk/I) + sin(2πqk/I))` (the Hartley kernel), so the
/// operator is real, `L x I`, and sampled row `q = 0` yields column sums.
#[derive(Debug, Clone, PartialEq)]
pub struct SrftOp {
    in_dim: usize,
    sign: Vec<f64>,
    sample_rows: Vec<usize>,
}

impl SrftOp {
    /// Random signs and `out_dim` distinct sampled frequencies.
    pub fn new(in_dim: usize, out_dim: usize, seed: u64) -> Result<Self> {
        if in_dim == 0 || out_dim == 0 {
            return Err(Error::arg("SRFT dimensions must be positive"));
        }
        if out_dim > in_dim {
            return Err(Error::arg(format!(
                "SRFT samples rows without replacement: L = {out_dim} exceeds I = {in_dim}"
            )));
        }
        let mut g = rng::seeded(seed);
        let sign = rng::signs(&mut g, in_dim);
        let sample_rows = rng::sample_distinct(&mut g, in_dim, out_dim);
        Ok(Self {
            in_dim,
            sign,
            sample_rows,
        })
    }

    pub fn from_parts(sign: &[i8], sample_rows: &[usize]) -> Result<Self> {
        let in_dim = sign.len();
        if in_dim == 0 || sample_rows.is_empty() {
            return Err(Error::arg("SRFT needs nonempty signs and samples"));
        }
        if sign.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::arg("signs must be +1 or -1"));
        }
        let mut seen = vec![false; in_dim];
        for &q in sample_rows {
            if q >= in_dim || std::mem::replace(&mut seen[q], true) {
                return Err(Error::arg("sample rows must be distinct and below I"));
            }
        }
        Ok(Self {
            in_dim,
            sign: sign.iter().map(|&s| f64::from(s)).collect(),
            sample_rows: sample_rows.to_vec(),
        })
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.sample_rows.len()
    }

    pub fn sample_rows(&self) -> &[usize] {
        &self.sample_rows
    }

    pub fn sign(&self, i: usize) -> f64 {
        self.sign[i]
    }

    /// Sketch of `a`, densifying at most [`SRFT_BLOCK_COLS`] columns at a time.
    pub fn apply<A: ColumnSource>(&self, a: &A) -> Result<DenseMatrix> {
        if a.nrows() != self.in_dim {
            return Err(Error::dims(format!(
                "SRFT expects {} rows, input has {}",
                self.in_dim,
                a.nrows()
            )));
        }
        let n = self.in_dim;
        let fft = FftPlanner::<f64>::new().plan_fft_forward(n);
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        let mut buf = vec![Complex64::default(); n];
        let mut out = DenseMatrix::zeros(self.out_dim(), a.ncols());

        let mut c0 = 0;
        while c0 < a.ncols() {
            let c1 = (c0 + SRFT_BLOCK_COLS).min(a.ncols());
            let block = a.dense_block(c0, c1);
            for c in 0..block.cols() {
                for ((b, &x), &s) in buf.iter_mut().zip(block.col(c)).zip(&self.sign) {
                    *b = Complex64::new(s * x, 0.0);
                }
                fft.process_with_scratch(&mut buf, &mut scratch);
                for (o, &q) in out.col_mut(c0 + c).iter_mut().zip(&self.sample_rows) {
                    *o = buf[q].re - buf[q].im;
                }
            }
            c0 = c1;
        }
        Ok(out)
    }

    /// The `L x I` real operator, built entry by entry from trigonometric
    /// values.
    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.in_dim;
        DenseMatrix::from_fn(self.out_dim(), n, |l, i| {
            let q = self.sample_rows[l];
            let phase = 2.0 * PI * ((q * i) % n) as f64 / n as f64;
            self.sign[i] * (phase.cos() + phase.sin())
        })
    }
}

pub fn apply_srft<A: ColumnSource>(s: &SrftOp, a: &A) -> Result<DenseMatrix> {
    s.apply(a)
}
