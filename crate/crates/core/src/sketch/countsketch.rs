use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ColumnSource, DenseMatrix};
use crate::rng;

/// Bucket-map construction for [`CountSketchOp`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountSketchMode {
    /// Every `h(i)` independent and uniform on the `L` buckets.
    Standard,
    /// `h(i) = f(π(i))`: a random permutation of `[0, 1, …, L-1, x_L, …, x_{I-1}]`
    /// with iid uniform `x`. Every bucket is hit, so the operator has full
    /// row rank.
    Surjective,
}

/// CountSketch `S = Φ D`, stored as a bucket map and a sign vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CountSketchOp {
    out_dim: usize,
    bucket: Vec<u32>,
    sign: Vec<f64>,
    mode: CountSketchMode,
}

impl CountSketchOp {
    pub fn new(in_dim: usize, out_dim: usize, mode: CountSketchMode, seed: u64) -> Result<Self> {
        if in_dim == 0 || out_dim == 0 {
            return Err(Error::arg("CountSketch dimensions must be positive"));
        }
        if out_dim > u32::MAX as usize {
            return Err(Error::arg("sketch dimension too large"));
        }
        if mode == CountSketchMode::Surjective && out_dim > in_dim {
            return Err(Error::arg(format!(
                "surjective CountSketch needs L <= I, got L = {out_dim} > I = {in_dim}"
            )));
        }
        let mut g = rng::seeded(seed);
        let mut bucket: Vec<u32> = (0..in_dim).map(|_| rng::bucket(&mut g, out_dim as u32)).collect();
        if mode == CountSketchMode::Surjective {
            // L distinct rows take the buckets 0..L in random order
            for (b, i) in rng::sample_distinct(&mut g, in_dim, out_dim).into_iter().enumerate() {
                bucket[i] = b as u32;
            }
        }
        let sign = rng::signs(&mut g, in_dim);
        Ok(Self {
            out_dim,
            bucket,
            sign,
            mode,
        })
    }

    /// Operator with explicitly given (0-based) buckets and ±1 signs.
    pub fn from_parts(out_dim: usize, bucket: &[usize], sign: &[i8]) -> Result<Self> {
        if bucket.len() != sign.len() || bucket.is_empty() {
            return Err(Error::dims("bucket and sign arrays must be nonempty and equally long"));
        }
        if out_dim == 0 || bucket.iter().any(|&b| b >= out_dim) {
            return Err(Error::arg("bucket index outside 0..L"));
        }
        if sign.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::arg("signs must be +1 or -1"));
        }
        let hit = {
            let mut seen = vec![false; out_dim];
            bucket.iter().for_each(|&b| seen[b] = true);
            seen.iter().all(|&s| s)
        };
        Ok(Self {
            out_dim,
            bucket: bucket.iter().map(|&b| b as u32).collect(),
            sign: sign.iter().map(|&s| f64::from(s)).collect(),
            mode: if hit {
                CountSketchMode::Surjective
            } else {
                CountSketchMode::Standard
            },
        })
    }

    pub fn in_dim(&self) -> usize {
        self.bucket.len()
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn mode(&self) -> CountSketchMode {
        self.mode
    }

    #[inline]
    pub fn bucket(&self, i: usize) -> usize {
        self.bucket[i] as usize
    }

    #[inline]
    pub fn sign(&self, i: usize) -> f64 {
        self.sign[i]
    }

    pub fn buckets(&self) -> impl Iterator<Item = usize> + '_ {
        self.bucket.iter().map(|&b| b as usize)
    }

    /// `S a` in a single pass over the stored entries of `a`.
    pub fn apply<A: ColumnSource>(&self, a: &A) -> Result<DenseMatrix> {
        if a.nrows() != self.in_dim() {
            return Err(Error::dims(format!(
                "CountSketch expects {} rows, input has {}",
                self.in_dim(),
                a.nrows()
            )));
        }
        let l = self.out_dim;
        let mut data = Vec::with_capacity(l * a.ncols());
        for j in 0..a.ncols() {
            data.resize(data.len() + l, 0.0);
            let dst = &mut data[j * l..];
            a.for_each_in_col(j, |i, v| {
                dst[self.bucket[i] as usize] += self.sign[i] * v;
            });
        }
        Ok(DenseMatrix::from_raw(l, a.ncols(), data))
    }

    /// The `L x I` matrix `Φ D`.
    pub fn to_dense(&self) -> DenseMatrix {
        let mut s = DenseMatrix::zeros(self.out_dim, self.in_dim());
        for i in 0..self.in_dim() {
            s[(self.bucket(i), i)] = self.sign[i];
        }
        s
    }
}

pub fn apply_countsketch<A: ColumnSource>(s: &CountSketchOp, a: &A) -> Result<DenseMatrix> {
    s.apply(a)
}
