//! Seeded, counter-based randomness shared by every randomized routine.
//!
//! All operators draw from ChaCha8 streams. Integer draws (hashes, signs,
//! permutations) are platform independent, so CountSketch and TensorSketch
//! operators replay bit-identically anywhere. Gaussian draws use the ziggurat
//! sampler from `rand_distr` and replay identically within one build.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type SketchRng = ChaCha8Rng;

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent child seed from `seed` for the given stream label.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(seed ^ splitmix64(stream.wrapping_mul(0xD1B5_4A32_D192_ED03)))
}

pub fn seeded(seed: u64) -> SketchRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A generator on stream `stream` of the ChaCha key derived from `seed`.
pub fn stream(seed: u64, stream: u64) -> SketchRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform index in `0..n`, sampled through `u64` so the result does not
/// depend on the platform's pointer width.
pub fn index(rng: &mut SketchRng, n: usize) -> usize {
    rng.random_range(0..n as u64) as usize
}

/// Uniform bucket in `0..n` from a single `u32` draw.
pub fn bucket(rng: &mut SketchRng, n: u32) -> u32 {
    rng.random_range(0..n)
}

/// `n` independent ±1 values, 64 per generator word.
pub fn signs(rng: &mut SketchRng, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let mut word = rng.next_u64();
        for _ in 0..(n - out.len()).min(64) {
            out.push(if word & 1 == 0 { 1.0 } else { -1.0 });
            word >>= 1;
        }
    }
    out
}

pub fn sign(rng: &mut SketchRng) -> i8 {
    if rng.next_u32() & 1 == 0 {
        1
    } else {
        -1
    }
}

/// In-place Fisher-Yates shuffle.
pub fn shuffle<T>(rng: &mut SketchRng, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = index(rng, i + 1);
        items.swap(i, j);
    }
}

/// `count` distinct indices drawn uniformly from `0..n`, in draw order.
pub fn sample_distinct(rng: &mut SketchRng, n: usize, count: usize) -> Vec<usize> {
    assert!(count <= n);
    if count * 4 >= n {
        let mut all: Vec<usize> = (0..n).collect();
        // partial Fisher-Yates
        for i in 0..count {
            let j = i + index(rng, n - i);
            all.swap(i, j);
        }
        all.truncate(count);
        all
    } else {
        let mut seen = std::collections::HashSet::with_capacity(count * 2);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let i = index(rng, n);
            if seen.insert(i) {
                out.push(i);
            }
        }
        out
    }
}

pub fn normal(rng: &mut SketchRng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn normal_vec(rng: &mut SketchRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| normal(rng)).collect()
}
