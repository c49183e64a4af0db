//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Criteria share one lock so timing measurements never overlap.

mod common;

use std::io::Write;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use sketchid::bench::{run_experiment, ExperimentConfig, ExperimentResults};
use sketchid::cp::{cp_diff_norm, gram_hadamard, tensor_id};
use sketchid::estimate::operand_norm;
use sketchid::id::{interpolative_decomposition, sketch_matrix};
use sketchid::linalg::{DenseMatrix, Factor, SparseMatrix};
use sketchid::sketch::{CountSketchMode, CountSketchOp, GaussianKrOp, GaussianOp, SrftOp, TensorSketchOp};
use sketchid::{CpTensor, IdMethod, TensorIdMethod};

static SERIAL: Mutex<()> = Mutex::new(());

/// Runs one criterion under the lock, prints its line and fails the test
/// when the check or the time budget is missed.
fn criterion(id: u32, name: &str, budget: Duration, body: impl FnOnce() -> Result<String, String>) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (pass, detail) = match outcome {
        Ok(d) if elapsed <= budget => (true, d),
        Ok(d) => (false, format!("{d}; over time budget {budget:?}")),
        Err(d) => (false, d),
    };
    let line = format!(
        "criterion {id:>2} {} {name}: {detail} [{:.1}s]\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    // written to the raw handle so the line shows without --nocapture
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(pass, "{}", line.trim_end());
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn operand(rows: usize, cols: usize, sparse_input: bool, g: &mut rand_chacha::ChaCha20Rng) -> Factor {
    if sparse_input {
        sparse(rows, cols, 0.1, g).into()
    } else {
        gaussian(rows, cols, g).into()
    }
}

/// Dense Khatri-Rao Gaussian operator from the per-mode columns: entry
/// `(l, (i_1..i_N))` is `Π_n Ω_n[l, i_n]`.
fn kr_gaussian_matrix(op: &GaussianKrOp) -> DenseMatrix {
    let dims = op.mode_dims();
    let cols: Vec<Vec<Vec<f64>>> = op
        .modes()
        .iter()
        .zip(&dims)
        .map(|(m, &d)| (0..d).map(|i| m.column(i)).collect())
        .collect();
    let idx = multi_indices(&dims);
    DenseMatrix::from_fn(op.out_dim(), idx.len(), |l, c| {
        idx[c].iter().enumerate().map(|(n, &i)| cols[n][i][l]).product()
    })
}

fn gaussian_matrix(op: &GaussianOp) -> DenseMatrix {
    let cols: Vec<Vec<f64>> = (0..op.in_dim()).map(|i| op.column(i)).collect();
    DenseMatrix::from_fn(op.out_dim(), op.in_dim(), |l, i| cols[i][l])
}

#[test]
fn criterion_01_sketch_oracles() {
    criterion(1, "implicit sketches equal densified operators", Duration::from_secs(60), || {
        let mut g = rng(101);
        let mut worst = [0.0f64; 6];
        for inst in 0..50u64 {
            let rows = g.random_range(2..=200);
            let cols = g.random_range(1..=50);
            let l = g.random_range(1..=rows);
            let a = operand(rows, cols, inst % 2 == 0, &mut g);
            let ad = a.to_dense();

            let cs = CountSketchOp::new(rows, l, CountSketchMode::Standard, inst).unwrap();
            let su = CountSketchOp::new(rows, l, CountSketchMode::Surjective, inst).unwrap();
            let sr = SrftOp::new(rows, l, inst).unwrap();
            let ga = GaussianOp::new(rows, l, inst).unwrap();
            let signs: Vec<f64> = (0..rows).map(|i| sr.sign(i)).collect();
            let errs = [
                rel_fro(&cs.apply(&a).unwrap(), &countsketch_matrix(&cs).matmul(&ad).unwrap()),
                rel_fro(&su.apply(&a).unwrap(), &countsketch_matrix(&su).matmul(&ad).unwrap()),
                rel_fro(&sr.apply(&a).unwrap(), &srft_matrix(rows, &signs, sr.sample_rows()).matmul(&ad).unwrap()),
                rel_fro(&ga.apply(&a).unwrap(), &gaussian_matrix(&ga).matmul(&ad).unwrap()),
            ];
            for (w, e) in worst.iter_mut().zip(errs) {
                *w = w.max(e);
            }

            let order = g.random_range(1..=4);
            let dim = g.random_range(1..=[0, 50, 14, 6, 4][order]);
            let r = g.random_range(1..=8);
            let lt = g.random_range(1..=40);
            let dims = vec![dim; order];
            let factors: Vec<Factor> = (0..order).map(|_| operand(dim, r, inst % 3 == 0, &mut g)).collect();
            let dense: Vec<DenseMatrix> = factors.iter().map(|f| f.to_dense()).collect();
            let lam: Vec<f64> = (0..r).map(|_| g.random_range(-2.0..2.0)).collect();
            let m = khatri_rao(&dense, &lam);
            let kr = GaussianKrOp::new(&dims, lt, inst).unwrap();
            let ts = TensorSketchOp::new(&dims, lt, inst).unwrap();
            worst[4] = worst[4].max(rel_fro(&kr.apply(&factors, &lam).unwrap(), &kr_gaussian_matrix(&kr).matmul(&m).unwrap()));
            worst[5] = worst[5].max(rel_fro(&ts.apply(&factors, &lam).unwrap(), &tensorsketch_matrix(&ts).matmul(&m).unwrap()));
        }
        let names = ["countsketch", "surjective", "srft", "gaussian", "kr-gaussian", "tensorsketch"];
        let detail = names
            .iter()
            .zip(worst)
            .map(|(n, w)| format!("{n} {w:.1e}"))
            .collect::<Vec<_>>()
            .join(", ");
        ensure(worst.iter().all(|&w| w <= 1e-11), || format!("worst errors {detail}"))?;
        Ok(format!("50 instances each, worst {detail}"))
    });
}

#[test]
fn criterion_02_tensorsketch_identity() {
    criterion(2, "FFT TensorSketch equals composite-hash CountSketch", Duration::from_secs(30), || {
        let mut worst = 0.0f64;
        for seed in 0..100u64 {
            let mut g = rng(200 + seed);
            let order = 2 + (seed % 2) as usize;
            let dims: Vec<usize> = (0..order).map(|_| g.random_range(2..=12)).collect();
            let r = g.random_range(1..=6);
            let l = g.random_range(2..=30);
            let factors: Vec<DenseMatrix> = dims.iter().map(|&d| gaussian(d, r, &mut g)).collect();
            let lam: Vec<f64> = (0..r).map(|_| g.random_range(0.1..2.0)).collect();
            let ts = TensorSketchOp::new(&dims, l, seed).unwrap();
            let want = tensorsketch_matrix(&ts).matmul(&khatri_rao(&factors, &lam)).unwrap();
            worst = worst.max(rel_fro(&ts.apply(&factors, &lam).unwrap(), &want));
        }
        ensure(worst <= 1e-12, || format!("worst relative error {worst:.2e}"))?;
        Ok(format!("100 seeds, N in {{2, 3}}, worst {worst:.1e}"))
    });
}

#[test]
fn criterion_03_id_properties() {
    criterion(3, "ID structure, exactness and error bound", Duration::from_secs(120), || {
        let mut g = rng(300);
        let mut worst_ratio = 0.0f64;
        let mut ids = 0;
        for inst in 0..200u64 {
            let cols = g.random_range(2..=40);
            let rows = cols + g.random_range(11..=60);
            let a: Factor = if inst % 4 == 3 {
                let mut s = sparse(rows, cols, 0.2, &mut g);
                if s.nnz() == 0 {
                    s = SparseMatrix::from_triplets(rows, cols, &[(0, 0, 1.0)]).unwrap();
                }
                s.into()
            } else {
                let decay = g.random_range(0.3..0.95);
                let sigma: Vec<f64> = (0..cols).map(|i| f64::powi(decay, i as i32)).collect();
                with_spectrum(rows, cols, &sigma, &mut g).into()
            };
            let ad = a.to_dense();
            let sv = sv_oracle(&ad);
            let k = g.random_range(1..=cols);
            for m in IdMethod::ALL {
                let id = interpolative_decomposition(&a, k, m, k + 10, inst).map_err(|e| format!("{m}: {e}"))?;
                check_id_structure(&id).map_err(|e| format!("instance {inst} {m}: {e}"))?;
                let err = spectral_norm(&id.reconstruct(&ad).unwrap().sub(&ad).unwrap());
                let tail = sv.get(k).copied().unwrap_or(0.0);
                let bound = 10.0 * tail * ((4 * k * (cols - k) + 1) as f64).sqrt();
                ensure(err <= bound + 1e-12 * sv[0], || {
                    format!("instance {inst} {m} k={k}: error {err:.3e} exceeds {bound:.3e}")
                })?;
                if bound > 1e-8 * sv[0] {
                    worst_ratio = worst_ratio.max(err / bound);
                }

                let full = interpolative_decomposition(&a, cols, m, cols + 10, inst).unwrap();
                check_id_structure(&full).map_err(|e| format!("instance {inst} {m} full rank: {e}"))?;
                let rel = rel_fro(&full.reconstruct(&ad).unwrap(), &ad);
                ensure(rel <= 1e-10, || format!("instance {inst} {m}: K = R error {rel:.2e}"))?;
                ids += 2;
            }
        }
        Ok(format!("{ids} IDs checked, largest error / (10x bound) {worst_ratio:.2e}"))
    });
}

#[test]
fn criterion_04_gram_identity() {
    criterion(4, "Gram Hadamard identity and exact difference norms", Duration::from_secs(60), || {
        let mut g = rng(400);
        let (mut worst_gram, mut worst_diff) = (0.0f64, 0.0f64);
        for inst in 0..50u64 {
            let order = g.random_range(1..=4);
            let max_dim = [0, 1000, 300, 46, 17][order];
            let dims: Vec<usize> = (0..order).map(|_| g.random_range(2..=max_dim)).collect();
            let r = g.random_range(2..=12);
            let factors: Vec<Factor> = dims
                .iter()
                .map(|&d| if inst % 2 == 0 { operand(d, r, false, &mut g) } else { dense_nonzero_sparse(d, r, &mut g) })
                .collect();
            let lam: Vec<f64> = (0..r).map(|i| 0.8f64.powi(i as i32)).collect();
            let x = CpTensor::new(lam, factors).unwrap();
            let dense: Vec<DenseMatrix> = x.factors().iter().map(|f| f.to_dense()).collect();
            let m = khatri_rao(&dense, x.svalues());
            let mtm = m.t_matmul(&m).unwrap();
            let gram = gram_hadamard(&x);
            worst_gram = worst_gram.max(gram.sub(&mtm).unwrap().max_abs() / mtm.max_abs());

            let k = g.random_range(1..r);
            let method = [TensorIdMethod::Gaussian, TensorIdMethod::Gram][inst as usize % 2];
            let res = tensor_id(&x, k, method, k + 3, inst).unwrap();
            let mx = m.matvec(&vec![1.0; r]);
            let rdense: Vec<DenseMatrix> = res.reduced.factors().iter().map(|f| f.to_dense()).collect();
            let my = khatri_rao(&rdense, res.reduced.svalues()).matvec(&vec![1.0; k]);
            let want = vec_norm(&mx.iter().zip(&my).map(|(a, b)| a - b).collect::<Vec<_>>());
            let got = cp_diff_norm(&x, &res.reduced).unwrap();
            worst_diff = worst_diff.max((got - want).abs() / want);
        }
        ensure(worst_gram <= 1e-12 && worst_diff <= 1e-9, || {
            format!("gram {worst_gram:.2e}, diff norm {worst_diff:.2e}")
        })?;
        Ok(format!("50 tensors up to 1e5 entries, gram {worst_gram:.1e}, diff norm {worst_diff:.1e}"))
    });
}

/// Sparse factor whose columns are guaranteed nonempty.
fn dense_nonzero_sparse(d: usize, r: usize, g: &mut rand_chacha::ChaCha20Rng) -> Factor {
    let s = sparse(d, r, 0.3, g);
    let mut trip: Vec<_> = (0..r).map(|c| (c % d, c, 1.0)).collect();
    for c in 0..r {
        let (ri, vs) = s.col(c);
        trip.extend(ri.iter().zip(vs).map(|(&i, &v)| (i, c, v)));
    }
    SparseMatrix::from_triplets(d, r, &trip).unwrap().into()
}

fn within_factor(a: f64, b: f64, f: f64) -> bool {
    a <= f * b && b <= f * a
}

fn median_error(res: &ExperimentResults, method: &str, size: usize) -> f64 {
    res.summary(method, size).and_then(|s| s.median_relative_error).unwrap_or(f64::NAN)
}

#[test]
fn criterion_05_matrix_sweep() {
    criterion(5, "desk-scale matrix ID sweep", Duration::from_secs(600), || {
        let cfg = ExperimentConfig::from_json(
            r#"{"kind": "matrix", "sizes": [2000, 8000, 32000], "R": 500, "K": 100, "L": 110,
                "density": 0.005, "methods": ["gaussian", "srft", "countsketch"], "trials": 10, "seed": 5}"#,
        )
        .unwrap();
        let res = run_experiment(&cfg).map_err(|e| e.to_string())?;
        let failures: usize = res.summaries.iter().map(|s| s.failures).sum();
        ensure(failures == 0, || format!("{failures} failed trials"))?;
        let mut parts = Vec::new();
        for &size in &cfg.sizes {
            let cs = median_error(&res, "countsketch", size);
            let ga = median_error(&res, "gaussian", size);
            let sr = median_error(&res, "srft", size);
            ensure(within_factor(cs, ga, 10.0) && within_factor(cs, sr, 10.0), || {
                format!("I={size}: countsketch {cs:.2e}, gaussian {ga:.2e}, srft {sr:.2e}")
            })?;
            parts.push(format!("I={size} cs/ga/srft {cs:.1e}/{ga:.1e}/{sr:.1e}"));
        }
        let wall = |m: &str| res.summary(m, 32000).and_then(|s| s.median_wall_time_seconds).unwrap();
        let (cs, ga, sr) = (wall("countsketch"), wall("gaussian"), wall("srft"));
        ensure(cs < ga && cs < sr, || format!("wall times at 32000: cs {cs:.3e}, ga {ga:.3e}, srft {sr:.3e}"))?;
        parts.push(format!("wall at 32000 cs/ga/srft {:.1}/{:.1}/{:.1} ms", cs * 1e3, ga * 1e3, sr * 1e3));
        Ok(parts.join("; "))
    });
}

#[test]
fn criterion_06_tensor_sweep() {
    criterion(6, "desk-scale tensor ID sweep", Duration::from_secs(600), || {
        let cfg = ExperimentConfig::from_json(
            r#"{"kind": "tensor", "sizes": [200, 1000], "N": 5, "R": 200, "K": 20, "density": 0.05,
                "methods": ["tensorsketch", "gaussian", "gram"], "trials": 10, "seed": 6}"#,
        )
        .unwrap();
        let res = run_experiment(&cfg).map_err(|e| e.to_string())?;
        let failures: usize = res.summaries.iter().map(|s| s.failures).sum();
        ensure(failures == 0, || format!("{failures} failed trials"))?;
        let mut parts = Vec::new();
        for &size in &cfg.sizes {
            let ts = median_error(&res, "tensorsketch", size);
            let ga = median_error(&res, "gaussian", size);
            let gr = median_error(&res, "gram", size);
            ensure(within_factor(ts, ga, 10.0), || format!("I={size}: tensorsketch {ts:.2e} vs gaussian {ga:.2e}"))?;
            ensure(gr <= 2.0 * ts && gr <= 2.0 * ga, || {
                format!("I={size}: gram {gr:.2e} vs tensorsketch {ts:.2e}, gaussian {ga:.2e}")
            })?;
            parts.push(format!("I={size} ts/ga/gram {ts:.1e}/{ga:.1e}/{gr:.1e}"));
        }
        Ok(parts.join("; "))
    });
}

#[test]
fn criterion_07_embedding_events() {
    criterion(7, "subspace embedding and conditioning events", Duration::from_secs(300), || {
        let beta = 10;
        let (i_dim, k) = (2000, 5);
        let l = 2 * beta * (k * k + k);
        let mut g = rng(700);
        let mut embed = 0;
        for trial in 0..200u64 {
            let u = orthonormal(i_dim, k, &mut g);
            let s = CountSketchOp::new(i_dim, l, CountSketchMode::Standard, trial).unwrap();
            let su = s.apply(&u).unwrap();
            let dev = su.t_matmul(&su).unwrap().sub(&DenseMatrix::identity(k)).unwrap();
            if spectral_norm(&dev) <= 0.5 {
                embed += 1;
            }
        }

        let (n, r, dim) = (2, 3, 60);
        let lt = 2 * (2 + 3usize.pow(n as u32)) * beta * r * r;
        let mut cond = 0;
        for trial in 0..200u64 {
            let factors: Vec<DenseMatrix> = (0..n).map(|_| gaussian(dim, r, &mut g)).collect();
            let x = CpTensor::new(vec![1.0, 0.5, 0.25], factors.into_iter().map(Factor::Dense).collect()).unwrap();
            let unit: Vec<DenseMatrix> = x.factors().iter().map(|f| f.to_dense()).collect();
            let m = khatri_rao(&unit, x.svalues());
            let ts = TensorSketchOp::new(&[dim; 2], lt, trial).unwrap();
            let tm = ts.apply(&unit, x.svalues()).unwrap();
            let kappa = |a: &DenseMatrix| {
                let s = sv_oracle(a);
                s[0] / s[r - 1]
            };
            if kappa(&tm) <= 7.0 * kappa(&m) {
                cond += 1;
            }
        }
        ensure(embed >= 180 && cond >= 180, || format!("embedding {embed}/200, conditioning {cond}/200"))?;
        Ok(format!("embedding {embed}/200 at L={l}, conditioning {cond}/200 at L={lt}"))
    });
}

#[test]
fn criterion_08_exact_rank_recovery() {
    criterion(8, "exact-rank recovery with L = k + 10", Duration::from_secs(120), || {
        let mut g = rng(800);
        let k = 8;
        let dense = gaussian(300, k, &mut g).matmul(&gaussian(k, 60, &mut g)).unwrap();
        let sparse_low: Factor = {
            let u = sparse(400, k, 0.05, &mut g).to_dense();
            let v = gaussian(k, 50, &mut g);
            SparseMatrix::from_dense(&u.matmul(&v).unwrap()).into()
        };
        let mut worst = 0.0f64;
        let mut fails = Vec::new();
        for a in [Factor::Dense(dense), sparse_low] {
            let ad = a.to_dense();
            let rank = sv_oracle(&ad).iter().filter(|&&s| s > 1e-10 * spectral_norm(&ad)).count();
            for m in [IdMethod::Gaussian, IdMethod::Srft, IdMethod::CountSketch] {
                for seed in 0..20 {
                    let id = interpolative_decomposition(&a, rank, m, rank + 10, seed).unwrap();
                    let e = rel_fro(&id.reconstruct(&ad).unwrap(), &ad);
                    worst = worst.max(e);
                    if e > 1e-6 {
                        fails.push(format!("{m} seed {seed}: {e:.2e}"));
                    }
                }
            }
        }

        let kt = 5;
        let base = {
            let factors = [7, 6, 5].iter().map(|&d| Factor::Dense(gaussian(d, kt, &mut g))).collect();
            CpTensor::new((1..=kt).map(|i| i as f64).collect(), factors).unwrap()
        };
        let idx: Vec<usize> = (0..12).map(|c| c % kt).collect();
        let lam = (0..12).map(|c| if c < kt { base.svalues()[c] } else { 1e-14 }).collect();
        let x = CpTensor::new(lam, base.factors().iter().map(|f| f.select_columns(&idx)).collect()).unwrap();
        let xn = sketchid::cp::cp_norm(&x);
        for m in [TensorIdMethod::TensorSketch, TensorIdMethod::Gaussian] {
            for seed in 0..20 {
                let res = tensor_id(&x, kt, m, kt + 10, seed).unwrap();
                let e = cp_diff_norm(&x, &res.reduced).unwrap() / xn;
                worst = worst.max(e);
                if e > 1e-6 {
                    fails.push(format!("{m} seed {seed}: {e:.2e}"));
                }
            }
        }
        ensure(fails.is_empty(), || format!("failures: {}", fails.join(", ")))?;
        Ok(format!("160 IDs, worst relative error {worst:.1e}"))
    });
}

#[test]
fn criterion_09_norm_estimator() {
    criterion(9, "spectral norm estimator guarantee", Duration::from_secs(60), || {
        let mut g = rng(900);
        let mut hits = 0;
        let mut worst_excess = f64::NEG_INFINITY;
        for run in 0..1000u64 {
            let a = gaussian(100, 60, &mut g);
            let s1 = spectral_norm(&a);
            let est = operand_norm(&a, 10, 2, run).unwrap().value;
            worst_excess = worst_excess.max(est - s1);
            if est >= s1 / 100.0 {
                hits += 1;
            }
        }
        ensure(hits >= 980 && worst_excess <= 1e-10, || {
            format!("{hits}/1000 above sigma1/100, largest excess {worst_excess:.2e}")
        })?;
        Ok(format!("{hits}/1000 above sigma1/100, largest excess over sigma1 {worst_excess:.1e}"))
    });
}

/// Random sparse matrix with exactly `per_col` nonzeros per column.
fn sweep_matrix(rows: usize, cols: usize, per_col: usize, seed: u64) -> SparseMatrix {
    let mut g = rng(seed);
    let mut trip = Vec::with_capacity(cols * per_col);
    for c in 0..cols {
        let mut idx: Vec<usize> = (0..per_col).map(|_| g.random_range(0..rows)).collect();
        idx.sort_unstable();
        idx.dedup();
        trip.extend(idx.into_iter().map(|i| (i, c, g.random_range(-1.0..1.0))));
    }
    SparseMatrix::from_triplets(rows, cols, &trip).unwrap()
}

fn best_time(reps: usize, mut f: impl FnMut()) -> f64 {
    (0..reps)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn criterion_10_complexity_scaling() {
    criterion(10, "sketch cost scaling", Duration::from_secs(300), || {
        let (cols, l) = (500, 110);
        let small = sweep_matrix(6250, cols, 500, 1);
        let large = sweep_matrix(100_000, cols, 8000, 2);
        let nnz_ratio = large.nnz() as f64 / small.nnz() as f64;
        let time = |a: &SparseMatrix| {
            best_time(5, || {
                std::hint::black_box(sketch_matrix(a, IdMethod::CountSketch, l, 3).unwrap());
            })
        };
        let (ts, tl) = (time(&small), time(&large));
        let cs_ratio = tl / ts;
        ensure(within_factor(cs_ratio, nnz_ratio, 3.0), || {
            format!("countsketch time ratio {cs_ratio:.2} vs nnz ratio {nnz_ratio:.2}")
        })?;

        // fixed per-factor nnz, L and R; only the number of modes changes
        let (dim, r, lt) = (1000, 200, 256);
        let mut g = rng(10);
        let factor = |g: &mut rand_chacha::ChaCha20Rng| Factor::Sparse(sparse(dim, r, 0.05, g));
        let pool: Vec<Factor> = (0..8).map(|_| factor(&mut g)).collect();
        let lam = vec![1.0; r];
        let tsk = |n: usize| {
            let op = TensorSketchOp::new(&vec![dim; n], lt, 4).unwrap();
            best_time(5, || {
                std::hint::black_box(op.apply(&pool[..n], &lam).unwrap());
            })
        };
        let (t2, t4, t8) = (tsk(2), tsk(4), tsk(8));
        let ts_ratio = t8 / t2;
        ensure(within_factor(ts_ratio, 4.0, 3.0), || format!("tensorsketch t(8)/t(2) = {ts_ratio:.2}"))?;
        Ok(format!(
            "countsketch nnz x{nnz_ratio:.1} -> time x{cs_ratio:.1}; tensorsketch N=2/4/8 {:.1}/{:.1}/{:.1} ms (x{ts_ratio:.2})",
            t2 * 1e3,
            t4 * 1e3,
            t8 * 1e3
        ))
    });
}
