use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::generate::{gen_synthetic_matrix, gen_synthetic_tensor_with_decay};
use crate::cp::{check_sketch, cp_diff_norm, cp_norm, sketch_tensor, tensor_id_from_sketch, CpTensor, TensorIdMethod, TensorIdResult};
use crate::error::{Error, Result};
use crate::estimate::{id_residual_norm, operand_norm, DEFAULT_ITERS, DEFAULT_PROBES};
use crate::id::{check_sketch_dims, id_from_sketch, sketch_matrix, IdMethod, InterpolativeDecomposition, DEFAULT_OVERSAMPLING};
use crate::linalg::{mtx::fmt_f64, ColumnSource, SparseMatrix};
use crate::rng::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Matrix,
    Tensor,
}

impl ExperimentKind {
    fn name(self) -> &'static str {
        match self {
            ExperimentKind::Matrix => "matrix",
            ExperimentKind::Tensor => "tensor",
        }
    }
}

fn one() -> usize {
    1
}

fn default_order() -> usize {
    5
}

/// A sweep over sizes `I`, read from JSON.
///
/// For matrices `I` is the row count and `R` the column count; for tensors
/// `I` is every mode dimension, `R` the CP rank and `order` the number of
/// modes. `L` defaults to `K + 10` and `decay_rank` to `K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub sizes: Vec<usize>,
    #[serde(alias = "R")]
    pub r: usize,
    #[serde(alias = "K")]
    pub k: usize,
    #[serde(alias = "L", default)]
    pub l: Option<usize>,
    pub density: f64,
    pub methods: Vec<String>,
    #[serde(default = "one")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(alias = "N", default = "default_order")]
    pub order: usize,
    #[serde(default)]
    pub decay_rank: Option<usize>,
    #[serde(default)]
    pub est_iters: Option<usize>,
    #[serde(default)]
    pub est_probes: Option<usize>,
}

enum Methods {
    Matrix(Vec<IdMethod>),
    Tensor(Vec<TensorIdMethod>),
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn sketch_size(&self) -> usize {
        self.l.unwrap_or(self.k + DEFAULT_OVERSAMPLING)
    }

    fn methods(&self) -> Result<Methods> {
        Ok(match self.kind {
            ExperimentKind::Matrix => Methods::Matrix(
                self.methods
                    .iter()
                    .map(|m| {
                        m.parse::<IdMethod>()
                            .map_err(|_| Error::arg(format!("'{m}' is not a matrix ID method")))
                    })
                    .collect::<Result<_>>()?,
            ),
            ExperimentKind::Tensor => Methods::Tensor(
                self.methods
                    .iter()
                    .map(|m| {
                        m.parse::<TensorIdMethod>()
                            .map_err(|_| Error::arg(format!("'{m}' is not a tensor ID method")))
                    })
                    .collect::<Result<_>>()?,
            ),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return Err(Error::arg("sizes must be a nonempty list of positive integers"));
        }
        if self.k == 0 || self.r == 0 {
            return Err(Error::arg("R and K must be positive"));
        }
        if self.k > self.sketch_size() {
            return Err(Error::arg(format!("K = {} exceeds L = {}", self.k, self.sketch_size())));
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return Err(Error::arg(format!("density {} must lie in (0, 1]", self.density)));
        }
        if self.trials == 0 {
            return Err(Error::arg("trials must be at least 1"));
        }
        if self.methods.is_empty() {
            return Err(Error::arg("at least one method is required"));
        }
        if self.kind == ExperimentKind::Tensor && self.order == 0 {
            return Err(Error::arg("tensor order must be positive"));
        }
        self.methods().map(|_| ())
    }

    fn est_params(&self) -> (usize, usize) {
        (
            self.est_iters.unwrap_or(DEFAULT_ITERS),
            self.est_probes.unwrap_or(DEFAULT_PROBES),
        )
    }

    /// Seed of the synthetic problem at size index `si`.
    pub fn data_seed(&self, si: usize) -> u64 {
        derive_seed(self.seed, si as u64)
    }

    /// Seed shared by every method in trial `trial` at size index `si`.
    pub fn trial_seed(&self, si: usize, trial: usize) -> u64 {
        derive_seed(derive_seed(self.seed, (1u64 << 32) | si as u64), trial as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorNormKind {
    SpectralEstimated,
    FrobeniusExact,
}

impl ErrorNormKind {
    fn name(self) -> &'static str {
        match self {
            ErrorNormKind::SpectralEstimated => "spectral-estimated",
            ErrorNormKind::FrobeniusExact => "frobenius-exact",
        }
    }
}

/// Measurements for one (size, method, trial) cell.
///
/// Matrix errors are estimated spectral norms of the residual divided by the
/// estimated `‖A‖₂`; tensor errors are exact Frobenius norms divided by
/// `‖X‖_F`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdReport {
    pub kind: ExperimentKind,
    pub method: String,
    pub size: usize,
    pub rows: usize,
    pub cols: usize,
    pub k: usize,
    pub l: usize,
    pub density: f64,
    pub trial: usize,
    pub data_seed: u64,
    pub seed: u64,
    pub nnz: usize,
    pub error_norm_kind: ErrorNormKind,
    pub error_estimate: Option<f64>,
    pub reference_norm: Option<f64>,
    pub relative_error: Option<f64>,
    pub wall_time_seconds: f64,
    pub sketch_time_seconds: f64,
    pub numerical_rank: Option<usize>,
    pub rank_deficient: Option<bool>,
    pub max_abs_p: Option<f64>,
    pub failure: Option<String>,
}

/// Medians and means of the successful trials of one (size, method) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub kind: ExperimentKind,
    pub method: String,
    pub size: usize,
    pub trials: usize,
    pub failures: usize,
    pub median_relative_error: Option<f64>,
    pub mean_relative_error: Option<f64>,
    pub median_wall_time_seconds: Option<f64>,
    pub mean_wall_time_seconds: Option<f64>,
    pub median_sketch_time_seconds: Option<f64>,
    pub mean_sketch_time_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResults {
    pub config: ExperimentConfig,
    pub reports: Vec<IdReport>,
    pub summaries: Vec<Summary>,
}

impl ExperimentResults {
    pub fn summary(&self, method: &str, size: usize) -> Option<&Summary> {
        self.summaries.iter().find(|s| s.method == method && s.size == size)
    }
}

/// Matrix ID with the sketch phase timed separately. Returns the ID, the
/// sketch time and the total time in seconds.
pub fn timed_matrix_id<A: ColumnSource>(
    a: &A,
    method: IdMethod,
    k: usize,
    l: usize,
    seed: u64,
) -> Result<(InterpolativeDecomposition, f64, f64)> {
    if method.is_sketched() {
        check_sketch_dims(a, k, l)?;
    }
    let start = Instant::now();
    let y = sketch_matrix(a, method, l, seed)?;
    let sketch = start.elapsed().as_secs_f64();
    let id = id_from_sketch(&y, k, method)?;
    Ok((id, sketch, start.elapsed().as_secs_f64()))
}

/// Tensor ID with the sketch (or Gram) phase timed separately.
pub fn timed_tensor_id(
    x: &CpTensor,
    method: TensorIdMethod,
    k: usize,
    l: usize,
    seed: u64,
) -> Result<(TensorIdResult, f64, f64)> {
    let start = Instant::now();
    if method.is_sketched() {
        check_sketch(x, k, l, method)?;
    }
    let y = sketch_tensor(x, method, l, seed)?;
    let sketch = start.elapsed().as_secs_f64();
    let res = tensor_id_from_sketch(x, &y, k, method)?;
    Ok((res, sketch, start.elapsed().as_secs_f64()))
}

struct Cell {
    error: Result<(f64, usize, bool, f64)>,
    sketch: f64,
    wall: f64,
}

/// Runs every (size, method, trial) combination of `cfg` sequentially.
///
/// Each size uses one synthetic problem; each trial uses one seed shared by
/// all methods. A failing trial is recorded with its message and the run
/// continues.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResults> {
    cfg.validate()?;
    let methods = cfg.methods()?;
    let l = cfg.sketch_size();
    let (iters, probes) = cfg.est_params();
    let mut reports = Vec::new();

    for (si, &size) in cfg.sizes.iter().enumerate() {
        let data_seed = cfg.data_seed(si);
        match &methods {
            Methods::Matrix(ms) => {
                let a = gen_synthetic_matrix(size, cfg.r, cfg.k, cfg.density, data_seed)?;
                let a_norm = operand_norm(&a, iters, probes, derive_seed(data_seed, 1))?.value;
                for trial in 0..cfg.trials {
                    let seed = cfg.trial_seed(si, trial);
                    for &m in ms {
                        let cell = matrix_cell(&a, m, cfg.k, l, seed, iters, probes);
                        reports.push(report(cfg, m.name(), size, &a, trial, data_seed, seed, a_norm, cell, l));
                    }
                }
            }
            Methods::Tensor(ms) => {
                let decay = cfg.decay_rank.unwrap_or(cfg.k);
                let x = gen_synthetic_tensor_with_decay(cfg.order, size, cfg.r, decay, cfg.density, data_seed)?;
                let x_norm = cp_norm(&x);
                for trial in 0..cfg.trials {
                    let seed = cfg.trial_seed(si, trial);
                    for &m in ms {
                        let cell = tensor_cell(&x, m, cfg.k, l, seed);
                        reports.push(tensor_report(cfg, m.name(), size, &x, trial, data_seed, seed, x_norm, cell, l));
                    }
                }
            }
        }
    }
    let summaries = summarize(&reports);
    Ok(ExperimentResults {
        config: cfg.clone(),
        reports,
        summaries,
    })
}

fn matrix_cell(a: &SparseMatrix, m: IdMethod, k: usize, l: usize, seed: u64, iters: usize, probes: usize) -> Cell {
    match timed_matrix_id(a, m, k, l, seed) {
        Ok((id, sketch, wall)) => Cell {
            error: id_residual_norm(a, &id, iters, probes, derive_seed(seed, 7))
                .map(|e| (e.value, id.numerical_rank, id.rank_deficient, id.max_abs_p())),
            sketch,
            wall,
        },
        Err(e) => Cell {
            error: Err(e),
            sketch: 0.0,
            wall: 0.0,
        },
    }
}

fn tensor_cell(x: &CpTensor, m: TensorIdMethod, k: usize, l: usize, seed: u64) -> Cell {
    match timed_tensor_id(x, m, k, l, seed) {
        Ok((res, sketch, wall)) => Cell {
            error: cp_diff_norm(x, &res.reduced)
                .map(|e| (e, res.numerical_rank, res.rank_deficient, res.p.max_abs())),
            sketch,
            wall,
        },
        Err(e) => Cell {
            error: Err(e),
            sketch: 0.0,
            wall: 0.0,
        },
    }
}

#[allow(clippy::too_many_arguments)]
fn base_report(
    cfg: &ExperimentConfig,
    method: &str,
    size: usize,
    rows: usize,
    nnz: usize,
    trial: usize,
    data_seed: u64,
    seed: u64,
    reference: f64,
    cell: Cell,
    l: usize,
    kind: ErrorNormKind,
) -> IdReport {
    let (err, rank, deficient, max_p, failure) = match cell.error {
        Ok((e, r, d, p)) => (Some(e), Some(r), Some(d), Some(p), None),
        Err(e) => (None, None, None, None, Some(e.to_string())),
    };
    IdReport {
        kind: cfg.kind,
        method: method.to_string(),
        size,
        rows,
        cols: cfg.r,
        k: cfg.k,
        l,
        density: cfg.density,
        trial,
        data_seed,
        seed,
        nnz,
        error_norm_kind: kind,
        error_estimate: err,
        reference_norm: Some(reference),
        relative_error: err.map(|e| if reference > 0.0 { e / reference } else { e }),
        wall_time_seconds: cell.wall,
        sketch_time_seconds: cell.sketch,
        numerical_rank: rank,
        rank_deficient: deficient,
        max_abs_p: max_p,
        failure,
    }
}

#[allow(clippy::too_many_arguments)]
fn report(
    cfg: &ExperimentConfig,
    method: &str,
    size: usize,
    a: &SparseMatrix,
    trial: usize,
    data_seed: u64,
    seed: u64,
    reference: f64,
    cell: Cell,
    l: usize,
) -> IdReport {
    base_report(
        cfg,
        method,
        size,
        a.rows(),
        a.nnz(),
        trial,
        data_seed,
        seed,
        reference,
        cell,
        l,
        ErrorNormKind::SpectralEstimated,
    )
}

#[allow(clippy::too_many_arguments)]
fn tensor_report(
    cfg: &ExperimentConfig,
    method: &str,
    size: usize,
    x: &CpTensor,
    trial: usize,
    data_seed: u64,
    seed: u64,
    reference: f64,
    cell: Cell,
    l: usize,
) -> IdReport {
    base_report(
        cfg,
        method,
        size,
        size,
        x.nnz(),
        trial,
        data_seed,
        seed,
        reference,
        cell,
        l,
        ErrorNormKind::FrobeniusExact,
    )
}

fn median(v: &[f64]) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    Some(if n % 2 == 1 { s[n / 2] } else { 0.5 * (s[n / 2 - 1] + s[n / 2]) })
}

fn mean(v: &[f64]) -> Option<f64> {
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

fn summarize(reports: &[IdReport]) -> Vec<Summary> {
    let mut keys: Vec<(usize, String)> = Vec::new();
    for r in reports {
        let key = (r.size, r.method.clone());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(size, method)| {
            let cell: Vec<&IdReport> = reports.iter().filter(|r| r.size == size && r.method == method).collect();
            let ok: Vec<&IdReport> = cell.iter().copied().filter(|r| r.failure.is_none()).collect();
            let errs: Vec<f64> = ok.iter().filter_map(|r| r.relative_error).collect();
            let walls: Vec<f64> = ok.iter().map(|r| r.wall_time_seconds).collect();
            let sketches: Vec<f64> = ok.iter().map(|r| r.sketch_time_seconds).collect();
            Summary {
                kind: cell[0].kind,
                method,
                size,
                trials: cell.len(),
                failures: cell.len() - ok.len(),
                median_relative_error: median(&errs),
                mean_relative_error: mean(&errs),
                median_wall_time_seconds: median(&walls),
                mean_wall_time_seconds: mean(&walls),
                median_sketch_time_seconds: median(&sketches),
                mean_sketch_time_seconds: mean(&sketches),
            }
        })
        .collect()
}

/// Column names of the CSV written by [`write_csv`]. `trial` rows fill the
/// per-trial columns, `summary` rows the aggregate ones.
pub const CSV_HEADER: [&str; 31] = [
    "row_type",
    "kind",
    "method",
    "size",
    "rows",
    "cols",
    "k",
    "l",
    "density",
    "trial",
    "data_seed",
    "seed",
    "nnz",
    "error_norm_kind",
    "error_estimate",
    "reference_norm",
    "relative_error",
    "wall_time_seconds",
    "sketch_time_seconds",
    "numerical_rank",
    "rank_deficient",
    "max_abs_p",
    "failure",
    "trials",
    "failures",
    "median_relative_error",
    "mean_relative_error",
    "median_wall_time_seconds",
    "mean_wall_time_seconds",
    "median_sketch_time_seconds",
    "mean_sketch_time_seconds",
];

fn f(v: f64) -> String {
    fmt_f64(v)
}

fn opt_f(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes trial rows followed by summary rows. Floats carry 17 significant
/// digits.
pub fn write_csv<W: Write>(w: W, results: &ExperimentResults) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let map_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    out.write_record(CSV_HEADER).map_err(map_err)?;
    let cfg = &results.config;
    for r in &results.reports {
        let mut row = vec![
            "trial".to_string(),
            r.kind.name().to_string(),
            r.method.clone(),
            r.size.to_string(),
            r.rows.to_string(),
            r.cols.to_string(),
            r.k.to_string(),
            r.l.to_string(),
            f(r.density),
            r.trial.to_string(),
            r.data_seed.to_string(),
            r.seed.to_string(),
            r.nnz.to_string(),
            r.error_norm_kind.name().to_string(),
            opt_f(r.error_estimate),
            opt_f(r.reference_norm),
            opt_f(r.relative_error),
            f(r.wall_time_seconds),
            f(r.sketch_time_seconds),
            opt(r.numerical_rank),
            opt(r.rank_deficient),
            opt_f(r.max_abs_p),
            r.failure.clone().unwrap_or_default(),
        ];
        row.resize(CSV_HEADER.len(), String::new());
        out.write_record(&row).map_err(map_err)?;
    }
    for s in &results.summaries {
        let mut row = vec![String::new(); CSV_HEADER.len()];
        row[0] = "summary".into();
        row[1] = s.kind.name().into();
        row[2] = s.method.clone();
        row[3] = s.size.to_string();
        row[5] = cfg.r.to_string();
        row[6] = cfg.k.to_string();
        row[7] = cfg.sketch_size().to_string();
        row[8] = f(cfg.density);
        let tail = [
            s.trials.to_string(),
            s.failures.to_string(),
            opt_f(s.median_relative_error),
            opt_f(s.mean_relative_error),
            opt_f(s.median_wall_time_seconds),
            opt_f(s.mean_wall_time_seconds),
            opt_f(s.median_sketch_time_seconds),
            opt_f(s.mean_sketch_time_seconds),
        ];
        let n = CSV_HEADER.len();
        row[n - tail.len()..].clone_from_slice(&tail);
        out.write_record(&row).map_err(map_err)?;
    }
    out.flush()?;
    Ok(())
}
