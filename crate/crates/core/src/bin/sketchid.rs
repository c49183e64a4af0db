use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sketchid::bench::{
    gen_synthetic_matrix, gen_synthetic_tensor_with_decay, run_experiment, timed_matrix_id, timed_tensor_id,
    write_csv, ErrorNormKind, ExperimentConfig, ExperimentKind, IdReport,
};
use sketchid::cp::{cp_diff_norm, cp_norm, io as cp_io};
use sketchid::estimate::{id_residual_norm, operand_norm, DEFAULT_ITERS, DEFAULT_PROBES};
use sketchid::id::DEFAULT_OVERSAMPLING;
use sketchid::linalg::{mtx, ColumnSource, DenseMatrix, Factor};
use sketchid::rng::derive_seed;
use sketchid::{Error, IdMethod, TensorIdMethod};

/// Randomized interpolative decomposition of sparse matrices and CP tensors.
#[derive(Parser)]
#[command(name = "sketchid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank-K ID of a Matrix Market file.
    MatrixId {
        input: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value_t = MatrixMethod::Countsketch)]
        method: MatrixMethod,
        /// Sketch size is rank + oversample.
        #[arg(long, default_value_t = DEFAULT_OVERSAMPLING)]
        oversample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ITERS)]
        est_iters: usize,
        #[arg(long, default_value_t = DEFAULT_PROBES)]
        est_probes: usize,
    },
    /// Rank-K tensor ID of a CP tensor directory.
    TensorId {
        input: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value_t = TensorMethod::Tensorsketch)]
        method: TensorMethod,
        #[arg(long, default_value_t = DEFAULT_OVERSAMPLING)]
        oversample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the reduced tensor to this directory.
        #[arg(long)]
        reduced: Option<PathBuf>,
    },
    /// Run a benchmark sweep described by a JSON config.
    Bench {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        config: PathBuf,
        /// CSV output path.
        #[arg(long)]
        out: PathBuf,
        /// Optional JSON output with the config, reports and summaries.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Generate a synthetic test problem.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Sparse matrix with a spectrum decaying to 1e-8 over K values.
    Matrix {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0.005)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// CP tensor with sparse factors and decaying s-values.
    Tensor {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        dim: usize,
        /// CP rank R.
        #[arg(long)]
        rank: usize,
        /// Number of decaying s-values (defaults to R).
        #[arg(long)]
        decay_rank: Option<usize>,
        #[arg(long, default_value_t = 0.01)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixMethod {
    Countsketch,
    Gaussian,
    Srft,
    Deterministic,
}

impl From<MatrixMethod> for IdMethod {
    fn from(m: MatrixMethod) -> Self {
        match m {
            MatrixMethod::Countsketch => IdMethod::CountSketch,
            MatrixMethod::Gaussian => IdMethod::Gaussian,
            MatrixMethod::Srft => IdMethod::Srft,
            MatrixMethod::Deterministic => IdMethod::Deterministic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TensorMethod {
    Tensorsketch,
    Gaussian,
    Gram,
}

impl From<TensorMethod> for TensorIdMethod {
    fn from(m: TensorMethod) -> Self {
        match m {
            TensorMethod::Tensorsketch => TensorIdMethod::TensorSketch,
            TensorMethod::Gaussian => TensorIdMethod::Gaussian,
            TensorMethod::Gram => TensorIdMethod::Gram,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Matrix,
    Tensor,
}

/// ID output file. `j` is 0-based.
#[derive(Serialize)]
struct IdOutput<'a> {
    report: IdReport,
    p: &'a DenseMatrix,
    j: &'a [usize],
    #[serde(skip_serializing_if = "Option::is_none")]
    new_svalues: Option<&'a [f64]>,
}

fn emit(out: Option<&Path>, value: &impl Serialize) -> sketchid::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(p) => fs::write(p, text + "\n")?,
        None => {
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{text}")?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> sketchid::Result<()> {
    match cli.command {
        Command::MatrixId {
            input,
            rank,
            method,
            oversample,
            seed,
            out,
            est_iters,
            est_probes,
        } => {
            let a = mtx::read_path(&input)?;
            let method = IdMethod::from(method);
            let l = rank + oversample;
            let (id, sketch, wall) = match &a {
                Factor::Dense(d) => timed_matrix_id(d, method, rank, l, seed)?,
                Factor::Sparse(s) => timed_matrix_id(s, method, rank, l, seed)?,
            };
            let est_seed = derive_seed(seed, 7);
            let err = id_residual_norm(&a, &id, est_iters, est_probes, est_seed)?.value;
            let a_norm = operand_norm(&a, est_iters, est_probes, derive_seed(est_seed, 1))?.value;
            let report = IdReport {
                kind: ExperimentKind::Matrix,
                method: method.to_string(),
                size: a.nrows(),
                rows: a.nrows(),
                cols: a.ncols(),
                k: rank,
                l: if method.is_sketched() { l } else { a.nrows() },
                density: a.stored() as f64 / (a.nrows() * a.ncols()) as f64,
                trial: 0,
                data_seed: 0,
                seed,
                nnz: a.stored(),
                error_norm_kind: ErrorNormKind::SpectralEstimated,
                error_estimate: Some(err),
                reference_norm: Some(a_norm),
                relative_error: Some(if a_norm > 0.0 { err / a_norm } else { err }),
                wall_time_seconds: wall,
                sketch_time_seconds: sketch,
                numerical_rank: Some(id.numerical_rank),
                rank_deficient: Some(id.rank_deficient),
                max_abs_p: Some(id.max_abs_p()),
                failure: None,
            };
            emit(
                out.as_deref(),
                &IdOutput {
                    report,
                    p: &id.p,
                    j: &id.j,
                    new_svalues: None,
                },
            )
        }
        Command::TensorId {
            input,
            rank,
            method,
            oversample,
            seed,
            out,
            reduced,
        } => {
            let x = cp_io::read_dir(&input)?;
            let method = TensorIdMethod::from(method);
            let l = rank + oversample;
            let (res, sketch, wall) = timed_tensor_id(&x, method, rank, l, seed)?;
            let err = cp_diff_norm(&x, &res.reduced)?;
            let x_norm = cp_norm(&x);
            if let Some(dir) = &reduced {
                cp_io::write_dir(dir, &res.reduced)?;
            }
            let dims = x.dims();
            let report = IdReport {
                kind: ExperimentKind::Tensor,
                method: method.to_string(),
                size: dims.iter().copied().max().unwrap_or(0),
                rows: dims.iter().copied().max().unwrap_or(0),
                cols: x.rank(),
                k: rank,
                l: if method.is_sketched() { l } else { x.rank() },
                density: x.nnz() as f64 / (dims.iter().sum::<usize>() * x.rank()) as f64,
                trial: 0,
                data_seed: 0,
                seed,
                nnz: x.nnz(),
                error_norm_kind: ErrorNormKind::FrobeniusExact,
                error_estimate: Some(err),
                reference_norm: Some(x_norm),
                relative_error: Some(if x_norm > 0.0 { err / x_norm } else { err }),
                wall_time_seconds: wall,
                sketch_time_seconds: sketch,
                numerical_rank: Some(res.numerical_rank),
                rank_deficient: Some(res.rank_deficient),
                max_abs_p: Some(res.p.max_abs()),
                failure: None,
            };
            emit(
                out.as_deref(),
                &IdOutput {
                    report,
                    p: &res.p,
                    j: &res.j,
                    new_svalues: Some(&res.new_svalues),
                },
            )
        }
        Command::Bench {
            kind,
            config,
            out,
            json,
        } => {
            let cfg = ExperimentConfig::from_json(&fs::read_to_string(&config)?)?;
            let expected = match kind {
                Kind::Matrix => ExperimentKind::Matrix,
                Kind::Tensor => ExperimentKind::Tensor,
            };
            if cfg.kind != expected {
                return Err(Error::Argument(format!(
                    "config describes a {:?} experiment",
                    cfg.kind
                )));
            }
            let results = run_experiment(&cfg)?;
            write_csv(io::BufWriter::new(fs::File::create(&out)?), &results)?;
            if let Some(path) = json {
                fs::write(path, serde_json::to_string_pretty(&results)? + "\n")?;
            }
            let failures: usize = results.summaries.iter().map(|s| s.failures).sum();
            eprintln!(
                "{} trial rows, {} summary rows, {failures} failed trials",
                results.reports.len(),
                results.summaries.len()
            );
            Ok(())
        }
        Command::Gen { what } => match what {
            GenCommand::Matrix {
                rows,
                cols,
                rank,
                density,
                seed,
                out,
            } => {
                let a = gen_synthetic_matrix(rows, cols, rank, density, seed)?;
                mtx::write_path(out, &Factor::Sparse(a))
            }
            GenCommand::Tensor {
                order,
                dim,
                rank,
                decay_rank,
                density,
                seed,
                out,
            } => {
                let x = gen_synthetic_tensor_with_decay(order, dim, rank, decay_rank.unwrap_or(rank), density, seed)?;
                cp_io::write_dir(out, &x)
            }
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_argument() { 2 } else { 3 })
        }
    }
}
