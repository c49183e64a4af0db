//! Synthetic test problems and the benchmark runner behind `sketchid bench`.

mod experiment;
mod generate;

pub use experiment::{
    run_experiment, timed_matrix_id, timed_tensor_id, write_csv, ErrorNormKind, ExperimentConfig, ExperimentKind,
    ExperimentResults, IdReport, Summary, CSV_HEADER,
};
pub use generate::{
    gen_synthetic_matrix, gen_synthetic_tensor, gen_synthetic_tensor_with_decay, matrix_spectrum, tensor_svalues,
    SPECTRUM_FLOOR,
};
