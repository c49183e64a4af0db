mod common;

use common::*;
use proptest::prelude::*;
use sketchid::estimate::{id_residual_norm, operand_norm, DEFAULT_ITERS, DEFAULT_PROBES};
use sketchid::id::countsketch_id;
use sketchid::linalg::DenseMatrix;
use sketchid::{est_spectral_norm, Error};

#[test]
fn known_diagonal_spectrum() {
    let mut d = DenseMatrix::zeros(3, 3);
    d[(0, 0)] = 3.0;
    d[(1, 1)] = 1.0;
    d[(2, 2)] = 0.5;
    let est = operand_norm(&d, 20, 3, 1).unwrap();
    assert!((2.999..=3.0).contains(&est.value), "{}", est.value);
    assert_eq!((est.iterations, est.probes), (20, 3));
}

#[test]
fn zero_operator() {
    let z = DenseMatrix::zeros(5, 4);
    assert_eq!(operand_norm(&z, 10, 2, 0).unwrap().value, 0.0);
}

#[test]
fn inconsistent_adjoint_is_rejected() {
    let a = gaussian(6, 4, &mut rng(2));
    let b = gaussian(6, 4, &mut rng(3));
    let r = est_spectral_norm(|x| a.matvec(x), |y| b.matvec_t(y), 4, 5, 1, 0);
    assert!(matches!(r, Err(Error::Argument(_))));
}

#[test]
fn guarantee_shape_on_random_matrices() {
    let mut hits = 0;
    let mut g = rng(4);
    for run in 0..1000u64 {
        let a = gaussian(100, 60, &mut g);
        let s1 = spectral_norm(&a);
        let est = operand_norm(&a, DEFAULT_ITERS, DEFAULT_PROBES, run).unwrap().value;
        assert!(est <= s1 + 1e-10);
        if est >= s1 / 100.0 {
            hits += 1;
        }
    }
    assert!(hits >= 990, "{hits} of 1000");
}

#[test]
fn residual_estimate_below_exact() {
    let mut g = rng(5);
    let a = sparse(200, 40, 0.1, &mut g);
    let id = countsketch_id(&a, 10, 20, 3).unwrap();
    let exact = id_error(&a, &id);
    let est = id_residual_norm(&a, &id, 30, 3, 8).unwrap().value;
    assert!(est <= exact + 1e-10);
    assert!(est >= 0.5 * exact, "{est} vs {exact}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lower_bound_and_monotone(rows in 1usize..40, cols in 1usize..40, k in 1usize..12, seed in any::<u64>()) {
        let a = gaussian(rows, cols, &mut rng(seed));
        let s1 = spectral_norm(&a);
        let short = operand_norm(&a, k, 2, seed).unwrap().value;
        let long = operand_norm(&a, 2 * k, 2, seed).unwrap().value;
        prop_assert!(short <= s1 + 1e-10 && long <= s1 + 1e-10);
        prop_assert!(long >= short - 1e-12, "{} < {}", long, short);
    }
}
