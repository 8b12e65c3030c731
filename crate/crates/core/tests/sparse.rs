mod common;

use hdlingam::sparse::{
    coordinate_descent, fit_bic, fit_path, kkt_violation, lambda_max, select_bic, KKT_TOLERANCE,
};
use hdlingam::{adaptive_lasso, DMatrix, DVector, LassoProblem, PathConfig, RidgeConfig};
use rand::Rng;

#[test]
fn coordinate_descent_matches_sign_pattern_oracle() {
    for seed in 0..100 {
        let share = if seed % 2 == 0 { 0.0 } else { 0.5 };
        let problem = common::random_problem(seed, share);
        let lmax = lambda_max(&problem).unwrap();
        let lambda = lmax * common::rng(seed + 1000).random_range(0.01..0.9);
        let beta = coordinate_descent(&problem, lambda, &DVector::zeros(problem.n_predictors())).unwrap();
        let oracle = common::lasso_oracle(&problem, lambda);
        let diff = (&beta - &oracle).amax();
        assert!(diff < 1e-4, "seed {seed}: {beta} vs {oracle}");
        assert!(kkt_violation(&problem, lambda, &beta) < KKT_TOLERANCE);
    }
}

#[test]
fn every_path_point_satisfies_kkt() {
    for seed in 0..20 {
        let mut rng = common::rng(seed);
        let (k, n) = (rng.random_range(5..40), 30);
        let x = common::centered(DMatrix::from_fn(k, n, |_, _| common::gaussian(&mut rng)));
        let y = common::centered_vec(DVector::from_fn(n, |c, _| x[(0, c)] - 0.5 * x[(1, c)] + common::gaussian(&mut rng)));
        for share in [0.0, 0.5] {
            let problem = LassoProblem::new(y.clone(), x.clone(), vec![1.0; k], share).unwrap();
            let path = fit_path(&problem, 100).unwrap();
            assert_eq!(path.len(), 100);
            for (lambda, beta) in path.lambdas.iter().zip(&path.coefs) {
                assert!(kkt_violation(&problem, *lambda, beta) < KKT_TOLERANCE, "seed {seed} share {share}");
            }
        }
    }
}

#[test]
fn descent_from_warm_start() {
    for seed in 0..30 {
        let problem = common::random_problem(seed, 0.0);
        let lambda = 0.1 * lambda_max(&problem).unwrap();
        let mut rng = common::rng(seed + 7);
        let warm = DVector::from_fn(problem.n_predictors(), |_, _| rng.random_range(-3.0..3.0));
        let beta = coordinate_descent(&problem, lambda, &warm).unwrap();
        assert!(problem.objective(lambda, &beta) <= problem.objective(lambda, &warm));
        assert_eq!(beta, coordinate_descent(&problem, lambda, &warm).unwrap());
    }
}

#[test]
fn pure_noise_selects_empty_model() {
    // at n = 50 the rate is closer to 87%: ln(n) is a light penalty there
    let mut empty = 0;
    for seed in 0..100 {
        let mut rng = common::rng(seed);
        let (k, n) = (10, 100);
        let x = common::centered(DMatrix::from_fn(k, n, |_, _| common::gaussian(&mut rng)));
        let y = common::centered_vec(DVector::from_fn(n, |_, _| common::gaussian(&mut rng)));
        let beta = fit_bic(&LassoProblem::lasso(y, x).unwrap(), &PathConfig::default()).unwrap();
        empty += beta.iter().all(|b| *b == 0.0) as usize;
    }
    assert!(empty >= 90, "{empty}/100 empty");
}

#[test]
fn strong_predictor_is_selected() {
    for seed in 0..20 {
        let mut rng = common::rng(seed);
        let (k, n) = (8, 100);
        let x = common::centered(DMatrix::from_fn(k, n, |_, _| common::gaussian(&mut rng)));
        let y = common::centered_vec(DVector::from_fn(n, |c, _| x[(2, c)] + 0.1 * common::gaussian(&mut rng)));
        let problem = LassoProblem::lasso(y, x).unwrap();
        let path = fit_path(&problem, 100).unwrap();
        let (_, beta) = select_bic(&path).unwrap();
        assert!(beta[2] != 0.0);
        assert!(path.coefs[0].iter().all(|b| *b == 0.0));
        for w in path.coefs.windows(2) {
            assert!((&w[1] - &w[0]).amax() < 0.5, "path jumps");
        }
    }
}

#[test]
fn adaptive_lasso_recovers_single_predictor() {
    let mut hits = 0;
    for seed in 0..100 {
        let mut rng = common::rng(seed);
        let (k, n) = (6, 100);
        let x = common::centered(DMatrix::from_fn(k, n, |_, _| common::gaussian(&mut rng)));
        let y = common::centered_vec(DVector::from_fn(n, |c, _| x[(0, c)] + 0.05 * common::gaussian(&mut rng)));
        let beta = adaptive_lasso(&y, &x, &RidgeConfig::default(), &PathConfig::default()).unwrap();
        let support: Vec<usize> = (0..k).filter(|&j| beta[j] != 0.0).collect();
        hits += (support == [0] && (beta[0] - 1.0).abs() < 0.05) as usize;
    }
    assert!(hits >= 95, "{hits}/100");
}

#[test]
fn equal_weights_select_the_lasso_set() {
    for seed in 0..20 {
        let mut rng = common::rng(seed);
        let (k, n) = (12, 40);
        let x = common::centered(DMatrix::from_fn(k, n, |_, _| common::gaussian(&mut rng)));
        let y = common::centered_vec(DVector::from_fn(n, |c, _| 0.8 * x[(1, c)] - x[(4, c)] + common::gaussian(&mut rng)));
        let cfg = PathConfig::default();
        let plain = fit_bic(&LassoProblem::lasso(y.clone(), x.clone()).unwrap(), &cfg).unwrap();
        let weighted = fit_bic(&LassoProblem::new(y, x, vec![3.7; k], 0.0).unwrap(), &cfg).unwrap();
        let support = |b: &DVector<f64>| (0..k).filter(|&j| b[j] != 0.0).collect::<Vec<_>>();
        assert_eq!(support(&plain), support(&weighted), "seed {seed}");
    }
}

#[test]
fn saturated_wide_problem_converges() {
    // more active predictors than the rank of the data near the end of the path
    let mut rng = common::rng(3);
    let (k, n) = (99, 30);
    let x = common::centered(DMatrix::from_fn(k, n, |_, _| common::gaussian(&mut rng)));
    let y = common::centered_vec(DVector::from_fn(n, |c, _| (0..5).map(|j| x[(j, c)]).sum::<f64>() + common::gaussian(&mut rng)));
    let problem = LassoProblem::lasso(y, x).unwrap();
    let path = fit_path(&problem, 100).unwrap();
    for (lambda, beta) in path.lambdas.iter().zip(&path.coefs) {
        assert!(kkt_violation(&problem, *lambda, beta) < KKT_TOLERANCE);
    }
}
