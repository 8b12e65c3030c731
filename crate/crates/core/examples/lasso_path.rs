// Lasso regularization path, BIC model choice and the adaptive lasso on a
// problem with two relevant predictors out of eight.

use hdlingam::sparse::{fit_path, kkt_violation, select_bic};
use hdlingam::{adaptive_lasso, trial_rng, DMatrix, DVector, LassoProblem, PathConfig, RidgeConfig};
use rand_distr::{Distribution, StandardNormal};

pub struct PathSummary {
    pub bic_support: Vec<usize>,
    pub adaptive: DVector<f64>,
}

pub fn run_example() -> hdlingam::Result<PathSummary> {
    let (k, n) = (8, 120);
    let mut rng = trial_rng(3, 0);
    let mut draw = || -> f64 { StandardNormal.sample(&mut rng) };
    let x = DMatrix::from_fn(k, n, |_, _| draw());
    let y = DVector::from_fn(n, |c, _| 1.5 * x[(0, c)] - 0.8 * x[(3, c)] + 0.5 * draw());
    let x = DMatrix::from_fn(k, n, |j, c| x[(j, c)] - x.row(j).mean());
    let y = y.add_scalar(-y.mean());

    let problem = LassoProblem::lasso(y.clone(), x.clone())?;
    let path = fit_path(&problem, 100)?;
    for (i, (lambda, coef)) in path.lambdas.iter().zip(&path.coefs).enumerate().step_by(20) {
        let df = coef.iter().filter(|v| **v != 0.0).count();
        println!("λ[{i:>2}] = {lambda:.4}  df = {df}  BIC = {:.2}", path.bic[i]);
    }
    let (lambda, beta) = select_bic(&path)?;
    assert!(kkt_violation(&problem, lambda, &beta) < 1e-6);
    let bic_support: Vec<usize> = (0..k).filter(|&j| beta[j] != 0.0).collect();
    println!("BIC picks λ = {lambda:.4}, support {bic_support:?}");

    let adaptive = adaptive_lasso(&y, &x, &RidgeConfig::default(), &PathConfig::default())?;
    let shown: Vec<String> = adaptive.iter().map(|v| format!("{v:.3}")).collect();
    println!("adaptive lasso: [{}]", shown.join(", "));
    Ok(PathSummary { bic_support, adaptive })
}

#[allow(dead_code)]
fn main() -> hdlingam::Result<()> {
    run_example().map(|_| ())
}
