// Iterative sure independence screening: 300 candidate predictors, 40
// samples, 4 true predictors.

use hdlingam::screening::{isis, round_size};
use hdlingam::{trial_rng, DMatrix, DVector, PathConfig, RidgeConfig};
use rand_distr::{Distribution, StandardNormal};

pub fn run_example() -> hdlingam::Result<Vec<usize>> {
    let (k, n) = (300, 40);
    let mut rng = trial_rng(8, 0);
    let mut draw = || -> f64 { StandardNormal.sample(&mut rng) };
    let x = DMatrix::from_fn(k, n, |_, _| draw());
    let truth = [(10, 2.0), (75, -1.5), (150, 1.0), (299, 1.2)];
    let y = DVector::from_fn(n, |c, _| truth.iter().map(|&(j, b)| b * x[(j, c)]).sum::<f64>() + 0.3 * draw());
    let x = DMatrix::from_fn(k, n, |j, c| x[(j, c)] - x.row(j).mean());
    let y = y.add_scalar(-y.mean());

    let result = isis(&y, &x, n - 1, &RidgeConfig::default(), &PathConfig::default())?;
    println!("{} rounds of up to {} predictors", result.per_round.len(), round_size(n));
    for (r, round) in result.per_round.iter().enumerate() {
        println!(
            "round {r}: {} ranked, {} lasso survivors",
            round.correlation_selected.len(),
            round.lasso_survivors.len()
        );
    }
    let found: Vec<usize> = truth.iter().map(|t| t.0).filter(|j| result.selected.contains(j)).collect();
    println!("kept {} of {k}; true predictors kept: {found:?}", result.selected.len());
    Ok(result.selected)
}

#[allow(dead_code)]
fn main() -> hdlingam::Result<()> {
    run_example().map(|_| ())
}
