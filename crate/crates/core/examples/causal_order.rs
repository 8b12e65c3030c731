// Recover the causal order of a small Laplace-noise chain whose variables
// are stored in shuffled order.
//
// ```text
// cargo run --example causal_order
// ```

use hdlingam::datagen::{propagate, NoiseFamily};
use hdlingam::{estimate_order, trial_rng, DMatrix, Dataset, RidgeConfig};

pub fn run_example() -> hdlingam::Result<Vec<String>> {
    // a → b → c → d with noise variances 1, 1.5, 2, 2.5
    let n = 3000;
    let mut rng = trial_rng(42, 0);
    let sd = [1.0f64, 1.5, 2.0, 2.5].map(f64::sqrt);
    let e = DMatrix::from_fn(4, n, |i, _| sd[i] * NoiseFamily::Laplace.standard_draw(&mut rng));
    let mut b = DMatrix::zeros(4, 4);
    b[(1, 0)] = 0.9;
    b[(2, 1)] = -1.1;
    b[(3, 2)] = 0.7;
    let x = propagate(&b, &e);

    let stored = [2, 0, 3, 1];
    let values = DMatrix::from_fn(4, n, |r, c| x[(stored[r], c)]);
    let ids = stored.iter().map(|&g| ["a", "b", "c", "d"][g].to_string()).collect();
    let data = Dataset::new(values, ids)?;

    let order = estimate_order(&data, &RidgeConfig::default())?;
    let names: Vec<String> = order.as_slice().iter().map(|&v| data.var_ids()[v].clone()).collect();
    println!("estimated order: {}", names.join(" → "));
    Ok(names)
}

#[allow(dead_code)]
fn main() -> hdlingam::Result<()> {
    run_example().map(|_| ())
}
