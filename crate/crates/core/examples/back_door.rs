// A confounder z drives both x and y, and x has no effect on y. Regressing
// y on x alone finds a large spurious effect; adjusting for the parents of
// x removes it.

use hdlingam::datagen::{propagate, NoiseFamily};
use hdlingam::linalg::{centered_rows, ridge_fit};
use hdlingam::{estimate_total, trial_rng, CausalOrder, DMatrix, Dataset, DirectEffects, PathConfig, RidgeConfig};

pub fn run_example() -> hdlingam::Result<(f64, f64)> {
    let n = 2000;
    let mut rng = trial_rng(1, 0);
    let e = DMatrix::from_fn(3, n, |_, _| NoiseFamily::Laplace.standard_draw(&mut rng));
    let mut b = DMatrix::zeros(3, 3);
    b[(1, 0)] = 1.0; // z → x
    b[(2, 0)] = 1.0; // z → y
    let x = propagate(&b, &e);

    let c = centered_rows(&x);
    let naive = ridge_fit(&c.row(2).transpose(), &c.rows(1, 1).into_owned(), &RidgeConfig::new(0.0)?)?[0];

    let data = Dataset::new(x, vec!["z".into(), "x".into(), "y".into()])?;
    let direct = DirectEffects::new(b, CausalOrder::identity(3))?;
    let total = estimate_total(&data, &direct, &RidgeConfig::default(), &PathConfig::default())?;
    let adjusted = total.matrix()[(2, 1)];
    println!("y on x alone: {naive:.3}");
    println!("y on x and z: {adjusted:.3}");
    Ok((naive, adjusted))
}

#[allow(dead_code)]
fn main() -> hdlingam::Result<()> {
    run_example().map(|_| ())
}
