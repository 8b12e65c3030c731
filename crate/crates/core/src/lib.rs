//! High-dimensional LiNGAM: causal ordering, direct and total effects for
//! linear non-Gaussian acyclic models when variables outnumber samples.
//!
//! ```no_run
//! use hdlingam::{fit, Dataset, LingamConfig};
//! # fn main() -> hdlingam::Result<()> {
//! let data = hdlingam::io::read_dataset_path("data.csv".as_ref(), false)?;
//! let result = fit(&data, &LingamConfig::default())?;
//! println!("{:?}", result.order.as_slice());
//! # Ok(()) }
//! ```

pub mod baselines;
pub mod bench;
pub mod cli;
pub mod datagen;
pub mod effects;
pub mod error;
pub mod io;
pub mod linalg;
pub mod lingam;
pub mod ordering;
pub mod screening;
pub mod sparse;

pub use nalgebra::{DMatrix, DVector};

pub use baselines::{lasso_baseline, random_guess, BaselineEstimate, Method};
pub use bench::{run_trial, run_trials, score, BenchConfig, BenchReport, Metrics, Target};
pub use datagen::{synthesize, trial_rng, DegreeChoice, GeneratorConfig, GroundTruth};
pub use effects::{estimate_direct, estimate_total, total_from_direct, DirectEffects, TotalEffects};
pub use error::{Error, Result};
pub use linalg::{Dataset, RidgeConfig, RidgeSolver};
pub use lingam::{fit, LingamConfig, LingamFit};
pub use ordering::{estimate_order, CausalOrder};
pub use sparse::{adaptive_lasso, LassoProblem, PathConfig};
