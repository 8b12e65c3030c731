//! Synthetic benchmark data: random sparse lower-triangular connection
//! matrices, non-Gaussian external influences with random means, forward
//! propagation and a random relabeling of the variables.
//!
//! All randomness comes from a [`ChaCha8Rng`] keyed by `(seed, stream)`, so a
//! trial can be regenerated on its own and in any thread.
//!
//! Noise families, each rescaled to zero mean and unit variance before being
//! scaled to the drawn target variance:
//!
//! | family               | base distribution                  |
//! |----------------------|------------------------------------|
//! | asymmetric mixture   | `0.75·N(0, 1) + 0.25·N(3, 1)`      |
//! | symmetric mixture    | `0.5·N(−2, 1) + 0.5·N(2, 1)`       |
//! | Laplace              | `Laplace(0, 1/√2)`                 |

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Open01, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::effects::{total_from_direct, DirectEffects};
use crate::error::{Error, Result};
use crate::linalg::{select_rows, Dataset};
use crate::ordering::CausalOrder;

/// Independent generator for trial `stream` of experiment `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// How the expected number of neighbours per variable is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum DegreeChoice {
    Fixed { degree: f64 },
    /// Fair coin between the two values, drawn once per dataset.
    Coin { low: f64, high: f64 },
}

impl Default for DegreeChoice {
    fn default() -> Self {
        DegreeChoice::Coin { low: 2.0, high: 5.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub p: usize,
    pub n: usize,
    pub expected_degree: DegreeChoice,
    /// Coefficient magnitudes are uniform on `[coef_min, coef_max]` with a
    /// fair random sign.
    pub coef_min: f64,
    pub coef_max: f64,
    pub noise_var_min: f64,
    pub noise_var_max: f64,
    /// Standard deviation of the per-variable mean offset.
    pub mean_sd: f64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            p: 100,
            n: 30,
            expected_degree: DegreeChoice::default(),
            coef_min: 0.5,
            coef_max: 1.5,
            noise_var_min: 1.0,
            noise_var_max: 3.0,
            mean_sd: 2.0,
            seed: 0,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.p < 2 {
            return bad(format!("p must be at least 2, got {}", self.p));
        }
        if self.n < 2 {
            return bad(format!("n must be at least 2, got {}", self.n));
        }
        let degrees = match self.expected_degree {
            DegreeChoice::Fixed { degree } => vec![degree],
            DegreeChoice::Coin { low, high } => vec![low, high],
        };
        for d in degrees {
            let s = d / (self.p - 1) as f64;
            if !(s > 0.0 && s <= 1.0) {
                return bad(format!(
                    "expected degree {d} gives sparseness {s} outside (0, 1] for p = {}",
                    self.p
                ));
            }
        }
        if !(0.0 <= self.coef_min && self.coef_min <= self.coef_max && self.coef_max.is_finite()) {
            return bad("coefficient range must satisfy 0 <= min <= max".into());
        }
        if !(0.0 < self.noise_var_min && self.noise_var_min <= self.noise_var_max && self.noise_var_max.is_finite()) {
            return bad("noise variance range must satisfy 0 < min <= max".into());
        }
        if !(self.mean_sd >= 0.0 && self.mean_sd.is_finite()) {
            return bad("mean standard deviation must be nonnegative".into());
        }
        Ok(())
    }

    pub fn sparseness(&self, degree: f64) -> f64 {
        degree / (self.p - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseFamily {
    AsymmetricMixture,
    SymmetricMixture,
    Laplace,
}

impl NoiseFamily {
    pub const ALL: [NoiseFamily; 3] = [
        NoiseFamily::AsymmetricMixture,
        NoiseFamily::SymmetricMixture,
        NoiseFamily::Laplace,
    ];

    /// One draw with zero mean and unit variance.
    pub fn standard_draw<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        match self {
            NoiseFamily::AsymmetricMixture => {
                // mean 0.75, variance 1 + 0.75·0.25·9
                let shift = if rng.random::<f64>() < 0.25 { 3.0 } else { 0.0 };
                let z: f64 = rng.sample(StandardNormal);
                (z + shift - 0.75) / 2.6875f64.sqrt()
            }
            NoiseFamily::SymmetricMixture => {
                let shift = if rng.random::<bool>() { 2.0 } else { -2.0 };
                let z: f64 = rng.sample(StandardNormal);
                (z + shift) / 5.0f64.sqrt()
            }
            NoiseFamily::Laplace => {
                let u: f64 = rng.sample::<f64, _>(Open01) - 0.5;
                let b = std::f64::consts::FRAC_1_SQRT_2;
                -b * u.signum() * (1.0 - 2.0 * u.abs()).ln()
            }
        }
    }
}

/// Distribution of one external influence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub family: NoiseFamily,
    pub variance: f64,
    pub mean: f64,
}

/// Strictly lower-triangular connection matrix in generation order.
pub fn sample_structure<R: Rng + ?Sized>(cfg: &GeneratorConfig, degree: f64, rng: &mut R) -> DMatrix<f64> {
    let p = cfg.p;
    let s = cfg.sparseness(degree);
    let mut b = DMatrix::zeros(p, p);
    for i in 1..p {
        for j in 0..i {
            if rng.random::<f64>() < s {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                b[(i, j)] = sign * rng.random_range(cfg.coef_min..=cfg.coef_max);
            }
        }
    }
    b
}

/// Draws a noise family, target variance and mean, then `cfg.n` samples.
pub fn sample_noise<R: Rng + ?Sized>(cfg: &GeneratorConfig, rng: &mut R) -> (NoiseSpec, Vec<f64>) {
    let family = NoiseFamily::ALL[rng.random_range(0..3)];
    let variance = rng.random_range(cfg.noise_var_min..=cfg.noise_var_max);
    let z: f64 = rng.sample(StandardNormal);
    let mean = cfg.mean_sd * z;
    let sd = variance.sqrt();
    let values = (0..cfg.n)
        .map(|_| mean + sd * family.standard_draw(rng))
        .collect();
    (NoiseSpec { family, variance, mean }, values)
}

/// `x = (I − B)⁻¹ e` column by column for a strictly lower-triangular `b`.
pub fn propagate(b: &DMatrix<f64>, noise: &DMatrix<f64>) -> DMatrix<f64> {
    let (p, n) = noise.shape();
    let mut x = noise.clone();
    for i in 1..p {
        for j in 0..i {
            let bij = b[(i, j)];
            if bij != 0.0 {
                for c in 0..n {
                    x[(i, c)] += bij * x[(j, c)];
                }
            }
        }
    }
    x
}

/// A dataset in generation order, before relabeling.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub degree: f64,
    pub b: DMatrix<f64>,
    pub noise: Vec<NoiseSpec>,
    pub values: DMatrix<f64>,
}

pub fn generate_unpermuted<R: Rng + ?Sized>(cfg: &GeneratorConfig, rng: &mut R) -> Result<Generated> {
    cfg.validate()?;
    let degree = match cfg.expected_degree {
        DegreeChoice::Fixed { degree } => degree,
        DegreeChoice::Coin { low, high } => {
            if rng.random::<bool>() {
                high
            } else {
                low
            }
        }
    };
    let b = sample_structure(cfg, degree, rng);
    let mut noise = DMatrix::zeros(cfg.p, cfg.n);
    let mut specs = Vec::with_capacity(cfg.p);
    for i in 0..cfg.p {
        let (spec, e) = sample_noise(cfg, rng);
        noise.row_mut(i).iter_mut().zip(e).for_each(|(d, v)| *d = v);
        specs.push(spec);
    }
    let values = propagate(&b, &noise);
    Ok(Generated {
        degree,
        b,
        noise: specs,
        values,
    })
}

/// What the estimators should recover, in observed (relabeled) order.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub b_true: DMatrix<f64>,
    pub a_true: DMatrix<f64>,
    /// Observed variable `r` is generated variable `permutation[r]`.
    pub permutation: Vec<usize>,
    pub noise: Vec<NoiseSpec>,
    pub expected_degree: f64,
}

pub fn permute_square(m: &DMatrix<f64>, perm: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(perm.len(), perm.len(), |r, c| m[(perm[r], perm[c])])
}

pub fn synthesize<R: Rng + ?Sized>(cfg: &GeneratorConfig, rng: &mut R) -> Result<(Dataset, GroundTruth)> {
    let gen = generate_unpermuted(cfg, rng)?;
    let mut perm: Vec<usize> = (0..cfg.p).collect();
    perm.shuffle(rng);

    let b_true = permute_square(&gen.b, &perm);
    let direct = DirectEffects::new(b_true.clone(), CausalOrder::from_adjacency(&b_true)?)?;
    let a_true = total_from_direct(&direct).into_matrix();
    let data = Dataset::with_default_ids(select_rows(&gen.values, &perm))?;
    let noise = perm.iter().map(|&g| gen.noise[g]).collect();
    Ok((
        data,
        GroundTruth {
            b_true,
            a_true,
            permutation: perm,
            noise,
            expected_degree: gen.degree,
        },
    ))
}
