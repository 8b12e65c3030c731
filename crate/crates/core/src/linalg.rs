//! Dense primitives shared by every estimator: the [`Dataset`] container,
//! row centering, and ridge regression.
//!
//! Matrices follow the gene-expression convention: rows are variables and
//! columns are observations. A predictor block is therefore `k × n` and a
//! regression of `y` on it solves
//!
//! ```text
//! argmin_β ‖y − Xᵀβ‖² + τ‖β‖²
//! ```
//!
//! The primal normal equations `(XXᵀ + τI)β = Xy` are used when `k ≤ n`;
//! otherwise the `n × n` dual system `(XᵀX + τI)α = y`, `β = Xα` is solved.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reciprocal condition number below which an unpenalized system is singular.
pub const SINGULAR_RCOND: f64 = 1e-12;

/// Variance below which a vector is treated as constant when correlating.
pub const DEGENERATE_VARIANCE: f64 = 1e-12;

/// A `p × n` observation matrix with one label per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: DMatrix<f64>,
    var_ids: Vec<String>,
}

impl Dataset {
    pub fn new(values: DMatrix<f64>, var_ids: Vec<String>) -> Result<Self> {
        let (p, n) = values.shape();
        if p == 0 {
            return Err(Error::InvalidData("no variables".into()));
        }
        if n < 2 {
            return Err(Error::InvalidData(format!(
                "need at least 2 observations, got {n}"
            )));
        }
        if var_ids.len() != p {
            return Err(Error::ShapeMismatch {
                expected: format!("{p} variable ids"),
                actual: format!("{}", var_ids.len()),
            });
        }
        for i in 0..p {
            let row = values.row(i);
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidData(format!(
                    "non-finite value for `{}` at observation {j}",
                    var_ids[i]
                )));
            }
            if is_constant(row.iter().copied()) {
                return Err(Error::ConstantVariable(var_ids[i].clone()));
            }
        }
        Ok(Self { values, var_ids })
    }

    /// Labels the variables `x1 … xp`.
    pub fn with_default_ids(values: DMatrix<f64>) -> Result<Self> {
        let ids = (1..=values.nrows()).map(|i| format!("x{i}")).collect();
        Self::new(values, ids)
    }

    pub fn n_vars(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_samples(&self) -> usize {
        self.values.ncols()
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn var_ids(&self) -> &[String] {
        &self.var_ids
    }

    pub fn row(&self, i: usize) -> DVector<f64> {
        self.values.row(i).transpose()
    }

    /// Stacks the requested variables into a `|idx| × n` block.
    pub fn rows(&self, idx: &[usize]) -> DMatrix<f64> {
        select_rows(&self.values, idx)
    }

    /// Reorders variables so that output row `r` is input row `perm[r]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n_vars())?;
        Ok(Self {
            values: select_rows(&self.values, perm),
            var_ids: perm.iter().map(|&i| self.var_ids[i].clone()).collect(),
        })
    }

    pub fn into_parts(self) -> (DMatrix<f64>, Vec<String>) {
        (self.values, self.var_ids)
    }
}

fn is_constant(values: impl Iterator<Item = f64>) -> bool {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let scale = lo.abs().max(hi.abs());
    hi - lo <= f64::EPSILON * scale
}

pub(crate) fn check_permutation(perm: &[usize], p: usize) -> Result<()> {
    let mut seen = vec![false; p];
    if perm.len() != p {
        return Err(Error::InvalidParameter(format!(
            "permutation has length {}, expected {p}",
            perm.len()
        )));
    }
    for &i in perm {
        if i >= p || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidParameter(format!(
                "not a permutation of 0..{p}"
            )));
        }
    }
    Ok(())
}

/// Ridge penalty `τ` used for residualization and adaptive-lasso weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RidgeConfig {
    pub tau: f64,
}

impl RidgeConfig {
    pub fn new(tau: f64) -> Result<Self> {
        if !(tau >= 0.0 && tau.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "ridge parameter must be finite and nonnegative, got {tau}"
            )));
        }
        Ok(Self { tau })
    }
}

impl Default for RidgeConfig {
    fn default() -> Self {
        Self { tau: 0.01 }
    }
}

pub fn select_rows(m: &DMatrix<f64>, idx: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(idx.len(), m.ncols(), |r, c| m[(idx[r], c)])
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub fn center(v: &mut [f64]) {
    let m = mean(v);
    v.iter_mut().for_each(|x| *x -= m);
}

/// Subtracts each row's mean.
pub fn center_rows(data: &Dataset) -> Dataset {
    Dataset {
        values: centered_rows(&data.values),
        var_ids: data.var_ids.clone(),
    }
}

pub fn centered_rows(m: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = m.clone();
    for mut row in out.row_iter_mut() {
        let mu = row.mean();
        row.add_scalar_mut(-mu);
    }
    out
}

/// Sample Pearson correlation, `None` when either side is (numerically) constant.
pub fn pearson(a: &[f64], b: &[f64]) -> Option<f64> {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len() as f64;
    let (ma, mb) = (mean(a), mean(b));
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (&x, &y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa / n < DEGENERATE_VARIANCE || sbb / n < DEGENERATE_VARIANCE {
        return None;
    }
    Some((sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0))
}

enum Factor {
    /// No predictors: the residual is the response itself.
    Empty,
    /// Cholesky of `XXᵀ + τI` (`k × k`).
    Primal(Cholesky<f64, Dyn>),
    /// Cholesky of `XᵀX + τI` (`n × n`).
    Dual(Cholesky<f64, Dyn>),
}

/// A factorized ridge problem for a fixed predictor block, reusable across
/// many responses.
pub struct RidgeSolver {
    predictors: DMatrix<f64>,
    tau: f64,
    factor: Factor,
}

impl RidgeSolver {
    /// `predictors` is `k × n`.
    pub fn new(predictors: DMatrix<f64>, cfg: &RidgeConfig) -> Result<Self> {
        let (k, n) = predictors.shape();
        if k == 0 {
            return Ok(Self {
                predictors,
                tau: cfg.tau,
                factor: Factor::Empty,
            });
        }
        if k <= n {
            let gram = &predictors * predictors.transpose();
            let chol = factorize(gram, cfg.tau)?;
            Ok(Self {
                predictors,
                tau: cfg.tau,
                factor: Factor::Primal(chol),
            })
        } else {
            let gram = predictors.transpose() * &predictors;
            Self::from_dual_gram(predictors, gram, cfg)
        }
    }

    /// Builds the dual form from a precomputed `XᵀX`.
    pub(crate) fn from_dual_gram(
        predictors: DMatrix<f64>,
        gram: DMatrix<f64>,
        cfg: &RidgeConfig,
    ) -> Result<Self> {
        if cfg.tau == 0.0 {
            // dual form is only chosen for k > n, where XXᵀ is rank deficient
            return Err(Error::Singular { rcond: 0.0 });
        }
        let chol = factorize(gram, cfg.tau)?;
        Ok(Self {
            predictors,
            tau: cfg.tau,
            factor: Factor::Dual(chol),
        })
    }

    pub fn n_predictors(&self) -> usize {
        self.predictors.nrows()
    }

    pub fn coefficients(&self, y: &DVector<f64>) -> DVector<f64> {
        match &self.factor {
            Factor::Empty => DVector::zeros(0),
            Factor::Primal(chol) => chol.solve(&(&self.predictors * y)),
            Factor::Dual(chol) => &self.predictors * chol.solve(y),
        }
    }

    pub fn residual(&self, y: &DVector<f64>) -> DVector<f64> {
        match &self.factor {
            Factor::Empty => y.clone(),
            Factor::Primal(chol) => {
                let beta = chol.solve(&(&self.predictors * y));
                y - self.predictors.tr_mul(&beta)
            }
            Factor::Dual(chol) => chol.solve(y) * self.tau,
        }
    }

    /// Residualizes every row of `responses` (`m × n`) at once.
    pub fn residual_rows(&self, responses: &DMatrix<f64>) -> DMatrix<f64> {
        match &self.factor {
            Factor::Empty => responses.clone(),
            Factor::Primal(chol) => {
                let xy = &self.predictors * responses.transpose();
                let beta = chol.solve(&xy);
                responses - beta.tr_mul(&self.predictors)
            }
            Factor::Dual(chol) => {
                let mut r = chol.solve(&responses.transpose()).transpose();
                r *= self.tau;
                r
            }
        }
    }
}

fn factorize(mut gram: DMatrix<f64>, tau: f64) -> Result<Cholesky<f64, Dyn>> {
    if tau == 0.0 {
        let eig = SymmetricEigen::new(gram.clone()).eigenvalues;
        let max = eig.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        let min = eig.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        let rcond = if max > 0.0 { min / max } else { 0.0 };
        if rcond < SINGULAR_RCOND {
            return Err(Error::Singular { rcond: rcond.max(0.0) });
        }
    } else {
        for i in 0..gram.nrows() {
            gram[(i, i)] += tau;
        }
    }
    Cholesky::new(gram).ok_or(Error::Singular { rcond: 0.0 })
}

fn check_shapes(y: &DVector<f64>, x: &DMatrix<f64>) -> Result<()> {
    if x.ncols() != y.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} observations", y.len()),
            actual: format!("{} columns", x.ncols()),
        });
    }
    Ok(())
}

/// Ridge coefficients of `y` on the rows of `x`.
pub fn ridge_fit(y: &DVector<f64>, x: &DMatrix<f64>, cfg: &RidgeConfig) -> Result<DVector<f64>> {
    check_shapes(y, x)?;
    Ok(RidgeSolver::new(x.clone(), cfg)?.coefficients(y))
}

/// `y − Xᵀβ̂` for the ridge fit of `y` on `x`.
pub fn ridge_residual(
    y: &DVector<f64>,
    x: &DMatrix<f64>,
    cfg: &RidgeConfig,
) -> Result<DVector<f64>> {
    check_shapes(y, x)?;
    Ok(RidgeSolver::new(x.clone(), cfg)?.residual(y))
}
