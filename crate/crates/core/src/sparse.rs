//! Weighted lasso, elastic net and adaptive lasso by cyclic coordinate descent.
//!
//! For a response `y` (length `n`) and predictor block `X` (`k × n`) the solver
//! minimizes
//!
//! ```text
//! 1/(2n) ‖y − Xᵀβ‖² + λ [ (1 − a) Σ wⱼ |cⱼ| + a Σ wⱼ cⱼ² ]
//! ```
//!
//! where `a` is the ridge share and `cⱼ = sⱼ βⱼ` is the coefficient of the
//! predictor rescaled to unit root-mean-square `sⱼ`. Penalty weights therefore
//! act on the standardized scale; returned coefficients are in raw units.
//!
//! Regularization parameters are chosen along a log-spaced path by the
//! Gaussian BIC `n log(RSS/n) + df log n`, with `df` the number of nonzeros.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ridge_fit, RidgeConfig};

/// Relative KKT tolerance every returned solution satisfies.
pub const KKT_TOLERANCE: f64 = 1e-6;

/// Ridge share used for the elastic net (equal lasso and ridge weights).
pub const ELASTIC_NET_SHARE: f64 = 0.5;

/// Ridge coefficients smaller than this give an infinite adaptive weight.
pub const ADAPTIVE_WEIGHT_FLOOR: f64 = 1e-12;

/// Sweeps after which an iterate is also accepted on its KKT certificate
/// alone. With more active predictors than the rank of the data the minimizer
/// is not unique and coefficients can drift along the flat directions for a
/// very long time without changing the objective.
pub const STALL_SWEEPS: usize = 1000;
const STALL_CHECK_EVERY: usize = 50;
/// First sweep at which the active-set system is tried; later tries back off
/// geometrically.
const FIRST_ACTIVE_SOLVE: usize = 8;

/// Coordinate-descent and path settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathConfig {
    pub path_len: usize,
    /// `λ_min / λ_max`.
    pub lambda_ratio: f64,
    /// Convergence threshold on the largest standardized coefficient change
    /// in a sweep, relative to the response scale.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for PathConfig {
    fn default() -> Self {
        Self {
            path_len: 100,
            lambda_ratio: 1e-3,
            tol: 1e-7,
            max_sweeps: 100_000,
        }
    }
}

impl PathConfig {
    pub fn validate(&self) -> Result<()> {
        if self.path_len < 2 {
            return Err(Error::InvalidParameter(format!(
                "path length must be at least 2, got {}",
                self.path_len
            )));
        }
        if !(self.lambda_ratio > 0.0 && self.lambda_ratio < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda ratio must lie in (0, 1), got {}",
                self.lambda_ratio
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 || self.max_sweeps == 0 {
            return Err(Error::InvalidParameter("tolerance and sweep limit must be positive".into()));
        }
        Ok(())
    }
}

/// A penalized least-squares problem on centered data.
#[derive(Debug, Clone)]
pub struct LassoProblem {
    y: DVector<f64>,
    x: DMatrix<f64>,
    weights: Vec<f64>,
    ridge_share: f64,
}

impl LassoProblem {
    pub fn new(
        y: DVector<f64>,
        x: DMatrix<f64>,
        weights: Vec<f64>,
        ridge_share: f64,
    ) -> Result<Self> {
        if x.ncols() != y.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} observations", y.len()),
                actual: format!("{} columns", x.ncols()),
            });
        }
        if weights.len() != x.nrows() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} weights", x.nrows()),
                actual: format!("{}", weights.len()),
            });
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "penalty weights must be finite and positive, got {w}"
            )));
        }
        if !(0.0..=1.0).contains(&ridge_share) {
            return Err(Error::InvalidParameter(format!(
                "ridge share must lie in [0, 1], got {ridge_share}"
            )));
        }
        if y.iter().chain(x.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("non-finite value in regression problem".into()));
        }
        Ok(Self {
            y,
            x,
            weights,
            ridge_share,
        })
    }

    /// Plain lasso: unit weights, no ridge term.
    pub fn lasso(y: DVector<f64>, x: DMatrix<f64>) -> Result<Self> {
        let k = x.nrows();
        Self::new(y, x, vec![1.0; k], 0.0)
    }

    pub fn elastic_net(y: DVector<f64>, x: DMatrix<f64>) -> Result<Self> {
        let k = x.nrows();
        Self::new(y, x, vec![1.0; k], ELASTIC_NET_SHARE)
    }

    pub fn n_predictors(&self) -> usize {
        self.x.nrows()
    }

    pub fn n_samples(&self) -> usize {
        self.y.len()
    }

    pub fn y(&self) -> &DVector<f64> {
        &self.y
    }

    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn ridge_share(&self) -> f64 {
        self.ridge_share
    }

    /// Objective value at raw coefficients `beta`.
    pub fn objective(&self, lambda: f64, beta: &DVector<f64>) -> f64 {
        let n = self.n_samples() as f64;
        let r = &self.y - self.x.tr_mul(beta);
        let mut penalty = 0.0;
        for j in 0..self.n_predictors() {
            let c = beta[j] * rms(self.x.row(j).iter());
            penalty += self.weights[j]
                * ((1.0 - self.ridge_share) * c.abs() + self.ridge_share * c * c);
        }
        r.norm_squared() / (2.0 * n) + lambda * penalty
    }

    pub fn rss(&self, beta: &DVector<f64>) -> f64 {
        (&self.y - self.x.tr_mul(beta)).norm_squared()
    }
}

fn rms<'a>(v: impl Iterator<Item = &'a f64>) -> f64 {
    let (mut s, mut n) = (0.0, 0usize);
    for x in v {
        s += x * x;
        n += 1;
    }
    if n == 0 {
        0.0
    } else {
        (s / n as f64).sqrt()
    }
}

#[inline]
pub fn soft_threshold(z: f64, gamma: f64) -> f64 {
    if z > gamma {
        z - gamma
    } else if z < -gamma {
        z + gamma
    } else {
        0.0
    }
}

/// The problem rewritten on unit-rms predictors, stored column-wise for the
/// inner loop.
struct ActiveStep {
    c: Vec<f64>,
    exact: bool,
}

struct Standardized {
    cols: Vec<Vec<f64>>,
    scale: Vec<f64>,
    y: Vec<f64>,
    y_scale: f64,
    weights: Vec<f64>,
    ridge_share: f64,
}

impl Standardized {
    fn new(problem: &LassoProblem) -> Self {
        let k = problem.n_predictors();
        let mut cols = Vec::with_capacity(k);
        let mut scale = Vec::with_capacity(k);
        for j in 0..k {
            let row = problem.x.row(j);
            let s = rms(row.iter());
            scale.push(s);
            cols.push(if s > 0.0 {
                row.iter().map(|v| v / s).collect()
            } else {
                vec![0.0; problem.n_samples()]
            });
        }
        let y: Vec<f64> = problem.y.iter().copied().collect();
        let ys = rms(y.iter());
        Self {
            cols,
            scale,
            y,
            y_scale: if ys > 0.0 { ys } else { 1.0 },
            weights: problem.weights.clone(),
            ridge_share: problem.ridge_share,
        }
    }

    fn n(&self) -> usize {
        self.y.len()
    }

    fn to_standard(&self, beta: &DVector<f64>) -> Vec<f64> {
        beta.iter().zip(&self.scale).map(|(b, s)| b * s).collect()
    }

    fn to_raw(&self, c: &[f64]) -> DVector<f64> {
        DVector::from_iterator(
            c.len(),
            c.iter()
                .zip(&self.scale)
                .map(|(c, &s)| if s > 0.0 { c / s } else { 0.0 }),
        )
    }

    fn residual(&self, c: &[f64]) -> Vec<f64> {
        let mut r = self.y.clone();
        for (col, &cj) in self.cols.iter().zip(c) {
            if cj != 0.0 {
                r.iter_mut().zip(col).for_each(|(ri, xi)| *ri -= cj * xi);
            }
        }
        r
    }

    fn lambda_max(&self) -> f64 {
        let n = self.n() as f64;
        let l1 = 1.0 - self.ridge_share;
        let mut best = 0.0f64;
        for (j, col) in self.cols.iter().enumerate() {
            if self.scale[j] == 0.0 {
                continue;
            }
            let g = dot(col, &self.y).abs() / n;
            best = best.max(g / (l1 * self.weights[j]));
        }
        let floor = f64::EPSILON * self.y_scale;
        if best.is_finite() {
            best.max(floor)
        } else {
            f64::MAX
        }
    }

    /// Largest KKT violation relative to the response scale.
    fn kkt_violation(&self, lambda: f64, c: &[f64], r: &[f64]) -> f64 {
        let n = self.n() as f64;
        let mut worst = 0.0f64;
        for (j, col) in self.cols.iter().enumerate() {
            if self.scale[j] == 0.0 {
                continue;
            }
            let g = dot(col, r) / n;
            let l1 = lambda * (1.0 - self.ridge_share) * self.weights[j];
            let l2 = 2.0 * lambda * self.ridge_share * self.weights[j];
            let v = if c[j] != 0.0 {
                (g - l1 * c[j].signum() - l2 * c[j]).abs()
            } else {
                (g.abs() - l1).max(0.0)
            };
            worst = worst.max(v);
        }
        worst / self.y_scale
    }

    /// Active-set step from `c`. Minimizes the smooth objective on the face
    /// given by the support and signs of `c`; when the minimizer leaves the
    /// face it moves to the first sign change, drops that coordinate and tries
    /// again. Every step lowers the objective. Returns `None` when no step was
    /// possible.
    fn active_step(&self, lambda: f64, c: &[f64]) -> Option<ActiveStep> {
        let n = self.n() as f64;
        let mut cur = c.to_vec();
        let mut moved = false;
        loop {
            let act: Vec<usize> = (0..cur.len()).filter(|&j| cur[j] != 0.0).collect();
            let m = act.len();
            if m == 0 || m >= self.n() {
                break;
            }
            let gram = DMatrix::from_fn(m, m, |a, b| {
                let g = dot(&self.cols[act[a]], &self.cols[act[b]]) / n;
                if a == b {
                    g + 2.0 * lambda * self.ridge_share * self.weights[act[a]]
                } else {
                    g
                }
            });
            let rhs = DVector::from_iterator(
                m,
                act.iter().map(|&j| {
                    dot(&self.cols[j], &self.y) / n
                        - lambda * (1.0 - self.ridge_share) * self.weights[j] * cur[j].signum()
                }),
            );
            let Some(chol) = gram.cholesky() else { break };
            let sol = chol.solve(&rhs);
            if !sol.iter().all(|v| v.is_finite()) {
                break;
            }
            // first coordinate to hit zero on the way from cur to sol
            let mut t = 1.0f64;
            for (a, &j) in act.iter().enumerate() {
                if sol[a] * cur[j] <= 0.0 {
                    t = t.min(cur[j] / (cur[j] - sol[a]));
                }
            }
            moved = true;
            if t >= 1.0 {
                for (a, &j) in act.iter().enumerate() {
                    cur[j] = sol[a];
                }
                let r = self.residual(&cur);
                let exact = self.kkt_violation(lambda, &cur, &r) <= KKT_TOLERANCE;
                return Some(ActiveStep { c: cur, exact });
            }
            for (a, &j) in act.iter().enumerate() {
                let v = cur[j] + t * (sol[a] - cur[j]);
                let crosses = sol[a] * cur[j] <= 0.0 && cur[j] / (cur[j] - sol[a]) <= t;
                cur[j] = if crosses || v * cur[j] <= 0.0 { 0.0 } else { v };
            }
        }
        moved.then_some(ActiveStep { c: cur, exact: false })
    }

    fn solve(&self, lambda: f64, warm: Vec<f64>, cfg: &PathConfig) -> Result<Vec<f64>> {
        let k = self.cols.len();
        let n = self.n() as f64;
        let l1: Vec<f64> = (0..k)
            .map(|j| lambda * (1.0 - self.ridge_share) * self.weights[j])
            .collect();
        let denom: Vec<f64> = (0..k)
            .map(|j| 1.0 + 2.0 * lambda * self.ridge_share * self.weights[j])
            .collect();
        let tol = cfg.tol * self.y_scale;

        let mut c = warm;
        let mut r = self.residual(&c);
        let mut sweeps = 0usize;
        let all: Vec<usize> = (0..k).filter(|&j| self.scale[j] > 0.0).collect();

        let sweep = |idx: &[usize], c: &mut [f64], r: &mut [f64]| -> f64 {
            let mut max_change = 0.0f64;
            for &j in idx {
                let col = &self.cols[j];
                let old = c[j];
                let z = dot(col, r) / n + old;
                let new = soft_threshold(z, l1[j]) / denom[j];
                if new != old {
                    let d = new - old;
                    r.iter_mut().zip(col).for_each(|(ri, xi)| *ri -= d * xi);
                    c[j] = new;
                    max_change = max_change.max(d.abs());
                }
            }
            max_change
        };

        let mut next_check = STALL_SWEEPS;
        let mut next_solve = FIRST_ACTIVE_SOLVE;
        loop {
            let change = sweep(&all, &mut c, &mut r);
            sweeps += 1;
            if change >= tol && sweeps >= next_solve {
                match self.active_step(lambda, &c) {
                    Some(step) if step.exact => return Ok(step.c),
                    Some(step) => {
                        c = step.c;
                        r = self.residual(&c);
                        next_solve = sweeps + FIRST_ACTIVE_SOLVE;
                        continue;
                    }
                    None => next_solve = 2 * sweeps,
                }
            }
            if change < tol || sweeps >= next_check {
                r = self.residual(&c);
                if self.kkt_violation(lambda, &c, &r) <= KKT_TOLERANCE {
                    return Ok(c);
                }
                if sweeps >= next_check {
                    next_check = sweeps + STALL_CHECK_EVERY;
                }
            }
            if sweeps >= cfg.max_sweeps {
                return Err(Error::NotConverged {
                    sweeps,
                    last_change: change / self.y_scale,
                    best: self.to_raw(&c).as_slice().to_vec(),
                });
            }
            let active: Vec<usize> = all.iter().copied().filter(|&j| c[j] != 0.0).collect();
            loop {
                let change = sweep(&active, &mut c, &mut r);
                sweeps += 1;
                if change < tol || sweeps >= next_check || sweeps >= next_solve {
                    break;
                }
                if sweeps >= cfg.max_sweeps {
                    return Err(Error::NotConverged {
                        sweeps,
                        last_change: change / self.y_scale,
                        best: self.to_raw(&c).as_slice().to_vec(),
                    });
                }
            }
        }
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimizes the penalized objective at a single `lambda`, starting from
/// `warm_start` (raw units).
pub fn coordinate_descent(
    problem: &LassoProblem,
    lambda: f64,
    warm_start: &DVector<f64>,
) -> Result<DVector<f64>> {
    coordinate_descent_with(problem, lambda, warm_start, &PathConfig::default())
}

pub fn coordinate_descent_with(
    problem: &LassoProblem,
    lambda: f64,
    warm_start: &DVector<f64>,
    cfg: &PathConfig,
) -> Result<DVector<f64>> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!("lambda must be finite and nonnegative, got {lambda}")));
    }
    if warm_start.len() != problem.n_predictors() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} coefficients", problem.n_predictors()),
            actual: format!("{}", warm_start.len()),
        });
    }
    let std = Standardized::new(problem);
    let c = std.solve(lambda, std.to_standard(warm_start), cfg)?;
    Ok(std.to_raw(&c))
}

/// Largest KKT violation of `beta` (raw units), relative to the response's
/// root-mean-square.
pub fn kkt_violation(problem: &LassoProblem, lambda: f64, beta: &DVector<f64>) -> f64 {
    let std = Standardized::new(problem);
    let c = std.to_standard(beta);
    let r = std.residual(&c);
    std.kkt_violation(lambda, &c, &r)
}

/// Smallest `λ` whose solution has an all-zero l1 part.
///
/// Fails for a pure ridge problem (`ridge_share = 1`), which has no such `λ`.
pub fn lambda_max(problem: &LassoProblem) -> Result<f64> {
    if problem.ridge_share >= 1.0 {
        return Err(Error::InvalidParameter(
            "lambda_max is undefined without an l1 penalty".into(),
        ));
    }
    Ok(Standardized::new(problem).lambda_max())
}

/// A regularization path with per-`λ` BIC scores.
#[derive(Debug, Clone, PartialEq)]
pub struct RegPath {
    pub lambdas: Vec<f64>,
    pub coefs: Vec<DVector<f64>>,
    pub bic: Vec<f64>,
}

impl RegPath {
    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }
}

pub fn bic(n: usize, rss: f64, df: usize) -> f64 {
    let n = n as f64;
    n * (rss.max(f64::MIN_POSITIVE) / n).ln() + df as f64 * n.ln()
}

pub fn fit_path(problem: &LassoProblem, path_len: usize) -> Result<RegPath> {
    fit_path_with(
        problem,
        &PathConfig {
            path_len,
            ..PathConfig::default()
        },
    )
}

pub fn fit_path_with(problem: &LassoProblem, cfg: &PathConfig) -> Result<RegPath> {
    cfg.validate()?;
    let lmax = lambda_max(problem)?;
    let std = Standardized::new(problem);
    let n = problem.n_samples();
    let k = problem.n_predictors();
    let last = (cfg.path_len - 1) as f64;
    let lambdas: Vec<f64> = (0..cfg.path_len)
        .map(|i| {
            if i == 0 {
                lmax
            } else {
                lmax * cfg.lambda_ratio.powf(i as f64 / last)
            }
        })
        .collect();

    let mut coefs = Vec::with_capacity(cfg.path_len);
    let mut scores = Vec::with_capacity(cfg.path_len);
    let mut c = vec![0.0; k];
    for (i, &lambda) in lambdas.iter().enumerate() {
        if i > 0 {
            c = std.solve(lambda, c, cfg)?;
        }
        let beta = std.to_raw(&c);
        let rss = dot_self(&std.residual(&c));
        let df = c.iter().filter(|v| **v != 0.0).count();
        scores.push(bic(n, rss, df));
        coefs.push(beta);
    }
    Ok(RegPath {
        lambdas,
        coefs,
        bic: scores,
    })
}

fn dot_self(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// The path entry with the lowest BIC; ties go to the larger `λ`.
pub fn select_bic(path: &RegPath) -> Result<(f64, DVector<f64>)> {
    if path.is_empty() {
        return Err(Error::InvalidParameter("empty regularization path".into()));
    }
    let mut best = 0;
    for i in 1..path.len() {
        if path.bic[i] < path.bic[best] {
            best = i;
        }
    }
    Ok((path.lambdas[best], path.coefs[best].clone()))
}

/// BIC-selected coefficients of the problem's path.
pub fn fit_bic(problem: &LassoProblem, cfg: &PathConfig) -> Result<DVector<f64>> {
    if problem.n_predictors() == 0 {
        return Ok(DVector::zeros(0));
    }
    let path = fit_path_with(problem, cfg)?;
    Ok(select_bic(&path)?.1)
}

/// Adaptive lasso with weights `1/|β̃ⱼ|` from a ridge pilot fit on the
/// standardized predictors. Requires `k ≤ n − 1`.
pub fn adaptive_lasso(
    y: &DVector<f64>,
    x: &DMatrix<f64>,
    ridge: &RidgeConfig,
    cfg: &PathConfig,
) -> Result<DVector<f64>> {
    let (k, n) = x.shape();
    if n != y.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} observations", y.len()),
            actual: format!("{n} columns"),
        });
    }
    if k + 1 > n {
        return Err(Error::InvalidParameter(format!(
            "adaptive lasso needs at most n - 1 = {} predictors, got {k}; screen first",
            n.saturating_sub(1)
        )));
    }
    let mut out = DVector::zeros(k);
    if k == 0 {
        return Ok(out);
    }

    let scale: Vec<f64> = (0..k).map(|j| rms(x.row(j).iter())).collect();
    let live: Vec<usize> = (0..k).filter(|&j| scale[j] > 0.0).collect();
    let standardized = DMatrix::from_fn(live.len(), n, |r, c| x[(live[r], c)] / scale[live[r]]);
    let pilot = ridge_fit(y, &standardized, ridge)?;

    let mut keep = Vec::new();
    let mut weights = Vec::new();
    for (r, &j) in live.iter().enumerate() {
        if pilot[r].abs() >= ADAPTIVE_WEIGHT_FLOOR {
            keep.push(j);
            weights.push(1.0 / pilot[r].abs());
        }
    }
    if keep.is_empty() {
        return Ok(out);
    }
    let sub = crate::linalg::select_rows(x, &keep);
    let problem = LassoProblem::new(y.clone(), sub, weights, 0.0)?;
    let beta = fit_bic(&problem, cfg)?;
    for (r, &j) in keep.iter().enumerate() {
        out[j] = beta[r];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn centered(mut m: DMatrix<f64>) -> DMatrix<f64> {
        for mut row in m.row_iter_mut() {
            let mu = row.mean();
            row.add_scalar_mut(-mu);
        }
        m
    }

    fn gaussian(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DMatrix<f64> {
        centered(DMatrix::from_fn(r, c, |_, _| rng.sample(StandardNormal)))
    }

    fn centered_vec(v: DVector<f64>) -> DVector<f64> {
        let m = v.mean();
        v.add_scalar(-m)
    }

    #[test]
    fn soft_threshold_cases() {
        assert_eq!(soft_threshold(5.0, 2.0), 3.0);
        assert_eq!(soft_threshold(-5.0, 2.0), -3.0);
        assert_eq!(soft_threshold(1.5, 2.0), 0.0);
    }

    #[test]
    fn large_lambda_gives_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = gaussian(&mut rng, 4, 30);
        let y = centered_vec(x.row(0).transpose() + gaussian(&mut rng, 1, 30).row(0).transpose());
        let p = LassoProblem::lasso(y, x).unwrap();
        let lmax = lambda_max(&p).unwrap();
        let beta = coordinate_descent(&p, lmax, &DVector::zeros(4)).unwrap();
        assert!(beta.iter().all(|b| *b == 0.0));
        let beta = coordinate_descent(&p, 3.0 * lmax, &DVector::from_element(4, 1.0)).unwrap();
        assert!(beta.iter().all(|b| *b == 0.0));
    }

    #[test]
    fn zero_lambda_is_ols() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = gaussian(&mut rng, 3, 40);
        let y = centered_vec(DVector::from_fn(40, |_, _| rng.sample(StandardNormal)));
        let p = LassoProblem::lasso(y.clone(), x.clone()).unwrap();
        let beta = coordinate_descent(&p, 0.0, &DVector::zeros(3)).unwrap();
        let ols = (&x * x.transpose()).lu().solve(&(&x * &y)).unwrap();
        assert!((beta - ols).amax() < 1e-5);
    }

    #[test]
    fn lambda_max_hand_computed() {
        // y = x = [1, 0, -1]: rms = √(2/3), ⟨x̃, y⟩/n = (2/3)/√(2/3) = √(2/3).
        let y = DVector::from_vec(vec![1.0, 0.0, -1.0]);
        let x = DMatrix::from_row_slice(1, 3, &[1.0, 0.0, -1.0]);
        let p = LassoProblem::lasso(y.clone(), x.clone()).unwrap();
        assert_abs_diff_eq!(lambda_max(&p).unwrap(), (2.0f64 / 3.0).sqrt(), epsilon = 1e-15);

        let doubled = LassoProblem::new(y.clone(), x.clone(), vec![2.0], 0.0).unwrap();
        assert_abs_diff_eq!(
            lambda_max(&doubled).unwrap(),
            lambda_max(&p).unwrap() / 2.0,
            epsilon = 1e-15
        );

        // Orthogonal predictor: floor value, all-zero path.
        let ortho = DMatrix::from_row_slice(1, 3, &[1.0, -2.0, 1.0]);
        let p = LassoProblem::lasso(y, ortho).unwrap();
        let lmax = lambda_max(&p).unwrap();
        assert!(lmax > 0.0 && lmax < 1e-14);
        let path = fit_path(&p, 10).unwrap();
        assert!(path.coefs.iter().all(|c| c.iter().all(|v| v.abs() < 1e-12)));
    }

    #[test]
    fn path_shape_and_anchor() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = gaussian(&mut rng, 5, 50);
        let y = centered_vec(x.row(1).transpose() * 2.0 + gaussian(&mut rng, 1, 50).row(0).transpose());
        let p = LassoProblem::lasso(y, x).unwrap();
        let path = fit_path(&p, 100).unwrap();
        assert_eq!(path.len(), 100);
        assert!(path.coefs[0].iter().all(|c| *c == 0.0));
        assert!(path.lambdas.windows(2).all(|w| w[1] < w[0]));
        assert_abs_diff_eq!(path.lambdas[99], path.lambdas[0] * 1e-3, epsilon = 1e-12);
        for w in path.coefs.windows(2) {
            assert!((&w[1] - &w[0]).amax() < 0.5);
        }
        assert!(fit_path(&p, 1).is_err());
    }

    #[test]
    fn select_bic_tie_and_monotone() {
        let path = RegPath {
            lambdas: vec![3.0, 2.0, 1.0],
            coefs: vec![DVector::zeros(1), DVector::from_element(1, 1.0), DVector::from_element(1, 2.0)],
            bic: vec![5.0, 1.0, 1.0],
        };
        let (l, c) = select_bic(&path).unwrap();
        assert_eq!(l, 2.0);
        assert_eq!(c[0], 1.0);
        let decreasing = RegPath {
            bic: vec![3.0, 2.0, 1.0],
            ..path
        };
        assert_eq!(select_bic(&decreasing).unwrap().0, 1.0);
    }

    #[test]
    fn enet_with_zero_share_is_lasso_bit_for_bit() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let x = gaussian(&mut rng, 6, 25);
        let y = centered_vec(x.row(2).transpose() - x.row(4).transpose() + gaussian(&mut rng, 1, 25).row(0).transpose());
        let a = LassoProblem::lasso(y.clone(), x.clone()).unwrap();
        let b = LassoProblem::new(y, x, vec![1.0; 6], 0.0).unwrap();
        let lambda = 0.1;
        let ba = coordinate_descent(&a, lambda, &DVector::zeros(6)).unwrap();
        let bb = coordinate_descent(&b, lambda, &DVector::zeros(6)).unwrap();
        assert_eq!(ba.as_slice(), bb.as_slice());
    }

    #[test]
    fn elastic_net_kkt_and_descent() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = gaussian(&mut rng, 8, 20);
        let y = centered_vec(x.row(0).transpose() + gaussian(&mut rng, 1, 20).row(0).transpose());
        let p = LassoProblem::elastic_net(y, x).unwrap();
        let warm = DVector::from_element(8, 0.3);
        let lambda = 0.05;
        let beta = coordinate_descent(&p, lambda, &warm).unwrap();
        assert!(kkt_violation(&p, lambda, &beta) < KKT_TOLERANCE);
        assert!(p.objective(lambda, &beta) <= p.objective(lambda, &warm));
    }

    #[test]
    fn adaptive_lasso_null_response_is_empty() {
        // y orthogonal to every predictor.
        let x = DMatrix::from_row_slice(2, 4, &[1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 1.0, -1.0]);
        let y = DVector::from_vec(vec![1.0, 1.0, -1.0, -1.0]);
        let beta = adaptive_lasso(&y, &x, &RidgeConfig::default(), &PathConfig::default()).unwrap();
        assert!(beta.iter().all(|b| *b == 0.0));
    }

    #[test]
    fn adaptive_lasso_rejects_wide_problem() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let x = gaussian(&mut rng, 10, 10);
        let y = centered_vec(x.row(0).transpose());
        assert!(matches!(
            adaptive_lasso(&y, &x, &RidgeConfig::default(), &PathConfig::default()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn invalid_problems_rejected() {
        let y = DVector::from_vec(vec![1.0, -1.0]);
        let x = DMatrix::from_row_slice(1, 2, &[1.0, -1.0]);
        assert!(LassoProblem::new(y.clone(), x.clone(), vec![0.0], 0.0).is_err());
        assert!(LassoProblem::new(y.clone(), x.clone(), vec![1.0], 1.5).is_err());
        assert!(LassoProblem::new(y, x, vec![1.0, 1.0], 0.0).is_err());
    }

    #[test]
    fn sweep_limit_reports_best_iterate() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let x = gaussian(&mut rng, 5, 30);
        let y = centered_vec(x.row(0).transpose() + x.row(1).transpose());
        let p = LassoProblem::lasso(y, x).unwrap();
        let cfg = PathConfig {
            max_sweeps: 1,
            tol: 1e-15,
            ..PathConfig::default()
        };
        match coordinate_descent_with(&p, 1e-4, &DVector::zeros(5), &cfg) {
            Err(Error::NotConverged { best, sweeps, .. }) => {
                assert_eq!(best.len(), 5);
                assert_eq!(sweeps, 1);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
