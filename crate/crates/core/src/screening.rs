//! Iterative sure independence screening.
//!
//! Each round ranks the not-yet-kept predictors by absolute correlation with
//! the current residual, adds the top `⌊n / ln n⌋`, fits a BIC-selected lasso
//! of the response on everything kept so far and residualizes on the lasso
//! survivors. Rounds stop once the kept set reaches the target dimension, when
//! no new predictor survives, or after [`MAX_ROUNDS`].

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{pearson, select_rows, RidgeConfig, RidgeSolver};
use crate::sparse::{fit_bic, LassoProblem, PathConfig};

pub const MAX_ROUNDS: usize = 10;

/// Residual norm below which screening stops early.
pub const DEGENERATE_RESIDUAL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScreenRound {
    /// Newly ranked predictors, best first.
    pub correlation_selected: Vec<usize>,
    /// Predictors with nonzero BIC-lasso coefficients after this round.
    pub lasso_survivors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScreenResult {
    pub selected: Vec<usize>,
    pub per_round: Vec<ScreenRound>,
}

/// Predictors added per round: `⌊n / ln n⌋`, at least 1.
pub fn round_size(n: usize) -> usize {
    if n < 2 {
        return 1;
    }
    ((n as f64 / (n as f64).ln()).floor() as usize).max(1)
}

/// Indices of the `count` rows of `x` most correlated with `y` in absolute
/// value. Ties go to the lower index.
pub fn sis_round(y: &DVector<f64>, x: &DMatrix<f64>, count: usize) -> Result<Vec<usize>> {
    if count == 0 {
        return Err(Error::InvalidParameter("screening count must be at least 1".into()));
    }
    if x.ncols() != y.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} observations", y.len()),
            actual: format!("{} columns", x.ncols()),
        });
    }
    let all: Vec<usize> = (0..x.nrows()).collect();
    Ok(rank_by_correlation(y, x, &all, count))
}

fn rank_by_correlation(
    y: &DVector<f64>,
    x: &DMatrix<f64>,
    candidates: &[usize],
    count: usize,
) -> Vec<usize> {
    let ys = y.as_slice();
    let mut scored: Vec<(f64, usize)> = candidates
        .iter()
        .map(|&j| {
            let row: Vec<f64> = x.row(j).iter().copied().collect();
            (pearson(ys, &row).map_or(0.0, f64::abs), j)
        })
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    scored.into_iter().take(count).map(|(_, j)| j).collect()
}

/// Reduces the predictor rows of `x` to at most `target_dim` indices.
///
/// When `x` already has no more than `target_dim` rows, every index is
/// returned without any rounds.
pub fn isis(
    y: &DVector<f64>,
    x: &DMatrix<f64>,
    target_dim: usize,
    ridge: &RidgeConfig,
    path: &PathConfig,
) -> Result<ScreenResult> {
    let (k, n) = x.shape();
    if n != y.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} observations", y.len()),
            actual: format!("{n} columns"),
        });
    }
    if target_dim + 1 > n {
        return Err(Error::InvalidParameter(format!(
            "screening target {target_dim} must be at most n - 1 = {}",
            n.saturating_sub(1)
        )));
    }
    if k <= target_dim {
        return Ok(ScreenResult {
            selected: (0..k).collect(),
            per_round: Vec::new(),
        });
    }

    let step = round_size(n);
    let mut kept: Vec<usize> = Vec::new();
    let mut residual = y.clone();
    let mut rounds = Vec::new();

    for _ in 0..MAX_ROUNDS {
        let in_kept: BTreeSet<usize> = kept.iter().copied().collect();
        let candidates: Vec<usize> = (0..k).filter(|j| !in_kept.contains(j)).collect();
        if candidates.is_empty() {
            break;
        }
        let fresh = rank_by_correlation(&residual, x, &candidates, step);

        if kept.len() + fresh.len() >= target_dim {
            // Overshoot: survivors first, then the newest ranking.
            let mut selected = kept.clone();
            selected.extend(fresh.iter().copied().take(target_dim - kept.len()));
            rounds.push(ScreenRound {
                correlation_selected: fresh,
                lasso_survivors: kept,
            });
            return Ok(ScreenResult {
                selected,
                per_round: rounds,
            });
        }

        let mut pool = kept.clone();
        pool.extend(&fresh);
        let block = select_rows(x, &pool);
        let beta = fit_bic(&LassoProblem::lasso(y.clone(), block)?, path)?;
        let survivors: Vec<usize> = pool
            .iter()
            .zip(beta.iter())
            .filter(|(_, b)| **b != 0.0)
            .map(|(&j, _)| j)
            .collect();
        let grew = survivors.iter().any(|j| !in_kept.contains(j));
        rounds.push(ScreenRound {
            correlation_selected: fresh,
            lasso_survivors: survivors.clone(),
        });
        kept = survivors;
        if !grew {
            break;
        }
        residual = RidgeSolver::new(select_rows(x, &kept), ridge)?.residual(y);
        if residual.norm() < DEGENERATE_RESIDUAL {
            break;
        }
    }

    Ok(ScreenResult {
        selected: kept,
        per_round: rounds,
    })
}
