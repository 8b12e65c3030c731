//! Causal-order search.
//!
//! The order is built front to back. In each round every remaining variable
//! `j` is residualized on the already-ordered variables `K` (giving `x̃ⱼ`) and
//! every other remaining variable `i` is residualized on `[xⱼ, x_K]` (giving
//! `rᵢ⁽ʲ⁾`), both by ridge regression. The variable whose residual looks most
//! independent of the `rᵢ⁽ʲ⁾` under the tanh nonlinear-correlation score is
//! appended to the order.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    center, centered_rows, check_permutation, pearson, select_rows, Dataset, RidgeConfig,
    RidgeSolver,
};

/// A permutation of variable indices; position is causal rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalOrder {
    order: Vec<usize>,
}

impl CausalOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        check_permutation(&order, order.len())?;
        Ok(Self { order })
    }

    pub fn identity(p: usize) -> Self {
        Self {
            order: (0..p).collect(),
        }
    }

    /// Topological order of the graph with an edge `j → i` wherever
    /// `b[(i, j)] != 0`. Ties are resolved towards the lower index.
    pub fn from_adjacency(b: &DMatrix<f64>) -> Result<Self> {
        let p = b.nrows();
        if b.ncols() != p {
            return Err(Error::ShapeMismatch {
                expected: "square matrix".into(),
                actual: format!("{}x{}", b.nrows(), b.ncols()),
            });
        }
        let mut indegree: Vec<usize> = (0..p)
            .map(|i| (0..p).filter(|&j| j != i && b[(i, j)] != 0.0).count())
            .collect();
        if (0..p).any(|i| b[(i, i)] != 0.0) {
            return Err(Error::Cyclic);
        }
        let mut placed = vec![false; p];
        let mut order = Vec::with_capacity(p);
        for _ in 0..p {
            let next = (0..p)
                .find(|&v| !placed[v] && indegree[v] == 0)
                .ok_or(Error::Cyclic)?;
            placed[next] = true;
            order.push(next);
            for (i, deg) in indegree.iter_mut().enumerate() {
                if i != next && b[(i, next)] != 0.0 {
                    *deg -= 1;
                }
            }
        }
        Ok(Self { order })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `ranks()[v]` is the position of variable `v`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.order.len()];
        for (pos, &v) in self.order.iter().enumerate() {
            r[v] = pos;
        }
        r
    }

    /// True when every edge `j → i` of `b` has `j` earlier than `i`.
    pub fn is_compatible_with(&self, b: &DMatrix<f64>) -> bool {
        let rank = self.ranks();
        let p = self.order.len();
        (0..p).all(|i| (0..p).all(|j| i == j || b[(i, j)] == 0.0 || rank[j] < rank[i]))
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.order
    }
}

/// Residuals entering the score for one candidate variable.
#[derive(Debug, Clone)]
pub struct ResidualSet {
    pub variable: usize,
    /// `x̃ⱼ`: the candidate residualized on the ordered prefix.
    pub candidate: Vec<f64>,
    /// `(i, rᵢ⁽ʲ⁾)` for every other remaining variable.
    pub cross: Vec<(usize, Vec<f64>)>,
}

/// Score of one candidate together with the number of degenerate
/// (near-constant) residuals whose terms were dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Score {
    pub value: f64,
    pub degenerate: usize,
}

fn tanh_vec(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| x.tanh()).collect()
}

/// `Σᵢ |corr(tanh(c), rᵢ)| + |corr(c, tanh(rᵢ))|`. Lower means more
/// independent.
pub fn independence_score(candidate: &[f64], others: &[Vec<f64>]) -> f64 {
    independence_score_detailed(candidate, others).value
}

pub fn independence_score_detailed(candidate: &[f64], others: &[Vec<f64>]) -> Score {
    let g_c = tanh_vec(candidate);
    let mut value = 0.0;
    let mut degenerate = 0;
    for r in others {
        let g_r = tanh_vec(r);
        match (pearson(&g_c, r), pearson(candidate, &g_r)) {
            (Some(a), Some(b)) => value += a.abs() + b.abs(),
            _ => degenerate += 1,
        }
    }
    Score { value, degenerate }
}

fn row_vec(m: &DMatrix<f64>, i: usize) -> Vec<f64> {
    let mut v: Vec<f64> = m.row(i).iter().copied().collect();
    center(&mut v);
    v
}

/// Per-round state shared by every candidate: the residuals of all remaining
/// variables on the ordered prefix and, in the dual regime, `X_Kᵀ X_K`.
struct Round<'a> {
    values: &'a DMatrix<f64>,
    prefix: &'a [usize],
    remaining: Vec<usize>,
    prefix_block: DMatrix<f64>,
    remaining_block: DMatrix<f64>,
    tilde: DMatrix<f64>,
    dual_gram: Option<DMatrix<f64>>,
    cfg: RidgeConfig,
}

impl<'a> Round<'a> {
    fn new(values: &'a DMatrix<f64>, prefix: &'a [usize], cfg: &RidgeConfig) -> Result<Self> {
        let p = values.nrows();
        let n = values.ncols();
        let mut in_prefix = vec![false; p];
        prefix.iter().for_each(|&k| in_prefix[k] = true);
        let remaining: Vec<usize> = (0..p).filter(|&v| !in_prefix[v]).collect();
        let prefix_block = select_rows(values, prefix);
        let remaining_block = select_rows(values, &remaining);
        let tilde = RidgeSolver::new(prefix_block.clone(), cfg)?.residual_rows(&remaining_block);
        let dual_gram = (prefix.len() + 1 > n).then(|| prefix_block.tr_mul(&prefix_block));
        Ok(Self {
            values,
            prefix,
            remaining,
            prefix_block,
            remaining_block,
            tilde,
            dual_gram,
            cfg: *cfg,
        })
    }

    fn residual_set(&self, slot: usize) -> Result<ResidualSet> {
        let j = self.remaining[slot];
        let n = self.values.ncols();
        let k = self.prefix.len() + 1;
        let mut block = DMatrix::zeros(k, n);
        block.row_mut(0).copy_from(&self.values.row(j));
        if k > 1 {
            block.rows_mut(1, k - 1).copy_from(&self.prefix_block);
        }
        let solver = match &self.dual_gram {
            Some(g) => {
                let xj = self.values.row(j).transpose();
                let gram = g + &xj * xj.transpose();
                RidgeSolver::from_dual_gram(block, gram, &self.cfg)?
            }
            None => RidgeSolver::new(block, &self.cfg)?,
        };
        let others: Vec<usize> = (0..self.remaining.len()).filter(|&s| s != slot).collect();
        let responses = select_rows(&self.remaining_block, &others);
        let resid = solver.residual_rows(&responses);
        Ok(ResidualSet {
            variable: j,
            candidate: row_vec(&self.tilde, slot),
            cross: others
                .iter()
                .enumerate()
                .map(|(r, &s)| (self.remaining[s], row_vec(&resid, r)))
                .collect(),
        })
    }
}

/// Builds the residuals for candidate `j` given the ordered prefix.
/// `values` must be row-centered.
pub fn residual_set(
    values: &DMatrix<f64>,
    prefix: &[usize],
    j: usize,
    cfg: &RidgeConfig,
) -> Result<ResidualSet> {
    let round = Round::new(values, prefix, cfg)?;
    let slot = round
        .remaining
        .iter()
        .position(|&v| v == j)
        .ok_or_else(|| Error::InvalidParameter(format!("variable {j} is already ordered")))?;
    round.residual_set(slot)
}

/// Scores of every remaining variable, in increasing variable index.
pub fn candidate_scores(
    values: &DMatrix<f64>,
    prefix: &[usize],
    cfg: &RidgeConfig,
) -> Result<Vec<(usize, Score)>> {
    let round = Round::new(values, prefix, cfg)?;
    (0..round.remaining.len())
        .into_par_iter()
        .map(|slot| {
            let set = round.residual_set(slot)?;
            let others: Vec<Vec<f64>> = set.cross.into_iter().map(|(_, r)| r).collect();
            Ok((set.variable, independence_score_detailed(&set.candidate, &others)))
        })
        .collect()
}

/// The remaining variable that looks most exogenous given the ordered prefix.
/// `values` must be row-centered.
pub fn find_exogenous(values: &DMatrix<f64>, prefix: &[usize], cfg: &RidgeConfig) -> Result<usize> {
    let p = values.nrows();
    if prefix.len() + 1 >= p {
        return Err(Error::InvalidParameter(format!(
            "{} of {p} variables already ordered; nothing to search",
            prefix.len()
        )));
    }
    let scores = candidate_scores(values, prefix, cfg)?;
    let mut best = scores[0];
    for &(v, s) in &scores[1..] {
        if s.value < best.1.value {
            best = (v, s);
        }
    }
    let degenerate: usize = scores.iter().map(|(_, s)| s.degenerate).sum();
    if degenerate > 0 {
        log::debug!(
            "order position {}: {degenerate} degenerate residual(s) skipped",
            prefix.len()
        );
    }
    Ok(best.0)
}

/// Estimates a full causal order. The data are row-centered internally.
pub fn estimate_order(data: &Dataset, cfg: &RidgeConfig) -> Result<CausalOrder> {
    let p = data.n_vars();
    let values = centered_rows(data.values());
    let mut order = Vec::with_capacity(p);
    while order.len() + 1 < p {
        let next = find_exogenous(&values, &order, cfg)?;
        order.push(next);
    }
    if let Some(last) = (0..p).find(|v| !order.contains(v)) {
        order.push(last);
    }
    debug_assert!(check_permutation(&order, p).is_ok());
    CausalOrder::new(order)
}

/// `x̃ⱼ` for every variable not in `prefix`, as rows in increasing index.
pub fn prefix_residuals(
    values: &DMatrix<f64>,
    prefix: &[usize],
    cfg: &RidgeConfig,
) -> Result<Vec<(usize, DVector<f64>)>> {
    let round = Round::new(values, prefix, cfg)?;
    Ok(round
        .remaining
        .iter()
        .enumerate()
        .map(|(s, &v)| (v, round.tilde.row(s).transpose()))
        .collect())
}
