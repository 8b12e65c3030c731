//! Direct and total causal effects given a causal order.
//!
//! Every regression goes through the same cascade: when there are more
//! candidate predictors than `n − 1`, iterative screening reduces them to
//! `n − 1` and a BIC lasso prunes further; the adaptive lasso with ridge pilot
//! weights then gives the final coefficients.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{centered_rows, select_rows, Dataset, RidgeConfig};
use crate::ordering::CausalOrder;
use crate::screening::isis;
use crate::sparse::{adaptive_lasso, fit_bic, LassoProblem, PathConfig};

/// Cells with magnitude at or below this count as absent edges.
pub const NONZERO_THRESHOLD: f64 = 1e-12;

/// `B` with `b[(i, j)]` the direct effect of variable `j` on variable `i`,
/// certified acyclic by `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectEffects {
    b: DMatrix<f64>,
    order: CausalOrder,
}

impl DirectEffects {
    pub fn new(b: DMatrix<f64>, order: CausalOrder) -> Result<Self> {
        let p = b.nrows();
        if b.ncols() != p || order.len() != p {
            return Err(Error::ShapeMismatch {
                expected: format!("{0}x{0} matrix with order of length {0}", order.len()),
                actual: format!("{}x{}", b.nrows(), b.ncols()),
            });
        }
        if (0..p).any(|i| b[(i, i)] != 0.0) || !order.is_compatible_with(&b) {
            return Err(Error::Cyclic);
        }
        Ok(Self { b, order })
    }

    /// Certifies a bare matrix by topological sort.
    pub fn from_matrix(b: DMatrix<f64>) -> Result<Self> {
        let order = CausalOrder::from_adjacency(&b)?;
        Self::new(b, order)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn order(&self) -> &CausalOrder {
        &self.order
    }

    pub fn n_vars(&self) -> usize {
        self.b.nrows()
    }

    pub fn parents(&self, i: usize) -> Vec<usize> {
        (0..self.n_vars())
            .filter(|&j| j != i && self.b[(i, j)].abs() > NONZERO_THRESHOLD)
            .collect()
    }

    pub fn nonzero_count(&self) -> usize {
        count_nonzero(&self.b)
    }

    pub fn into_parts(self) -> (DMatrix<f64>, CausalOrder) {
        (self.b, self.order)
    }
}

/// `A` with `a[(i, j)]` the total effect of variable `j` on variable `i`;
/// the diagonal is always zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TotalEffects {
    a: DMatrix<f64>,
}

impl TotalEffects {
    pub fn new(mut a: DMatrix<f64>) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::ShapeMismatch {
                expected: "square matrix".into(),
                actual: format!("{}x{}", a.nrows(), a.ncols()),
            });
        }
        a.fill_diagonal(0.0);
        Ok(Self { a })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn nonzero_count(&self) -> usize {
        count_nonzero(&self.a)
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.a
    }
}

pub fn count_nonzero(m: &DMatrix<f64>) -> usize {
    let p = m.nrows();
    (0..p)
        .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && m[(i, j)].abs() > NONZERO_THRESHOLD)
        .count()
}

/// Screening, lasso and adaptive lasso of `y` on the rows of `x`. Returns one
/// coefficient per row of `x`.
pub fn sparse_regression(
    y: &DVector<f64>,
    x: &DMatrix<f64>,
    ridge: &RidgeConfig,
    path: &PathConfig,
) -> Result<DVector<f64>> {
    let (k, n) = x.shape();
    let mut out = DVector::zeros(k);
    if k == 0 {
        return Ok(out);
    }
    let cap = n.saturating_sub(1);
    let keep: Vec<usize> = if k > cap {
        let screened = isis(y, x, cap, ridge, path)?.selected;
        if screened.is_empty() {
            return Ok(out);
        }
        let block = select_rows(x, &screened);
        let beta = fit_bic(&LassoProblem::lasso(y.clone(), block)?, path)?;
        screened
            .into_iter()
            .zip(beta.iter())
            .filter(|(_, b)| **b != 0.0)
            .map(|(j, _)| j)
            .collect()
    } else {
        (0..k).collect()
    };
    if keep.is_empty() {
        return Ok(out);
    }
    let beta = adaptive_lasso(y, &select_rows(x, &keep), ridge, path)?;
    for (r, &j) in keep.iter().enumerate() {
        out[j] = beta[r];
    }
    Ok(out)
}

/// Regresses each variable on its predecessors in `order`.
pub fn estimate_direct(
    data: &Dataset,
    order: &CausalOrder,
    ridge: &RidgeConfig,
    path: &PathConfig,
) -> Result<DirectEffects> {
    let p = data.n_vars();
    if order.len() != p {
        return Err(Error::ShapeMismatch {
            expected: format!("order of length {p}"),
            actual: format!("{}", order.len()),
        });
    }
    let values = centered_rows(data.values());
    let ord = order.as_slice();
    let rows: Vec<Vec<(usize, f64)>> = (0..p)
        .into_par_iter()
        .map(|pos| {
            let i = ord[pos];
            let preds = &ord[..pos];
            let y = values.row(i).transpose();
            let beta = sparse_regression(&y, &select_rows(&values, preds), ridge, path)?;
            Ok(preds.iter().copied().zip(beta.iter().copied()).collect())
        })
        .collect::<Result<_>>()?;

    let mut b = DMatrix::zeros(p, p);
    for (pos, row) in rows.into_iter().enumerate() {
        let i = ord[pos];
        for (j, v) in row {
            b[(i, j)] = v;
        }
    }
    DirectEffects::new(b, order.clone())
}

/// `(I − B)⁻¹` with its unit diagonal removed, by forward substitution in
/// causal order.
pub fn total_from_direct(direct: &DirectEffects) -> TotalEffects {
    let p = direct.n_vars();
    let b = direct.matrix();
    let ord = direct.order().as_slice();
    let mut a = DMatrix::zeros(p, p);
    for (start, &source) in ord.iter().enumerate() {
        a[(source, source)] = 1.0;
        for &i in &ord[start + 1..] {
            let mut acc = 0.0;
            for &k in &ord[start..] {
                if k == i {
                    break;
                }
                acc += b[(i, k)] * a[(k, source)];
            }
            a[(i, source)] = acc;
        }
    }
    a.fill_diagonal(0.0);
    TotalEffects { a }
}

/// Total effect of every earlier variable `j` on every later variable `i`,
/// adjusting for the parents of `j` read off `direct`. Pairs against the
/// order are structural zeros.
pub fn estimate_total(
    data: &Dataset,
    direct: &DirectEffects,
    ridge: &RidgeConfig,
    path: &PathConfig,
) -> Result<TotalEffects> {
    let p = data.n_vars();
    if direct.n_vars() != p {
        return Err(Error::ShapeMismatch {
            expected: format!("{p} variables"),
            actual: format!("{}", direct.n_vars()),
        });
    }
    let values = centered_rows(data.values());
    let ord = direct.order().as_slice();
    let parents: Vec<Vec<usize>> = (0..p).map(|j| direct.parents(j)).collect();

    let rows: Vec<Vec<(usize, f64)>> = (0..p)
        .into_par_iter()
        .map(|pos| {
            let i = ord[pos];
            let y = values.row(i).transpose();
            ord[..pos]
                .iter()
                .map(|&j| {
                    let mut adjust = Vec::with_capacity(parents[j].len() + 1);
                    adjust.push(j);
                    adjust.extend(&parents[j]);
                    let beta = sparse_regression(&y, &select_rows(&values, &adjust), ridge, path)?;
                    Ok((j, beta[0]))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut a = DMatrix::zeros(p, p);
    for (pos, row) in rows.into_iter().enumerate() {
        let i = ord[pos];
        for (j, v) in row {
            a[(i, j)] = v;
        }
    }
    Ok(TotalEffects { a })
}
