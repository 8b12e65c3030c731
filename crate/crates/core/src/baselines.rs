//! Comparison methods: per-variable lasso or elastic net on all other
//! variables, and random guessing with a matched number of edges.

use nalgebra::DMatrix;
use rand::seq::{index, SliceRandom};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::effects::count_nonzero;
use crate::error::{Error, Result};
use crate::linalg::{centered_rows, select_rows, Dataset};
use crate::sparse::{fit_bic, LassoProblem, PathConfig, ELASTIC_NET_SHARE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    RandomGuess,
    Lasso,
    ElasticNet,
    Lingam,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::RandomGuess, Method::Lasso, Method::ElasticNet, Method::Lingam];

    pub fn name(self) -> &'static str {
        match self {
            Method::RandomGuess => "random_guess",
            Method::Lasso => "lasso",
            Method::ElasticNet => "elastic_net",
            Method::Lingam => "lingam",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random_guess" | "random" => Ok(Method::RandomGuess),
            "lasso" => Ok(Method::Lasso),
            "elastic_net" | "enet" => Ok(Method::ElasticNet),
            "lingam" => Ok(Method::Lingam),
            other => Err(Error::InvalidParameter(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineEstimate {
    pub method: Method,
    pub b_hat: DMatrix<f64>,
    pub a_hat: DMatrix<f64>,
}

/// Regresses every variable on all the others. The nonzero pattern stands for
/// both direct and total effects, so `a_hat == b_hat`.
pub fn lasso_baseline(data: &Dataset, ridge_share: f64, path: &PathConfig) -> Result<BaselineEstimate> {
    let method = if ridge_share == 0.0 {
        Method::Lasso
    } else if ridge_share == ELASTIC_NET_SHARE {
        Method::ElasticNet
    } else {
        return Err(Error::InvalidParameter(format!(
            "baseline ridge share must be 0 or {ELASTIC_NET_SHARE}, got {ridge_share}"
        )));
    };
    let values = centered_rows(data.values());
    let p = data.n_vars();
    let rows: Vec<Vec<(usize, f64)>> = (0..p)
        .into_par_iter()
        .map(|i| {
            let others: Vec<usize> = (0..p).filter(|&j| j != i).collect();
            let y = values.row(i).transpose();
            let x = select_rows(&values, &others);
            let k = others.len();
            let problem = LassoProblem::new(y, x, vec![1.0; k], ridge_share)?;
            let beta = fit_bic(&problem, path)?;
            Ok(others.into_iter().zip(beta.iter().copied()).collect())
        })
        .collect::<Result<_>>()?;
    let mut b = DMatrix::zeros(p, p);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row {
            b[(i, j)] = v;
        }
    }
    Ok(BaselineEstimate {
        method,
        a_hat: b.clone(),
        b_hat: b,
    })
}

/// Places `count` unit edges uniformly among the cells consistent with
/// `order` (sources before targets).
fn random_triangle<R: Rng + ?Sized>(order: &[usize], count: usize, rng: &mut R) -> DMatrix<f64> {
    let p = order.len();
    let capacity = p * (p - 1) / 2;
    let count = if count > capacity {
        log::warn!("random guess: {count} edges requested, capped at {capacity}");
        capacity
    } else {
        count
    };
    let mut m = DMatrix::zeros(p, p);
    for cell in index::sample(rng, capacity, count).into_iter() {
        // cell enumerates (hi, lo) with lo < hi row by row: 0 → (1,0), 1 → (2,0), 2 → (2,1) …
        let mut hi = ((1.0 + (1.0 + 8.0 * cell as f64).sqrt()) / 2.0).floor() as usize;
        while hi * (hi - 1) / 2 > cell {
            hi -= 1;
        }
        while (hi + 1) * hi / 2 <= cell {
            hi += 1;
        }
        let lo = cell - hi * (hi - 1) / 2;
        m[(order[hi], order[lo])] = 1.0;
    }
    m
}

/// Random acyclic graphs with as many direct and total effects as the
/// reference estimate. Both share one random variable ordering.
pub fn random_guess<R: Rng + ?Sized>(
    reference_b: &DMatrix<f64>,
    reference_a: &DMatrix<f64>,
    rng: &mut R,
) -> BaselineEstimate {
    let p = reference_b.nrows();
    let mut order: Vec<usize> = (0..p).collect();
    order.shuffle(rng);
    let b_hat = random_triangle(&order, count_nonzero(reference_b), rng);
    let a_hat = random_triangle(&order, count_nonzero(reference_a), rng);
    BaselineEstimate {
        method: Method::RandomGuess,
        b_hat,
        a_hat,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::trial_rng;
    use crate::ordering::CausalOrder;

    #[test]
    fn triangle_cells_are_enumerated_exactly_once() {
        let mut rng = trial_rng(0, 0);
        for p in 2..12 {
            let order: Vec<usize> = (0..p).collect();
            let full = random_triangle(&order, p * (p - 1) / 2, &mut rng);
            for i in 0..p {
                for j in 0..p {
                    assert_eq!(full[(i, j)], if j < i { 1.0 } else { 0.0 });
                }
            }
        }
    }

    #[test]
    fn random_guess_counts_and_acyclicity() {
        let mut rng = trial_rng(5, 1);
        let p = 9;
        let mut reference_b = DMatrix::zeros(p, p);
        let mut reference_a = DMatrix::zeros(p, p);
        for k in 0..7 {
            reference_b[(k + 1, k)] = 0.3;
        }
        for i in 0..p {
            for j in 0..i {
                reference_a[(i, j)] = 1.0;
            }
        }
        let g = random_guess(&reference_b, &reference_a, &mut rng);
        assert_eq!(count_nonzero(&g.b_hat), 7);
        assert_eq!(count_nonzero(&g.a_hat), p * (p - 1) / 2);
        assert!(CausalOrder::from_adjacency(&g.b_hat).is_ok());
        assert!(CausalOrder::from_adjacency(&g.a_hat).is_ok());

        let empty = random_guess(&DMatrix::zeros(p, p), &DMatrix::zeros(p, p), &mut rng);
        assert_eq!(count_nonzero(&empty.b_hat), 0);
        assert_eq!(count_nonzero(&empty.a_hat), 0);
    }

    #[test]
    fn over_capacity_is_capped() {
        let mut rng = trial_rng(2, 2);
        let m = random_triangle(&[2, 0, 1], 10, &mut rng);
        assert_eq!(count_nonzero(&m), 3);
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("pc".parse::<Method>().is_err());
    }
}
