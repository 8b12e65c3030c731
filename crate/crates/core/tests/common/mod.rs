//! Independent oracles and helpers shared by the integration tests.
#![allow(dead_code)]

use hdlingam::datagen::{propagate, sample_structure, trial_rng, GeneratorConfig, NoiseFamily};
use hdlingam::{DMatrix, DVector, Dataset, LassoProblem};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    trial_rng(seed, 0)
}

pub fn centered(mut m: DMatrix<f64>) -> DMatrix<f64> {
    for mut row in m.row_iter_mut() {
        let mu = row.mean();
        row.add_scalar_mut(-mu);
    }
    m
}

pub fn centered_vec(v: DVector<f64>) -> DVector<f64> {
    let mu = v.mean();
    v.add_scalar(-mu)
}

pub fn laplace<R: Rng>(rng: &mut R) -> f64 {
    NoiseFamily::Laplace.standard_draw(rng)
}

pub fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    rng.sample(rand_distr::StandardNormal)
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Mean, variance, skewness and excess kurtosis (population moments).
pub fn moments(v: &[f64]) -> (f64, f64, f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for x in v {
        let d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    (mean, m2, m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0)
}

/// `k ≤ 4`, `n ≤ 50` Gaussian design with random weights.
pub fn random_problem(seed: u64, ridge_share: f64) -> LassoProblem {
    let mut rng = rng(seed);
    let k = rng.random_range(1..=4);
    let n = rng.random_range(k + 2..=50);
    let x = centered(DMatrix::from_fn(k, n, |_, _| gaussian(&mut rng)));
    let truth: Vec<f64> = (0..k).map(|_| rng.random_range(-2.0..2.0)).collect();
    let y = DVector::from_fn(n, |c, _| {
        (0..k).map(|j| truth[j] * x[(j, c)]).sum::<f64>() + gaussian(&mut rng)
    });
    let weights = (0..k).map(|_| rng.random_range(0.5..2.0)).collect();
    LassoProblem::new(centered_vec(y), x, weights, ridge_share).unwrap()
}

/// Exact minimizer by enumerating every sign pattern in `{−1, 0, 1}^k` and
/// solving the stationarity equations on each face.
pub fn lasso_oracle(problem: &LassoProblem, lambda: f64) -> DVector<f64> {
    let x = problem.x();
    let y = problem.y();
    let (k, n) = x.shape();
    let nf = n as f64;
    let a = problem.ridge_share();
    let w = problem.weights();
    let scale: Vec<f64> = (0..k)
        .map(|j| (x.row(j).norm_squared() / nf).sqrt())
        .collect();
    let z = DMatrix::from_fn(k, n, |j, c| x[(j, c)] / scale[j]);

    let objective = |c: &[f64]| {
        let mut r = y.clone();
        for j in 0..k {
            r -= z.row(j).transpose() * c[j];
        }
        let pen: f64 = (0..k)
            .map(|j| w[j] * ((1.0 - a) * c[j].abs() + a * c[j] * c[j]))
            .sum();
        r.norm_squared() / (2.0 * nf) + lambda * pen
    };

    let mut best = vec![0.0; k];
    let mut best_obj = objective(&best);
    for code in 0..3usize.pow(k as u32) {
        let mut signs = vec![0.0; k];
        let mut c = code;
        for s in signs.iter_mut() {
            *s = [0.0, 1.0, -1.0][c % 3];
            c /= 3;
        }
        let act: Vec<usize> = (0..k).filter(|&j| signs[j] != 0.0).collect();
        if act.is_empty() {
            continue;
        }
        let m = act.len();
        let g = DMatrix::from_fn(m, m, |p, q| {
            let v = z.row(act[p]).dot(&z.row(act[q])) / nf;
            if p == q {
                v + 2.0 * lambda * a * w[act[p]]
            } else {
                v
            }
        });
        let rhs = DVector::from_fn(m, |p, _| {
            z.row(act[p]).dot(&y.transpose()) / nf - lambda * (1.0 - a) * w[act[p]] * signs[act[p]]
        });
        let Some(sol) = g.lu().solve(&rhs) else { continue };
        if act.iter().enumerate().any(|(p, &j)| sol[p] * signs[j] <= 0.0) {
            continue;
        }
        let mut cand = vec![0.0; k];
        for (p, &j) in act.iter().enumerate() {
            cand[j] = sol[p];
        }
        let obj = objective(&cand);
        if obj < best_obj {
            best_obj = obj;
            best = cand;
        }
    }
    DVector::from_fn(k, |j, _| best[j] / scale[j])
}

/// `a_ij` as the sum over every directed path `j → … → i` of the product of
/// edge coefficients, by depth-first enumeration.
pub fn path_sum_total(b: &DMatrix<f64>) -> DMatrix<f64> {
    let p = b.nrows();
    fn walk(b: &DMatrix<f64>, node: usize, weight: f64, source: usize, a: &mut DMatrix<f64>) {
        for next in 0..b.nrows() {
            let e = b[(next, node)];
            if e != 0.0 {
                let w = weight * e;
                a[(next, source)] += w;
                walk(b, next, w, source, a);
            }
        }
    }
    let mut a = DMatrix::zeros(p, p);
    for s in 0..p {
        walk(b, s, 1.0, s, &mut a);
    }
    a
}

/// Random acyclic matrix: lower-triangular in a shuffled order.
pub fn random_acyclic<R: Rng>(rng: &mut R, p: usize, density: f64) -> DMatrix<f64> {
    let mut order: Vec<usize> = (0..p).collect();
    order.shuffle(rng);
    let mut b = DMatrix::zeros(p, p);
    for hi in 1..p {
        for lo in 0..hi {
            if rng.random::<f64>() < density {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                b[(order[hi], order[lo])] = sign * rng.random_range(0.5..1.5);
            }
        }
    }
    b
}

/// Support F1 on off-diagonal cells; 1 when both supports are empty.
pub fn support_f1(est: &DMatrix<f64>, truth: &DMatrix<f64>) -> f64 {
    let p = truth.nrows();
    let (mut e, mut t, mut h) = (0, 0, 0);
    for i in 0..p {
        for j in 0..p {
            if i != j {
                let ei = est[(i, j)] != 0.0;
                let ti = truth[(i, j)] != 0.0;
                e += ei as usize;
                t += ti as usize;
                h += (ei && ti) as usize;
            }
        }
    }
    if e + t == 0 {
        1.0
    } else {
        2.0 * h as f64 / (e + t) as f64
    }
}

/// Laplace-noise data from a random DAG with the generator's structure
/// sampler, relabeled by a random permutation. Returns the dataset and its
/// connection matrix in observed labels.
pub fn laplace_dag(seed: u64, p: usize, n: usize, degree: f64) -> (Dataset, DMatrix<f64>) {
    let mut rng = trial_rng(seed, 0);
    let cfg = GeneratorConfig { p, n, ..GeneratorConfig::default() };
    let b = sample_structure(&cfg, degree, &mut rng);
    let mut e = DMatrix::zeros(p, n);
    for i in 0..p {
        let sd = rng.random_range(1.0f64..3.0).sqrt();
        for c in 0..n {
            e[(i, c)] = sd * laplace(&mut rng);
        }
    }
    let x = propagate(&b, &e);
    let mut perm: Vec<usize> = (0..p).collect();
    perm.shuffle(&mut rng);
    let data = Dataset::with_default_ids(DMatrix::from_fn(p, n, |r, c| x[(perm[r], c)])).unwrap();
    let b_obs = DMatrix::from_fn(p, p, |r, c| b[(perm[r], perm[c])]);
    (data, b_obs)
}
