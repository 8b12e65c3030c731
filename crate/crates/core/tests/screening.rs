mod common;

use hdlingam::screening::{isis, round_size, sis_round};
use hdlingam::{DMatrix, DVector, PathConfig, RidgeConfig};

fn design(seed: u64, k: usize, n: usize) -> DMatrix<f64> {
    let mut rng = common::rng(seed);
    common::centered(DMatrix::from_fn(k, n, |_, _| common::gaussian(&mut rng)))
}

#[test]
fn strong_predictors_survive_screening() {
    let (k, n) = (100, 50);
    let mut hits = 0;
    for seed in 0..50 {
        let x = design(seed, k, n);
        let mut rng = common::rng(seed + 500);
        let y = common::centered_vec(DVector::from_fn(n, |c, _| {
            2.0 * x[(7, c)] - 1.5 * x[(40, c)] + 1.8 * x[(93, c)] + 0.5 * common::gaussian(&mut rng)
        }));
        let res = isis(&y, &x, n - 1, &RidgeConfig::default(), &PathConfig::default()).unwrap();
        assert!(res.selected.len() < n);
        let mut sorted = res.selected.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), res.selected.len());
        hits += [7, 40, 93].iter().all(|j| res.selected.contains(j)) as usize;
    }
    assert!(hits >= 45, "{hits}/50");
}

#[test]
fn noiseless_subset_is_recovered() {
    let (k, n) = (60, 30);
    for seed in 0..10 {
        let x = design(seed, k, n);
        let y = DVector::from_fn(n, |c, _| x[(3, c)] - 2.0 * x[(11, c)] + 0.7 * x[(50, c)]);
        let res = isis(&y, &x, n - 1, &RidgeConfig::default(), &PathConfig::default()).unwrap();
        for j in [3, 11, 50] {
            assert!(res.selected.contains(&j), "seed {seed}: {j} missing from {:?}", res.selected);
        }
    }
}

#[test]
fn top_correlation_enters_first_round() {
    let (k, n) = (80, 30);
    for seed in 0..10 {
        let x = design(seed, k, n);
        let mut rng = common::rng(seed + 9);
        let y = common::centered_vec(DVector::from_fn(n, |c, _| x[(21, c)] + common::gaussian(&mut rng)));
        let best = (0..k)
            .max_by(|&a, &b| {
                let ca = hdlingam::linalg::pearson(x.row(a).transpose().as_slice(), y.as_slice()).unwrap().abs();
                let cb = hdlingam::linalg::pearson(x.row(b).transpose().as_slice(), y.as_slice()).unwrap().abs();
                ca.total_cmp(&cb)
            })
            .unwrap();
        let res = isis(&y, &x, n - 1, &RidgeConfig::default(), &PathConfig::default()).unwrap();
        assert!(res.per_round[0].correlation_selected.contains(&best));
        assert_eq!(sis_round(&y, &x, round_size(n)).unwrap(), res.per_round[0].correlation_selected);
    }
}

#[test]
fn target_dimension_is_never_exceeded() {
    let (k, n) = (200, 40);
    for (seed, target) in [(1, 5), (2, 12), (3, 39)] {
        let x = design(seed, k, n);
        let y = common::centered_vec(DVector::from_fn(n, |c, _| (0..30).map(|j| x[(j * 6, c)]).sum::<f64>()));
        let res = isis(&y, &x, target, &RidgeConfig::default(), &PathConfig::default()).unwrap();
        assert!(res.selected.len() <= target);
    }
    let x = design(4, 10, 8);
    let y = DVector::from_fn(8, |c, _| x[(0, c)]);
    assert!(isis(&y, &x, 8, &RidgeConfig::default(), &PathConfig::default()).is_err());
}
