#![allow(dead_code)]

use arbor_eigen::generate::{self, WeightRange};
use arbor_eigen::WeightedForest;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random tree with edge weights in `[-2,-0.1] u [0.1,2]` and vertex
/// weights in `[-1, 1]`.
pub fn weighted_tree(seed: u64, n: usize) -> WeightedForest {
    generate::random_tree(&mut rng(seed), n, &WeightRange::default())
}

pub fn weighted_forest(seed: u64, n: usize, drop: f64) -> WeightedForest {
    generate::random_forest(&mut rng(seed), n, drop, &WeightRange::default())
}

/// Random tree with unit edges and zero diagonal: plenty of repeated
/// eigenvalues and zero eigenvector entries.
pub fn unit_tree(seed: u64, n: usize) -> WeightedForest {
    let t = generate::random_tree(&mut rng(seed), n, &WeightRange::zero_diagonal());
    WeightedForest::new(vec![0.0; n], t.edges().iter().map(|e| (e.u, e.v, 1.0))).unwrap()
}

/// Random tree with small integer weights, so that exact zero pivots occur
/// at integer shifts.
pub fn integer_tree(seed: u64, n: usize) -> WeightedForest {
    let mut r = rng(seed);
    let t = generate::random_tree(&mut r, n, &WeightRange::zero_diagonal());
    let weights = (0..n).map(|_| r.gen_range(-2..=2) as f64).collect();
    let edges: Vec<_> = t
        .edges()
        .iter()
        .map(|e| {
            let w = [-2.0, -1.0, 1.0, 2.0][r.gen_range(0..4)];
            (e.u, e.v, w)
        })
        .collect();
    WeightedForest::new(weights, edges).unwrap()
}

pub fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
