//! Independent ground truth for the tree algorithms.
//!
//! The reference computations never use the tree recurrences: eigenpairs
//! come from dense Jacobi rotations, matching polynomials from listing every
//! matching, and path sums from depth-first enumeration. Everything is slow
//! and meant for cross-checking small instances. [`identities`] puts the
//! fast and slow sides of each polynomial identity next to each other.

pub mod identities;
mod jacobi;
mod matching;

use nalgebra::DMatrix;

use crate::error::OracleError;
use crate::forest::WeightedForest;

pub use jacobi::{dense_determinant, jacobi_eigen, JacobiEigen, JACOBI_MAX_N, JACOBI_MAX_SWEEPS};
pub use matching::{
    enumerate_matchings, enumerate_paths, hl_identity_residual, matching_poly_by_enumeration,
    GraphPath, MatchingTable, WeightedGraph, ENUMERATION_MAX_N, PATH_IDENTITY_MAX_N,
};

/// `max_v |(lambda - w(v)) x(v) - sum_z w(vz) x(z)| / (|A|_inf |x|_inf)`.
pub fn residual(forest: &WeightedForest, lambda: f64, vector: &[f64]) -> Result<f64, OracleError> {
    let scale = vector.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return Err(OracleError::ZeroVector);
    }
    let worst = (0..forest.n())
        .map(|v| {
            let coupled: f64 = forest.neighbors(v).iter().map(|&(z, w)| w * vector[z]).sum();
            ((lambda - forest.vertex_weight(v)) * vector[v] - coupled).abs()
        })
        .fold(0.0, f64::max);
    if worst == 0.0 {
        return Ok(0.0);
    }
    Ok(worst / (forest.inf_norm().max(f64::MIN_POSITIVE) * scale))
}

fn as_columns(vectors: &[Vec<f64>]) -> DMatrix<f64> {
    let n = vectors.first().map_or(0, Vec::len);
    DMatrix::from_fn(n, vectors.len(), |i, j| vectors[j][i])
}

/// Singular values of the matrix whose columns are `vectors`, descending.
pub fn singular_values(vectors: &[Vec<f64>]) -> Vec<f64> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = as_columns(vectors).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn orthonormal_columns(vectors: &[Vec<f64>]) -> DMatrix<f64> {
    let m = as_columns(vectors);
    let k = m.ncols();
    let svd = m.svd(true, false);
    let u = svd.u.expect("requested U");
    u.columns(0, k).into_owned()
}

/// Largest principal angle between the spans of two equally sized sets of
/// independent vectors, in radians; `pi/2` when the dimensions differ.
pub fn largest_principal_angle(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    if a.len() != b.len() {
        return std::f64::consts::FRAC_PI_2;
    }
    if a.is_empty() {
        return 0.0;
    }
    let qa = orthonormal_columns(a);
    let qb = orthonormal_columns(b);
    let projected = &qb * (qb.transpose() * &qa);
    let sine = (qa - projected).singular_values().max();
    sine.clamp(0.0, 1.0).asin()
}

/// `|cos|` of the angle between two vectors.
pub fn abs_cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    (dot / (na * nb)).abs()
}
