//! Residuals of the polynomial identities the tree algorithms rely on.
//!
//! Each checker evaluates both sides of an identity and returns
//! `|lhs - rhs|` divided by the largest magnitude among the terms involved,
//! so values near machine epsilon mean the identity holds.

use crate::eigvec::closed_form_entries;
use crate::forest::{Vertex, WeightedForest};
use crate::poly::{phi_eval, phi_eval_minus};

use super::jacobi::dense_determinant;
use super::matching::{MatchingTable, WeightedGraph, ENUMERATION_MAX_N};

/// Largest forest for which the determinant side is formed densely.
pub const DENSE_DETERMINANT_MAX_N: usize = 400;

fn normalized(diff: f64, scale: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else {
        diff.abs() / scale.max(f64::MIN_POSITIVE)
    }
}

/// `det(xI - A)` by LU factorization.
pub fn dense_char_poly(forest: &WeightedForest, x: f64) -> f64 {
    let mut m = forest.induced_matrix();
    for (i, row) in m.iter_mut().enumerate() {
        for (j, a) in row.iter_mut().enumerate() {
            *a = if i == j { x - *a } else { -*a };
        }
    }
    dense_determinant(&m)
}

/// Characteristic polynomial versus matching polynomial at `x`.
///
/// The recurrence value is compared with a dense determinant (up to
/// [`DENSE_DETERMINANT_MAX_N`] vertices) and with the sum over all
/// matchings (up to [`ENUMERATION_MAX_N`] vertices); the worse residual is
/// returned. `None` when the forest is too large for either reference.
pub fn char_poly_residual(forest: &WeightedForest, x: f64) -> Option<f64> {
    let n = forest.n();
    let fast = phi_eval(forest, x).value;
    let mut worst: Option<f64> = None;
    if n <= DENSE_DETERMINANT_MAX_N {
        let det = dense_char_poly(forest, x);
        worst = Some(normalized(fast - det, fast.abs().max(det.abs())));
    }
    if n <= ENUMERATION_MAX_N {
        let graph = WeightedGraph::from_forest(forest).expect("size checked");
        let table = MatchingTable::new(&graph).expect("size checked");
        let mu = table.mu_minus(0, x);
        let r = normalized(fast - mu, fast.abs().max(mu.abs()));
        worst = Some(worst.map_or(r, |w| w.max(r)));
    }
    worst
}

/// `phi'(A, x) = sum_v phi(A - v, x)`, each deletion evaluated separately.
pub fn derivative_residual(forest: &WeightedForest, x: f64) -> f64 {
    let deriv = phi_eval(forest, x).deriv;
    let mut scale = deriv.abs();
    let mut sum = 0.0;
    for v in 0..forest.n() {
        let term = phi_eval_minus(forest, &[v], x).value;
        scale = scale.max(term.abs());
        sum += term;
    }
    normalized(deriv - sum, scale)
}

/// Expansion at a vertex:
/// `phi(A) = (x - w(v)) phi(A - v) - sum_{z ~ v} w(vz)^2 phi(A - v - z)`.
pub fn vertex_expansion_residual(forest: &WeightedForest, v: Vertex, x: f64) -> f64 {
    let whole = phi_eval(forest, x).value;
    let first = (x - forest.vertex_weight(v)) * phi_eval_minus(forest, &[v], x).value;
    let mut scale = whole.abs().max(first.abs());
    let mut rhs = first;
    for &(z, w) in forest.neighbors(v) {
        let term = w * w * phi_eval_minus(forest, &[v, z], x).value;
        scale = scale.max(term.abs());
        rhs -= term;
    }
    normalized(whole - rhs, scale)
}

/// Worst [`vertex_expansion_residual`] over all vertices.
pub fn expansion_residual(forest: &WeightedForest, x: f64) -> f64 {
    (0..forest.n())
        .map(|v| vertex_expansion_residual(forest, v, x))
        .fold(0.0, f64::max)
}

/// Sum of squared closed-form entries rooted at `u`:
/// `sum_v (W(P_uv) phi(A - P_uv, x))^2 = phi(A - u) phi'(A) - phi(A) phi'(A - u)`.
///
/// At an eigenvalue the last term vanishes and the right side becomes the
/// normalizer of the unit eigenvector.
pub fn summation_residual(forest: &WeightedForest, u: Vertex, x: f64) -> f64 {
    let squares: f64 = closed_form_entries(forest, x, u)
        .iter()
        .map(|a| {
            let a = a.to_f64();
            a * a
        })
        .sum();
    let whole = phi_eval(forest, x);
    let without = phi_eval_minus(forest, &[u], x);
    let t1 = without.value * whole.deriv;
    let t2 = whole.value * without.deriv;
    normalized(squares - (t1 - t2), squares.abs().max(t1.abs()).max(t2.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn identities_hold_on_small_trees() {
        let forests = [
            generate::path(5),
            generate::star(4),
            generate::path_laplacian(6),
            WeightedForest::new(vec![0.3, -1.0, 0.5, 0.0], [(0, 1, 2.0), (2, 3, -0.5)]).unwrap(),
        ];
        for f in &forests {
            for x in [-1.3, 0.2, 0.77, 2.5] {
                assert!(char_poly_residual(f, x).unwrap() < 1e-12);
                assert!(derivative_residual(f, x) < 1e-12);
                assert!(expansion_residual(f, x) < 1e-12);
                for u in 0..f.n() {
                    assert!(summation_residual(f, u, x) < 1e-12, "u={u} x={x}");
                }
            }
        }
    }

    #[test]
    fn dense_char_poly_of_p3() {
        // x^3 - 2x at x = 2
        assert!((dense_char_poly(&generate::path(3), 2.0) - 4.0).abs() < 1e-12);
    }
}
