//! Star vertices and star sets.
//!
//! A set `U` of `k` vertices is a star set for an eigenvalue of multiplicity
//! `k` when the eigenvalue disappears from `A - U`. For a simple eigenvalue
//! the star vertices are exactly those with `phi(A - u, lambda) != 0`.

use crate::error::StarSetError;
use crate::forest::{Vertex, WeightedForest};
use crate::poly::{char_poly_value, deleted_vertex_values};
use crate::scalar::ExtFloat;
use crate::spectrum::multiplicity_masked;

/// Relative threshold below which `phi(A - u, lambda)` counts as zero.
pub const STAR_THRESHOLD: f64 = 1e-8;
/// Largest forest for which the exhaustive fallback search runs.
pub const EXHAUSTIVE_MAX: usize = 20;
/// Values within this relative distance of the maximum are treated as tied.
const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct StarSet {
    pub lambda: f64,
    /// Ascending vertex indices.
    pub vertices: Vec<Vertex>,
    /// `phi(A - U, lambda)`, saturated to the binary64 range.
    pub certificate: f64,
}

impl StarSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Candidates ranked by decreasing magnitude with near-ties broken by index;
/// only those above [`STAR_THRESHOLD`] relative to the largest are kept.
fn ranked(values: &[ExtFloat], among: impl Iterator<Item = Vertex>, scale: ExtFloat) -> Vec<Vertex> {
    let cutoff = scale * ExtFloat::new(STAR_THRESHOLD);
    let mut cands: Vec<Vertex> = among
        .filter(|&v| !values[v].is_zero() && values[v].abs().cmp_abs(cutoff).is_gt())
        .collect();
    cands.sort_by(|&a, &b| values[b].cmp_abs(values[a]).then(a.cmp(&b)));
    if let Some(&top) = cands.first() {
        let hi = values[top].abs();
        let tied = cands
            .iter()
            .take_while(|&&v| (hi - values[v].abs()).cmp_abs(hi * ExtFloat::new(TIE_TOLERANCE)).is_le())
            .count();
        cands[..tied].sort_unstable();
    }
    cands
}

fn star_vertex_order(forest: &WeightedForest, lambda: f64) -> Vec<Vertex> {
    let values = deleted_vertex_values(forest, ExtFloat::new(lambda));
    let scale = values
        .iter()
        .copied()
        .max_by(|a, b| a.cmp_abs(*b))
        .unwrap_or(ExtFloat::ZERO)
        .abs();
    if scale.is_zero() {
        return Vec::new();
    }
    let mut order = ranked(&values, (0..forest.n()).filter(|&v| forest.is_pendant(v)), scale);
    order.extend(ranked(&values, (0..forest.n()).filter(|&v| !forest.is_pendant(v)), scale));
    order
}

/// A vertex `u` with `phi(A - u, lambda)` clearly nonzero, preferring the
/// pendant vertex with the largest value.
pub fn find_root_vertex(forest: &WeightedForest, lambda: f64) -> Result<Vertex, StarSetError> {
    star_vertex_order(forest, lambda)
        .first()
        .copied()
        .ok_or(StarSetError::NoStarVertex { lambda })
}

/// Whether `lambda` is absent from `A - U` at resolution `tol` and
/// `phi(A - U, lambda)` is nonzero.
pub fn is_star_set(forest: &WeightedForest, lambda: f64, vertices: &[Vertex], tol: f64) -> bool {
    let alive = crate::poly::alive_mask(forest.n(), vertices);
    certify(forest, &alive, lambda, tol).is_some()
}

fn certify(forest: &WeightedForest, alive: &[bool], lambda: f64, tol: f64) -> Option<f64> {
    if multiplicity_masked(forest, Some(alive), lambda, tol) != 0 {
        return None;
    }
    let value = char_poly_value(forest, Some(alive), ExtFloat::new(lambda));
    (!value.is_zero() && value.is_finite()).then(|| value.to_f64())
}

/// A `lambda`-star set of size `k`, where `k` is the multiplicity of
/// `lambda` at resolution `tol`.
///
/// Vertices are picked greedily: a candidate is accepted when removing it
/// lowers the multiplicity of `lambda` by one. While the multiplicity is
/// still above one every candidate has `phi = 0`, so pendants of the
/// current forest go first in index order; for the last pick candidates are
/// ranked as in [`find_root_vertex`]. Small forests fall back to an
/// exhaustive search when the greedy pass fails.
pub fn find_star_set(
    forest: &WeightedForest,
    lambda: f64,
    k: usize,
    tol: f64,
) -> Result<StarSet, StarSetError> {
    if k == 0 {
        return Err(StarSetError::StarSetNotFound { lambda, k });
    }
    if let Some(set) = greedy_star_set(forest, lambda, k, tol) {
        return Ok(set);
    }
    if forest.n() <= EXHAUSTIVE_MAX {
        if let Some(set) = exhaustive_star_set(forest, lambda, k, tol) {
            return Ok(set);
        }
    }
    if k == 1 && star_vertex_order(forest, lambda).is_empty() {
        return Err(StarSetError::NoStarVertex { lambda });
    }
    Err(StarSetError::StarSetNotFound { lambda, k })
}

fn greedy_star_set(forest: &WeightedForest, lambda: f64, k: usize, tol: f64) -> Option<StarSet> {
    let n = forest.n();
    let mut alive = vec![true; n];
    let mut chosen = Vec::with_capacity(k);
    for step in 0..k {
        let remaining = k - step;
        // the first step sees the whole forest; no need to copy it
        let induced;
        let (local, to_old) = if step == 0 {
            (forest, None)
        } else {
            induced = forest.induced_by(&alive);
            (&induced.forest, Some(&induced.new_to_old))
        };
        let order: Vec<Vertex> = if remaining == 1 {
            star_vertex_order(local, lambda)
        } else {
            let mut o: Vec<Vertex> = (0..local.n()).filter(|&v| local.is_pendant(v)).collect();
            o.extend((0..local.n()).filter(|&v| !local.is_pendant(v)));
            o
        };
        let lift = |v: Vertex| to_old.map_or(v, |m| m[v]);
        let pick = order.into_iter().map(lift).find(|&v| {
            alive[v] = false;
            let ok = multiplicity_masked(forest, Some(&alive), lambda, tol) == remaining - 1;
            alive[v] = true;
            ok
        })?;
        alive[pick] = false;
        chosen.push(pick);
    }
    let certificate = certify(forest, &alive, lambda, tol)?;
    chosen.sort_unstable();
    Some(StarSet {
        lambda,
        vertices: chosen,
        certificate,
    })
}

fn exhaustive_star_set(forest: &WeightedForest, lambda: f64, k: usize, tol: f64) -> Option<StarSet> {
    let n = forest.n();
    if k > n {
        return None;
    }
    let mut best: Option<(ExtFloat, Vec<Vertex>)> = None;
    let mut subset: Vec<Vertex> = (0..k).collect();
    loop {
        let alive = crate::poly::alive_mask(n, &subset);
        if multiplicity_masked(forest, Some(&alive), lambda, tol) == 0 {
            let value = char_poly_value(forest, Some(&alive), ExtFloat::new(lambda));
            let better = match &best {
                None => !value.is_zero(),
                Some((b, _)) => value.cmp_abs(*b).is_gt(),
            };
            if better {
                best = Some((value, subset.clone()));
            }
        }
        // next k-subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return best.map(|(value, vertices)| StarSet {
                    lambda,
                    vertices,
                    certificate: value.to_f64(),
                });
            }
            i -= 1;
            if subset[i] < n - k + i {
                subset[i] += 1;
                for j in (i + 1)..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}
