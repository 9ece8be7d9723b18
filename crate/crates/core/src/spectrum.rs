//! Eigenvalue location by inertia counting and bisection.
//!
//! `A - xI` is congruent to a diagonal matrix obtained by eliminating a tree
//! from its leaves towards the root, so the number of eigenvalues below `x`
//! is the number of negative pivots of that pass.

use rayon::prelude::*;

use crate::error::SpectrumError;
use crate::forest::WeightedForest;

/// Newton steps tried on a simple eigenvalue before falling back to bisection.
const NEWTON_STEPS: usize = 8;

/// Maximum bisection steps spent isolating one eigenvalue.
pub const BISECTION_BUDGET: usize = 200;
/// Eigenvalues within `CLUSTER_FACTOR * tol * max(1, |lambda|)` are merged.
pub const CLUSTER_FACTOR: f64 = 1e3;
/// Multiplicity probes look `PROBE_FACTOR * tol * max(1, |lambda|)` either side.
pub const PROBE_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    /// Eigenvalues strictly below the shift.
    pub below: usize,
    pub at_or_above: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub lambda: f64,
    pub multiplicity: usize,
    /// Bisection bracket `(lo, hi]`: `below(hi) - below(lo) = multiplicity`.
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub pairs: Vec<EigenPair>,
    pub tol: f64,
    /// Set when some eigenvalue hit [`BISECTION_BUDGET`] before reaching `tol`.
    pub budget_exhausted: bool,
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.pairs.iter().map(|p| p.multiplicity).sum()
    }

    /// Eigenvalues repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        self.pairs
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.lambda, p.multiplicity))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Count of eigenvalues of `A` strictly below `x`.
pub fn inertia_below(forest: &WeightedForest, x: f64) -> Inertia {
    inertia_below_masked(forest, None, x)
}

/// Inertia of the forest restricted to `alive` vertices.
pub(crate) fn inertia_below_masked(
    forest: &WeightedForest,
    alive: Option<&[bool]>,
    x: f64,
) -> Inertia {
    let rooting = forest.rooting();
    let n = forest.n();
    // positions in breadth-first order; children come after their parent
    let is_alive = |i: usize| alive.is_none_or(|a| a[rooting.order[i]]);
    let mut pivot: Vec<f64> = rooting.weight_by_pos.iter().map(|w| w - x).collect();
    // first child with an exact zero pivot
    let mut zero_child: Vec<u32> = vec![u32::MAX; n];
    let mut below = 0;
    let mut size = 0;
    for i in (0..n).rev() {
        if !is_alive(i) {
            continue;
        }
        size += 1;
        let mut detached = false;
        let c = zero_child[i];
        if c != u32::MAX {
            pivot[c as usize] = 2.0;
            pivot[i] = -rooting.parent_weight_sq[c as usize] / 2.0;
            detached = true;
        }
        let d = pivot[i];
        if d < 0.0 {
            below += 1;
        }
        if detached {
            continue;
        }
        let p = rooting.parent_pos[i];
        if p != u32::MAX && is_alive(p as usize) {
            let p = p as usize;
            if d == 0.0 {
                if zero_child[p] == u32::MAX {
                    zero_child[p] = i as u32;
                }
            } else {
                pivot[p] -= rooting.parent_weight_sq[i] / d;
            }
        }
    }
    // a zero child's pivot was reset to 2 after it was counted as non-negative
    Inertia {
        below,
        at_or_above: size - below,
    }
}

/// Interval containing every eigenvalue, from Gershgorin discs.
pub fn gershgorin_interval(forest: &WeightedForest) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in 0..forest.n() {
        let r: f64 = forest.neighbors(v).iter().map(|&(_, w)| w.abs()).sum();
        let w = forest.vertex_weight(v);
        lo = lo.min(w - r);
        hi = hi.max(w + r);
    }
    if forest.is_empty() {
        (0.0, 0.0)
    } else {
        (lo, hi)
    }
}

fn check_tol(tol: f64) -> Result<(), SpectrumError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(SpectrumError::InvalidTolerance(tol))
    }
}

/// Every eigenvalue with its multiplicity, ascending.
pub fn eigenvalues(forest: &WeightedForest, tol: f64) -> Result<Spectrum, SpectrumError> {
    check_tol(tol)?;
    Ok(bisect_spectrum(forest, None, tol))
}

pub(crate) fn bisect_spectrum(forest: &WeightedForest, alive: Option<&[bool]>, tol: f64) -> Spectrum {
    let count = |x: f64| inertia_below_masked(forest, alive, x).below;
    let size = match alive {
        None => forest.n(),
        Some(a) => a.iter().filter(|&&k| k).count(),
    };
    if size == 0 {
        return Spectrum {
            pairs: Vec::new(),
            tol,
            budget_exhausted: false,
        };
    }
    let (glo, ghi) = gershgorin_interval(forest);
    let span = (ghi - glo).max(1.0);
    let pad = 1e-8 * glo.abs().max(ghi.abs()).max(1.0);
    let mut lo = glo - pad;
    let mut hi = ghi + pad;
    while count(lo) > 0 {
        lo -= span;
    }
    while count(hi) < size {
        hi += span;
    }

    // isolate disjoint brackets breadth-first, then finish them in parallel
    let mut frontier = vec![(lo, hi, 0usize, size, 0usize)];
    let mut isolated = Vec::new();
    while let Some((a, b, ca, cb, depth)) = frontier.pop() {
        if cb == ca {
            continue;
        }
        let target = width_target(tol, span, a, b);
        if cb - ca == 1 || b - a <= target || depth >= BISECTION_BUDGET {
            isolated.push((a, b, ca, cb, depth));
            continue;
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            isolated.push((a, b, ca, cb, depth));
            continue;
        }
        let cm = count(m);
        frontier.push((m, b, cm, cb, depth + 1));
        frontier.push((a, m, ca, cm, depth + 1));
    }
    isolated.sort_by(|x, y| x.0.total_cmp(&y.0));

    let refined: Vec<(f64, f64, usize, bool)> = isolated
        .par_iter()
        .map(|&(mut a, mut b, ca, cb, mut depth)| {
            loop {
                if b - a <= width_target(tol, span, a, b) {
                    break (a, b, cb - ca, false);
                }
                if depth >= BISECTION_BUDGET {
                    break (a, b, cb - ca, true);
                }
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break (a, b, cb - ca, false);
                }
                depth += 1;
                let cm = count(m);
                if cm == ca {
                    a = m;
                } else if cm == cb {
                    b = m;
                } else {
                    // a cluster split apart; keep the lower part and let the
                    // merge step below decide whether it was one eigenvalue
                    break (a, b, cb - ca, false);
                }
            }
        })
        .collect();

    let mut budget_exhausted = false;
    let mut pairs: Vec<EigenPair> = Vec::new();
    for (a, b, mult, exhausted) in refined {
        budget_exhausted |= exhausted;
        let lambda = 0.5 * (a + b);
        if let Some(last) = pairs.last_mut() {
            let threshold = CLUSTER_FACTOR * tol * last.lambda.abs().max(1.0);
            if lambda - last.lambda <= threshold {
                let total = last.multiplicity + mult;
                last.lambda = (last.lambda * last.multiplicity as f64 + lambda * mult as f64)
                    / total as f64;
                last.multiplicity = total;
                last.bracket.1 = b;
                continue;
            }
        }
        pairs.push(EigenPair {
            lambda,
            multiplicity: mult,
            bracket: (a, b),
        });
    }
    Spectrum {
        pairs,
        tol,
        budget_exhausted,
    }
}

/// Bracket width at which an eigenvalue counts as isolated. Never wider
/// than `tol * max(1, span)`; tightened near small eigenvalues so that the
/// multiplicity probe window always covers the bracket.
fn width_target(tol: f64, span: f64, a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs()).max(1.0);
    tol * span.min(scale)
}

/// Half-width of the multiplicity probe window around `lambda`.
pub fn probe_delta(lambda: f64, tol: f64) -> f64 {
    PROBE_FACTOR * tol * lambda.abs().max(1.0)
}

/// Number of eigenvalues in `[lambda - delta, lambda + delta)`.
pub fn multiplicity(forest: &WeightedForest, lambda: f64, tol: f64) -> Result<usize, SpectrumError> {
    check_tol(tol)?;
    Ok(multiplicity_masked(forest, None, lambda, tol))
}

pub(crate) fn multiplicity_masked(
    forest: &WeightedForest,
    alive: Option<&[bool]>,
    lambda: f64,
    tol: f64,
) -> usize {
    let delta = probe_delta(lambda, tol);
    let hi = inertia_below_masked(forest, alive, lambda + delta).below;
    let lo = inertia_below_masked(forest, alive, lambda - delta).below;
    hi - lo
}

/// Shrinks a bracket `(lo, hi]` holding `mult` eigenvalues until no
/// floating-point midpoint separates its ends, returning the midpoint.
///
/// A simple eigenvalue is first polished by Newton steps on the
/// characteristic polynomial, which stay inside the bracket or are
/// abandoned for bisection.
pub fn refine_eigenvalue(forest: &WeightedForest, bracket: (f64, f64)) -> f64 {
    let (mut a, mut b) = bracket;
    let ca = inertia_below(forest, a).below;
    let cb = inertia_below(forest, b).below;
    if cb == ca + 1 {
        if let Some(x) = newton_in_bracket(forest, a, b) {
            return x;
        }
    }
    for _ in 0..BISECTION_BUDGET {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let cm = inertia_below(forest, m).below;
        if cm == ca {
            a = m;
        } else if cm == cb {
            b = m;
        } else {
            break;
        }
    }
    0.5 * (a + b)
}

fn newton_in_bracket(forest: &WeightedForest, a: f64, b: f64) -> Option<f64> {
    let mut x = 0.5 * (a + b);
    for _ in 0..NEWTON_STEPS {
        let step = newton_step(forest, x)?;
        let next = x - step;
        if !(next > a && next <= b) {
            return None;
        }
        if step.abs() <= 4.0 * f64::EPSILON * next.abs().max(f64::MIN_POSITIVE) {
            return Some(next);
        }
        x = next;
    }
    None
}

/// `phi(x) / phi'(x)` from the elimination pivots: `phi` is their product up
/// to sign, so `phi'/phi = sum d'/d`. `None` on a zero pivot.
fn newton_step(forest: &WeightedForest, x: f64) -> Option<f64> {
    let rooting = forest.rooting();
    let n = forest.n();
    let mut pivot: Vec<f64> = rooting.weight_by_pos.iter().map(|w| w - x).collect();
    let mut slope = vec![-1.0; n];
    let mut log_deriv = 0.0;
    for i in (0..n).rev() {
        let d = pivot[i];
        if d == 0.0 {
            return None;
        }
        let ds = slope[i];
        log_deriv += ds / d;
        let p = rooting.parent_pos[i];
        if p != u32::MAX {
            let w2 = rooting.parent_weight_sq[i];
            pivot[p as usize] -= w2 / d;
            slope[p as usize] += w2 * ds / (d * d);
        }
    }
    let step = 1.0 / log_deriv;
    step.is_finite().then_some(step)
}
