//! Characteristic polynomial evaluation on weighted forests.
//!
//! For a forest the characteristic polynomial `det(xI - A)` equals the
//! weighted matching polynomial, which satisfies a vertex recurrence that
//! can be run bottom-up on any rooting of each tree. For a vertex `v` with
//! children `c`:
//!
//! ```text
//! f(v) = (x - w(v)) * prod_c f(c) - sum_c w(vc)^2 * g(c) * prod_{c' != c} f(c')
//! g(v) = prod_c f(c)
//! ```
//!
//! where `f(v)` is the value on the subtree hanging from `v` and `g(v)` the
//! value on that subtree with `v` removed. The "all but one child" products
//! are accumulated without division because `f(c) = 0` is routine at
//! eigenvalues.

use crate::error::PolyError;
use crate::forest::{Vertex, WeightedForest};
use crate::scalar::{Dual, ExtFloat, Scalar};

/// Value and derivative of a characteristic polynomial at a point.
pub type ValueDeriv = Dual<f64>;

/// Largest vertex count accepted by [`matching_poly_coeffs`].
pub const COEFF_MODE_MAX: usize = 64;

/// Running product state over a set of sibling subtrees: `prod` is the
/// product of their `f` values and `sum` is
/// `sum_c w(vc)^2 g(c) prod_{c' != c} f(c')`.
#[derive(Clone, Copy)]
struct Siblings<T> {
    prod: T,
    sum: T,
}

impl<T: Scalar> Siblings<T> {
    fn empty() -> Self {
        Self {
            prod: T::one(),
            sum: T::zero(),
        }
    }

    fn single(f: T, g: T, weight_sq: T) -> Self {
        Self {
            prod: f,
            sum: weight_sq * g,
        }
    }

    fn join(self, other: Self) -> Self {
        Self {
            prod: self.prod * other.prod,
            sum: self.sum * other.prod + other.sum * self.prod,
        }
    }

    fn close(self, x_minus_w: T) -> T {
        x_minus_w * self.prod - self.sum
    }
}

/// `phi(F - S, x)` where `S` is the complement of `alive` (all vertices
/// alive when `None`), over any scalar type.
pub fn char_poly_value<T: Scalar>(forest: &WeightedForest, alive: Option<&[bool]>, x: T) -> T {
    let rooting = forest.rooting();
    let is_alive = |v: Vertex| alive.is_none_or(|a| a[v]);
    let mut state = vec![Siblings::<T>::empty(); forest.n()];
    let mut total = T::one();
    for &v in rooting.order.iter().rev() {
        if !is_alive(v) {
            continue;
        }
        let g = state[v].prod;
        let f = state[v].close(x - T::from_f64(forest.vertex_weight(v)));
        match rooting.parent[v] {
            Some(p) if is_alive(p) => {
                let w = rooting.parent_weight[v];
                state[p] = state[p].join(Siblings::single(f, g, T::from_f64(w * w)));
            }
            _ => total = total * f,
        }
    }
    total
}

/// `(phi(F, x), phi'(F, x))`. The empty forest gives `(1, 0)`.
pub fn phi_eval(forest: &WeightedForest, x: f64) -> ValueDeriv {
    char_poly_value(forest, None, Dual::variable(x))
}

/// `(phi(F - S, x), phi'(F - S, x))`.
pub fn phi_eval_minus(forest: &WeightedForest, removed: &[Vertex], x: f64) -> ValueDeriv {
    let alive = alive_mask(forest.n(), removed);
    char_poly_value(forest, Some(&alive), Dual::variable(x))
}

/// Extended-range `phi(F - S, x)` with derivative.
pub fn phi_eval_ext(forest: &WeightedForest, removed: &[Vertex], x: f64) -> Dual<ExtFloat> {
    let alive = alive_mask(forest.n(), removed);
    char_poly_value(forest, Some(&alive), Dual::variable(ExtFloat::new(x)))
}

pub(crate) fn alive_mask(n: usize, removed: &[Vertex]) -> Vec<bool> {
    let mut alive = vec![true; n];
    for &v in removed {
        alive[v] = false;
    }
    alive
}

/// `phi(F - v, x)` for every vertex `v`, in linear time.
///
/// Rerooting: each directed edge `z <- v` gets the value of the branch at
/// `z` once `v` is removed, first for edges pointing down the canonical
/// rooting and then, top-down, for edges pointing up.
pub fn deleted_vertex_values<T: Scalar>(forest: &WeightedForest, x: T) -> Vec<T> {
    let n = forest.n();
    let rooting = forest.rooting();
    let weight_sq = |w: f64| T::from_f64(w * w);
    let shifted = |v: Vertex| x - T::from_f64(forest.vertex_weight(v));

    let mut below = vec![Siblings::<T>::empty(); n];
    let mut f_down = vec![T::zero(); n];
    for &v in rooting.order.iter().rev() {
        f_down[v] = below[v].close(shifted(v));
        if let Some(p) = rooting.parent[v] {
            let w = rooting.parent_weight[v];
            below[p] = below[p].join(Siblings::single(f_down[v], below[v].prod, weight_sq(w)));
        }
    }

    let roots = &rooting.roots;
    let mut others = vec![T::one(); roots.len()];
    let mut acc = T::one();
    for (j, &r) in roots.iter().enumerate() {
        others[j] = acc;
        acc = acc * f_down[r];
    }
    acc = T::one();
    for (j, &r) in roots.iter().enumerate().rev() {
        others[j] = others[j] * acc;
        acc = acc * f_down[r];
    }

    // value (f, g) of the branch containing parent(v) when v is removed
    let mut up_f = vec![T::zero(); n];
    let mut up_g = vec![T::zero(); n];
    let mut out = vec![T::zero(); n];
    let mut items: Vec<(Vertex, Siblings<T>)> = Vec::new();
    let mut suffix: Vec<Siblings<T>> = Vec::new();
    for &p in &rooting.order {
        items.clear();
        for &(z, w) in forest.neighbors(p) {
            if rooting.parent[z] == Some(p) {
                items.push((z, Siblings::single(f_down[z], below[z].prod, weight_sq(w))));
            } else {
                items.push((usize::MAX, Siblings::single(up_f[p], up_g[p], weight_sq(w))));
            }
        }
        suffix.clear();
        suffix.resize(items.len() + 1, Siblings::empty());
        for i in (0..items.len()).rev() {
            suffix[i] = items[i].1.join(suffix[i + 1]);
        }
        let mut prefix = Siblings::empty();
        for (i, &(z, item)) in items.iter().enumerate() {
            if z != usize::MAX {
                let rest = prefix.join(suffix[i + 1]);
                up_f[z] = rest.close(shifted(p));
                up_g[z] = rest.prod;
            }
            prefix = prefix.join(item);
        }
        out[p] = suffix[0].prod * others[rooting.component[p]];
    }
    out
}

/// Coefficients of a real polynomial, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct DensePolynomial {
    pub coeffs: Vec<f64>,
}

impl DensePolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficient(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| self.coefficient(k) - other.coefficient(k))
            .collect();
        Self { coeffs }
    }

    fn scale(&self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }
}

/// Matching polynomial `mu(F, x)` of a forest in coefficient form, from the
/// same recurrence as [`phi_eval`] with polynomial arithmetic.
pub fn matching_poly_coeffs(forest: &WeightedForest) -> Result<DensePolynomial, PolyError> {
    let n = forest.n();
    if n > COEFF_MODE_MAX {
        return Err(PolyError::TooLarge {
            n,
            max: COEFF_MODE_MAX,
        });
    }
    let rooting = forest.rooting();
    let one = DensePolynomial { coeffs: vec![1.0] };
    let zero = DensePolynomial { coeffs: vec![0.0] };
    let mut prod = vec![one.clone(); n];
    let mut sum = vec![zero; n];
    let mut total = one;
    for &v in rooting.order.iter().rev() {
        let linear = DensePolynomial {
            coeffs: vec![-forest.vertex_weight(v), 1.0],
        };
        let g = prod[v].clone();
        let f = linear.mul(&g).sub(&sum[v]);
        match rooting.parent[v] {
            Some(p) => {
                let w = rooting.parent_weight[v];
                sum[p] = sum[p].mul(&f).sub(&prod[p].mul(&g).scale(-w * w));
                prod[p] = prod[p].mul(&f);
            }
            None => total = total.mul(&f),
        }
    }
    total.coeffs.truncate(n + 1);
    Ok(total)
}
