//! Closed-form eigenvectors of acyclic matrices.
//!
//! For a simple eigenvalue `lambda` and a vertex `u` with
//! `phi(A - u, lambda) != 0`, the vector
//!
//! ```text
//! alpha(v) = W(P_uv) * phi(A - P_uv, lambda)     (v in the tree of u)
//! alpha(v) = 0                                   (otherwise)
//! ```
//!
//! is a `lambda`-eigenvector, where `P_uv` is the tree path from `u` to `v`
//! and `W` the product of its edge weights. Multiple eigenvalues are handled
//! through a star set `U`: removing all of `U` but one vertex `u_i` leaves
//! `lambda` simple, and the simple formula on the component of `u_i`,
//! padded with zeros, gives one vector per star vertex.
//!
//! All entries are assembled in one pass from the root: `A - P_uv` is the
//! union of the subtrees hanging off the path, so walking from `u` outwards
//! only multiplies in the siblings of each step.

use rayon::prelude::*;

use crate::error::EigenError;
use crate::forest::{Vertex, WeightedForest};
use crate::oracle;
use crate::poly::{char_poly_value, deleted_vertex_values};
use crate::scalar::{Dual, ExtFloat};
use crate::spectrum::{bisect_spectrum, refine_eigenvalue, EigenPair};
use crate::starset::{find_star_set, StarSet, STAR_THRESHOLD};
use crate::SpectrumError;

/// Residual level above which a produced vector is reported as unhealthy.
pub const RESIDUAL_ALARM: f64 = 1e-7;

/// Exponent range kept unscaled when converting to `f64`.
const UNSCALED_EXPONENT: i64 = 900;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenVector {
    pub lambda: f64,
    pub root: Vertex,
    /// Closed-form entries divided by `2^log2_scale`.
    pub entries: Vec<f64>,
    /// Zero unless the closed form leaves the binary64 range.
    pub log2_scale: i64,
    /// Normalized residual `|A x - lambda x|_inf / (|A|_inf |x|_inf)`.
    pub residual: f64,
}

impl EigenVector {
    /// The closed-form value at `v`, saturating outside the binary64 range.
    pub fn value(&self, v: Vertex) -> f64 {
        crate::scalar::ldexp(self.entries[v], self.log2_scale)
    }

    pub fn norm_inf(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenBasis {
    pub lambda: f64,
    pub star_set: StarSet,
    /// One vector per star vertex, in star-set order.
    pub vectors: Vec<EigenVector>,
}

impl EigenBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn residual(&self) -> f64 {
        self.vectors.iter().fold(0.0, |m, v| m.max(v.residual))
    }
}

fn require_star_vertex(forest: &WeightedForest, lambda: f64, u: Vertex) -> Result<(), EigenError> {
    let values = deleted_vertex_values(forest, ExtFloat::new(lambda));
    let scale = values
        .iter()
        .copied()
        .max_by(|a, b| a.cmp_abs(*b))
        .unwrap_or(ExtFloat::ZERO);
    let at_u = values[u];
    if at_u.is_zero() || at_u.cmp_abs(scale * ExtFloat::new(STAR_THRESHOLD)).is_le() {
        return Err(EigenError::NotAStarVertex { lambda, vertex: u });
    }
    Ok(())
}

/// Unscaled closed-form entries rooted at `u`, in extended range.
pub fn closed_form_entries(forest: &WeightedForest, lambda: f64, u: Vertex) -> Vec<ExtFloat> {
    let n = forest.n();
    let x = ExtFloat::new(lambda);
    let labels = forest.component_labels();
    let own = labels[u];

    // phi of every other component
    let others: Vec<bool> = labels.iter().map(|&c| c != own).collect();
    let outside = char_poly_value(forest, Some(&others), x);

    // breadth-first orientation of u's tree away from u
    let mut order = vec![u];
    let mut parent = vec![usize::MAX; n];
    parent[u] = u;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &(z, _) in forest.neighbors(v) {
            if parent[z] == usize::MAX {
                parent[z] = v;
                order.push(z);
            }
        }
    }

    // f: phi of the subtree at v; g: phi of that subtree without v
    let mut f = vec![ExtFloat::ZERO; n];
    let mut g = vec![ExtFloat::new(1.0); n];
    let mut sum = vec![ExtFloat::ZERO; n];
    for &v in order.iter().rev() {
        f[v] = (x - ExtFloat::new(forest.vertex_weight(v))) * g[v] - sum[v];
        if v != u {
            let p = parent[v];
            let w = forest.edge_weight(p, v).expect("tree edge");
            sum[p] = sum[p] * f[v] + g[p] * ExtFloat::new(w * w) * g[v];
            g[p] = g[p] * f[v];
        }
    }

    // path factor: W(P_uv) times the sibling subtrees along the path
    let mut path = vec![ExtFloat::ZERO; n];
    let mut alpha = vec![ExtFloat::ZERO; n];
    path[u] = outside;
    let mut children: Vec<(Vertex, f64)> = Vec::new();
    let mut suffix: Vec<ExtFloat> = Vec::new();
    for &p in &order {
        alpha[p] = path[p] * g[p];
        children.clear();
        children.extend(forest.neighbors(p).iter().filter(|&&(z, _)| parent[z] == p && z != u));
        suffix.clear();
        suffix.resize(children.len() + 1, ExtFloat::new(1.0));
        for i in (0..children.len()).rev() {
            suffix[i] = suffix[i + 1] * f[children[i].0];
        }
        let mut prefix = ExtFloat::new(1.0);
        for (i, &(c, w)) in children.iter().enumerate() {
            path[c] = path[p] * ExtFloat::new(w) * prefix * suffix[i + 1];
            prefix = prefix * f[c];
        }
    }
    alpha
}

fn to_scaled(values: &[ExtFloat]) -> (Vec<f64>, i64) {
    let top = values
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.exponent())
        .max()
        .unwrap_or(0);
    let shift = if top.abs() > UNSCALED_EXPONENT { top } else { 0 };
    (values.iter().map(|v| v.to_f64_scaled(shift)).collect(), shift)
}

/// Closed-form eigenvector for a simple eigenvalue rooted at `u`.
pub fn simple_eigenvector(
    forest: &WeightedForest,
    lambda: f64,
    u: Vertex,
) -> Result<EigenVector, EigenError> {
    require_star_vertex(forest, lambda, u)?;
    Ok(assemble_vector(forest, lambda, u))
}

fn assemble_vector(forest: &WeightedForest, lambda: f64, u: Vertex) -> EigenVector {
    let (entries, log2_scale) = to_scaled(&closed_form_entries(forest, lambda, u));
    let residual = oracle::residual(forest, lambda, &entries).unwrap_or(f64::NAN);
    EigenVector {
        lambda,
        root: u,
        entries,
        log2_scale,
        residual,
    }
}

/// Unit eigenvector: the closed form divided by
/// `sqrt(phi(A - u, lambda) * phi'(A, lambda))`.
pub fn unit_eigenvector(
    forest: &WeightedForest,
    lambda: f64,
    u: Vertex,
) -> Result<EigenVector, EigenError> {
    require_star_vertex(forest, lambda, u)?;
    let alpha = closed_form_entries(forest, lambda, u);
    let deriv = char_poly_value(forest, None, Dual::variable(ExtFloat::new(lambda))).deriv;
    let normalizer = alpha[u] * deriv;
    if normalizer.signum() <= 0.0 {
        return Err(EigenError::NonPositiveNormalizer {
            lambda,
            value: normalizer.to_f64(),
        });
    }
    let inv = normalizer.sqrt().recip();
    let entries: Vec<f64> = alpha.iter().map(|&a| (a * inv).to_f64()).collect();
    let residual = oracle::residual(forest, lambda, &entries).unwrap_or(f64::NAN);
    Ok(EigenVector {
        lambda,
        root: u,
        entries,
        log2_scale: 0,
        residual,
    })
}

/// `sqrt(|phi(A - v, lambda)|)` for every vertex: the entry magnitudes of an
/// eigenvector for a simple eigenvalue, up to one global factor.
pub fn magnitude_profile(forest: &WeightedForest, lambda: f64) -> Vec<f64> {
    deleted_vertex_values(forest, ExtFloat::new(lambda))
        .into_iter()
        .map(|v| v.abs().sqrt().to_f64())
        .collect()
}

/// `k` independent eigenvectors from a star set of size `k`.
pub fn eigenbasis(
    forest: &WeightedForest,
    lambda: f64,
    star_set: &StarSet,
) -> Result<EigenBasis, EigenError> {
    let n = forest.n();
    let invalid = || EigenError::InvalidStarSet {
        lambda,
        vertices: star_set.vertices.clone(),
    };
    let alive = crate::poly::alive_mask(n, &star_set.vertices);
    if char_poly_value(forest, Some(&alive), ExtFloat::new(lambda)).is_zero() {
        return Err(invalid());
    }
    if star_set.len() == 1 {
        require_star_vertex(forest, lambda, star_set.vertices[0])?;
    }
    assemble_basis(forest, lambda, star_set)
}

/// [`eigenbasis`] for a star set already certified by [`find_star_set`].
fn assemble_basis(
    forest: &WeightedForest,
    lambda: f64,
    star_set: &StarSet,
) -> Result<EigenBasis, EigenError> {
    let n = forest.n();
    let invalid = || EigenError::InvalidStarSet {
        lambda,
        vertices: star_set.vertices.clone(),
    };
    if star_set.len() == 1 {
        let vector = assemble_vector(forest, lambda, star_set.vertices[0]);
        return Ok(EigenBasis {
            lambda,
            star_set: star_set.clone(),
            vectors: vec![vector],
        });
    }
    let mut vectors = Vec::with_capacity(star_set.len());
    for &ui in &star_set.vertices {
        let others: Vec<Vertex> = star_set.vertices.iter().copied().filter(|&v| v != ui).collect();
        let reduced = forest.delete_vertices(&others);
        let local_u = reduced.old_to_new[ui].expect("u_i is kept");
        let label = reduced.forest.component_labels()[local_u];
        let component = reduced
            .forest
            .components()
            .into_iter()
            .nth(label)
            .expect("component label in range");
        let root = component
            .vertices
            .iter()
            .position(|&v| v == local_u)
            .expect("u_i lies in its component");
        let local = simple_eigenvector(&component.forest, lambda, root).map_err(|_| invalid())?;
        let mut entries = vec![0.0; n];
        for (i, &v) in component.vertices.iter().enumerate() {
            entries[reduced.new_to_old[v]] = local.entries[i];
        }
        let residual = oracle::residual(forest, lambda, &entries).unwrap_or(f64::NAN);
        vectors.push(EigenVector {
            lambda,
            root: ui,
            entries,
            log2_scale: local.log2_scale,
            residual,
        });
    }
    Ok(EigenBasis {
        lambda,
        star_set: star_set.clone(),
        vectors,
    })
}

/// Eigenbasis for one entry of a spectrum of the whole forest. The
/// eigenvalue is refined inside its bracket first; for a forest the star
/// set may span several components.
pub fn eigenbasis_for_pair(
    forest: &WeightedForest,
    pair: &EigenPair,
    tol: f64,
) -> Result<EigenBasis, EigenError> {
    let lambda = refine_eigenvalue(forest, pair.bracket);
    let star = find_star_set(forest, lambda, pair.multiplicity, tol).map_err(|e| at(lambda)(e.into()))?;
    assemble_basis(forest, lambda, &star).map_err(at(lambda))
}

fn at(lambda: f64) -> impl Fn(EigenError) -> EigenError {
    move |e| EigenError::AtEigenvalue {
        lambda,
        source: Box::new(e),
    }
}

/// Eigenbases for every eigenvalue of every component, ordered by
/// eigenvalue and then by lowest star vertex.
pub fn full_eigendecomposition(
    forest: &WeightedForest,
    tol: f64,
) -> Result<Vec<EigenBasis>, EigenError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpectrumError::InvalidTolerance(tol).into());
    }
    let mut bases = Vec::new();
    for component in forest.components() {
        let local = &component.forest;
        let spectrum = bisect_spectrum(local, None, tol);
        let found: Vec<Result<EigenBasis, EigenError>> = spectrum
            .pairs
            .par_iter()
            .map(|pair| {
                let lambda = refine_eigenvalue(local, pair.bracket);
                let star = find_star_set(local, lambda, pair.multiplicity, tol)
                    .map_err(|e| at(lambda)(e.into()))?;
                assemble_basis(local, lambda, &star).map_err(at(lambda))
            })
            .collect();
        for basis in found {
            bases.push(embed(forest, &component.vertices, basis?));
        }
    }
    bases.sort_by(|a, b| {
        a.lambda
            .total_cmp(&b.lambda)
            .then(a.star_set.vertices[0].cmp(&b.star_set.vertices[0]))
    });
    Ok(bases)
}

fn embed(forest: &WeightedForest, map: &[Vertex], basis: EigenBasis) -> EigenBasis {
    let n = forest.n();
    let lift = |local: &[Vertex]| -> Vec<Vertex> { local.iter().map(|&v| map[v]).collect() };
    let vectors = basis
        .vectors
        .into_iter()
        .map(|vec| {
            let mut entries = vec![0.0; n];
            for (i, &x) in vec.entries.iter().enumerate() {
                entries[map[i]] = x;
            }
            let residual = oracle::residual(forest, vec.lambda, &entries).unwrap_or(f64::NAN);
            EigenVector {
                lambda: vec.lambda,
                root: map[vec.root],
                entries,
                log2_scale: vec.log2_scale,
                residual,
            }
        })
        .collect();
    EigenBasis {
        lambda: basis.lambda,
        star_set: StarSet {
            lambda: basis.star_set.lambda,
            vertices: lift(&basis.star_set.vertices),
            certificate: basis.star_set.certificate,
        },
        vectors,
    }
}

/// Modified Gram-Schmidt on the vectors of one basis. Vectors that become
/// numerically dependent are dropped.
pub fn orthonormalize(vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if scale == 0.0 {
            continue;
        }
        let mut w: Vec<f64> = v.iter().map(|x| x / scale).collect();
        let before = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for q in &out {
            let dot: f64 = w.iter().zip(q).map(|(a, b)| a * b).sum();
            for (a, b) in w.iter_mut().zip(q) {
                *a -= dot * b;
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 * before {
            out.push(w.into_iter().map(|x| x / norm).collect());
        }
    }
    out
}
