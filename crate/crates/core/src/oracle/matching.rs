//! Brute-force matching polynomials and path sums on small graphs.

use rand::Rng;

use crate::error::OracleError;
use crate::forest::WeightedForest;

pub const ENUMERATION_MAX_N: usize = 16;
pub const PATH_IDENTITY_MAX_N: usize = 14;

/// Small weighted graph, cycles allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    vertex_weight: Vec<f64>,
    /// Dense symmetric edge weights; zero means no edge.
    weight: Vec<Vec<f64>>,
}

impl WeightedGraph {
    pub fn new<I>(vertex_weight: Vec<f64>, edges: I) -> Result<Self, OracleError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let n = vertex_weight.len();
        if n > ENUMERATION_MAX_N {
            return Err(OracleError::TooLarge {
                n,
                max: ENUMERATION_MAX_N,
            });
        }
        let mut weight = vec![vec![0.0; n]; n];
        for (u, v, w) in edges {
            if u >= n || v >= n || u == v {
                return Err(OracleError::InvalidGraph(format!("bad edge ({u}, {v})")));
            }
            if w == 0.0 || !w.is_finite() {
                return Err(OracleError::InvalidGraph(format!("edge ({u}, {v}) weight {w}")));
            }
            if weight[u][v] != 0.0 {
                return Err(OracleError::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            weight[u][v] = w;
            weight[v][u] = w;
        }
        Ok(Self {
            vertex_weight,
            weight,
        })
    }

    pub fn from_forest(forest: &WeightedForest) -> Result<Self, OracleError> {
        Self::new(
            forest.vertex_weights().to_vec(),
            forest.edges().iter().map(|e| (e.u, e.v, e.weight)),
        )
    }

    /// Erdos-Renyi graph with edge probability `p`; edge weight magnitudes
    /// uniform in `[0.1, 2]` with random sign, vertex weights uniform in
    /// `[-1, 1]` when `vertex_weighted`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64, vertex_weighted: bool) -> Self {
        let vertex_weight = (0..n)
            .map(|_| if vertex_weighted { rng.gen_range(-1.0..=1.0) } else { 0.0 })
            .collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(p) {
                    let w: f64 = rng.gen_range(0.1..=2.0);
                    edges.push((u, v, if rng.gen_bool(0.5) { w } else { -w }));
                }
            }
        }
        Self::new(vertex_weight, edges).expect("generated graph is valid")
    }

    pub fn n(&self) -> usize {
        self.vertex_weight.len()
    }

    pub fn vertex_weight(&self, v: usize) -> f64 {
        self.vertex_weight[v]
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> f64 {
        self.weight[u][v]
    }

    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let n = self.n();
        (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.weight[u][v] != 0.0)
            .map(|(u, v)| (u, v, self.weight[u][v]))
            .collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.weight[v]
            .iter()
            .enumerate()
            .filter(|&(_, &w)| w != 0.0)
            .map(|(z, &w)| (z, w))
    }
}

/// One matching: the covered vertices as a bitmask, its size, and the
/// square of its weight.
#[derive(Debug, Clone, Copy)]
struct Matching {
    covered: u32,
    size: usize,
    weight_sq: f64,
}

/// Every matching of a graph, listed once.
#[derive(Debug, Clone)]
pub struct MatchingTable {
    graph: WeightedGraph,
    matchings: Vec<Matching>,
}

impl MatchingTable {
    pub fn new(graph: &WeightedGraph) -> Result<Self, OracleError> {
        if graph.n() > ENUMERATION_MAX_N {
            return Err(OracleError::TooLarge {
                n: graph.n(),
                max: ENUMERATION_MAX_N,
            });
        }
        let edges = graph.edges();
        let mut matchings = Vec::new();
        let mut stack = vec![(0usize, Matching { covered: 0, size: 0, weight_sq: 1.0 })];
        // each edge is either skipped or taken when disjoint from the matching
        while let Some((i, m)) = stack.pop() {
            if i == edges.len() {
                matchings.push(m);
                continue;
            }
            stack.push((i + 1, m));
            let (u, v, w) = edges[i];
            let mask = (1u32 << u) | (1u32 << v);
            if m.covered & mask == 0 {
                stack.push((
                    i + 1,
                    Matching {
                        covered: m.covered | mask,
                        size: m.size + 1,
                        weight_sq: m.weight_sq * w * w,
                    },
                ));
            }
        }
        Ok(Self {
            graph: graph.clone(),
            matchings,
        })
    }

    pub fn len(&self) -> usize {
        self.matchings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matchings.is_empty()
    }

    /// Sum of squared weights of the `k`-matchings.
    pub fn weighted_count(&self, k: usize) -> f64 {
        self.matchings
            .iter()
            .filter(|m| m.size == k)
            .fold(0.0, |acc, m| acc + m.weight_sq)
    }

    /// Matching polynomial of the graph with the vertices in `removed`
    /// (bitmask) deleted, straight from the defining sum over matchings.
    pub fn mu_minus(&self, removed: u32, x: f64) -> f64 {
        let n = self.graph.n();
        let factor: Vec<f64> = (0..n).map(|v| x - self.graph.vertex_weight(v)).collect();
        self.matchings
            .iter()
            .filter(|m| m.covered & removed == 0)
            .map(|m| {
                let uncovered: f64 = (0..n)
                    .filter(|&v| (m.covered | removed) & (1 << v) == 0)
                    .map(|v| factor[v])
                    .product();
                let sign = if m.size % 2 == 0 { 1.0 } else { -1.0 };
                sign * m.weight_sq * uncovered
            })
            .sum()
    }
}

pub(crate) fn mask_of(vertices: &[usize]) -> u32 {
    vertices.iter().fold(0, |m, &v| m | (1 << v))
}

/// `p(G, k)`: sum of squared weights over all `k`-matchings.
pub fn enumerate_matchings(graph: &WeightedGraph, k: usize) -> Result<f64, OracleError> {
    Ok(MatchingTable::new(graph)?.weighted_count(k))
}

/// `mu(G, x)` summed over all matchings, vertex-weight factors included.
pub fn matching_poly_by_enumeration(graph: &WeightedGraph, x: f64) -> Result<f64, OracleError> {
    Ok(MatchingTable::new(graph)?.mu_minus(0, x))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphPath {
    pub vertices: Vec<usize>,
    pub weight: f64,
}

/// All simple paths from `u` that end at their first vertex in `targets`.
pub fn enumerate_paths(
    graph: &WeightedGraph,
    u: usize,
    targets: &[usize],
) -> Result<Vec<GraphPath>, OracleError> {
    if graph.n() > ENUMERATION_MAX_N {
        return Err(OracleError::TooLarge {
            n: graph.n(),
            max: ENUMERATION_MAX_N,
        });
    }
    let target_mask = mask_of(targets);
    if target_mask & (1 << u) != 0 {
        return Err(OracleError::InvalidGraph(format!("start vertex {u} lies in the target set")));
    }
    let mut out = Vec::new();
    let mut path = vec![u];
    extend_paths(graph, target_mask, 1 << u, 1.0, &mut path, &mut out);
    Ok(out)
}

fn extend_paths(
    graph: &WeightedGraph,
    targets: u32,
    visited: u32,
    weight: f64,
    path: &mut Vec<usize>,
    out: &mut Vec<GraphPath>,
) {
    let last = *path.last().expect("path starts at u");
    for (z, w) in graph.neighbors(last) {
        if visited & (1 << z) != 0 {
            continue;
        }
        path.push(z);
        if targets & (1 << z) != 0 {
            out.push(GraphPath {
                vertices: path.clone(),
                weight: weight * w,
            });
        } else {
            extend_paths(graph, targets, visited | (1 << z), weight * w, path, out);
        }
        path.pop();
    }
}

/// Normalized residual of the path identity
///
/// ```text
/// mu(G-u) mu(G-H) - mu(G) mu(G-u-H) = sum_{P} W(P)^2 mu(G-P) mu(G-H-P)
/// ```
///
/// over paths `P` from `u` to `H` that meet `H` only at their end, with
/// every polynomial summed over matchings. The residual is divided by the
/// largest magnitude among the individual terms.
pub fn hl_identity_residual(
    graph: &WeightedGraph,
    u: usize,
    targets: &[usize],
    x: f64,
) -> Result<f64, OracleError> {
    if graph.n() > PATH_IDENTITY_MAX_N {
        return Err(OracleError::TooLarge {
            n: graph.n(),
            max: PATH_IDENTITY_MAX_N,
        });
    }
    let table = MatchingTable::new(graph)?;
    let paths = enumerate_paths(graph, u, targets)?;
    let h = mask_of(targets);
    let um = 1u32 << u;
    let mu = |removed: u32| table.mu_minus(removed, x);

    let t1 = mu(um) * mu(h);
    let t2 = mu(0) * mu(um | h);
    let mut scale = t1.abs().max(t2.abs());
    let mut rhs = 0.0;
    for p in &paths {
        let pm = mask_of(&p.vertices);
        let term = p.weight * p.weight * mu(pm) * mu(pm | h);
        scale = scale.max(term.abs());
        rhs += term;
    }
    let diff = (t1 - t2 - rhs).abs();
    Ok(if scale > 0.0 { diff / scale } else { diff })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> WeightedGraph {
        WeightedGraph::new(vec![0.0; 3], [(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    fn triangle() -> WeightedGraph {
        WeightedGraph::new(vec![0.0; 3], [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()
    }

    #[test]
    fn matching_counts() {
        assert_eq!(enumerate_matchings(&triangle(), 0).unwrap(), 1.0);
        assert_eq!(enumerate_matchings(&p3(), 1).unwrap(), 2.0);
        let edge = WeightedGraph::new(vec![0.0; 2], [(0, 1, -1.5)]).unwrap();
        assert_eq!(enumerate_matchings(&edge, 1).unwrap(), 2.25);
    }

    #[test]
    fn matching_polynomial_values() {
        let empty = WeightedGraph::new(vec![], []).unwrap();
        assert_eq!(matching_poly_by_enumeration(&empty, 3.0).unwrap(), 1.0);
        let single = WeightedGraph::new(vec![0.4], []).unwrap();
        assert_eq!(matching_poly_by_enumeration(&single, 1.0).unwrap(), 0.6);
        assert_eq!(matching_poly_by_enumeration(&triangle(), 2.0).unwrap(), 2.0);
    }

    #[test]
    fn path_enumeration() {
        let tree = WeightedGraph::new(vec![0.0; 4], [(0, 1, 2.0), (1, 2, 3.0), (1, 3, 1.0)]).unwrap();
        let paths = enumerate_paths(&tree, 0, &[2]).unwrap();
        assert_eq!(paths, vec![GraphPath { vertices: vec![0, 1, 2], weight: 6.0 }]);

        let mut tri = enumerate_paths(&triangle(), 0, &[2]).unwrap();
        tri.sort_by_key(|p| p.vertices.len());
        assert_eq!(tri.len(), 2);
        assert_eq!(tri[0].vertices, vec![0, 2]);
        assert_eq!(tri[1].vertices, vec![0, 1, 2]);

        let adjacent = enumerate_paths(&tree, 3, &[1]).unwrap();
        assert_eq!(adjacent, vec![GraphPath { vertices: vec![3, 1], weight: 1.0 }]);

        assert!(enumerate_paths(&tree, 1, &[1]).is_err());
    }

    #[test]
    fn identity_base_case() {
        let g = WeightedGraph::new(vec![0.3, -0.2, 0.5], [(0, 1, 1.2), (1, 2, -0.7), (0, 2, 0.9)]).unwrap();
        assert!(hl_identity_residual(&g, 0, &[1, 2], 0.77).unwrap() <= 1e-10);
    }

    #[test]
    fn size_limits() {
        assert!(matches!(
            WeightedGraph::new(vec![0.0; 17], []),
            Err(OracleError::TooLarge { n: 17, .. })
        ));
        let g = WeightedGraph::new(vec![0.0; 15], []).unwrap();
        assert!(matches!(
            hl_identity_residual(&g, 0, &[1], 0.0),
            Err(OracleError::TooLarge { n: 15, max: 14 })
        ));
    }
}
