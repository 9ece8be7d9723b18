//! Named trees and random forests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::forest::WeightedForest;

/// Adjacency matrix of the path `P_n` with unit edges.
pub fn path(n: usize) -> WeightedForest {
    WeightedForest::new(vec![0.0; n], (1..n).map(|i| (i - 1, i, 1.0))).expect("path is a tree")
}

/// Laplacian `D - A` of the unweighted path `P_n`.
pub fn path_laplacian(n: usize) -> WeightedForest {
    laplacian(&path(n))
}

/// Laplacian of a weighted forest: vertex weights become the weighted
/// degrees and edge weights are negated.
pub fn laplacian(forest: &WeightedForest) -> WeightedForest {
    let degrees = (0..forest.n())
        .map(|v| forest.neighbors(v).iter().map(|&(_, w)| w).sum())
        .collect();
    WeightedForest::new(degrees, forest.edges().iter().map(|e| (e.u, e.v, -e.weight)))
        .expect("same support")
}

/// Star `K_{1,m}`: center `0`, leaves `1..=m`.
pub fn star(m: usize) -> WeightedForest {
    WeightedForest::new(vec![0.0; m + 1], (1..=m).map(|i| (0, i, 1.0))).expect("star is a tree")
}

/// `legs` paths of `leg_len` vertices each, joined at center `0`.
pub fn spider(legs: usize, leg_len: usize) -> WeightedForest {
    let n = 1 + legs * leg_len;
    let mut edges = Vec::with_capacity(n - 1);
    for leg in 0..legs {
        let start = 1 + leg * leg_len;
        edges.push((0, start, 1.0));
        for i in 1..leg_len {
            edges.push((start + i - 1, start + i, 1.0));
        }
    }
    WeightedForest::new(vec![0.0; n], edges).expect("spider is a tree")
}

/// Path of `handle` vertices with `bristles` leaves attached to its last
/// vertex.
pub fn broom(handle: usize, bristles: usize) -> WeightedForest {
    assert!(handle >= 1, "broom needs a handle");
    let n = handle + bristles;
    let mut edges: Vec<(usize, usize, f64)> = (1..handle).map(|i| (i - 1, i, 1.0)).collect();
    edges.extend((handle..n).map(|b| (handle - 1, b, 1.0)));
    WeightedForest::new(vec![0.0; n], edges).expect("broom is a tree")
}

/// Weights of the ten-vertex example tree: vertex weights `w1..w10` and the
/// nine edge weights in the order `f, g, h, i, j, k, l, m, n`.
#[derive(Debug, Clone, Copy)]
pub struct ExampleTreeWeights {
    pub vertex: [f64; 10],
    pub edge: [f64; 9],
}

/// Ten-vertex example tree with edges (1-based) 1-2 f, 2-3 g, 3-4 h, 4-5 i,
/// 2-6 j, 6-7 k, 7-8 l, 6-9 m, 1-10 n.
pub fn example_tree(weights: &ExampleTreeWeights) -> WeightedForest {
    const ENDPOINTS: [(usize, usize); 9] =
        [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6), (6, 7), (5, 8), (0, 9)];
    WeightedForest::new(
        weights.vertex.to_vec(),
        ENDPOINTS.iter().zip(weights.edge).map(|(&(u, v), w)| (u, v, w)),
    )
    .expect("example tree is a tree")
}

/// Weight distribution for random trees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightRange {
    /// Edge weight magnitudes, uniform in `[lo, hi]`, sign uniform.
    pub edge: (f64, f64),
    /// Vertex weights, uniform in `[lo, hi]`; `None` for a zero diagonal.
    pub vertex: Option<(f64, f64)>,
}

impl Default for WeightRange {
    fn default() -> Self {
        Self {
            edge: (0.1, 2.0),
            vertex: Some((-1.0, 1.0)),
        }
    }
}

impl WeightRange {
    pub fn zero_diagonal() -> Self {
        Self {
            vertex: None,
            ..Self::default()
        }
    }

    fn edge_weight<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let w = rng.gen_range(self.edge.0..=self.edge.1);
        if rng.gen_bool(0.5) {
            w
        } else {
            -w
        }
    }

    fn vertex_weight<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.vertex.map_or(0.0, |(lo, hi)| rng.gen_range(lo..=hi))
    }
}

/// Uniformly random labelled tree on `n` vertices (Prufer decoding).
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize, weights: &WeightRange) -> WeightedForest {
    let vertex = (0..n).map(|_| weights.vertex_weight(rng)).collect();
    let edges: Vec<(usize, usize, f64)> = random_tree_edges(rng, n)
        .into_iter()
        .map(|(u, v)| (u, v, weights.edge_weight(rng)))
        .collect();
    WeightedForest::new(vertex, edges).expect("Prufer decoding yields a tree")
}

/// Random forest: a random tree with each edge dropped with probability
/// `drop`.
pub fn random_forest<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    drop: f64,
    weights: &WeightRange,
) -> WeightedForest {
    let tree = random_tree(rng, n, weights);
    let kept: Vec<(usize, usize, f64)> = tree
        .edges()
        .iter()
        .filter(|_| !rng.gen_bool(drop))
        .map(|e| (e.u, e.v, e.weight))
        .collect();
    WeightedForest::new(tree.vertex_weights().to_vec(), kept).expect("subforest")
}

fn random_tree_edges<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => return Vec::new(),
        2 => return vec![(0, 1)],
        _ => {}
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("a leaf remains");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(std::cmp::Reverse(c));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().expect("two leaves remain");
    let std::cmp::Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    edges.shuffle(rng);
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn named_shapes() {
        assert_eq!(path(5).edges().len(), 4);
        assert_eq!(star(4).degree(0), 4);
        let s = spider(3, 2);
        assert_eq!(s.n(), 7);
        assert_eq!(s.degree(0), 3);
        let b = broom(3, 4);
        assert_eq!(b.n(), 7);
        assert_eq!(b.degree(2), 5);
        let l = path_laplacian(3);
        assert_eq!(l.vertex_weights(), &[1.0, 2.0, 1.0]);
        assert!(l.edges().iter().all(|e| e.weight == -1.0));
    }

    #[test]
    fn random_trees_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..40 {
            let t = random_tree(&mut rng, n, &WeightRange::default());
            assert_eq!(t.n(), n);
            assert_eq!(t.component_count(), 1);
            assert!(t.edges().iter().all(|e| (0.1..=2.0).contains(&e.weight.abs())));
        }
    }
}
