//! Acyclic symmetric matrices represented as weighted forests.
//!
//! Vertex `i` of a forest is row/column `i` of the matrix it encodes. The
//! diagonal lives in the vertex weights and every stored edge carries a
//! nonzero off-diagonal weight. Vertices are 0-based here; file formats and
//! the command line use 1-based indices.

use std::collections::VecDeque;
use std::sync::OnceLock;

use crate::error::ForestError;

pub type Vertex = usize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub weight: f64,
}

/// Parent structure of a forest rooted at the lowest index of each component.
#[derive(Debug, Clone)]
pub(crate) struct Rooting {
    /// Vertices in breadth-first order, component by component.
    pub order: Vec<Vertex>,
    pub parent: Vec<Option<Vertex>>,
    pub parent_weight: Vec<f64>,
    pub depth: Vec<usize>,
    pub component: Vec<usize>,
    pub roots: Vec<Vertex>,
    /// Indexed by position in `order`: parent position (`u32::MAX` for a
    /// root), squared parent edge weight and vertex weight. Lets the hot
    /// loops walk memory sequentially.
    pub parent_pos: Vec<u32>,
    pub parent_weight_sq: Vec<f64>,
    pub weight_by_pos: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct WeightedForest {
    vertex_weight: Vec<f64>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(Vertex, f64)>>,
    rooting: OnceLock<Rooting>,
}

impl PartialEq for WeightedForest {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_weight == other.vertex_weight && self.adjacency == other.adjacency
    }
}

/// A path between two vertices of the same tree together with its weight,
/// the product of the traversed edge weights (1 for a single vertex).
#[derive(Debug, Clone, PartialEq)]
pub struct TreePath {
    pub vertices: Vec<Vertex>,
    pub weight: f64,
}

/// A connected component with the map from its local indices back to the
/// indices of the parent forest.
#[derive(Debug, Clone)]
pub struct Component {
    pub forest: WeightedForest,
    pub vertices: Vec<Vertex>,
}

/// Result of deleting a vertex set: the induced forest and index maps.
#[derive(Debug, Clone)]
pub struct Induced {
    pub forest: WeightedForest,
    pub old_to_new: Vec<Option<Vertex>>,
    pub new_to_old: Vec<Vertex>,
}

impl WeightedForest {
    /// Builds a forest from vertex weights and `(u, v, weight)` edges.
    pub fn new<I>(vertex_weight: Vec<f64>, edges: I) -> Result<Self, ForestError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, f64)>,
    {
        let n = vertex_weight.len();
        if let Some(v) = vertex_weight.iter().position(|w| !w.is_finite()) {
            return Err(ForestError::NonFinite { row: v, col: v });
        }
        let mut adjacency: Vec<Vec<(Vertex, f64)>> = vec![Vec::new(); n];
        let mut stored = Vec::new();
        let mut dsu = DisjointSets::new(n);
        for (u, v, weight) in edges {
            if u >= n || v >= n {
                return Err(ForestError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(ForestError::SelfLoop { vertex: u });
            }
            if !weight.is_finite() {
                return Err(ForestError::NonFinite { row: u, col: v });
            }
            if weight == 0.0 {
                return Err(ForestError::ZeroEdgeWeight { u, v });
            }
            if adjacency[u].iter().any(|&(z, _)| z == v) {
                return Err(ForestError::DuplicateEdge { u, v });
            }
            if !dsu.union(u, v) {
                let mut cycle = path_in(&adjacency, v, u).expect("same set implies connected");
                cycle.dedup();
                return Err(ForestError::HasCycle { cycle });
            }
            adjacency[u].push((v, weight));
            adjacency[v].push((u, weight));
            stored.push(Edge {
                u: u.min(v),
                v: u.max(v),
                weight,
            });
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(z, _)| z);
        }
        stored.sort_by_key(|e| (e.u, e.v));
        Ok(Self {
            vertex_weight,
            edges: stored,
            adjacency,
            rooting: OnceLock::new(),
        })
    }

    /// Reads an acyclic matrix. Symmetry is checked bitwise.
    pub fn from_symmetric_matrix<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, ForestError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.as_ref().len() != n {
                return Err(ForestError::NotSquare { row: i, len: row.as_ref().len(), n });
            }
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let a = rows[i].as_ref()[j];
                let b = rows[j].as_ref()[i];
                if a.to_bits() != b.to_bits() && a != b {
                    return Err(ForestError::NotSymmetric { row: i, col: j });
                }
                if a != 0.0 {
                    edges.push((i, j, a));
                }
            }
        }
        let diag = (0..n).map(|i| rows[i].as_ref()[i]).collect();
        Self::new(diag, edges)
    }

    pub fn empty() -> Self {
        Self::new(Vec::new(), std::iter::empty()).expect("empty forest is valid")
    }

    pub fn n(&self) -> usize {
        self.vertex_weight.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_weight.is_empty()
    }

    pub fn vertex_weight(&self, v: Vertex) -> f64 {
        self.vertex_weight[v]
    }

    pub fn vertex_weights(&self) -> &[f64] {
        &self.vertex_weight
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` with the connecting edge weights, sorted by index.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, f64)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_pendant(&self, v: Vertex) -> bool {
        self.adjacency[v].len() == 1
    }

    pub fn edge_weight(&self, u: Vertex, v: Vertex) -> Option<f64> {
        self.adjacency[u]
            .iter()
            .find(|&&(z, _)| z == v)
            .map(|&(_, w)| w)
    }

    /// Dense row-major form of the encoded matrix.
    pub fn induced_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        let mut m = vec![vec![0.0; n]; n];
        for (v, row) in m.iter_mut().enumerate() {
            row[v] = self.vertex_weight[v];
        }
        for e in &self.edges {
            m[e.u][e.v] = e.weight;
            m[e.v][e.u] = e.weight;
        }
        m
    }

    /// Maximum absolute row sum of the encoded matrix.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n())
            .map(|v| {
                self.vertex_weight[v].abs()
                    + self.adjacency[v].iter().map(|&(_, w)| w.abs()).sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    pub(crate) fn rooting(&self) -> &Rooting {
        self.rooting.get_or_init(|| self.build_rooting())
    }

    fn build_rooting(&self) -> Rooting {
        let n = self.n();
        let mut parent = vec![None; n];
        let mut parent_weight = vec![0.0; n];
        let mut depth = vec![0; n];
        let mut component = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut roots = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..n {
            if component[root] != usize::MAX {
                continue;
            }
            let label = roots.len();
            roots.push(root);
            component[root] = label;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &(z, w) in &self.adjacency[v] {
                    if component[z] == usize::MAX {
                        component[z] = label;
                        parent[z] = Some(v);
                        parent_weight[z] = w;
                        depth[z] = depth[v] + 1;
                        queue.push_back(z);
                    }
                }
            }
        }
        let mut position = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i as u32;
        }
        let parent_pos = order
            .iter()
            .map(|&v| parent[v].map_or(u32::MAX, |p| position[p]))
            .collect();
        let parent_weight_sq = order.iter().map(|&v| parent_weight[v] * parent_weight[v]).collect();
        let weight_by_pos = order.iter().map(|&v| self.vertex_weight[v]).collect();
        Rooting {
            order,
            parent,
            parent_weight,
            depth,
            component,
            roots,
            parent_pos,
            parent_weight_sq,
            weight_by_pos,
        }
    }

    pub fn component_count(&self) -> usize {
        self.rooting().roots.len()
    }

    /// Component label of every vertex; labels follow the lowest vertex index.
    pub fn component_labels(&self) -> &[usize] {
        &self.rooting().component
    }

    /// Splits the forest into its maximal trees, ordered by lowest vertex.
    pub fn components(&self) -> Vec<Component> {
        let rooting = self.rooting();
        let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); rooting.roots.len()];
        for v in 0..self.n() {
            members[rooting.component[v]].push(v);
        }
        members
            .into_iter()
            .map(|vertices| {
                let keep: Vec<bool> = {
                    let mut k = vec![false; self.n()];
                    for &v in &vertices {
                        k[v] = true;
                    }
                    k
                };
                let induced = self.induced_by(&keep);
                Component {
                    forest: induced.forest,
                    vertices: induced.new_to_old,
                }
            })
            .collect()
    }

    /// The unique path from `u` to `v`, or `None` across components.
    pub fn tree_path(&self, u: Vertex, v: Vertex) -> Option<TreePath> {
        let r = self.rooting();
        if r.component[u] != r.component[v] {
            return None;
        }
        let (mut a, mut b) = (u, v);
        let mut head = vec![a];
        let mut tail = vec![b];
        let mut weight = 1.0;
        while r.depth[a] > r.depth[b] {
            weight *= r.parent_weight[a];
            a = r.parent[a].expect("non-root has parent");
            head.push(a);
        }
        while r.depth[b] > r.depth[a] {
            weight *= r.parent_weight[b];
            b = r.parent[b].expect("non-root has parent");
            tail.push(b);
        }
        while a != b {
            weight *= r.parent_weight[a] * r.parent_weight[b];
            a = r.parent[a].expect("non-root has parent");
            b = r.parent[b].expect("non-root has parent");
            head.push(a);
            tail.push(b);
        }
        tail.pop();
        head.extend(tail.into_iter().rev());
        Some(TreePath {
            vertices: head,
            weight,
        })
    }

    /// Induced forest on the vertices outside `removed`.
    pub fn delete_vertices(&self, removed: &[Vertex]) -> Induced {
        let mut keep = vec![true; self.n()];
        for &v in removed {
            keep[v] = false;
        }
        self.induced_by(&keep)
    }

    pub(crate) fn induced_by(&self, keep: &[bool]) -> Induced {
        let mut old_to_new = vec![None; self.n()];
        let mut new_to_old = Vec::new();
        for v in 0..self.n() {
            if keep[v] {
                old_to_new[v] = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let weights = new_to_old.iter().map(|&v| self.vertex_weight[v]).collect();
        let edges = self.edges.iter().filter_map(|e| {
            Some((old_to_new[e.u]?, old_to_new[e.v]?, e.weight))
        });
        let forest = Self::new(weights, edges).expect("induced subgraph of a forest is a forest");
        Induced {
            forest,
            old_to_new,
            new_to_old,
        }
    }
}

/// Breadth-first path between two vertices of an adjacency list under
/// construction.
fn path_in(adjacency: &[Vec<(Vertex, f64)>], from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
    let mut prev = vec![usize::MAX; adjacency.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &(z, _) in &adjacency[v] {
            if prev[z] == usize::MAX {
                prev[z] = v;
                queue.push_back(z);
            }
        }
    }
    None
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> WeightedForest {
        WeightedForest::new(vec![0.0; 3], [(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn single_vertex_matrix() {
        let f = WeightedForest::from_symmetric_matrix(&[[2.5]]).unwrap();
        assert_eq!(f.n(), 1);
        assert_eq!(f.vertex_weight(0), 2.5);
        assert!(f.edges().is_empty());
    }

    #[test]
    fn single_edge_matrix() {
        let f = WeightedForest::from_symmetric_matrix(&[[0.0, -3.0], [-3.0, 0.0]]).unwrap();
        assert_eq!(f.edges(), &[Edge { u: 0, v: 1, weight: -3.0 }]);
        assert_eq!(f.vertex_weights(), &[0.0, 0.0]);
    }

    #[test]
    fn triangle_is_rejected_with_cycle() {
        let m = [[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]];
        match WeightedForest::from_symmetric_matrix(&m) {
            Err(ForestError::HasCycle { cycle }) => {
                let mut c = cycle.clone();
                c.sort();
                assert_eq!(c, vec![0, 1, 2]);
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn asymmetric_is_rejected() {
        let m = [[0.0, 1.0], [1.5, 0.0]];
        assert!(matches!(
            WeightedForest::from_symmetric_matrix(&m),
            Err(ForestError::NotSymmetric { row: 0, col: 1 })
        ));
    }

    #[test]
    fn bad_edges_are_rejected() {
        assert!(matches!(
            WeightedForest::new(vec![0.0; 2], [(0, 1, 0.0)]),
            Err(ForestError::ZeroEdgeWeight { .. })
        ));
        assert!(matches!(
            WeightedForest::new(vec![0.0; 2], [(0, 0, 1.0)]),
            Err(ForestError::SelfLoop { vertex: 0 })
        ));
        assert!(matches!(
            WeightedForest::new(vec![0.0; 2], [(0, 1, 1.0), (1, 0, 2.0)]),
            Err(ForestError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            WeightedForest::new(vec![0.0; 2], [(0, 2, 1.0)]),
            Err(ForestError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn components_of_small_forests() {
        let edge = WeightedForest::new(vec![0.0; 2], [(0, 1, 1.0)]).unwrap();
        assert_eq!(edge.components().len(), 1);

        let two = WeightedForest::new(vec![1.0, 2.0], []).unwrap();
        let comps = two.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.forest.n() == 1));
        assert_eq!(comps[1].vertices, vec![1]);
        assert_eq!(comps[1].forest.vertex_weight(0), 2.0);

        let mixed = WeightedForest::new(vec![0.0; 4], [(0, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let sizes: Vec<usize> = mixed.components().iter().map(|c| c.forest.n()).collect();
        assert_eq!(sizes, vec![3, 1]);
        assert_eq!(mixed.components()[0].vertices, vec![0, 2, 3]);
    }

    #[test]
    fn paths_in_p3() {
        let f = p3();
        let p = f.tree_path(0, 2).unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2]);
        assert_eq!(p.weight, 1.0);
        let single = f.tree_path(1, 1).unwrap();
        assert_eq!(single.vertices, vec![1]);
        assert_eq!(single.weight, 1.0);
    }

    #[test]
    fn path_across_components_is_absent() {
        let f = WeightedForest::new(vec![0.0; 3], [(0, 1, 2.0)]).unwrap();
        assert!(f.tree_path(0, 2).is_none());
    }

    #[test]
    fn deleting_vertices() {
        let f = p3();
        let all = f.delete_vertices(&[0, 1, 2]);
        assert!(all.forest.is_empty());

        let mid = f.delete_vertices(&[1]);
        assert_eq!(mid.forest.n(), 2);
        assert!(mid.forest.edges().is_empty());
        assert_eq!(mid.old_to_new, vec![Some(0), None, Some(1)]);
        assert_eq!(mid.new_to_old, vec![0, 2]);
    }
}
