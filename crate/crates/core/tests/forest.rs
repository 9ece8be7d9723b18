mod common;

use arbor_eigen::generate::{example_tree, ExampleTreeWeights};
use arbor_eigen::{ForestError, WeightedForest};
use proptest::prelude::*;

proptest! {
    #[test]
    fn matrix_round_trip(seed in any::<u64>(), n in 1usize..40, drop in 0.0f64..0.5) {
        let f = common::weighted_forest(seed, n, drop);
        let back = WeightedForest::from_symmetric_matrix(&f.induced_matrix()).unwrap();
        prop_assert_eq!(back.induced_matrix(), f.induced_matrix());
        prop_assert_eq!(back, f);
    }

    #[test]
    fn edges_plus_components_is_n(seed in any::<u64>(), n in 1usize..60, drop in 0.0f64..0.8) {
        let f = common::weighted_forest(seed, n, drop);
        prop_assert_eq!(f.edges().len() + f.component_count(), n);
        let sizes: usize = f.components().iter().map(|c| c.vertices.len()).sum();
        prop_assert_eq!(sizes, n);
    }

    #[test]
    fn tree_paths_reverse(seed in any::<u64>(), n in 1usize..40, drop in 0.0f64..0.4) {
        let f = common::weighted_forest(seed, n, drop);
        let labels = f.component_labels();
        for u in 0..n {
            for v in 0..n {
                let forward = f.tree_path(u, v);
                prop_assert_eq!(forward.is_some(), labels[u] == labels[v]);
                let Some(forward) = forward else { continue };
                let backward = f.tree_path(v, u).unwrap();
                let mut reversed = forward.vertices.clone();
                reversed.reverse();
                prop_assert_eq!(&reversed, &backward.vertices);
                prop_assert_eq!(forward.weight, backward.weight);
                // consecutive vertices adjacent, product of weights
                let product: f64 = forward
                    .vertices
                    .windows(2)
                    .map(|p| f.edge_weight(p[0], p[1]).expect("adjacent"))
                    .product();
                prop_assert!(common::rel_close(product, forward.weight, 1e-15));
                let mut seen = forward.vertices.clone();
                seen.sort_unstable();
                seen.dedup();
                prop_assert_eq!(seen.len(), forward.vertices.len());
            }
        }
    }

    #[test]
    fn deletion_leaves_a_forest(seed in any::<u64>(), n in 1usize..50, mask in any::<u64>()) {
        let f = common::weighted_tree(seed, n);
        let removed: Vec<usize> = (0..n).filter(|v| mask >> (v % 64) & 1 == 1).collect();
        let induced = f.delete_vertices(&removed);
        prop_assert_eq!(induced.forest.n(), n - removed.len());
        prop_assert_eq!(
            induced.forest.edges().len() + induced.forest.component_count(),
            induced.forest.n()
        );
        for e in induced.forest.edges() {
            let (u, v) = (induced.new_to_old[e.u], induced.new_to_old[e.v]);
            prop_assert!(!removed.contains(&u) && !removed.contains(&v));
            prop_assert_eq!(f.edge_weight(u, v), Some(e.weight));
        }
        for (new, &old) in induced.new_to_old.iter().enumerate() {
            prop_assert_eq!(induced.old_to_new[old], Some(new));
            prop_assert_eq!(induced.forest.vertex_weight(new), f.vertex_weight(old));
        }
    }
}

fn figure_weights() -> ExampleTreeWeights {
    ExampleTreeWeights {
        vertex: [0.5, -0.25, 1.0, 0.0, 0.75, -1.0, 0.125, 0.0, 2.0, -0.5],
        edge: [1.5, -0.7, 2.0, 0.3, -1.1, 0.9, 1.25, -0.4, 0.6],
    }
}

#[test]
fn example_matrix_gives_example_tree() {
    let w = figure_weights();
    let [f, g, h, i, j, k, l, m, nn] = w.edge;
    let v = w.vertex;
    let matrix = [
        [v[0], f, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, nn],
        [f, v[1], g, 0.0, 0.0, j, 0.0, 0.0, 0.0, 0.0],
        [0.0, g, v[2], h, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, h, v[3], i, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, i, v[4], 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, j, 0.0, 0.0, 0.0, v[5], k, 0.0, m, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, k, v[6], l, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, l, v[7], 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, m, 0.0, 0.0, v[8], 0.0],
        [nn, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, v[9]],
    ];
    let from_matrix = WeightedForest::from_symmetric_matrix(&matrix).unwrap();
    let tree = example_tree(&w);
    assert_eq!(from_matrix, tree);
    assert_eq!(tree.component_count(), 1);
    // vertices 1 and 3 (1-based) are joined through 2 with weight f g
    let path = tree.tree_path(0, 2).unwrap();
    assert_eq!(path.vertices, vec![0, 1, 2]);
    assert_eq!(path.weight, f * g);
    let single = tree.tree_path(4, 4).unwrap();
    assert_eq!((single.vertices, single.weight), (vec![4], 1.0));
}

#[test]
fn rejects_invalid_matrices() {
    let triangle = [[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]];
    match WeightedForest::from_symmetric_matrix(&triangle) {
        Err(ForestError::HasCycle { cycle }) => {
            let mut c = cycle.clone();
            c.sort_unstable();
            assert_eq!(c, vec![0, 1, 2]);
        }
        other => panic!("expected a cycle, got {other:?}"),
    }
    let asym = [[0.0, 1.0], [1.5, 0.0]];
    assert!(matches!(
        WeightedForest::from_symmetric_matrix(&asym),
        Err(ForestError::NotSymmetric { .. })
    ));
}
