//! Eigenvectors of a weighted tree written down from deleted-path
//! determinants, checked against a dense Jacobi solve.

use arbor_eigen::oracle::{abs_cosine, jacobi_eigen};
use arbor_eigen::spectrum::refine_eigenvalue;
use arbor_eigen::{eigenvalues, find_root_vertex, simple_eigenvector, unit_eigenvector, WeightedForest};

fn main() {
    // diagonal entries are vertex weights, off-diagonal ones edge weights
    let tree = WeightedForest::new(
        vec![0.5, -1.0, 0.0, 2.0, 0.25, -0.5],
        [(0, 1, 1.5), (1, 2, -0.75), (1, 3, 2.0), (3, 4, 1.0), (3, 5, -1.25)],
    )
    .expect("a tree");
    let dense = jacobi_eigen(&tree.induced_matrix()).expect("small matrix");
    let spectrum = eigenvalues(&tree, 1e-12).expect("valid tolerance");

    for (j, pair) in spectrum.pairs.iter().enumerate() {
        let lambda = refine_eigenvalue(&tree, pair.bracket);
        let root = find_root_vertex(&tree, lambda).expect("simple eigenvalue");
        let v = simple_eigenvector(&tree, lambda, root).expect("root is a star vertex");
        let unit = unit_eigenvector(&tree, lambda, root).expect("positive normalizer");
        let norm: f64 = unit.entries.iter().map(|x| x * x).sum::<f64>().sqrt();
        println!(
            "lambda {lambda:+.10}  root {}  residual {:.1e}  |unit| {norm:.12}  |cos| to Jacobi {:.12}",
            root + 1,
            v.residual,
            abs_cosine(&v.entries, &dense.column(j))
        );
        let shown: Vec<String> = v.entries.iter().map(|x| format!("{x:+.4}")).collect();
        println!("    {}", shown.join(" "));
    }
}
