//! Residuals of the polynomial identities behind the eigenvector formula,
//! each side computed independently, plus the self-check suite.

use arbor_eigen::cli::verify_forest;
use arbor_eigen::generate::{self, WeightRange};
use arbor_eigen::oracle::identities::{
    char_poly_residual, derivative_residual, expansion_residual, summation_residual,
};
use arbor_eigen::oracle::{hl_identity_residual, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let tree = generate::random_tree(&mut rng, 12, &WeightRange::default());

    for x in [-1.7, 0.4, 2.9] {
        let summation = (0..tree.n()).map(|u| summation_residual(&tree, u, x)).fold(0.0, f64::max);
        println!(
            "x {x:+}: det = matching {:.1e}  derivative {:.1e}  expansion {:.1e}  squared paths {:.1e}",
            char_poly_residual(&tree, x).expect("small tree"),
            derivative_residual(&tree, x),
            expansion_residual(&tree, x),
            summation
        );
    }

    // the path identity holds on graphs with cycles too
    let graph = WeightedGraph::random(&mut rng, 9, 0.5, true);
    let residual = hl_identity_residual(&graph, 0, &[4, 7], rng.gen_range(-2.0..2.0)).expect("small graph");
    println!("path identity on a random 9-vertex graph: {residual:.1e}");

    for check in verify_forest(&tree, 1e-10, 1) {
        println!("{} {}: worst {:.2e}", if check.passed { "PASS" } else { "FAIL" }, check.name, check.worst);
    }
}
