//! Linear-time inertia and eigenvectors on a tree with 200 000 vertices.

use std::time::Instant;

use arbor_eigen::generate::{self, WeightRange};
use arbor_eigen::{find_root_vertex, inertia_below, simple_eigenvector};
use arbor_eigen::spectrum::refine_eigenvalue;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let n = 200_000;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let tree = generate::random_tree(&mut rng, n, &WeightRange::default());
    let (lo, hi) = arbor_eigen::gershgorin_interval(&tree);

    let start = Instant::now();
    let median = {
        // bisect for the point with half the eigenvalues below it
        let (mut a, mut b) = (lo, hi);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if inertia_below(&tree, m).below < n / 2 {
                a = m;
            } else {
                b = m;
            }
        }
        (a, b)
    };
    println!("median eigenvalue bracket [{:.6}, {:.6}] in {:?}", median.0, median.1, start.elapsed());

    let inside = inertia_below(&tree, median.1).below - inertia_below(&tree, median.0).below;
    if inside != 1 {
        println!("{inside} eigenvalues share the bracket; skipping the eigenvector");
        return;
    }
    let start = Instant::now();
    let lambda = refine_eigenvalue(&tree, median);
    let root = find_root_vertex(&tree, lambda).expect("simple eigenvalue");
    let v = simple_eigenvector(&tree, lambda, root).expect("star vertex");
    println!(
        "eigenvector for {lambda:.12} rooted at {} (scale 2^{}), residual {:.1e}, in {:?}",
        root + 1,
        v.log2_scale,
        v.residual,
        start.elapsed()
    );
}
