//! Laplacian spectra through vertex weights: `L = D - W` is again an
//! acyclic matrix, with weighted degrees on the diagonal.

use arbor_eigen::generate::{self, WeightRange};
use arbor_eigen::spectrum::refine_eigenvalue;
use arbor_eigen::{eigenvalues, full_eigendecomposition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let weights = WeightRange {
        edge: (0.5, 3.0),
        vertex: None,
    };
    let tree = generate::random_tree(&mut rng, 12, &weights);
    // positive conductances so the Laplacian is positive semidefinite
    let tree = arbor_eigen::WeightedForest::new(
        vec![0.0; tree.n()],
        tree.edges().iter().map(|e| (e.u, e.v, e.weight.abs())),
    )
    .expect("same support");
    let lap = generate::laplacian(&tree);

    let spectrum = eigenvalues(&lap, 1e-12).expect("valid tolerance");
    let values: Vec<String> = spectrum.pairs.iter().map(|p| format!("{:.6}", refine_eigenvalue(&lap, p.bracket))).collect();
    println!("Laplacian eigenvalues: {}", values.join(" "));
    println!("algebraic connectivity {:.6}", spectrum.pairs[1].lambda);

    let bases = full_eigendecomposition(&lap, 1e-10).expect("decomposition");
    let kernel = &bases[0].vectors[0];
    let spread = kernel.entries.iter().fold(0.0f64, |m, x| m.max((x - kernel.entries[0]).abs()));
    println!("kernel vector is constant: max deviation {spread:.1e}");

    let fiedler = &bases[1].vectors[0];
    let signs: String = fiedler.entries.iter().map(|&x| if x >= 0.0 { '+' } else { '-' }).collect();
    println!("Fiedler sign pattern {signs}");
}
