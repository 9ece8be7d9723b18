//! Repeated eigenvalues: a star set of size k gives k independent
//! eigenvectors, one rooted at each star vertex.

use arbor_eigen::oracle::{largest_principal_angle, singular_values};
use arbor_eigen::spectrum::refine_eigenvalue;
use arbor_eigen::{eigenbasis, eigenvalues, find_star_set, generate};

fn main() {
    // three legs of length two around a center: +-1 and 0 repeat
    let spider = generate::spider(3, 2);
    let spectrum = eigenvalues(&spider, 1e-12).expect("valid tolerance");
    let dense = arbor_eigen::oracle::jacobi_eigen(&spider.induced_matrix()).expect("small matrix");

    for pair in &spectrum.pairs {
        let lambda = refine_eigenvalue(&spider, pair.bracket);
        let star = find_star_set(&spider, lambda, pair.multiplicity, 1e-10).expect("star set exists");
        let basis = eigenbasis(&spider, lambda, &star).expect("valid star set");
        let vectors: Vec<Vec<f64>> = basis.vectors.iter().map(|v| v.entries.clone()).collect();
        let reference = dense.eigenspace_near(lambda, pair.multiplicity);
        let sigma = singular_values(&vectors);
        println!(
            "lambda {:+.6} multiplicity {}  star set {:?}  certificate {:+.3e}",
            lambda,
            pair.multiplicity,
            star.vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
            star.certificate
        );
        println!(
            "    residual {:.1e}  smallest/largest singular value {:.3}  angle to Jacobi {:.1e}",
            basis.residual(),
            sigma.last().unwrap() / sigma[0],
            largest_principal_angle(&vectors, &reference)
        );
    }
}
