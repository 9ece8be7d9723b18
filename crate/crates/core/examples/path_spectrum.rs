//! Eigenvalues of the path P_n by inertia counting, next to `2 cos(j pi / (n + 1))`.
//!
//! cargo run --example path_spectrum -- 12

use std::f64::consts::PI;

use arbor_eigen::spectrum::refine_eigenvalue;
use arbor_eigen::{eigenvalues, generate};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let path = generate::path(n);
    let spectrum = eigenvalues(&path, 1e-12).expect("valid tolerance");

    println!("P_{n}: {} distinct eigenvalues", spectrum.pairs.len());
    for (j, pair) in spectrum.pairs.iter().enumerate() {
        let lambda = refine_eigenvalue(&path, pair.bracket);
        let exact = 2.0 * ((n - j) as f64 * PI / (n + 1) as f64).cos();
        println!(
            "  {:>2}  {:>+.12}  (x{})  cos formula {:+.12}  diff {:.1e}",
            j + 1,
            lambda,
            pair.multiplicity,
            exact,
            (lambda - exact).abs()
        );
    }
}
