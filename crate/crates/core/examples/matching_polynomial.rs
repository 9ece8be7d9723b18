//! The characteristic polynomial of a tree equals its matching polynomial.
//! Coefficients for small trees, linear-time evaluation for huge ones.

use arbor_eigen::oracle::{enumerate_matchings, WeightedGraph};
use arbor_eigen::poly::phi_eval_ext;
use arbor_eigen::{generate, matching_poly_coeffs, phi_eval};

fn main() {
    let broom = generate::broom(4, 3);
    let poly = matching_poly_coeffs(&broom).expect("small tree");
    let graph = WeightedGraph::from_forest(&broom).expect("small tree");
    println!("broom with {} vertices", broom.n());
    for k in 0..=broom.n() / 2 {
        let coeff = poly.coefficient(broom.n() - 2 * k);
        let count = enumerate_matchings(&graph, k).expect("small graph");
        println!("  x^{:<2} {:+}   {}-matchings: {}", broom.n() - 2 * k, coeff, k, count);
    }
    let at = 1.3;
    println!("  at x = {at}: coefficients {:.12}, recurrence {:.12}", poly.eval(at), phi_eval(&broom, at).value);

    // a million-vertex path overflows binary64; the extended range does not
    let long = generate::path(1_000_000);
    let v = phi_eval_ext(&long, &[], 2.5);
    println!(
        "P_1000000 at 2.5: value = 2^{:.3}, derivative = 2^{:.3}",
        v.value.log2_abs(),
        v.deriv.log2_abs()
    );
}
