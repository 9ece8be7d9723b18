//! Reading and writing edge lists and MatrixMarket files.

use arbor_eigen::io::{parse_forest, write_edge_list, write_matrix_market, Format};
use arbor_eigen::eigenvalues;

const EDGE_LIST: &str = "\
# a caterpillar, 1-based
n 6
v 1 0.5
v 4 -1
e 1 2 1
e 2 3 2.5
e 3 4 -1
e 2 5 0.25
e 3 6 1
";

fn main() {
    let forest = parse_forest(EDGE_LIST, Format::Auto).expect("valid edge list");
    let mm = write_matrix_market(&forest);
    println!("{mm}");

    let back = parse_forest(&mm, Format::Auto).expect("valid MatrixMarket");
    assert_eq!(back, forest);
    assert_eq!(parse_forest(&write_edge_list(&forest), Format::EdgeList).unwrap(), forest);

    let spectrum = eigenvalues(&back, 1e-12).expect("valid tolerance");
    let values: Vec<String> = spectrum.pairs.iter().map(|p| format!("{:.6}", p.lambda)).collect();
    println!("eigenvalues {}", values.join(" "));

    match parse_forest("n 3\ne 1 2 1\ne 2 3 1\ne 3 1 1\n", Format::EdgeList) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("a triangle is not a forest"),
    }
}
