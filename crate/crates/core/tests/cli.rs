mod common;

use std::path::Path;
use std::process::Command;

use arbor_eigen::cli::{main_with_args, EXIT_INPUT, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};
use arbor_eigen::generate::{self, example_tree, ExampleTreeWeights};
use arbor_eigen::io::{parse_forest, write_edge_list, write_matrix_market, Format};
use arbor_eigen::oracle::jacobi_eigen;
use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn arbor(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with_args(
        std::iter::once("arbor").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write_input(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("bad JSON ({e}): {text}"))
}

const P3: &str = "n 3\ne 1 2 1\ne 2 3 1\n";
const K13: &str = "# claw\nn 4\ne 1 2 1.0\ne 1 3 1.0\ne 1 4 1.0\n";

#[test]
fn path_spectrum_as_text() {
    let dir = TempDir::new().unwrap();
    let p3 = write_input(&dir, "p3.txt", P3);
    let r = arbor(&["spectrum", &p3]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(r.out.trim(), "-1.414213562373(1), 0(1), 1.414213562373(1)");
}

#[test]
fn claw_null_space() {
    let dir = TempDir::new().unwrap();
    let k13 = write_input(&dir, "k13.txt", K13);
    let r = arbor(&["eigvec", &k13, "--eig", "value=0", "--output", "json"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let v = json(&r.out);
    let bases = v["bases"].as_array().unwrap();
    assert_eq!(bases.len(), 1);
    let b = &bases[0];
    assert!(b["lambda"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(b["vectors"].as_array().unwrap().len(), 2);
    let star: Vec<u64> = b["star_set"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(star.len(), 2);
    assert!(star.iter().all(|&s| (2..=4).contains(&s)), "{star:?}");
    assert!(b["residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn verify_random_suite_passes() {
    let r = arbor(&["verify", "--seed", "42"]);
    assert_eq!(r.code, EXIT_OK, "{}{}", r.out, r.err);
    assert!(r.out.lines().all(|l| l.starts_with("PASS")), "{}", r.out);
}

#[test]
fn json_schema_and_number_format() {
    let dir = TempDir::new().unwrap();
    let f = common::weighted_tree(7, 12);
    let path = write_input(&dir, "t.txt", &write_edge_list(&f));
    let r = arbor(&["eigvec", &path, "--output", "json"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let v = json(&r.out);
    assert_eq!(v["n"], 12);
    let eigenvalues = v["eigenvalues"].as_array().unwrap();
    let total: u64 = eigenvalues.iter().map(|e| e["multiplicity"].as_u64().unwrap()).sum();
    assert_eq!(total, 12);
    let dense = jacobi_eigen(&f.induced_matrix()).unwrap();
    let ours: Vec<f64> = eigenvalues.iter().map(|e| e["value"].as_f64().unwrap()).collect();
    for l in &dense.values {
        assert!(ours.iter().any(|o| (o - l).abs() < 1e-9), "{l} missing from {ours:?}");
    }
    for b in v["bases"].as_array().unwrap() {
        for key in ["lambda", "star_set", "vectors", "residual"] {
            assert!(b.get(key).is_some(), "missing {key}");
        }
    }
    // every number is printed with 17 significant digits
    let lambda_text = r.out.split("\"value\":").nth(1).unwrap();
    let mantissa = lambda_text.split('e').next().unwrap().trim_start_matches('-');
    assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{lambda_text}");
}

#[test]
fn json_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = common::weighted_forest(99, 40, 0.2);
    let path = write_input(&dir, "f.txt", &write_edge_list(&f));
    for cmd in ["spectrum", "eigvec", "starset", "identities"] {
        let a = arbor(&[cmd, &path, "--output", "json", "--seed", "5"]);
        let b = arbor(&[cmd, &path, "--output", "json", "--seed", "5"]);
        assert_eq!(a.code, EXIT_OK, "{cmd}: {}", a.err);
        assert_eq!(a.out, b.out, "{cmd}");
    }
    let a = arbor(&["verify", "--output", "json", "--seed", "3", "--count", "5"]);
    let b = arbor(&["verify", "--output", "json", "--seed", "3", "--count", "5"]);
    assert_eq!(a.out, b.out);
}

#[test]
fn example_tree_from_matrix_market() {
    let w = ExampleTreeWeights {
        vertex: [0.5, -1.0, 0.0, 2.0, 0.25, -0.5, 1.0, 0.0, 1.5, -2.0],
        edge: [1.0, -2.0, 0.5, 1.5, -1.0, 2.0, 0.75, -0.5, 1.25],
    };
    let tree = example_tree(&w);
    let dir = TempDir::new().unwrap();
    let path = write_input(&dir, "fig.mtx", &write_matrix_market(&tree));
    let r = arbor(&["eigvec", &path, "--output", "json"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let v = json(&r.out);
    assert_eq!(v["n"], 10);
    let dense = jacobi_eigen(&tree.induced_matrix()).unwrap();
    let mut lambdas: Vec<f64> = v["bases"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|b| {
            let k = b["vectors"].as_array().unwrap().len();
            std::iter::repeat_n(b["lambda"].as_f64().unwrap(), k)
        })
        .collect();
    lambdas.sort_by(f64::total_cmp);
    for (a, b) in lambdas.iter().zip(&dense.values) {
        assert!((a - b).abs() < 1e-10);
    }
    let same = arbor(&["eigvec", &path, "--format", "matrixmarket", "--output", "json"]);
    assert_eq!(same.out, r.out);
}

#[test]
fn matching_polynomial_of_p3() {
    let dir = TempDir::new().unwrap();
    let p3 = write_input(&dir, "p3.txt", P3);
    let r = arbor(&["matchpoly", &p3, "--output", "json"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let coeffs: Vec<f64> = json(&r.out)["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_f64().unwrap())
        .collect();
    assert_eq!(coeffs, vec![0.0, -2.0, 0.0, 1.0]);

    let r = arbor(&["matchpoly", &p3, "--at", "-1,2", "--output", "json"]);
    let points = json(&r.out)["points"].as_array().unwrap().clone();
    assert_eq!(points[0]["value"].as_f64().unwrap(), 1.0);
    assert_eq!(points[1]["value"].as_f64().unwrap(), 4.0);
    assert_eq!(points[1]["derivative"].as_f64().unwrap(), 10.0);
}

#[test]
fn large_forest_coefficients_need_points() {
    let dir = TempDir::new().unwrap();
    let path = write_input(&dir, "p.txt", &write_edge_list(&generate::path(80)));
    let r = arbor(&["matchpoly", &path]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("--at"));
    assert_eq!(arbor(&["matchpoly", &path, "--at", "0.5"]).code, EXIT_OK);
}

#[test]
fn identities_report() {
    let dir = TempDir::new().unwrap();
    let small = write_input(&dir, "s.txt", &write_edge_list(&common::weighted_tree(1, 9)));
    let r = arbor(&["identities", &small]);
    assert_eq!(r.code, EXIT_OK, "{}", r.out);
    assert_eq!(r.out.lines().count(), 5);
    assert!(r.out.lines().all(|l| l.starts_with("PASS")), "{}", r.out);

    let big = write_input(&dir, "b.txt", &write_edge_list(&common::weighted_tree(2, 60)));
    let r = arbor(&["identities", &big, "--output", "json"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.out);
    let v = json(&r.out);
    let rows = v["identities"].as_array().unwrap();
    assert!(rows.last().unwrap()["residual"].is_null());
    assert!(rows[..4].iter().all(|row| row["residual"].as_f64().unwrap() <= 1e-7));
}

#[test]
fn orthonormalized_bases() {
    let dir = TempDir::new().unwrap();
    let path = write_input(&dir, "s.txt", &write_edge_list(&generate::star(5)));
    let r = arbor(&["eigvec", &path, "--eig", "value=0", "--orthonormalize", "--output", "json"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let v = json(&r.out);
    let vectors: Vec<Vec<f64>> = v["bases"][0]["vectors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_array().unwrap().iter().map(|e| e.as_f64().unwrap()).collect())
        .collect();
    assert_eq!(vectors.len(), 4);
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate() {
            let dot: f64 = a.iter().zip(b).map(|(p, q)| p * q).sum();
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!((dot - expected).abs() < 1e-12);
        }
    }
}

#[test]
fn star_sets_by_index() {
    let dir = TempDir::new().unwrap();
    let k13 = write_input(&dir, "k13.txt", K13);
    let r = arbor(&["starset", &k13, "--eig", "index=2", "--output", "json"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let v = json(&r.out);
    let sets = v["star_sets"].as_array().unwrap();
    assert_eq!(sets.len(), 1);
    assert_eq!(sets[0]["star_set"].as_array().unwrap().len(), 2);
    assert!(sets[0]["certificate"].as_f64().unwrap().abs() > 0.0);
}

#[test]
fn input_errors_exit_three() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.txt");
    let r = arbor(&["spectrum", missing.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.out.is_empty());

    let bad = write_input(&dir, "bad.txt", "n 3\ne 1 2 1\ne 2 x 1\n");
    let r = arbor(&["spectrum", &bad]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("line 3"), "{}", r.err);

    let zero = write_input(&dir, "zero.txt", "n 2\ne 1 2 0\n");
    assert_eq!(arbor(&["spectrum", &zero]).code, EXIT_INPUT);

    let dup = write_input(&dir, "dup.txt", "n 3\ne 1 2 1\ne 2 1 1\n");
    assert_eq!(arbor(&["spectrum", &dup]).code, EXIT_INPUT);

    let cycle = write_input(&dir, "cyc.txt", "n 3\ne 1 2 1\ne 2 3 1\ne 3 1 1\n");
    let r = arbor(&["spectrum", &cycle]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("cycle"), "{}", r.err);

    let mm_zero = write_input(
        &dir,
        "z.mtx",
        "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n2 1 0.0\n",
    );
    assert_eq!(arbor(&["spectrum", &mm_zero]).code, EXIT_INPUT);
}

#[test]
fn usage_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let p3 = write_input(&dir, "p3.txt", P3);
    assert_eq!(arbor(&["spectrum", &p3, "--tol", "-1"]).code, EXIT_USAGE);
    assert_eq!(arbor(&["spectrum", &p3, "--tol", "abc"]).code, EXIT_USAGE);
    assert_eq!(arbor(&["transpose", &p3]).code, EXIT_USAGE);
    assert_eq!(arbor(&["eigvec", &p3, "--eig", "index=4"]).code, EXIT_USAGE);
    assert_eq!(arbor(&["eigvec", &p3, "--eig", "0"]).code, EXIT_USAGE);
    assert_eq!(arbor(&["eigvec", &p3, "--eig", "value=0.5"]).code, EXIT_USAGE);
    assert_eq!(arbor(&["spectrum"]).code, EXIT_USAGE);
    assert_eq!(arbor(&["--help"]).code, EXIT_OK);
}

#[test]
fn coarse_tolerance_is_a_numerical_failure() {
    // at this width all three eigenvalues of P3 collapse into one cluster
    let dir = TempDir::new().unwrap();
    let p3 = write_input(&dir, "p3.txt", P3);
    let r = arbor(&["eigvec", &p3, "--tol", "2"]);
    assert_eq!(r.code, EXIT_NUMERICAL, "{}{}", r.out, r.err);
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arbor"))
}

#[test]
fn binary_honours_exit_codes_and_threads() {
    let dir = TempDir::new().unwrap();
    let p3 = write_input(&dir, "p3.txt", P3);
    let ok = binary().args(["spectrum", &p3]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "-1.414213562373(1), 0(1), 1.414213562373(1)");

    let two = binary().env("THREADS", "2").args(["spectrum", &p3]).output().unwrap();
    assert_eq!(two.stdout, ok.stdout);

    for bad in ["0", "-3", "many"] {
        let r = binary().env("THREADS", bad).args(["spectrum", &p3]).output().unwrap();
        assert_eq!(r.status.code(), Some(EXIT_USAGE), "THREADS={bad}");
        assert!(r.stdout.is_empty());
    }

    let missing = binary().args(["spectrum", "/nonexistent/file"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(EXIT_INPUT));
    assert!(!missing.stderr.is_empty());
}

fn parse_file(path: &Path) -> arbor_eigen::WeightedForest {
    arbor_eigen::io::read_forest(path, Format::Auto).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(seed in any::<u64>(), n in 1usize..60, drop in 0.0f64..0.5) {
        let f = common::weighted_forest(seed, n, drop);
        let text = write_edge_list(&f);
        prop_assert_eq!(&parse_forest(&text, Format::EdgeList).unwrap(), &f);
        prop_assert_eq!(&parse_forest(&text, Format::Auto).unwrap(), &f);
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("f.txt");
        std::fs::write(&path, &text).unwrap();
        prop_assert_eq!(&parse_file(&path), &f);
    }

    #[test]
    fn matrix_market_round_trip(seed in any::<u64>(), n in 1usize..60, drop in 0.0f64..0.5) {
        let f = common::weighted_forest(seed, n, drop);
        let text = write_matrix_market(&f);
        prop_assert_eq!(&parse_forest(&text, Format::MatrixMarket).unwrap(), &f);
        prop_assert_eq!(&parse_forest(&text, Format::Auto).unwrap(), &f);
    }
}
