//! Command-line front end shared by the `arbor` binary and the tests.
//!
//! ```text
//! arbor spectrum tree.txt
//! arbor eigvec tree.mtx --eig value=0 --output json
//! arbor verify --seed 42
//! ```
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 input error.
//! Results go to the output stream, diagnostics to the error stream.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::eigvec::{eigenbasis_for_pair, orthonormalize, EigenBasis, RESIDUAL_ALARM};
use crate::forest::WeightedForest;
use crate::generate::{random_forest, random_tree, WeightRange};
use crate::io::{read_forest, Format, InputError};
use crate::oracle::{self, identities, WeightedGraph};
use crate::poly::{matching_poly_coeffs, phi_eval, COEFF_MODE_MAX};
use crate::spectrum::{eigenvalues, gershgorin_interval, refine_eigenvalue, EigenPair, Spectrum};
use crate::starset::find_star_set;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Relative residual allowed for the identity reports.
pub const IDENTITY_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Eigenvalues with multiplicities
    Spectrum,
    /// Closed-form eigenvectors
    Eigvec,
    /// Star sets with their certificates
    Starset,
    /// Characteristic polynomial coefficients or values
    Matchpoly,
    /// Cross-check against the brute-force oracle
    Verify,
    /// Residuals of the polynomial identities
    Identities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Edgelist,
    Matrixmarket,
}

impl From<InputFormat> for Format {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Auto => Format::Auto,
            InputFormat::Edgelist => Format::EdgeList,
            InputFormat::Matrixmarket => Format::MatrixMarket,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Which eigenvalue a command applies to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EigSelector {
    /// 1-based position in the ascending list of eigenvalues with repeats.
    Index(usize),
    /// The eigenvalue closest to this value.
    Value(f64),
}

impl FromStr for EigSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_index = |t: &str| {
            t.parse::<usize>()
                .map(EigSelector::Index)
                .map_err(|_| format!("invalid eigenvalue index '{t}'"))
        };
        if let Some(t) = s.strip_prefix("index=") {
            parse_index(t)
        } else if let Some(t) = s.strip_prefix("value=") {
            t.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(EigSelector::Value)
                .ok_or_else(|| format!("invalid eigenvalue '{t}'"))
        } else {
            parse_index(s).map_err(|_| format!("expected index=<k>, value=<x> or <k>, got '{s}'"))
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "arbor", version, about = "Spectra and closed-form eigenvectors of weighted trees")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Edge-list or MatrixMarket file (optional for verify)
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    pub format: InputFormat,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    pub output: OutputFormat,
    /// index=<k>, value=<x>, or a bare index
    #[arg(long = "eig")]
    pub eig_selector: Option<EigSelector>,
    /// Orthonormalize each eigenbasis (modified Gram-Schmidt)
    #[arg(long)]
    pub orthonormalize: bool,
    /// Seed for the random instances of verify and identities
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Number of random trees for verify without input
    #[arg(long, default_value_t = 25)]
    pub count: usize,
    /// Evaluation points for matchpoly and identities
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub at: Vec<f64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            input: None,
            format: InputFormat::Auto,
            tol: 1e-10,
            output: OutputFormat::Text,
            eig_selector: None,
            orthonormalize: false,
            seed: 42,
            count: 25,
            at: Vec::new(),
        }
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            }
        }
    }
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Numerical(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Output text plus whether a numerical check failed.
struct Report {
    text: String,
    healthy: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Self { text, healthy: true }
    }
}

pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = execute(config);
    let code = match outcome {
        Ok(report) => {
            if out.write_all(report.text.as_bytes()).is_err() {
                let _ = writeln!(err, "error: cannot write output");
                return EXIT_INPUT;
            }
            if report.healthy {
                EXIT_OK
            } else {
                let _ = writeln!(err, "error: a numerical check failed (see output)");
                EXIT_NUMERICAL
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "input error: {m}");
            EXIT_INPUT
        }
        Err(Failure::Numerical(m)) => {
            let _ = writeln!(err, "numerical failure: {m}");
            EXIT_NUMERICAL
        }
    };
    let _ = out.flush();
    code
}

fn execute(config: &RunConfig) -> Result<Report, Failure> {
    if !(config.tol > 0.0 && config.tol.is_finite()) {
        return Err(Failure::Usage(format!("tolerance must be positive, got {}", config.tol)));
    }
    if config.command == Command::Verify && config.input.is_none() {
        return verify_random_suite(config);
    }
    let path = config
        .input
        .as_ref()
        .ok_or_else(|| Failure::Usage("an input file is required".into()))?;
    let forest = read_forest(path, config.format.into())?;
    match config.command {
        Command::Spectrum => spectrum_command(config, &forest),
        Command::Eigvec => eigvec_command(config, &forest),
        Command::Starset => starset_command(config, &forest),
        Command::Matchpoly => matchpoly_command(config, &forest),
        Command::Verify => {
            let checks = verify_forest(&forest, config.tol, config.seed);
            Ok(render_checks(config, forest.n(), &checks))
        }
        Command::Identities => identities_command(config, &forest),
    }
}

/// `{:.16e}`: seventeen significant digits, enough to round-trip binary64.
pub fn json_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".into()
    }
}

/// Short human-readable form: twelve decimals, trailing zeros removed.
pub fn text_number(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn json_list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    let parts: Vec<String> = items.iter().map(f).collect();
    format!("[{}]", parts.join(","))
}

fn json_eigenvalues(spectrum: &Spectrum) -> String {
    json_list(&spectrum.pairs, |p| {
        format!(
            "{{\"value\":{},\"multiplicity\":{}}}",
            json_number(p.lambda),
            p.multiplicity
        )
    })
}

fn compute_spectrum(config: &RunConfig, forest: &WeightedForest) -> Result<Spectrum, Failure> {
    let spectrum = eigenvalues(forest, config.tol).map_err(|e| Failure::Usage(e.to_string()))?;
    if spectrum.budget_exhausted {
        return Err(Failure::Numerical("bisection budget exhausted".into()));
    }
    // brackets are only tol wide; report each value to machine precision
    let mut spectrum = spectrum;
    spectrum
        .pairs
        .par_iter_mut()
        .for_each(|p| p.lambda = refine_eigenvalue(forest, p.bracket));
    Ok(spectrum)
}

fn spectrum_command(config: &RunConfig, forest: &WeightedForest) -> Result<Report, Failure> {
    let spectrum = compute_spectrum(config, forest)?;
    let text = match config.output {
        OutputFormat::Text => {
            let parts: Vec<String> = spectrum
                .pairs
                .iter()
                .map(|p| format!("{}({})", text_number(p.lambda), p.multiplicity))
                .collect();
            format!("{}\n", parts.join(", "))
        }
        OutputFormat::Json => format!(
            "{{\"n\":{},\"eigenvalues\":{},\"bases\":[]}}\n",
            forest.n(),
            json_eigenvalues(&spectrum)
        ),
    };
    Ok(Report::ok(text))
}

fn select_pairs(
    config: &RunConfig,
    forest: &WeightedForest,
    spectrum: &Spectrum,
) -> Result<Vec<EigenPair>, Failure> {
    match config.eig_selector {
        None => Ok(spectrum.pairs.clone()),
        Some(EigSelector::Index(k)) => {
            if k == 0 || k > forest.n() {
                return Err(Failure::Usage(format!(
                    "eigenvalue index {k} outside 1..={}",
                    forest.n()
                )));
            }
            let mut seen = 0;
            for p in &spectrum.pairs {
                seen += p.multiplicity;
                if seen >= k {
                    return Ok(vec![*p]);
                }
            }
            Err(Failure::Numerical("eigenvalue count below n".into()))
        }
        Some(EigSelector::Value(x)) => {
            let nearest = spectrum
                .pairs
                .iter()
                .min_by(|a, b| (a.lambda - x).abs().total_cmp(&(b.lambda - x).abs()))
                .ok_or_else(|| Failure::Usage("empty spectrum".into()))?;
            let slack = 1e-6 * x.abs().max(1.0);
            if (nearest.lambda - x).abs() > slack {
                return Err(Failure::Usage(format!(
                    "{x} is not an eigenvalue (nearest is {})",
                    text_number(nearest.lambda)
                )));
            }
            Ok(vec![*nearest])
        }
    }
}

fn compute_bases(
    config: &RunConfig,
    forest: &WeightedForest,
    pairs: &[EigenPair],
) -> Result<Vec<EigenBasis>, Failure> {
    pairs
        .par_iter()
        .map(|p| eigenbasis_for_pair(forest, p, config.tol))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Numerical(e.to_string()))
}

fn one_based(vertices: &[usize]) -> Vec<usize> {
    vertices.iter().map(|v| v + 1).collect()
}

fn eigvec_command(config: &RunConfig, forest: &WeightedForest) -> Result<Report, Failure> {
    let spectrum = compute_spectrum(config, forest)?;
    let pairs = select_pairs(config, forest, &spectrum)?;
    let bases = compute_bases(config, forest, &pairs)?;
    let healthy = bases.iter().all(|b| b.residual() <= RESIDUAL_ALARM);
    let vectors_of = |b: &EigenBasis| -> Vec<Vec<f64>> {
        let raw: Vec<Vec<f64>> = b.vectors.iter().map(|v| v.entries.clone()).collect();
        if config.orthonormalize {
            orthonormalize(&raw)
        } else {
            raw
        }
    };
    let mut text = String::new();
    match config.output {
        OutputFormat::Text => {
            for b in &bases {
                writeln!(
                    text,
                    "lambda {} multiplicity {} star set {:?} residual {:.3e}",
                    text_number(b.lambda),
                    b.dim(),
                    one_based(&b.star_set.vertices),
                    b.residual()
                )
                .expect("string write");
                for (vec, v) in vectors_of(b).iter().zip(&b.vectors) {
                    let entries: Vec<String> = vec.iter().map(|&x| format!("{x:.10e}")).collect();
                    let scale = if v.log2_scale != 0 && !config.orthonormalize {
                        format!(" (times 2^{})", v.log2_scale)
                    } else {
                        String::new()
                    };
                    writeln!(text, "  root {}{}: {}", v.root + 1, scale, entries.join(" "))
                        .expect("string write");
                }
            }
        }
        OutputFormat::Json => {
            let basis_json = |b: &EigenBasis| {
                let vectors = vectors_of(b);
                let mut s = format!(
                    "{{\"lambda\":{},\"star_set\":{},\"vectors\":{},\"residual\":{}",
                    json_number(b.lambda),
                    json_list(&one_based(&b.star_set.vertices), |v| v.to_string()),
                    json_list(&vectors, |v| json_list(v, |&x| json_number(x))),
                    json_number(b.residual())
                );
                if !config.orthonormalize {
                    let scales: Vec<i64> = b.vectors.iter().map(|v| v.log2_scale).collect();
                    if scales.iter().any(|&e| e != 0) {
                        write!(s, ",\"log2_scale\":{}", json_list(&scales, |e| e.to_string()))
                            .expect("string write");
                    }
                }
                s.push('}');
                s
            };
            writeln!(
                text,
                "{{\"n\":{},\"eigenvalues\":{},\"bases\":{}}}",
                forest.n(),
                json_eigenvalues(&spectrum),
                json_list(&bases, basis_json)
            )
            .expect("string write");
        }
    }
    Ok(Report { text, healthy })
}

fn starset_command(config: &RunConfig, forest: &WeightedForest) -> Result<Report, Failure> {
    let spectrum = compute_spectrum(config, forest)?;
    let pairs = select_pairs(config, forest, &spectrum)?;
    let sets = pairs
        .par_iter()
        .map(|p| {
            let lambda = refine_eigenvalue(forest, p.bracket);
            find_star_set(forest, lambda, p.multiplicity, config.tol)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Numerical(e.to_string()))?;
    let mut text = String::new();
    match config.output {
        OutputFormat::Text => {
            for s in &sets {
                writeln!(
                    text,
                    "lambda {} star set {:?} certificate {:.6e}",
                    text_number(s.lambda),
                    one_based(&s.vertices),
                    s.certificate
                )
                .expect("string write");
            }
        }
        OutputFormat::Json => {
            let entries = json_list(&sets, |s| {
                format!(
                    "{{\"lambda\":{},\"star_set\":{},\"certificate\":{}}}",
                    json_number(s.lambda),
                    json_list(&one_based(&s.vertices), |v| v.to_string()),
                    json_number(s.certificate)
                )
            });
            writeln!(
                text,
                "{{\"n\":{},\"eigenvalues\":{},\"star_sets\":{}}}",
                forest.n(),
                json_eigenvalues(&spectrum),
                entries
            )
            .expect("string write");
        }
    }
    Ok(Report::ok(text))
}

fn matchpoly_command(config: &RunConfig, forest: &WeightedForest) -> Result<Report, Failure> {
    let mut text = String::new();
    if config.at.is_empty() {
        let poly = matching_poly_coeffs(forest).map_err(|e| {
            Failure::Usage(format!("{e}; use --at to evaluate at points (coefficients up to n = {COEFF_MODE_MAX})"))
        })?;
        match config.output {
            OutputFormat::Text => {
                for (k, c) in poly.coeffs.iter().enumerate().rev() {
                    writeln!(text, "x^{k}: {}", json_number(*c)).expect("string write");
                }
            }
            OutputFormat::Json => {
                writeln!(
                    text,
                    "{{\"n\":{},\"coefficients\":{}}}",
                    forest.n(),
                    json_list(&poly.coeffs, |&c| json_number(c))
                )
                .expect("string write");
            }
        }
    } else {
        let values: Vec<(f64, f64, f64)> = config
            .at
            .iter()
            .map(|&x| {
                let v = phi_eval(forest, x);
                (x, v.value, v.deriv)
            })
            .collect();
        match config.output {
            OutputFormat::Text => {
                for (x, v, d) in &values {
                    writeln!(text, "x {} value {} derivative {}", json_number(*x), json_number(*v), json_number(*d))
                        .expect("string write");
                }
            }
            OutputFormat::Json => {
                writeln!(
                    text,
                    "{{\"n\":{},\"points\":{}}}",
                    forest.n(),
                    json_list(&values, |(x, v, d)| format!(
                        "{{\"x\":{},\"value\":{},\"derivative\":{}}}",
                        json_number(*x),
                        json_number(*v),
                        json_number(*d)
                    ))
                )
                .expect("string write");
            }
        }
    }
    Ok(Report::ok(text))
}

/// Outcome of one invariant check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed value of the checked quantity.
    pub worst: f64,
    pub limit: f64,
}

impl Check {
    fn new(name: &'static str, worst: f64, limit: f64) -> Self {
        Self {
            name,
            passed: worst <= limit,
            worst,
            limit,
        }
    }

    fn merge(&mut self, other: &Check) {
        self.worst = self.worst.max(other.worst);
        self.passed &= other.passed;
    }
}

/// Largest forest cross-checked against the dense eigensolver by `verify`.
pub const VERIFY_DENSE_MAX_N: usize = 300;

/// Cross-checks one forest against the oracle: eigenvalues and eigenspaces
/// against Jacobi, eigenvector residuals, and the polynomial identities at
/// a few seeded points.
pub fn verify_forest(forest: &WeightedForest, tol: f64, seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    let n = forest.n();
    let norm = forest.inf_norm().max(1.0);
    let spectrum = match eigenvalues(forest, tol) {
        Ok(s) => s,
        Err(_) => return vec![Check::new("spectrum", f64::INFINITY, 0.0)],
    };
    checks.push(Check::new(
        "eigenvalue count",
        (spectrum.total_multiplicity() as f64 - n as f64).abs(),
        0.0,
    ));
    let bases: Vec<Result<EigenBasis, _>> = spectrum
        .pairs
        .par_iter()
        .map(|p| eigenbasis_for_pair(forest, p, tol))
        .collect();
    let failures = bases.iter().filter(|b| b.is_err()).count();
    checks.push(Check::new("eigenbasis construction", failures as f64, 0.0));
    let bases: Vec<EigenBasis> = bases.into_iter().filter_map(Result::ok).collect();
    let worst_residual = bases.iter().map(EigenBasis::residual).fold(0.0, f64::max);
    checks.push(Check::new("eigenvector residual", worst_residual, RESIDUAL_ALARM));
    let rank_deficit = bases
        .iter()
        .map(|b| {
            let raw: Vec<Vec<f64>> = b.vectors.iter().map(|v| v.entries.clone()).collect();
            let s = oracle::singular_values(&raw);
            let ratio = s.last().copied().unwrap_or(0.0) / s[0];
            if ratio > 1e-8 {
                0.0
            } else {
                1.0
            }
        })
        .sum::<f64>();
    checks.push(Check::new("eigenbasis rank", rank_deficit, 0.0));

    if n <= VERIFY_DENSE_MAX_N {
        match oracle::jacobi_eigen(&forest.induced_matrix()) {
            Ok(dense) => {
                let ours = spectrum.expanded();
                let gap = ours
                    .iter()
                    .zip(&dense.values)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                checks.push(Check::new("eigenvalues vs dense solver", gap / norm, 1e-8));
                let mut angle: f64 = 0.0;
                for (i, b) in bases.iter().enumerate() {
                    let isolated = spectrum.pairs.iter().enumerate().all(|(j, q)| {
                        j == i || (q.lambda - b.lambda).abs() >= 1e-4
                    });
                    if !isolated {
                        continue;
                    }
                    let raw: Vec<Vec<f64>> = b.vectors.iter().map(|v| v.entries.clone()).collect();
                    let reference = dense.eigenspace_near(b.lambda, b.dim());
                    angle = angle.max(oracle::largest_principal_angle(&raw, &reference));
                }
                checks.push(Check::new("eigenspaces vs dense solver", angle, 1e-6));
            }
            Err(_) => checks.push(Check::new("dense solver", f64::INFINITY, 0.0)),
        }
    }

    let (lo, hi) = gershgorin_interval(forest);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<f64> = (0..3).map(|_| rng.gen_range(lo - 0.5..=hi + 0.5)).collect();
    let mut identity = |name, f: &dyn Fn(f64) -> Option<f64>| {
        let worst = points.iter().filter_map(|&x| f(x)).fold(0.0, f64::max);
        checks.push(Check::new(name, worst, IDENTITY_TOLERANCE));
    };
    identity("characteristic = matching polynomial", &|x| {
        identities::char_poly_residual(forest, x)
    });
    identity("derivative = sum of vertex deletions", &|x| {
        Some(identities::derivative_residual(forest, x))
    });
    if n <= VERIFY_DENSE_MAX_N {
        identity("vertex expansion", &|x| Some(identities::expansion_residual(forest, x)));
    }
    checks
}

fn verify_random_suite(config: &RunConfig) -> Result<Report, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let forests: Vec<(WeightedForest, u64)> = (0..config.count)
        .map(|i| {
            let n = rng.gen_range(2..=40);
            let weights = if i % 3 == 2 {
                WeightRange::zero_diagonal()
            } else {
                WeightRange::default()
            };
            let f = if i % 4 == 3 {
                random_forest(&mut rng, n, 0.2, &weights)
            } else {
                random_tree(&mut rng, n, &weights)
            };
            (f, rng.gen())
        })
        .collect();
    let per_forest: Vec<Vec<Check>> = forests
        .par_iter()
        .map(|(f, seed)| verify_forest(f, config.tol, *seed))
        .collect();
    let mut merged: Vec<Check> = Vec::new();
    for checks in per_forest {
        for c in checks {
            match merged.iter_mut().find(|m| m.name == c.name) {
                Some(m) => m.merge(&c),
                None => merged.push(c),
            }
        }
    }
    Ok(render_checks(config, config.count, &merged))
}

fn render_checks(config: &RunConfig, size: usize, checks: &[Check]) -> Report {
    let healthy = checks.iter().all(|c| c.passed);
    let mut text = String::new();
    match config.output {
        OutputFormat::Text => {
            for c in checks {
                writeln!(
                    text,
                    "{} {}: worst {:.3e} (limit {:.1e})",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.worst,
                    c.limit
                )
                .expect("string write");
            }
        }
        OutputFormat::Json => {
            let entries = json_list(checks, |c| {
                format!(
                    "{{\"name\":\"{}\",\"passed\":{},\"worst\":{},\"limit\":{}}}",
                    c.name,
                    c.passed,
                    json_number(c.worst),
                    json_number(c.limit)
                )
            });
            writeln!(text, "{{\"n\":{size},\"checks\":{entries}}}").expect("string write");
        }
    }
    Report { text, healthy }
}

fn identities_command(config: &RunConfig, forest: &WeightedForest) -> Result<Report, Failure> {
    let n = forest.n();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let points = if config.at.is_empty() {
        let (lo, hi) = gershgorin_interval(forest);
        (0..5).map(|_| rng.gen_range(lo - 0.5..=hi + 0.5)).collect()
    } else {
        config.at.clone()
    };
    let worst = |f: &dyn Fn(f64) -> Option<f64>| -> Option<f64> {
        points.iter().filter_map(|&x| f(x)).reduce(f64::max)
    };
    let mut rows: Vec<(&'static str, Option<f64>)> = vec![
        ("characteristic = matching polynomial", worst(&|x| identities::char_poly_residual(forest, x))),
        ("derivative = sum of vertex deletions", worst(&|x| Some(identities::derivative_residual(forest, x)))),
        ("vertex expansion", worst(&|x| Some(identities::expansion_residual(forest, x)))),
        (
            "sum of squared path terms",
            worst(&|x| (0..n).map(|u| identities::summation_residual(forest, u, x)).reduce(f64::max)),
        ),
    ];
    let hl = if (2..=oracle::PATH_IDENTITY_MAX_N).contains(&n) {
        let graph = WeightedGraph::from_forest(forest).map_err(|e| Failure::Input(e.to_string()))?;
        let mut worst_hl: f64 = 0.0;
        for &x in &points {
            let u = rng.gen_range(0..n);
            let targets: Vec<usize> = (0..n).filter(|&v| v != u && rng.gen_bool(0.4)).collect();
            let r = oracle::hl_identity_residual(&graph, u, &targets, x)
                .map_err(|e| Failure::Numerical(e.to_string()))?;
            worst_hl = worst_hl.max(r);
        }
        Some(worst_hl)
    } else {
        None
    };
    rows.push(("path identity", hl));

    let healthy = rows.iter().all(|(_, r)| r.is_none_or(|r| r <= IDENTITY_TOLERANCE));
    let mut text = String::new();
    match config.output {
        OutputFormat::Text => {
            for (name, r) in &rows {
                match r {
                    Some(r) => writeln!(
                        text,
                        "{} {name}: {r:.3e}",
                        if *r <= IDENTITY_TOLERANCE { "PASS" } else { "FAIL" }
                    ),
                    None => writeln!(text, "SKIP {name}: too large for enumeration"),
                }
                .expect("string write");
            }
        }
        OutputFormat::Json => {
            let entries = json_list(&rows, |(name, r)| {
                format!(
                    "{{\"name\":\"{name}\",\"residual\":{}}}",
                    r.map_or("null".to_string(), json_number)
                )
            });
            writeln!(
                text,
                "{{\"n\":{n},\"points\":{},\"identities\":{entries}}}",
                json_list(&points, |&x| json_number(x))
            )
            .expect("string write");
        }
    }
    Ok(Report { text, healthy })
}
