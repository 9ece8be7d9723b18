mod common;

use arbor_eigen::oracle::jacobi_eigen;
use arbor_eigen::spectrum::refine_eigenvalue;
use arbor_eigen::{eigenvalues, inertia_below, multiplicity, phi_eval, WeightedForest};
use proptest::prelude::*;
use rand::Rng;

fn oracle_values(f: &WeightedForest) -> Vec<f64> {
    jacobi_eigen(&f.induced_matrix()).unwrap().values
}

#[test]
fn spectra_match_dense_solver() {
    let mut worst: f64 = 0.0;
    for seed in 0..1000u64 {
        let n = 1 + (seed as usize * 7919) % 60;
        let f = match seed % 3 {
            0 => common::weighted_tree(seed, n),
            1 => common::weighted_forest(seed, n, 0.2),
            _ => common::unit_tree(seed, n),
        };
        let spectrum = eigenvalues(&f, 1e-12).unwrap();
        assert_eq!(spectrum.total_multiplicity(), n, "sum rule, seed {seed}");
        assert!(!spectrum.budget_exhausted);
        let ours = spectrum.expanded();
        let dense = oracle_values(&f);
        let scale = f.inf_norm().max(1.0);
        for (a, b) in ours.iter().zip(&dense) {
            worst = worst.max((a - b).abs() / scale);
        }
        assert!(
            spectrum.pairs.windows(2).all(|w| w[0].lambda < w[1].lambda),
            "strictly increasing, seed {seed}"
        );
    }
    assert!(worst <= 1e-8, "worst deviation {worst:e}");
}

/// Counts from the elimination pass must sit between the oracle counts just
/// below and just above `x`, also when `x` hits an eigenvalue or a pivot is
/// exactly zero.
fn check_inertia(f: &WeightedForest, x: f64, dense: &[f64]) {
    let below = inertia_below(f, x).below;
    let lo = dense.iter().filter(|&&l| l < x - 1e-9).count();
    let hi = dense.iter().filter(|&&l| l < x + 1e-9).count();
    assert!(lo <= below && below <= hi, "x={x}: {lo} <= {below} <= {hi}");
    assert_eq!(inertia_below(f, x).below + inertia_below(f, x).at_or_above, f.n());
}

#[test]
fn zero_pivot_rule_agrees_with_oracle() {
    let mut pairs = 0;
    let mut exact_hits = 0;
    for seed in 0..400u64 {
        let n = 1 + (seed as usize * 31) % 25;
        let f = if seed % 2 == 0 {
            common::integer_tree(seed, n)
        } else {
            common::unit_tree(seed, n)
        };
        let dense = oracle_values(&f);
        let mut rng = common::rng(seed);
        // integer shifts make leaf pivots vanish exactly
        for x in -3..=3 {
            check_inertia(&f, x as f64, &dense);
            pairs += 1;
        }
        for _ in 0..2 {
            check_inertia(&f, rng.gen_range(-5.0..5.0), &dense);
            pairs += 1;
        }
        // computed eigenvalues, refined as far as binary64 allows
        for p in eigenvalues(&f, 1e-12).unwrap().pairs {
            let lambda = refine_eigenvalue(&f, p.bracket);
            check_inertia(&f, lambda, &dense);
            pairs += 1;
            if dense.contains(&lambda) || lambda == lambda.round() {
                exact_hits += 1;
            }
        }
    }
    assert!(pairs >= 1000, "{pairs} pairs");
    assert!(exact_hits > 100, "only {exact_hits} exact eigenvalue shifts");
}

#[test]
fn multiplicities_of_unit_trees() {
    // K_{1,m}: 0 with multiplicity m - 1, plus +-sqrt(m)
    for m in 2..10 {
        let f = arbor_eigen::generate::star(m);
        assert_eq!(multiplicity(&f, 0.0, 1e-10).unwrap(), m - 1);
        assert_eq!(multiplicity(&f, (m as f64).sqrt(), 1e-10).unwrap(), 1);
        assert_eq!(multiplicity(&f, 0.5, 1e-10).unwrap(), 0);
    }
}

proptest! {
    #[test]
    fn inertia_is_monotone(seed in any::<u64>(), n in 1usize..80, a in -6.0f64..6.0, b in -6.0f64..6.0) {
        let f = common::weighted_forest(seed, n, 0.1);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(inertia_below(&f, lo).below <= inertia_below(&f, hi).below);
    }

    #[test]
    fn simple_eigenvalues_change_sign(seed in any::<u64>(), n in 1usize..40) {
        let f = common::weighted_tree(seed, n);
        let spectrum = eigenvalues(&f, 1e-12).unwrap();
        let lambdas: Vec<f64> = spectrum.pairs.iter().map(|p| refine_eigenvalue(&f, p.bracket)).collect();
        for (i, p) in spectrum.pairs.iter().enumerate() {
            if p.multiplicity != 1 {
                continue;
            }
            let gap = lambdas
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, l)| (l - lambdas[i]).abs())
                .fold(f64::INFINITY, f64::min);
            if gap < 1e-6 {
                continue;
            }
            let delta = (gap / 4.0).min(1e-3);
            let left = phi_eval(&f, lambdas[i] - delta).value;
            let right = phi_eval(&f, lambdas[i] + delta).value;
            prop_assert!(left * right < 0.0, "lambda {} delta {delta}", lambdas[i]);
        }
    }

    #[test]
    fn spectrum_is_deterministic(seed in any::<u64>(), n in 1usize..60) {
        let f = common::weighted_forest(seed, n, 0.2);
        prop_assert_eq!(eigenvalues(&f, 1e-10).unwrap(), eigenvalues(&f, 1e-10).unwrap());
    }
}
