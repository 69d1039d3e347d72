mod common;

use proptest::prelude::*;

use common::{arb_chain, arb_lazy_reversible, max_abs_diff};
use mixbound::chain::{
    is_reversible, reversibilizations, spectrum, stationary_distribution, stationary_residual, time_reversal,
};
use mixbound::examples::{biased_walk, hypercube, pure_birth, skip_free, sticky_walk};
use mixbound::TransitionMatrix;

fn trace(p: &TransitionMatrix) -> f64 {
    (0..p.n()).map(|i| p.get(i, i)).sum()
}

#[test]
fn eigenvalues_sum_to_trace_on_examples() {
    let chains = [
        pure_birth(12, 0.4).unwrap(),
        biased_walk(9, 0.2, 0.2, 0.6).unwrap(),
        sticky_walk(10).unwrap(),
        skip_free(16, 0.0).unwrap(),
        skip_free(9, 0.7).unwrap(),
        hypercube(5).unwrap(),
    ];
    for ex in chains {
        let s = spectrum(&ex.matrix).unwrap();
        let sum: f64 = s.eigenvalues().iter().map(|z| z.re).sum();
        assert!((sum - trace(&ex.matrix)).abs() < 1e-8, "{}", ex.name);
    }
}

#[test]
fn absorbing_chain_pi_is_exact_point_mass() {
    let ex = pure_birth(20, 0.95).unwrap();
    let pi = stationary_distribution(&ex.matrix).unwrap();
    assert_eq!(pi.weights()[19], 1.0);
    assert!(pi.weights()[..19].iter().all(|&w| w == 0.0));
    assert_eq!(pi.pi_min(), 0.0);
}

#[test]
fn tiny_stationary_masses_keep_relative_accuracy() {
    // pi(i) ∝ 9^i over 30 states: the smallest weight is about 1e-28
    let ex = biased_walk(30, 0.05, 0.5, 0.45).unwrap();
    let pi = stationary_distribution(&ex.matrix).unwrap();
    let known = ex.known_pi.unwrap();
    for (a, b) in pi.weights().iter().zip(&known) {
        assert!((a - b).abs() <= 1e-10 * b, "{a} vs {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn stationary_is_fixed(p in arb_chain(12)) {
        let pi = stationary_distribution(&p).unwrap();
        prop_assert!(stationary_residual(&p, pi.weights()) < 1e-10);
        prop_assert!((pi.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_matches_trace(p in arb_chain(10)) {
        let s = spectrum(&p).unwrap();
        let sum: f64 = s.eigenvalues().iter().map(|z| z.re).sum();
        prop_assert!((sum - trace(&p)).abs() < 1e-8);
        prop_assert_eq!(s.eigenvalues().len(), p.n());
        prop_assert!(s.beta_star() < 1.0);
    }

    #[test]
    fn reversal_is_an_involution(p in arb_chain(8)) {
        let pi = stationary_distribution(&p).unwrap();
        let back = time_reversal(&time_reversal(&p, &pi).unwrap(), &pi).unwrap();
        prop_assert!((back.entries() - p.entries()).amax() < 1e-12);
    }

    #[test]
    fn reversal_shares_pi(p in arb_chain(8)) {
        let pi = stationary_distribution(&p).unwrap();
        let rev = time_reversal(&p, &pi).unwrap();
        prop_assert!(stationary_residual(&rev, pi.weights()) < 1e-10);
    }

    #[test]
    fn reversible_spectrum_is_real(p in arb_lazy_reversible(1, 10)) {
        let pi = stationary_distribution(&p).unwrap();
        prop_assert!(is_reversible(&p, &pi));
        let s = spectrum(&p).unwrap();
        prop_assert!(s.eigenvalues().iter().all(|z| z.im.abs() < 1e-9));
        prop_assert!(s.eigenvalues().iter().all(|z| z.re > -1e-12));
    }

    #[test]
    fn beta_star_below_alpha(p in arb_lazy_reversible(2, 10)) {
        let pi = stationary_distribution(&p).unwrap();
        let beta = spectrum(&p).unwrap().beta_star();
        let r = reversibilizations(&p, &pi).unwrap();
        prop_assert!(beta <= r.alpha + 1e-8, "beta* {} > alpha {}", beta, r.alpha);
    }

    #[test]
    fn reversibilizations_are_reversible(p in arb_chain(7)) {
        let pi = stationary_distribution(&p).unwrap();
        let r = reversibilizations(&p, &pi).unwrap();
        prop_assert!(is_reversible(&r.additive, &pi));
        prop_assert!(is_reversible(&r.multiplicative, &pi));
        let s = spectrum(&r.multiplicative).unwrap();
        prop_assert!(s.eigenvalues().iter().all(|z| z.re > -1e-12));
        prop_assert!((0.0..=1.0).contains(&r.alpha));
    }

    #[test]
    fn lazify_shifts_the_spectrum(p in arb_lazy_reversible(2, 8), beta in 0.0..0.9f64) {
        let lazy = p.lazify(beta).unwrap();
        let mut a: Vec<f64> = spectrum(&p).unwrap().eigenvalues().iter().map(|z| beta + (1.0 - beta) * z.re).collect();
        let mut b: Vec<f64> = spectrum(&lazy).unwrap().eigenvalues().iter().map(|z| z.re).collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        prop_assert!(max_abs_diff(&a, &b) < 1e-10);
    }
}
