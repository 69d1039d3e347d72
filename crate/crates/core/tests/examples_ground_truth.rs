mod common;

use nalgebra::DMatrix;

use common::max_abs_diff;
use mixbound::chain::{is_reversible, spectrum, stationary_distribution};
use mixbound::examples::{biased_walk, hypercube, pure_birth, skip_free, sticky_walk, ExampleChain};
use mixbound::schur::{charpoly_esym, deflate_unit_root, elementary_symmetric};

fn all_examples() -> Vec<ExampleChain> {
    let mut out = Vec::new();
    for n in [1usize, 2, 5, 10, 20] {
        out.push(pure_birth(n, 0.3).unwrap());
        out.push(pure_birth(n, 0.9).unwrap());
        out.push(skip_free(n, 0.0).unwrap());
        out.push(skip_free(n, 0.6).unwrap());
        if n >= 2 {
            out.push(biased_walk(n, 0.2, 0.2, 0.6).unwrap());
            out.push(biased_walk(n, 0.4, 0.4, 0.2).unwrap());
            out.push(sticky_walk(n).unwrap());
        }
    }
    for dim in 1..=5 {
        out.push(hypercube(dim).unwrap());
    }
    out
}

#[test]
fn known_pi_matches() {
    for ex in all_examples() {
        let pi = stationary_distribution(&ex.matrix).unwrap();
        let known = ex.known_pi.as_ref().unwrap();
        assert!(max_abs_diff(pi.weights(), known) < 1e-8, "{} N={}", ex.name, ex.matrix.n());
    }
}

#[test]
fn reversibility_flags_match() {
    for ex in all_examples() {
        let pi = stationary_distribution(&ex.matrix).unwrap();
        assert_eq!(is_reversible(&ex.matrix, &pi), ex.reversible, "{} N={}", ex.name, ex.matrix.n());
    }
}

/// Multiset comparison of the spectrum. Defective examples are compared in
/// coefficient space, since their numerical eigenvalues are ill-conditioned.
#[test]
fn known_spectrum_matches() {
    for ex in all_examples() {
        let Some(known) = ex.known_spectrum.as_ref() else { continue };
        let n = ex.matrix.n();
        if ex.name == "skip-free" {
            let got = charpoly_esym(ex.matrix.entries());
            let want = elementary_symmetric(known);
            assert!(max_abs_diff(&got, &want) < 1e-8, "N={n}: {got:?} vs {want:?}");
            continue;
        }
        let s = spectrum(&ex.matrix).unwrap();
        let mut got: Vec<f64> = s.eigenvalues().iter().map(|z| z.re).collect();
        let mut want = known.clone();
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        assert!(max_abs_diff(&got, &want) < 1e-8, "{} N={n}: {got:?} vs {want:?}", ex.name);
        assert!(s.eigenvalues().iter().all(|z| z.im.abs() < 1e-9));
    }
}

#[test]
fn skip_free_is_a_single_jordan_block() {
    for &beta in &[0.0, 0.5] {
        for n in [4usize, 9, 16] {
            let p = skip_free(n, beta).unwrap().matrix;
            let pi = stationary_distribution(&p).unwrap().projector();
            let id = DMatrix::<f64>::identity(n, n);
            let nil = p.entries() - &pi - (&id - &pi) * beta;
            let mut power = id.clone();
            for _ in 0..n - 2 {
                power = &power * &nil;
            }
            assert!(power.amax() > 1e-6, "index below N-1 for N={n}");
            power = &power * &nil;
            assert!(power.amax() < 1e-12, "N={n}, beta={beta}: {}", power.amax());
        }
    }
}

#[test]
fn skip_free_prefix_distributions_advance() {
    let n = 8;
    let p = skip_free(n, 0.0).unwrap().matrix;
    for j in 1..n {
        let mu = DMatrix::from_fn(1, n, |_, x| if x < j { 1.0 / j as f64 } else { 0.0 });
        let next = mu * p.entries();
        for x in 0..n {
            let want = if x <= j { 1.0 / (j + 1) as f64 } else { 0.0 };
            assert!((next[(0, x)] - want).abs() < 1e-15);
        }
    }
}

#[test]
fn skip_free_numerical_spectrum_is_conservative() {
    // the computed β★ scatters upward around the true value 0
    let s = spectrum(&skip_free(16, 0.0).unwrap().matrix).unwrap();
    assert!(s.beta_star() >= 0.0 && s.beta_star() < 0.5);
    let lazy = spectrum(&skip_free(4, 0.0).unwrap().matrix).unwrap();
    assert!(lazy.beta_star() < 1e-4);
}

#[test]
fn biased_walk_pi_min_scale() {
    // with p = 1/N the smallest stationary mass is exponentially small in N log N
    for n in [8usize, 16, 32] {
        let p = 1.0 / n as f64;
        let ex = biased_walk(n, p, 0.25, 0.75 - p).unwrap();
        let pi = stationary_distribution(&ex.matrix).unwrap();
        let scale = (1.0 / pi.pi_min()).ln() / (n as f64 * (n as f64).ln());
        assert!((0.5..1.5).contains(&scale), "N={n}: {scale}");
    }
}

#[test]
fn hypercube_gap_is_one_over_n() {
    for dim in 1..=6 {
        let s = spectrum(&hypercube(dim).unwrap().matrix).unwrap();
        assert!((s.gap() - 1.0 / dim as f64).abs() < 1e-9);
        assert!(s.used_symmetric_solver());
    }
}

#[test]
fn deflation_of_skip_free_matches_known_nonunit_part() {
    let ex = skip_free(10, 0.3).unwrap();
    let got = deflate_unit_root(&charpoly_esym(ex.matrix.entries()));
    let want = elementary_symmetric(&[0.3; 9]);
    assert!(max_abs_diff(&got, &want) < 1e-8);
}
