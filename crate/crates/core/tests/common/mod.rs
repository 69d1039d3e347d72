#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mixbound::random::{random_chain, random_lazy_reversible};
use mixbound::TransitionMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dense chains with strictly positive entries.
pub fn arb_chain(max_n: usize) -> impl Strategy<Value = TransitionMatrix> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_chain(&mut rng(seed), n).unwrap())
}

/// Lazy reversible chains with a random sparsity pattern.
pub fn arb_lazy_reversible(min_n: usize, max_n: usize) -> impl Strategy<Value = TransitionMatrix> {
    (min_n..=max_n, 0.0..1.0f64, any::<u64>())
        .prop_map(|(n, density, seed)| random_lazy_reversible(&mut rng(seed), n, density).unwrap())
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
