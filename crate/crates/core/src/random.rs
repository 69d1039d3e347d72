//! Random chains and distributions for experiments and property tests.
//!
//! All generators take the RNG by reference so a seeded generator reproduces
//! the same sequence of chains.

use rand::Rng;

use crate::chain::TransitionMatrix;
use crate::error::Result;

/// A probability vector with i.i.d. uniform weights, normalised.
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

/// A dense chain with every entry positive, hence irreducible and aperiodic.
pub fn random_chain<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<TransitionMatrix> {
    let rows: Vec<Vec<f64>> = (0..n).map(|_| random_distribution(rng, n)).collect();
    TransitionMatrix::validate(&rows)
}

/// `½(I + D^{-1}A)` for a random symmetric weight matrix `A`: reversible,
/// lazy, and with spectrum in `[0, 1]`.
///
/// With `density < 1` off-diagonal weights are dropped at random, except
/// along the path `0 – 1 – … – N−1`, which keeps the chain irreducible.
pub fn random_lazy_reversible<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Result<TransitionMatrix> {
    let mut a = vec![vec![0.0; n]; n];
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in i..n {
            let keep = j == i + 1 || i == j || rng.random::<f64>() < density;
            if keep {
                let w = rng.random::<f64>() + 0.05;
                a[i][j] = w;
                a[j][i] = w;
            }
        }
    }
    let rows: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let d: f64 = row.iter().sum();
            row.iter().enumerate().map(|(j, w)| 0.5 * w / d + if i == j { 0.5 } else { 0.0 }).collect()
        })
        .collect();
    TransitionMatrix::validate(&rows)
}
