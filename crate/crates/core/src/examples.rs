//! The standard test chains, each carrying whatever is known about it in
//! closed form.
//!
//! States are numbered `0..N`, so a chain "on `N` states" has states
//! `0, 1, …, N − 1`.

use std::f64::consts::PI;

use crate::chain::TransitionMatrix;
use crate::error::{Error, Result};

/// A generated chain plus its closed-form ground truth.
#[derive(Debug, Clone)]
pub struct ExampleChain {
    pub name: &'static str,
    pub matrix: TransitionMatrix,
    /// All `N` eigenvalues, including the unit one.
    pub known_spectrum: Option<Vec<f64>>,
    pub known_pi: Option<Vec<f64>>,
    pub reversible: bool,
    pub notes: Vec<String>,
}

fn build(rows: Vec<Vec<f64>>) -> Result<TransitionMatrix> {
    TransitionMatrix::validate(&rows)
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidParameter(format!("N = {n}, need at least {min}")));
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<()> {
    if (0.0..1.0).contains(&beta) {
        Ok(())
    } else {
        Err(Error::BetaOutOfRange { index: 0, value: beta })
    }
}

/// Move right with probability `1 − β`, hold with probability `β`; the last
/// state absorbs.
pub fn pure_birth(n: usize, beta: f64) -> Result<ExampleChain> {
    check_n(n, 1)?;
    check_beta(beta)?;
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n - 1 {
        rows[i][i] = beta;
        rows[i][i + 1] = 1.0 - beta;
    }
    rows[n - 1][n - 1] = 1.0;
    let mut spectrum = vec![beta; n - 1];
    spectrum.push(1.0);
    let mut pi = vec![0.0; n];
    pi[n - 1] = 1.0;
    Ok(ExampleChain {
        name: "pure-birth",
        matrix: build(rows)?,
        known_spectrum: Some(spectrum),
        known_pi: Some(pi),
        reversible: true,
        notes: vec![format!("N = {n}, beta = {beta}"), "pi is the point mass at the last state".into()],
    })
}

/// Nearest-neighbour walk stepping left with `p`, holding with `q` and
/// stepping right with `r`; blocked moves at the ends are added to the
/// holding probability.
pub fn biased_walk(n: usize, p: f64, q: f64, r: f64) -> Result<ExampleChain> {
    check_n(n, 2)?;
    if [p, q, r].iter().any(|x| !(0.0..=1.0).contains(x)) || (p + q + r - 1.0).abs() > 1e-12 {
        return Err(Error::NotAProbabilityVector(format!("(p, q, r) = ({p}, {q}, {r})")));
    }
    if p == 0.0 || r == 0.0 {
        return Err(Error::InvalidParameter("p and r must be positive".into()));
    }
    let mut rows = vec![vec![0.0; n]; n];
    rows[0][0] = p + q;
    rows[0][1] = r;
    for (i, row) in rows.iter_mut().enumerate().take(n - 1).skip(1) {
        row[i - 1] = p;
        row[i] = q;
        row[i + 1] = r;
    }
    rows[n - 1][n - 2] = p;
    rows[n - 1][n - 1] = q + r;

    // normalise from the top so large ratios do not overflow
    let ratio = r / p;
    let weights: Vec<f64> = (0..n).map(|i| ratio.powi(i as i32 - (n as i32 - 1))).collect();
    let total: f64 = weights.iter().sum();
    let pi = weights.iter().map(|w| w / total).collect();

    let mut spectrum: Vec<f64> =
        (1..n).map(|j| q + 2.0 * (p * r).sqrt() * (j as f64 * PI / n as f64).cos()).collect();
    spectrum.push(1.0);
    let mut notes = vec![format!("N = {n}, (p, q, r) = ({p}, {q}, {r})")];
    if r <= p {
        notes.push("drift towards state 0".into());
    }
    Ok(ExampleChain {
        name: "biased-walk",
        matrix: build(rows)?,
        known_spectrum: Some(spectrum),
        known_pi: Some(pi),
        reversible: true,
        notes,
    })
}

/// Lazy path walk whose last state is left only with probability
/// `1/(4(N−1))`, so it carries half the stationary mass.
pub fn sticky_walk(n: usize) -> Result<ExampleChain> {
    check_n(n, 2)?;
    let mut rows = vec![vec![0.0; n]; n];
    rows[0][0] = 0.75;
    rows[0][1] = 0.25;
    for (i, row) in rows.iter_mut().enumerate().take(n - 1).skip(1) {
        row[i - 1] = 0.25;
        row[i] = 0.5;
        row[i + 1] = 0.25;
    }
    let leave = 1.0 / (4.0 * (n - 1) as f64);
    rows[n - 1][n - 2] = leave;
    rows[n - 1][n - 1] = 1.0 - leave;
    let mut pi = vec![1.0 / (2.0 * (n - 1) as f64); n];
    pi[n - 1] = 0.5;
    Ok(ExampleChain {
        name: "sticky-walk",
        matrix: build(rows)?,
        known_spectrum: None,
        known_pi: Some(pi),
        reversible: true,
        notes: vec![format!("N = {n}"), "half the stationary mass sits on the last state".into()],
    })
}

/// From state `i` (1-based), jump to any of `1..=i` with probability
/// `1/(i(i+1))` each, otherwise advance to `i + 1`; the last state resamples
/// uniformly. Made lazy by `βI + (1 − β)P`.
///
/// The non-unit eigenvalues form a single Jordan block, so numerically
/// computed eigenvalues scatter by roughly `ε^{1/(N−1)}` around `β`.
pub fn skip_free(n: usize, beta: f64) -> Result<ExampleChain> {
    check_n(n, 1)?;
    check_beta(beta)?;
    let mut rows = vec![vec![0.0; n]; n];
    for (i0, row) in rows.iter_mut().enumerate() {
        let i = (i0 + 1) as f64;
        if i0 + 1 == n {
            row.iter_mut().for_each(|x| *x = (1.0 - beta) / n as f64);
        } else {
            for x in row.iter_mut().take(i0 + 1) {
                *x = (1.0 - beta) / (i * (i + 1.0));
            }
            row[i0 + 1] = (1.0 - beta) * i / (i + 1.0);
        }
        row[i0] += beta;
    }
    let mut spectrum = vec![beta; n - 1];
    spectrum.push(1.0);
    Ok(ExampleChain {
        name: "skip-free",
        matrix: build(rows)?,
        known_spectrum: Some(spectrum),
        known_pi: Some(vec![1.0 / n as f64; n]),
        reversible: n <= 2,
        notes: vec![format!("N = {n}, beta = {beta}"), "uniform on the first j states moves to uniform on the first j + 1".into()],
    })
}

/// Largest dimension [`hypercube`] will build.
pub const HYPERCUBE_MAX_DIM: usize = 12;

/// Lazy walk on `{0,1}^n`: hold with probability 1/2, otherwise flip a
/// uniformly chosen coordinate.
pub fn hypercube(dim: usize) -> Result<ExampleChain> {
    check_n(dim, 1)?;
    if dim > HYPERCUBE_MAX_DIM {
        return Err(Error::TooLarge(format!("hypercube dimension {dim} exceeds {HYPERCUBE_MAX_DIM}")));
    }
    let n = 1usize << dim;
    let flip = 1.0 / (2.0 * dim as f64);
    let mut rows = vec![vec![0.0; n]; n];
    for (x, row) in rows.iter_mut().enumerate() {
        row[x] = 0.5;
        for bit in 0..dim {
            row[x ^ (1 << bit)] = flip;
        }
    }
    let mut spectrum = Vec::with_capacity(n);
    for x in 0..n {
        spectrum.push(1.0 - x.count_ones() as f64 / dim as f64);
    }
    let labels = (0..n).map(|x| format!("{x:0dim$b}")).collect();
    Ok(ExampleChain {
        name: "hypercube",
        matrix: TransitionMatrix::with_labels(labels, &rows)?,
        known_spectrum: Some(spectrum),
        known_pi: Some(vec![1.0 / n as f64; n]),
        reversible: true,
        notes: vec![format!("n = {dim}, N = {n}"), format!("absolute spectral gap 1/{dim}")],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_birth_rows() {
        let c = pure_birth(3, 0.25).unwrap();
        assert_eq!(c.matrix.rows(), vec![vec![0.25, 0.75, 0.0], vec![0.0, 0.25, 0.75], vec![0.0, 0.0, 1.0]]);
        assert_eq!(pure_birth(1, 0.4).unwrap().matrix.rows(), vec![vec![1.0]]);
        assert!(matches!(pure_birth(3, 1.0), Err(Error::BetaOutOfRange { .. })));
    }

    #[test]
    fn biased_walk_boundaries() {
        let c = biased_walk(4, 0.2, 0.3, 0.5).unwrap();
        let rows = c.matrix.rows();
        assert_eq!(rows[0], vec![0.5, 0.5, 0.0, 0.0]);
        assert_eq!(rows[3], vec![0.0, 0.0, 0.2, 0.8]);
        let pi = c.known_pi.unwrap();
        assert!((pi[1] / pi[0] - 2.5).abs() < 1e-12);
        assert!(biased_walk(4, 0.2, 0.3, 0.6).is_err());
    }

    #[test]
    fn symmetric_walk_has_uniform_pi() {
        let pi = biased_walk(6, 0.25, 0.5, 0.25).unwrap().known_pi.unwrap();
        assert!(pi.iter().all(|&x| (x - 1.0 / 6.0).abs() < 1e-15));
    }

    #[test]
    fn sticky_walk_small() {
        let c = sticky_walk(4).unwrap();
        assert_eq!(c.known_pi.unwrap(), vec![1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 0.5]);
        assert_eq!(c.matrix.get(3, 2), 1.0 / 12.0);
        let two = sticky_walk(2).unwrap();
        assert_eq!(two.matrix.rows(), vec![vec![0.75, 0.25], vec![0.25, 0.75]]);
        assert!(sticky_walk(1).is_err());
    }

    #[test]
    fn skip_free_rows() {
        let c = skip_free(3, 0.0).unwrap();
        let rows = c.matrix.rows();
        assert_eq!(rows[0], vec![0.5, 0.5, 0.0]);
        assert!((rows[1][0] - 1.0 / 6.0).abs() < 1e-15 && (rows[1][2] - 2.0 / 3.0).abs() < 1e-15);
        assert!(rows[2].iter().all(|&x| (x - 1.0 / 3.0).abs() < 1e-15));
        let lazy = skip_free(3, 0.5).unwrap();
        assert!((lazy.matrix.get(0, 0) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn hypercube_layout() {
        let c = hypercube(1).unwrap();
        assert_eq!(c.matrix.rows(), vec![vec![0.5, 0.5], vec![0.5, 0.5]]);
        let c = hypercube(3).unwrap();
        assert_eq!(c.matrix.labels()[5], "101");
        assert_eq!(c.matrix.get(0b101, 0b100), 1.0 / 6.0);
        assert!(matches!(hypercube(13), Err(Error::TooLarge(_))));
    }
}
