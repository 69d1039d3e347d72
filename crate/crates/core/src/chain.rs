//! Transition matrices, stationary distributions and spectra.
//!
//! A [`TransitionMatrix`] is a validated dense row-stochastic matrix over a
//! labelled state space. Everything else in the crate takes one of these as
//! input, together with the [`StationaryDistribution`] and [`Spectrum`]
//! computed here.

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

const EIG_MAX_ITER: usize = 10_000;

/// Dense row-stochastic matrix over a labelled, ordered state space.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    labels: Vec<String>,
    entries: DMatrix<f64>,
}

impl TransitionMatrix {
    /// Validate a raw row-major matrix with default tolerances. States are
    /// labelled `0..N`.
    pub fn validate(rows: &[Vec<f64>]) -> Result<Self> {
        Self::validate_with(rows, &Tolerances::default())
    }

    pub fn validate_with(rows: &[Vec<f64>], tol: &Tolerances) -> Result<Self> {
        let labels = (0..rows.len()).map(|i| i.to_string()).collect();
        Self::with_labels_tol(labels, rows, tol)
    }

    pub fn with_labels(labels: Vec<String>, rows: &[Vec<f64>]) -> Result<Self> {
        Self::with_labels_tol(labels, rows, &Tolerances::default())
    }

    pub fn with_labels_tol(labels: Vec<String>, rows: &[Vec<f64>], tol: &Tolerances) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonSquare { rows: n, row: i, cols: row.len() });
            }
        }
        if labels.len() != n {
            return Err(Error::LabelMismatch { labels: labels.len(), states: n });
        }
        let mut entries = DMatrix::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                if v < 0.0 {
                    if v < -tol.negative_clamp {
                        return Err(Error::NegativeEntry { row: i, col: j, value: v });
                    }
                    entries[(i, j)] = 0.0;
                } else {
                    entries[(i, j)] = v;
                }
            }
        }
        for i in 0..n {
            let deviation = entries.row(i).sum() - 1.0;
            if deviation.abs() > tol.row_sum {
                return Err(Error::RowSumViolation { row: i, deviation });
            }
        }
        Ok(TransitionMatrix { labels, entries })
    }

    /// Validate an existing nalgebra matrix.
    pub fn from_matrix(m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NonSquare { rows: m.nrows(), row: 0, cols: m.ncols() });
        }
        let rows: Vec<Vec<f64>> = (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
        Self::validate(&rows)
    }

    /// Rows are renormalised; only for matrices that are stochastic up to
    /// rounding by construction.
    pub(crate) fn from_stochastic(labels: Vec<String>, mut entries: DMatrix<f64>) -> Self {
        for i in 0..entries.nrows() {
            for v in entries.row_mut(i).iter_mut() {
                if *v < 0.0 {
                    *v = 0.0;
                }
            }
            let s = entries.row(i).sum();
            if s > 0.0 {
                entries.row_mut(i).iter_mut().for_each(|v| *v /= s);
            }
        }
        TransitionMatrix { labels, entries }
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n()).map(|i| self.entries.row(i).iter().copied().collect()).collect()
    }

    /// `P(x, x) >= 1/2` for every state.
    pub fn is_lazy(&self) -> bool {
        (0..self.n()).all(|i| self.entries[(i, i)] >= 0.5)
    }

    /// `P^t` by repeated squaring.
    pub fn power(&self, mut t: usize) -> DMatrix<f64> {
        let n = self.n();
        let mut result = DMatrix::identity(n, n);
        let mut base = self.entries.clone();
        while t > 0 {
            if t & 1 == 1 {
                result = &result * &base;
            }
            t >>= 1;
            if t > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `βI + (1 − β)P`.
    pub fn lazify(&self, beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::InvalidParameter(format!("laziness {beta} outside [0, 1]")));
        }
        let n = self.n();
        let m = DMatrix::identity(n, n) * beta + &self.entries * (1.0 - beta);
        Ok(Self::from_stochastic(self.labels.clone(), m))
    }
}

/// Stationary distribution `π` of a chain with a unique closed class.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution {
    weights: Vec<f64>,
    pi_min: f64,
}

impl StationaryDistribution {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn pi_min(&self) -> f64 {
        self.pi_min
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The matrix `Π` with every row equal to `π`.
    pub fn projector(&self) -> DMatrix<f64> {
        let n = self.weights.len();
        DMatrix::from_fn(n, n, |_, j| self.weights[j])
    }

    fn from_weights(weights: Vec<f64>) -> Self {
        let pi_min = weights.iter().copied().fold(f64::INFINITY, f64::min);
        StationaryDistribution { weights, pi_min }
    }
}

pub fn stationary_distribution(p: &TransitionMatrix) -> Result<StationaryDistribution> {
    stationary_distribution_with(p, &Tolerances::default())
}

/// Solve `π(P − I) = 0`, `Σπ = 1` by state reduction (Grassmann–Taksar–Heyman
/// elimination).
///
/// Each step eliminates a state that still has positive flow to the
/// remaining states; the pivots are sums of nonnegative numbers, so there is
/// no cancellation and tiny stationary masses keep their relative accuracy.
/// Elimination gets stuck exactly when the remaining states are mutually
/// absorbing, i.e. when the chain has more than one closed class.
pub fn stationary_distribution_with(p: &TransitionMatrix, tol: &Tolerances) -> Result<StationaryDistribution> {
    let n = p.n();
    let mut a = p.entries.clone();
    let mut remaining = vec![true; n];
    let mut order: Vec<(usize, f64)> = Vec::with_capacity(n);

    for _ in 1..n {
        let mut pivot = None;
        for k in (0..n).rev().filter(|&k| remaining[k]) {
            let s: f64 = (0..n).filter(|&j| j != k && remaining[j]).map(|j| a[(k, j)]).sum();
            if s > 0.0 {
                pivot = Some((k, s));
                break;
            }
        }
        let (k, s) = pivot.ok_or(Error::NonUniqueStationary)?;
        remaining[k] = false;
        for i in (0..n).filter(|&i| remaining[i]) {
            let aik = a[(i, k)];
            if aik == 0.0 {
                continue;
            }
            let scale = aik / s;
            for j in (0..n).filter(|&j| remaining[j] && j != i) {
                a[(i, j)] += scale * a[(k, j)];
            }
        }
        order.push((k, s));
    }

    let last = (0..n).find(|&k| remaining[k]).expect("one state remains");
    let mut pi = vec![0.0; n];
    pi[last] = 1.0;
    let mut solved = vec![last];
    for &(k, s) in order.iter().rev() {
        let flow: f64 = solved.iter().map(|&j| pi[j] * a[(j, k)]).sum();
        pi[k] = flow / s;
        solved.push(k);
    }
    let total: f64 = pi.iter().sum();
    pi.iter_mut().for_each(|v| *v /= total);

    let residual = stationary_residual(p, &pi);
    if residual > tol.stationary {
        return Err(Error::StationaryResidual { residual });
    }
    Ok(StationaryDistribution::from_weights(pi))
}

/// `‖πP − π‖_∞`.
pub fn stationary_residual(p: &TransitionMatrix, pi: &[f64]) -> f64 {
    let n = p.n();
    (0..n)
        .map(|y| {
            let flow: f64 = (0..n).map(|x| pi[x] * p.entries[(x, y)]).sum();
            (flow - pi[y]).abs()
        })
        .fold(0.0, f64::max)
}

pub fn is_reversible(p: &TransitionMatrix, pi: &StationaryDistribution) -> bool {
    is_reversible_with(p, pi, &Tolerances::default())
}

/// Detailed balance `π(x)P(x,y) = π(y)P(y,x)` up to `tol.reversible`.
///
/// For `π_min = 0` this is only a heuristic for membership in the closure of
/// the reversible chains with full support.
pub fn is_reversible_with(p: &TransitionMatrix, pi: &StationaryDistribution, tol: &Tolerances) -> bool {
    detailed_balance_residual(p, pi) < tol.reversible
}

pub fn detailed_balance_residual(p: &TransitionMatrix, pi: &StationaryDistribution) -> f64 {
    let n = p.n();
    let w = &pi.weights;
    let mut worst: f64 = 0.0;
    for x in 0..n {
        for y in (x + 1)..n {
            worst = worst.max((w[x] * p.entries[(x, y)] - w[y] * p.entries[(y, x)]).abs());
        }
    }
    worst
}

/// Full eigenvalue multiset of a transition matrix plus the quantities
/// derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<Complex64>,
    unit_index: usize,
    beta_star: f64,
    symmetric: bool,
    non_ergodic: bool,
}

impl Spectrum {
    fn from_eigenvalues(mut eigenvalues: Vec<Complex64>, symmetric: bool, tol: &Tolerances) -> Self {
        eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let unit_index = eigenvalues
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (**a - 1.0).norm().total_cmp(&(**b - 1.0).norm()))
            .map(|(i, _)| i)
            .expect("at least one eigenvalue");
        let beta_star = eigenvalues
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != unit_index)
            .map(|(_, z)| z.norm())
            .fold(0.0, f64::max)
            .min(1.0);
        let non_ergodic = beta_star >= 1.0 - tol.eigen;
        Spectrum { eigenvalues, unit_index, beta_star, symmetric, non_ergodic }
    }

    /// Build from an eigenvalue multiset known in closed form, e.g. for
    /// matrices whose numerical eigenvalues are ill-conditioned.
    pub fn from_real(eigenvalues: &[f64], tol: &Tolerances) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = eigenvalues.iter().position(|v| !v.is_finite() || v.abs() > 1.0 + tol.eigen) {
            return Err(Error::InvalidParameter(format!("eigenvalue {} = {}", index, eigenvalues[index])));
        }
        let eig = eigenvalues.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Ok(Spectrum::from_eigenvalues(eig, false, tol))
    }

    /// All `N` eigenvalues, sorted by real part then imaginary part.
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// The `N − 1` eigenvalues left after removing the one nearest to 1.
    pub fn nonunit(&self) -> Vec<Complex64> {
        self.eigenvalues
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != self.unit_index)
            .map(|(_, z)| *z)
            .collect()
    }

    /// The non-unit eigenvalues as reals in increasing order, if every
    /// imaginary part is below the tolerance.
    pub fn nonunit_real(&self, tol: f64) -> Option<Vec<f64>> {
        let rest = self.nonunit();
        if rest.iter().any(|z| z.im.abs() >= tol) {
            return None;
        }
        Some(rest.iter().map(|z| z.re).collect())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.eigenvalues.iter().all(|z| z.im.abs() < tol)
    }

    pub fn beta_star(&self) -> f64 {
        self.beta_star
    }

    pub fn gap(&self) -> f64 {
        1.0 - self.beta_star
    }

    /// `1/(1 − β★)`, infinite when `β★ = 1`.
    pub fn t_rel(&self) -> f64 {
        if self.beta_star >= 1.0 {
            f64::INFINITY
        } else {
            1.0 / (1.0 - self.beta_star)
        }
    }

    /// Whether the eigenvalues came from the symmetric solver.
    pub fn used_symmetric_solver(&self) -> bool {
        self.symmetric
    }

    /// `β★` is within tolerance of 1: a second unit-modulus eigenvalue exists
    /// and the chain does not converge.
    pub fn non_ergodic(&self) -> bool {
        self.non_ergodic
    }

    /// Elementary symmetric polynomials `e_1..e_{N−1}` of the non-unit
    /// eigenvalues (real parts; conjugate pairs cancel the imaginary parts).
    pub fn nonunit_esym(&self) -> Vec<f64> {
        crate::schur::elementary_symmetric_complex(&self.nonunit()).into_iter().map(|z| z.re).collect()
    }
}

pub fn spectrum(p: &TransitionMatrix) -> Result<Spectrum> {
    spectrum_with(p, &Tolerances::default())
}

/// Eigenvalues of `P`.
///
/// Reversible chains with `π_min > 0` are re-solved through the symmetric
/// matrix `D^{1/2} P D^{-1/2}`. Everything else goes through the real Schur
/// form; for reversible chains on that path, imaginary parts below
/// `tol.eigen` are dropped.
pub fn spectrum_with(p: &TransitionMatrix, tol: &Tolerances) -> Result<Spectrum> {
    let pi = stationary_distribution_with(p, tol).ok();
    let reversible = pi.as_ref().is_some_and(|pi| is_reversible_with(p, pi, tol));
    match pi {
        Some(pi) if reversible && pi.pi_min > 0.0 => {
            let values = symmetrized_eigenvalues(p.entries(), &pi)?;
            let eig = values.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
            Ok(Spectrum::from_eigenvalues(eig, true, tol))
        }
        _ => {
            let mut eig = general_eigenvalues(p.entries())?;
            if reversible {
                for z in eig.iter_mut() {
                    if z.im.abs() < tol.eigen {
                        z.im = 0.0;
                    }
                }
            }
            Ok(Spectrum::from_eigenvalues(eig, false, tol))
        }
    }
}

/// Eigenvalues of a matrix self-adjoint in `L²(π)`, via `D^{1/2} M D^{-1/2}`.
pub(crate) fn symmetrized_eigenvalues(m: &DMatrix<f64>, pi: &StationaryDistribution) -> Result<Vec<f64>> {
    let n = m.nrows();
    let root: Vec<f64> = pi.weights.iter().map(|w| w.sqrt()).collect();
    let s = DMatrix::from_fn(n, n, |i, j| {
        let a = root[i] * m[(i, j)] / root[j];
        let b = root[j] * m[(j, i)] / root[i];
        0.5 * (a + b)
    });
    let eig = SymmetricEigen::try_new(s, f64::EPSILON, EIG_MAX_ITER)
        .ok_or_else(|| Error::EigensolverFailure("symmetric QR did not converge".into()))?;
    Ok(eig.eigenvalues.iter().copied().collect())
}

pub(crate) fn general_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    let schur = Schur::try_new(m.clone(), f64::EPSILON, EIG_MAX_ITER)
        .ok_or_else(|| Error::EigensolverFailure("Schur iteration did not converge".into()))?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

fn require_full_support(pi: &StationaryDistribution) -> Result<()> {
    match pi.weights.iter().position(|&w| w <= 0.0) {
        Some(state) => Err(Error::ZeroStationaryMass { state }),
        None => Ok(()),
    }
}

/// `P*(x,y) = π(y)P(y,x)/π(x)`.
pub fn time_reversal(p: &TransitionMatrix, pi: &StationaryDistribution) -> Result<TransitionMatrix> {
    require_full_support(pi)?;
    check_len(p, pi)?;
    let w = &pi.weights;
    let n = p.n();
    let m = DMatrix::from_fn(n, n, |x, y| w[y] * p.entries[(y, x)] / w[x]);
    Ok(TransitionMatrix::from_stochastic(p.labels.clone(), m))
}

/// Additive and multiplicative reversibilizations of a chain.
#[derive(Debug, Clone, PartialEq)]
pub struct Reversibilizations {
    /// `(P + P*)/2`.
    pub additive: TransitionMatrix,
    /// `P* P`.
    pub multiplicative: TransitionMatrix,
    /// Square root of the second-largest eigenvalue of `P* P`; 0 when `N = 1`.
    pub alpha: f64,
}

pub fn reversibilizations(p: &TransitionMatrix, pi: &StationaryDistribution) -> Result<Reversibilizations> {
    let reversal = time_reversal(p, pi)?;
    let additive = (p.entries() + reversal.entries()) * 0.5;
    let multiplicative = reversal.entries() * p.entries();
    let alpha = if p.n() < 2 {
        0.0
    } else {
        let mut values = symmetrized_eigenvalues(&multiplicative, pi)?;
        values.sort_by(|a, b| b.total_cmp(a));
        values[1].clamp(0.0, 1.0).sqrt()
    };
    Ok(Reversibilizations {
        additive: TransitionMatrix::from_stochastic(p.labels.clone(), additive),
        multiplicative: TransitionMatrix::from_stochastic(p.labels.clone(), multiplicative),
        alpha,
    })
}

fn check_len(p: &TransitionMatrix, pi: &StationaryDistribution) -> Result<()> {
    if pi.len() != p.n() {
        return Err(Error::DimensionMismatch { expected: p.n(), got: pi.len() });
    }
    Ok(())
}
