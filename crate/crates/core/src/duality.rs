//! Strong stationary duality with a pure-birth chain.
//!
//! For a reversible chain `P` with nonnegative eigenvalues
//! `0 ≤ β_1 ≤ … ≤ β_{N−1} < 1`, the pure-birth chain `Q` that holds at `j`
//! with probability `β_j` and otherwise steps to `j + 1` is a strong
//! stationary dual. The link `Λ` has rows `μ_1 = μ, μ_2, …, μ_N = π` (the
//! local equilibria) satisfying
//!
//! ```text
//! μ_j P = β_j μ_j + (1 − β_j) μ_{j+1}
//! ```
//!
//! so `ΛP = QΛ`, and the absorption time of `Q` started at 1 is a strong
//! stationary time for `P` started from `μ`.

use nalgebra::DMatrix;

use crate::chain::{Spectrum, StationaryDistribution, TransitionMatrix};
use crate::distance::tv_distance;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Pure-birth chain on `1..=N` with holding probabilities
/// `β_1 ≤ … ≤ β_{N−1}` and absorbing state `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureBirthChain {
    betas: Vec<f64>,
}

impl PureBirthChain {
    pub fn new(betas: Vec<f64>) -> Result<Self> {
        check_betas(&betas)?;
        if let Some(index) = betas.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::NotSorted { index: index + 1 });
        }
        Ok(PureBirthChain { betas })
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    /// Number of states, `betas.len() + 1`.
    pub fn n(&self) -> usize {
        self.betas.len() + 1
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut q = DMatrix::zeros(n, n);
        for (j, &b) in self.betas.iter().enumerate() {
            q[(j, j)] = b;
            q[(j, j + 1)] = 1.0 - b;
        }
        q[(n - 1, n - 1)] = 1.0;
        q
    }

    pub fn to_transition_matrix(&self) -> TransitionMatrix {
        let labels = (1..=self.n()).map(|i| i.to_string()).collect();
        TransitionMatrix::from_stochastic(labels, self.matrix())
    }

    /// `Q^t(1, N)` for `t = 0..=t_max`.
    pub fn absorption_profile(&self, t_max: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(t_max + 1);
        forward_masses(&self.betas, t_max, |_, v| out.push(*v.last().expect("N >= 1")));
        out
    }

    /// `1 − Q^t(1, N)`, summed over the unabsorbed states rather than
    /// obtained by subtraction.
    pub fn survival_profile(&self, t_max: usize) -> Vec<f64> {
        survival_profile(&self.betas, t_max)
    }
}

fn check_betas(betas: &[f64]) -> Result<()> {
    match betas.iter().position(|b| !(0.0..1.0).contains(b)) {
        Some(index) => Err(Error::BetaOutOfRange { index, value: betas[index] }),
        None => Ok(()),
    }
}

/// Run the forward recursion `v_{t+1}(j) = v_t(j) β_j + v_t(j−1)(1 − β_{j−1})`
/// from `v_0 = δ_1`, calling `visit(t, v_t)` for `t = 0..=t_max`. The betas
/// need not be sorted.
pub(crate) fn forward_masses(betas: &[f64], t_max: usize, mut visit: impl FnMut(usize, &[f64])) {
    let n = betas.len() + 1;
    let mut v = vec![0.0; n];
    v[0] = 1.0;
    visit(0, &v);
    for t in 1..=t_max {
        for j in (0..n).rev() {
            let stay = if j + 1 == n { 1.0 } else { betas[j] };
            let arrive = if j > 0 { v[j - 1] * (1.0 - betas[j - 1]) } else { 0.0 };
            v[j] = v[j] * stay + arrive;
        }
        visit(t, &v);
    }
}

/// `P(τ_1 + … + τ_{N−1} > t)` for independent geometric `τ_j` with
/// `P(τ_j = s) = β_j^{s−1}(1 − β_j)`, as the mass of `δ_1 Q^t` not yet
/// absorbed. Summing the unabsorbed states avoids the cancellation in
/// `1 − Q^t(1, N)`.
pub(crate) fn survival_profile(betas: &[f64], t_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(t_max + 1);
    forward_masses(betas, t_max, |_, v| out.push(v[..v.len() - 1].iter().sum()));
    out
}

pub fn build_pure_birth(betas: Vec<f64>) -> Result<PureBirthChain> {
    PureBirthChain::new(betas)
}

/// `Q^t(1, N)` for `t = 0..=t_max`; `1 − profile` is the strong stationary
/// time tail.
pub fn dual_absorption_profile(q: &PureBirthChain, t_max: usize) -> Vec<f64> {
    q.absorption_profile(t_max)
}

/// The intertwining link: `N` probability vectors over the chain's states.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkMatrix {
    rows: DMatrix<f64>,
}

impl LinkMatrix {
    pub fn rows(&self) -> &DMatrix<f64> {
        &self.rows
    }

    /// Local equilibrium `μ_j` (0-based `j`).
    pub fn row(&self, j: usize) -> Vec<f64> {
        self.rows.row(j).iter().copied().collect()
    }

    pub fn n(&self) -> usize {
        self.rows.nrows()
    }
}

/// Sorted non-unit eigenvalues, checked to lie in `[0, 1 − tol)`.
pub fn dual_betas(spectrum: &Spectrum, tol: &Tolerances) -> Result<Vec<f64>> {
    let rest = spectrum.nonunit();
    if let Some(z) = rest.iter().find(|z| z.im.abs() >= tol.eigen || z.re < -tol.eigen) {
        return Err(Error::NegativeSpectrum { re: z.re, im: z.im });
    }
    let mut betas: Vec<f64> = rest.iter().map(|z| z.re.max(0.0)).collect();
    betas.sort_by(f64::total_cmp);
    if let Some(&beta) = betas.iter().find(|&&b| b >= 1.0 - tol.eigen) {
        return Err(Error::DegenerateGap { beta });
    }
    Ok(betas)
}

pub fn build_link(
    p: &TransitionMatrix,
    pi: &StationaryDistribution,
    spectrum: &Spectrum,
    mu: &[f64],
) -> Result<(LinkMatrix, PureBirthChain)> {
    build_link_with(p, pi, spectrum, mu, &Tolerances::default())
}

/// Build `Λ` from `μ` by the forward recursion
/// `μ_{j+1} = (μ_j P − β_j μ_j)/(1 − β_j)` and return it with the dual `Q`.
///
/// The eigenvalues must be real and nonnegative. Nonnegativity of the link
/// is what reversibility buys; it is checked rather than assumed. Negative
/// entries no worse than `tol.link` are clamped (and the row renormalised);
/// anything larger is reported as `NegativeLinkEntry`.
pub fn build_link_with(
    p: &TransitionMatrix,
    pi: &StationaryDistribution,
    spectrum: &Spectrum,
    mu: &[f64],
    tol: &Tolerances,
) -> Result<(LinkMatrix, PureBirthChain)> {
    let betas = dual_betas(spectrum, tol)?;
    build_link_from_betas(p, pi, betas, mu, tol)
}

/// As [`build_link_with`], with the non-unit eigenvalues supplied directly,
/// e.g. from a closed form when the numerical spectrum is ill-conditioned.
pub fn build_link_from_betas(
    p: &TransitionMatrix,
    pi: &StationaryDistribution,
    mut betas: Vec<f64>,
    mu: &[f64],
    tol: &Tolerances,
) -> Result<(LinkMatrix, PureBirthChain)> {
    let n = p.n();
    if mu.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: mu.len() });
    }
    if betas.len() + 1 != n {
        return Err(Error::DimensionMismatch { expected: n - 1, got: betas.len() });
    }
    tv_distance(mu, pi.weights())?;
    if let Some(&b) = betas.iter().find(|&&b| b < 0.0 || b.is_nan()) {
        return Err(Error::NegativeSpectrum { re: b, im: 0.0 });
    }
    if let Some(&beta) = betas.iter().find(|&&b| b >= 1.0 - tol.eigen) {
        return Err(Error::DegenerateGap { beta });
    }
    betas.sort_by(f64::total_cmp);
    let rows = link_by_recursion(p, &betas, mu);
    let link = finish_link(rows, pi, tol)?;
    Ok((link, PureBirthChain::new(betas)?))
}

/// The raw recursion, without any checks.
pub fn link_by_recursion(p: &TransitionMatrix, betas: &[f64], mu: &[f64]) -> DMatrix<f64> {
    let n = p.n();
    let mut rows = DMatrix::zeros(betas.len() + 1, n);
    for (x, &m) in mu.iter().enumerate() {
        rows[(0, x)] = m;
    }
    for (j, &b) in betas.iter().enumerate() {
        let current = rows.row(j).into_owned();
        let pushed = &current * p.entries();
        let next = (pushed - current * b) / (1.0 - b);
        rows.set_row(j + 1, &next);
    }
    rows
}

/// The product form `Λ(j, ·) = μ Π_{i<j} (P − β_i I)/(1 − β_i)`, multiplying
/// out the matrix product before applying it to `μ`.
pub fn link_by_product(p: &TransitionMatrix, betas: &[f64], mu: &[f64]) -> DMatrix<f64> {
    let n = p.n();
    let mu = DMatrix::from_row_slice(1, n, mu);
    let mut rows = DMatrix::zeros(betas.len() + 1, n);
    rows.set_row(0, &mu.row(0));
    let mut product = DMatrix::<f64>::identity(n, n);
    for (j, &b) in betas.iter().enumerate() {
        let factor = (p.entries() - DMatrix::<f64>::identity(n, n) * b) / (1.0 - b);
        product *= factor;
        let row = &mu * &product;
        rows.set_row(j + 1, &row.row(0));
    }
    rows
}

fn finish_link(mut rows: DMatrix<f64>, pi: &StationaryDistribution, tol: &Tolerances) -> Result<LinkMatrix> {
    let last = rows.nrows() - 1;
    let deviation = (0..rows.ncols()).map(|x| (rows[(last, x)] - pi.weights()[x]).abs()).fold(0.0, f64::max);
    if deviation > tol.link_terminal {
        return Err(Error::LinkTerminalMismatch { deviation });
    }
    for j in 0..rows.nrows() {
        for x in 0..rows.ncols() {
            let v = rows[(j, x)];
            if v < -tol.link {
                return Err(Error::NegativeLinkEntry { row: j, col: x, value: v });
            }
        }
        let mut row = rows.row_mut(j);
        row.iter_mut().for_each(|v| *v = v.max(0.0));
        let s = row.sum();
        row /= s;
    }
    Ok(LinkMatrix { rows })
}

/// `‖ΛP − QΛ‖_max`.
pub fn verify_intertwining(link: &LinkMatrix, p: &TransitionMatrix, q: &DMatrix<f64>) -> Result<f64> {
    let (k, n) = link.rows.shape();
    if n != p.n() {
        return Err(Error::DimensionMismatch { expected: p.n(), got: n });
    }
    if q.nrows() != k || q.ncols() != k {
        return Err(Error::DimensionMismatch { expected: k, got: q.nrows() });
    }
    Ok((&link.rows * p.entries() - q * &link.rows).amax())
}

/// Per-time record of the sharpness check.
#[derive(Debug, Clone, PartialEq)]
pub struct SharpnessRow {
    pub t: usize,
    /// `P^t(1, N)`.
    pub hit: f64,
    /// `Q^t(1, N)`.
    pub absorbed: f64,
    /// `‖P^t(1, ·) − π‖_TV`.
    pub tv: f64,
    /// `P(τ > t)`, computed without cancellation.
    pub tail: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SharpnessReport {
    pub pi_last: f64,
    pub rows: Vec<SharpnessRow>,
    /// `max_t |P^t(1, N) − Q^t(1, N) π(N)|`.
    pub identity_residual: f64,
    /// `min_t TV / tail` over times with a nonzero tail; at least `π(N)`.
    pub worst_ratio: f64,
    /// Times where `π(N) tail ≤ TV ≤ tail` failed by more than `slack`.
    pub violations: Vec<usize>,
}

/// Check, for a skip-free chain with nonnegative spectrum (in practice a
/// birth-death chain) started
/// at its first state, that `P^t(1, N) = Q^t(1, N) π(N)` and
///
/// ```text
/// π(N)(1 − Q^t(1,N)) ≤ ‖P^t(1,·) − π‖_TV ≤ 1 − Q^t(1,N)
/// ```
///
/// for `t = 0..=t_max`, so the strong stationary time bound is off by at most
/// a factor `1/π(N)`. `slack` absorbs rounding in the two inequalities.
pub fn birth_death_sharpness_check(
    p: &TransitionMatrix,
    pi: &StationaryDistribution,
    spectrum: &Spectrum,
    t_max: usize,
    slack: f64,
) -> Result<SharpnessReport> {
    let tol = Tolerances::default();
    let n = p.n();
    for i in 0..n {
        for k in (i + 2)..n {
            if p.get(i, k) > 0.0 {
                return Err(Error::NotSkipFree { row: i, col: k });
            }
        }
    }
    let betas = dual_betas(spectrum, &tol)?;
    let absorbed = PureBirthChain::new(betas.clone())?.absorption_profile(t_max);
    let tails = survival_profile(&betas, t_max);
    let pi_last = pi.weights()[n - 1];

    let mut row = DMatrix::<f64>::zeros(1, n);
    row[(0, 0)] = 1.0;
    let mut rows = Vec::with_capacity(t_max + 1);
    let mut identity_residual: f64 = 0.0;
    let mut worst_ratio = f64::INFINITY;
    let mut violations = Vec::new();
    for t in 0..=t_max {
        if t > 0 {
            row = &row * p.entries();
        }
        let dist: Vec<f64> = row.iter().copied().collect();
        let tv = 0.5 * dist.iter().zip(pi.weights()).map(|(a, b)| (a - b).abs()).sum::<f64>();
        let hit = dist[n - 1];
        let tail = tails[t];
        identity_residual = identity_residual.max((hit - absorbed[t] * pi_last).abs());
        if tail > 0.0 {
            worst_ratio = worst_ratio.min(tv / tail);
        }
        if tv > tail + slack || pi_last * tail > tv + slack {
            violations.push(t);
        }
        rows.push(SharpnessRow { t, hit, absorbed: absorbed[t], tv, tail });
    }
    Ok(SharpnessReport { pi_last, rows, identity_residual, worst_ratio, violations })
}
