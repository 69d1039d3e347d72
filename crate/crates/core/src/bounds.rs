//! Closed-form mixing-time bounds and the quantities they are built from.
//!
//! Every bound is a pure function of spectral or structural data. All
//! logarithms are natural. [`evaluate_bounds`] runs the whole catalogue
//! against one chain and reports, for each bound, whether its hypotheses
//! hold; inapplicable bounds are still listed.

use crate::chain::{reversibilizations, StationaryDistribution, TransitionMatrix};
use crate::duality::survival_profile;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;
use crate::analysis::ChainAnalysis;

fn check_eps_half(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 0.5 {
        Ok(())
    } else {
        Err(Error::EpsilonOutOfRange { epsilon, range: "(0, 1/2)" })
    }
}

fn check_eps_unit(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::EpsilonOutOfRange { epsilon, range: "(0, 1)" })
    }
}

/// `log(2ε)^{-1} (t_rel − 1)`, a lower bound on `t_mix(ε)`.
pub fn l2_lower_bound(t_rel: f64, epsilon: f64) -> Result<f64> {
    check_eps_half(epsilon)?;
    if !t_rel.is_finite() {
        return Err(Error::InfiniteRelaxation);
    }
    if t_rel < 1.0 {
        return Err(Error::InvalidParameter(format!("t_rel = {t_rel} < 1")));
    }
    Ok((1.0 / (2.0 * epsilon)).ln() * (t_rel - 1.0))
}

/// `⌈(½ log π_min^{-1} + log(2ε)^{-1}) t_rel⌉` for reversible chains.
pub fn l2_upper_bound(t_rel: f64, pi_min: f64, epsilon: f64) -> Result<f64> {
    check_eps_half(epsilon)?;
    if pi_min <= 0.0 {
        return Err(Error::ZeroPiMin);
    }
    if !t_rel.is_finite() {
        return Err(Error::InfiniteRelaxation);
    }
    Ok(((0.5 * (1.0 / pi_min).ln() + (1.0 / (2.0 * epsilon)).ln()) * t_rel).ceil())
}

/// `2N t_rel log t_rel + 4(1 + log 2) N t_rel + 2(log ε^{-1} − 1) t_rel`,
/// valid for every chain.
pub fn main_upper_bound(n: usize, t_rel: f64, epsilon: f64) -> Result<f64> {
    check_eps_unit(epsilon)?;
    if !t_rel.is_finite() {
        return Err(Error::InfiniteRelaxation);
    }
    if t_rel < 1.0 || n == 0 {
        return Err(Error::InvalidParameter(format!("t_rel = {t_rel}, N = {n}")));
    }
    let n = n as f64;
    Ok(2.0 * n * t_rel * t_rel.ln()
        + 4.0 * (1.0 + std::f64::consts::LN_2) * n * t_rel
        + 2.0 * ((1.0 / epsilon).ln() - 1.0) * t_rel)
}

/// `2(N + 2 log ε^{-1} − 1 + √(2(N−2) log ε^{-1})) t_rel` for chains in the
/// closure of the reversible ones; the leading 2 is dropped when every
/// eigenvalue is nonnegative.
pub fn rev_sharpen_upper_bound(n: usize, t_rel: f64, epsilon: f64, nonneg_spectrum: bool) -> Result<f64> {
    check_eps_unit(epsilon)?;
    if n < 2 {
        return Err(Error::InvalidParameter("N >= 2 required".into()));
    }
    if !t_rel.is_finite() {
        return Err(Error::InfiniteRelaxation);
    }
    let log_inv = (1.0 / epsilon).ln();
    let n = n as f64;
    let core = n + 2.0 * log_inv - 1.0 + (2.0 * (n - 2.0).max(0.0) * log_inv).sqrt();
    let factor = if nonneg_spectrum { 1.0 } else { 2.0 };
    Ok(factor * core * t_rel)
}

/// Value of the worst-start TV bound at a fixed time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TvBound {
    /// The sum itself (may exceed 1).
    pub raw: f64,
    /// `min(raw, 1)`.
    pub value: f64,
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// `(N−1) C(t, N−1) Σ_{k=0}^{N−2} C(N−2, k) β★^{t−k}/(t−k)` for `t ≥ N − 1`,
/// evaluated in the log domain.
pub fn tv_bound_at_time(n: usize, beta_star: f64, t: usize) -> Result<TvBound> {
    if n == 0 {
        return Err(Error::InvalidParameter("N >= 1 required".into()));
    }
    if t + 1 < n {
        return Err(Error::TimeTooSmall { t, min: n - 1 });
    }
    if !(0.0..1.0).contains(&beta_star) {
        return Err(Error::InvalidParameter(format!("beta_star = {beta_star} outside [0, 1)")));
    }
    if n == 1 || beta_star == 0.0 {
        return Ok(TvBound { raw: 0.0, value: 0.0 });
    }
    let prefix = ((n - 1) as f64).ln() + ln_binomial(t, n - 1);
    let log_beta = beta_star.ln();
    let logs: Vec<f64> = (0..=n - 2)
        .map(|k| prefix + ln_binomial(n - 2, k) + (t - k) as f64 * log_beta - ((t - k) as f64).ln())
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let raw = top.exp() * logs.iter().map(|l| (l - top).exp()).sum::<f64>();
    Ok(TvBound { raw, value: raw.min(1.0) })
}

/// `P(τ_1 + … + τ_{N−1} > t)` for independent geometrics with holding
/// probabilities `betas` (`N − 1` of them), in `O(N t)`.
pub fn sst_tail(betas: &[f64], t: usize) -> Result<f64> {
    if let Some(index) = betas.iter().position(|b| !(0.0..1.0).contains(b)) {
        return Err(Error::BetaOutOfRange { index, value: betas[index] });
    }
    Ok(*survival_profile(betas, t).last().expect("t = 0 recorded"))
}

/// Chernoff bound `exp(−δ²(1−β★)t/2)` with `(1 − δ)(1 − β★)t = N − 2`,
/// bounding the negative-binomial tail and hence `sst_tail` when every
/// `β_j ≤ β★`.
pub fn chernoff_negative_binomial_bound(n: usize, gap: f64, t: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter("N >= 2 required".into()));
    }
    let mean = gap * t as f64;
    let target = (n - 2) as f64;
    if mean < target {
        return Err(Error::DeltaNegative);
    }
    if mean == 0.0 {
        return Ok(1.0);
    }
    let delta = 1.0 - target / mean;
    Ok((-delta * delta * mean / 2.0).exp())
}

/// Largest state space [`cheeger_constant`] will enumerate.
pub const CHEEGER_MAX_STATES: usize = 24;

/// `Φ = min_{0 < π(S) ≤ 1/2} Q(S, Sᶜ)/π(S)` by exhaustive enumeration.
///
/// Stationarity gives `Q(S, Sᶜ) = Q(Sᶜ, S)`, so each complementary pair is
/// visited once: subsets avoiding the last state, walked in Gray-code order
/// with `π(S)` and the boundary flow updated incrementally.
pub fn cheeger_constant(p: &TransitionMatrix, pi: &StationaryDistribution) -> Result<f64> {
    let n = p.n();
    if n > CHEEGER_MAX_STATES {
        return Err(Error::StateSpaceTooLarge { n, limit: CHEEGER_MAX_STATES });
    }
    if n < 2 {
        return Ok(f64::INFINITY);
    }
    let w = pi.weights();
    // per state: (other state, flow out to it, flow in from it), nonzero only
    let neighbours: Vec<Vec<(usize, f64, f64)>> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| u != v)
                .map(|u| (u, w[v] * p.get(v, u), w[u] * p.get(u, v)))
                .filter(|&(_, out, inn)| out > 0.0 || inn > 0.0)
                .collect()
        })
        .collect();
    let half = 0.5 + 1e-12;
    let mut inside = vec![false; n];
    let mut mass = 0.0;
    let mut boundary = 0.0;
    let mut best = f64::INFINITY;
    let subsets: u64 = 1 << (n - 1);
    for step in 1..subsets {
        let v = step.trailing_zeros() as usize;
        let entering = !inside[v];
        let mut into_v = 0.0;
        let mut out_of_v = 0.0;
        for &(u, out, inn) in &neighbours[v] {
            if inside[u] {
                into_v += inn;
            } else {
                out_of_v += out;
            }
        }
        if entering {
            boundary += out_of_v - into_v;
            mass += w[v];
        } else {
            // v leaves: edges from v to outside vanish, edges from S into v appear
            boundary += into_v - out_of_v;
            mass -= w[v];
        }
        inside[v] = entering;
        let complement = 1.0 - mass;
        let boundary = boundary.max(0.0);
        if mass > 0.0 && mass <= half {
            best = best.min(boundary / mass);
        }
        if complement > 0.0 && complement <= half {
            best = best.min(boundary / complement);
        }
    }
    Ok(best)
}

/// `⌈(2/Φ²) log(1/(ε π_min))⌉` for lazy chains.
pub fn cheeger_lazy_upper_bound(phi: f64, pi_min: f64, epsilon: f64) -> Result<f64> {
    check_eps_unit(epsilon)?;
    if pi_min <= 0.0 {
        return Err(Error::ZeroPiMin);
    }
    if phi <= 0.0 {
        return Err(Error::ZeroPhi);
    }
    Ok((2.0 / (phi * phi) * (1.0 / (epsilon * pi_min)).ln()).ceil())
}

/// `⌈(1/(1−α)) log(1/(2ε√π_min))⌉`.
pub fn multiplicative_upper_bound(alpha: f64, pi_min: f64, epsilon: f64) -> Result<f64> {
    check_eps_half(epsilon)?;
    if pi_min <= 0.0 {
        return Err(Error::ZeroPiMin);
    }
    if alpha >= 1.0 {
        return Err(Error::AlphaOne);
    }
    Ok(((1.0 / (2.0 * epsilon * pi_min.sqrt())).ln() / (1.0 - alpha)).ceil())
}

/// First `t ≥ N − 1` at which [`tv_bound_at_time`] is at most `ε`.
///
/// The search stops at the main bound, by which point the sum is known to be
/// below `ε`.
pub fn spectral_tv_mixing_bound(n: usize, beta_star: f64, epsilon: f64) -> Result<f64> {
    check_eps_unit(epsilon)?;
    if beta_star >= 1.0 {
        return Err(Error::InfiniteRelaxation);
    }
    let start = n.saturating_sub(1);
    let t_rel = 1.0 / (1.0 - beta_star);
    let cap = main_upper_bound(n, t_rel, epsilon)?.floor() as usize;
    for t in start..=cap.max(start) {
        if tv_bound_at_time(n, beta_star, t)?.raw <= epsilon {
            return Ok(t as f64);
        }
    }
    Ok(cap as f64)
}

/// First `t` with `P(τ_1 + … + τ_{N−1} > t) ≤ ε`; for a spectrum with
/// negative eigenvalues the tail of `P²` (holding probabilities `β_j²`) is
/// used and the time doubled.
pub fn sst_mixing_bound(betas: &[f64], epsilon: f64, max_steps: usize) -> Result<f64> {
    check_eps_unit(epsilon)?;
    let squared = betas.iter().any(|&b| b < 0.0);
    let holding: Vec<f64> = if squared { betas.iter().map(|b| b * b).collect() } else { betas.to_vec() };
    if let Some(index) = holding.iter().position(|b| !(0.0..1.0).contains(b)) {
        return Err(Error::BetaOutOfRange { index, value: holding[index] });
    }
    let mut found = None;
    let mut unabsorbed = vec![0.0; holding.len() + 1];
    unabsorbed[0] = 1.0;
    let n = holding.len() + 1;
    for t in 0..=max_steps {
        if t > 0 {
            for j in (0..n).rev() {
                let stay = if j + 1 == n { 1.0 } else { holding[j] };
                let arrive = if j > 0 { unabsorbed[j - 1] * (1.0 - holding[j - 1]) } else { 0.0 };
                unabsorbed[j] = unabsorbed[j] * stay + arrive;
            }
        }
        let tail: f64 = unabsorbed[..n - 1].iter().sum();
        if tail <= epsilon {
            found = Some(t);
            break;
        }
    }
    let t = found.ok_or_else(|| Error::BudgetExceeded(format!("tail above {epsilon} after {max_steps} steps")))?;
    Ok(if squared { 2.0 * t as f64 } else { t as f64 })
}

/// Which side of `t_mix` a bound sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

/// One bound evaluated on one chain.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub kind: BoundKind,
    pub epsilon: f64,
    /// Time steps; `+∞` when the bound carries no information.
    pub value: f64,
    pub hypotheses_met: bool,
    pub failed_hypotheses: Vec<String>,
}

impl BoundReport {
    fn new(name: &'static str, kind: BoundKind, epsilon: f64) -> Self {
        BoundReport { name, kind, epsilon, value: f64::INFINITY, hypotheses_met: true, failed_hypotheses: vec![] }
    }

    fn fail(&mut self, why: impl Into<String>) {
        self.hypotheses_met = false;
        self.failed_hypotheses.push(why.into());
    }

    fn settle(mut self, value: Result<f64>) -> Self {
        match value {
            Ok(v) => self.value = v,
            Err(e) => {
                if self.kind == BoundKind::Lower {
                    self.value = 0.0;
                }
                self.fail(e.to_string());
            }
        }
        self
    }
}

/// Max steps the strong-stationary-time search may take.
pub const SST_SEARCH_LIMIT: usize = 10_000_000;

/// Evaluate every bound in the catalogue on an analysed chain.
pub fn evaluate_bounds(analysis: &ChainAnalysis, epsilon: f64) -> Vec<BoundReport> {
    let tol = Tolerances::default();
    let n = analysis.matrix.n();
    let spectrum = &analysis.spectrum;
    let t_rel = spectrum.t_rel();
    let pi_min = analysis.stationary.pi_min();
    let reversible = analysis.reversible;
    let real_betas = spectrum.nonunit_real(tol.eigen);
    let nonneg = real_betas.as_ref().is_some_and(|b| b.iter().all(|&x| x >= -tol.eigen));
    let mut out = Vec::new();

    let mut r = BoundReport::new("l2_lower", BoundKind::Lower, epsilon);
    if !reversible {
        r.fail("not reversible");
    }
    out.push(r.settle(l2_lower_bound(t_rel, epsilon)));

    let mut r = BoundReport::new("l2_upper", BoundKind::Upper, epsilon);
    if !reversible {
        r.fail("not reversible");
    }
    out.push(r.settle(l2_upper_bound(t_rel, pi_min, epsilon)));

    out.push(BoundReport::new("main_upper", BoundKind::Upper, epsilon).settle(main_upper_bound(n, t_rel, epsilon)));

    let mut r = BoundReport::new("rev_sharpen_upper", BoundKind::Upper, epsilon);
    if !reversible {
        r.fail("not reversible");
    }
    out.push(r.settle(rev_sharpen_upper_bound(n, t_rel, epsilon, nonneg)));

    out.push(
        BoundReport::new("spectral_tv_upper", BoundKind::Upper, epsilon)
            .settle(spectral_tv_mixing_bound(n, spectrum.beta_star(), epsilon)),
    );

    let mut r = BoundReport::new("sst_upper", BoundKind::Upper, epsilon);
    if !reversible {
        r.fail("not reversible");
    }
    let sst = match &real_betas {
        None => Err(Error::NegativeSpectrum { re: f64::NAN, im: f64::NAN }),
        Some(_) if spectrum.non_ergodic() => Err(Error::InfiniteRelaxation),
        Some(b) => sst_mixing_bound(&b.iter().map(|x| x.clamp(-1.0, 1.0)).collect::<Vec<_>>(), epsilon, SST_SEARCH_LIMIT),
    };
    out.push(r.settle(sst));

    let mut r = BoundReport::new("cheeger_lazy_upper", BoundKind::Upper, epsilon);
    if !analysis.matrix.is_lazy() {
        r.fail("not lazy");
    }
    let cheeger = if pi_min > 0.0 {
        analysis.cheeger().and_then(|phi| cheeger_lazy_upper_bound(phi, pi_min, epsilon))
    } else {
        Err(Error::ZeroPiMin)
    };
    out.push(r.settle(cheeger));

    let alpha = reversibilizations(&analysis.matrix, &analysis.stationary).map(|r| r.alpha);
    out.push(
        BoundReport::new("multiplicative_upper", BoundKind::Upper, epsilon)
            .settle(alpha.and_then(|a| multiplicative_upper_bound(a, pi_min, epsilon))),
    );
    out
}
