//! Total variation and separation distances, worst-start distance profiles
//! and exact mixing times by matrix powering.

use nalgebra::DMatrix;

use crate::chain::{StationaryDistribution, TransitionMatrix};
use crate::error::{Error, Result};

const PROB_SUM_TOL: f64 = 1e-10;
/// Profiles stop once the worst-start TV distance drops below this floor.
pub const TV_FLOOR: f64 = 1e-15;

fn check_probability(v: &[f64], name: &str) -> Result<()> {
    if let Some(x) = v.iter().find(|x| !x.is_finite() || **x < -PROB_SUM_TOL) {
        return Err(Error::NotAProbabilityVector(format!("{name} has entry {x}")));
    }
    let s: f64 = v.iter().sum();
    if (s - 1.0).abs() > PROB_SUM_TOL {
        return Err(Error::NotAProbabilityVector(format!("{name} sums to {s}")));
    }
    Ok(())
}

fn check_pair(mu: &[f64], nu: &[f64]) -> Result<()> {
    if mu.len() != nu.len() {
        return Err(Error::DimensionMismatch { expected: mu.len(), got: nu.len() });
    }
    check_probability(mu, "mu")?;
    check_probability(nu, "nu")
}

/// `½ Σ |μ(x) − ν(x)|`.
pub fn tv_distance(mu: &[f64], nu: &[f64]) -> Result<f64> {
    check_pair(mu, nu)?;
    Ok(tv_unchecked(mu.iter().copied(), nu))
}

fn tv_unchecked(mu: impl Iterator<Item = f64>, nu: &[f64]) -> f64 {
    (0.5 * mu.zip(nu).map(|(a, b)| (a - b).abs()).sum::<f64>()).clamp(0.0, 1.0)
}

/// `max_x [1 − μ(x)/π(x)]` over the support of `π`.
///
/// States with `π(x) = 0` contribute `−∞` to the maximum (or nothing, when
/// `μ(x) = 0` too), so they never raise the distance.
pub fn sep_distance(mu: &[f64], pi: &[f64]) -> Result<f64> {
    check_pair(mu, pi)?;
    Ok(sep_unchecked(mu.iter().copied(), pi))
}

fn sep_unchecked(mu: impl Iterator<Item = f64>, pi: &[f64]) -> f64 {
    mu.zip(pi)
        .filter(|(_, &p)| p > 0.0)
        .map(|(m, &p)| 1.0 - m / p)
        .fold(0.0, f64::max)
        .min(1.0)
}

/// Worst-start total variation and separation distances for `t = 0..=horizon`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceProfile {
    pub tv: Vec<f64>,
    pub sep: Vec<f64>,
}

impl DistanceProfile {
    /// Last recorded time.
    pub fn horizon(&self) -> usize {
        self.tv.len().saturating_sub(1)
    }

    pub fn values(&self, kind: DistanceKind) -> &[f64] {
        match kind {
            DistanceKind::Tv => &self.tv,
            DistanceKind::Sep => &self.sep,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceKind {
    Tv,
    Sep,
}

/// Limits on how much matrix powering a profile may do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_states: usize,
    pub max_steps: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_states: 512, max_steps: 1_000_000 }
    }
}

pub fn distance_profile(p: &TransitionMatrix, pi: &StationaryDistribution, t_max: usize) -> Result<DistanceProfile> {
    distance_profile_with(p, pi, t_max, &Budget::default())
}

/// Iterate `M ← MP` from `M = I`, recording the worst-start TV and separation
/// distance at each step. Stops early once TV falls below [`TV_FLOOR`].
pub fn distance_profile_with(
    p: &TransitionMatrix,
    pi: &StationaryDistribution,
    t_max: usize,
    budget: &Budget,
) -> Result<DistanceProfile> {
    check_budget(p, t_max, budget)?;
    Ok(run_profile(p, pi, t_max, |_| false))
}

/// Profile until the worst-start TV distance is at most `tv_target`,
/// failing with `BudgetExceeded` if that takes more than `budget.max_steps`.
pub fn distance_profile_until(
    p: &TransitionMatrix,
    pi: &StationaryDistribution,
    tv_target: f64,
    budget: &Budget,
) -> Result<DistanceProfile> {
    check_budget(p, 0, budget)?;
    let profile = run_profile(p, pi, budget.max_steps, |tv| tv <= tv_target);
    if *profile.tv.last().expect("t = 0 recorded") > tv_target {
        return Err(Error::BudgetExceeded(format!(
            "TV still above {tv_target} after {} steps",
            budget.max_steps
        )));
    }
    Ok(profile)
}

fn check_budget(p: &TransitionMatrix, t_max: usize, budget: &Budget) -> Result<()> {
    if p.n() > budget.max_states {
        return Err(Error::BudgetExceeded(format!("{} states > {}", p.n(), budget.max_states)));
    }
    if t_max > budget.max_steps {
        return Err(Error::BudgetExceeded(format!("horizon {t_max} > {}", budget.max_steps)));
    }
    Ok(())
}

fn run_profile(
    p: &TransitionMatrix,
    pi: &StationaryDistribution,
    t_max: usize,
    done: impl Fn(f64) -> bool,
) -> DistanceProfile {
    let n = p.n();
    let w = pi.weights();
    let mut m = DMatrix::<f64>::identity(n, n);
    let mut tv = Vec::new();
    let mut sep = Vec::new();
    for t in 0..=t_max {
        if t > 0 {
            m = &m * p.entries();
        }
        let (worst_tv, worst_sep) = worst_start(&m, w);
        tv.push(worst_tv);
        sep.push(worst_sep);
        if worst_tv < TV_FLOOR || done(worst_tv) {
            break;
        }
    }
    DistanceProfile { tv, sep }
}

fn worst_start(m: &DMatrix<f64>, pi: &[f64]) -> (f64, f64) {
    let mut worst_tv: f64 = 0.0;
    let mut worst_sep: f64 = 0.0;
    for x in 0..m.nrows() {
        worst_tv = worst_tv.max(tv_unchecked(m.row(x).iter().copied(), pi));
        worst_sep = worst_sep.max(sep_unchecked(m.row(x).iter().copied(), pi));
    }
    (worst_tv, worst_sep)
}

/// First time a profile reaches `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MixingTime {
    pub time: usize,
    /// The condition also holds at every later recorded time.
    pub holds_thereafter: bool,
}

/// Smallest `t` with profile value `≤ ε`.
pub fn exact_mixing_time(profile: &DistanceProfile, epsilon: f64, kind: DistanceKind) -> Result<MixingTime> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::EpsilonOutOfRange { epsilon, range: "(0, 1)" });
    }
    let values = profile.values(kind);
    let last = *values.last().ok_or(Error::HorizonTooShort { horizon: 0, last: 1.0, epsilon })?;
    if last > epsilon {
        return Err(Error::HorizonTooShort { horizon: profile.horizon(), last, epsilon });
    }
    let time = values.iter().position(|&v| v <= epsilon).expect("last value qualifies");
    let holds_thereafter = values[time..].iter().all(|&v| v <= epsilon);
    Ok(MixingTime { time, holds_thereafter })
}

/// `max_{x,y} ‖M(x,·) − M(y,·)‖_TV` for a stochastic matrix `M`.
pub fn dbar(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for x in 0..n {
        for y in (x + 1)..n {
            let d: f64 = 0.5 * (0..n).map(|z| (m[(x, z)] - m[(y, z)]).abs()).sum::<f64>();
            worst = worst.max(d);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::stationary_distribution;

    #[test]
    fn tv_examples() {
        assert_eq!(tv_distance(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        assert_eq!(tv_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert!((tv_distance(&[0.5, 0.5], &[0.25, 0.75]).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn tv_errors() {
        assert!(matches!(tv_distance(&[1.0], &[0.5, 0.5]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(tv_distance(&[0.7, 0.7], &[0.5, 0.5]), Err(Error::NotAProbabilityVector(_))));
        assert!(matches!(tv_distance(&[1.5, -0.5], &[0.5, 0.5]), Err(Error::NotAProbabilityVector(_))));
    }

    #[test]
    fn sep_examples() {
        assert_eq!(sep_distance(&[0.25, 0.75], &[0.25, 0.75]).unwrap(), 0.0);
        assert_eq!(sep_distance(&[1.0, 0.0], &[0.5, 0.5]).unwrap(), 1.0);
        // outside the support of pi nothing is counted
        assert!((sep_distance(&[0.6, 0.4], &[0.0, 1.0]).unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(sep_distance(&[0.0, 1.0], &[0.0, 1.0]).unwrap(), 0.0);
    }

    #[test]
    fn two_state_pure_birth_profile() {
        let p = TransitionMatrix::validate(&[vec![0.5, 0.5], vec![0.0, 1.0]]).unwrap();
        let pi = stationary_distribution(&p).unwrap();
        let prof = distance_profile(&p, &pi, 10).unwrap();
        for (t, &v) in prof.tv.iter().enumerate() {
            assert!((v - 0.5f64.powi(t as i32)).abs() < 1e-15);
            assert!((prof.sep[t] - v).abs() < 1e-15);
        }
        let mt = exact_mixing_time(&prof, 0.25, DistanceKind::Tv).unwrap();
        assert_eq!(mt, MixingTime { time: 2, holds_thereafter: true });
    }

    #[test]
    fn time_zero_is_one_minus_pi_min() {
        let p = TransitionMatrix::validate(&[vec![0.5, 0.5, 0.0], vec![0.25, 0.5, 0.25], vec![0.0, 0.5, 0.5]])
            .unwrap();
        let pi = stationary_distribution(&p).unwrap();
        let prof = distance_profile(&p, &pi, 3).unwrap();
        assert!((prof.tv[0] - (1.0 - pi.pi_min())).abs() < 1e-15);
        let mt = exact_mixing_time(&prof, 1.0 - pi.pi_min(), DistanceKind::Tv).unwrap();
        assert_eq!(mt.time, 0);
    }

    #[test]
    fn horizon_too_short_and_budget() {
        let p = TransitionMatrix::validate(&[vec![0.9, 0.1], vec![0.1, 0.9]]).unwrap();
        let pi = stationary_distribution(&p).unwrap();
        let prof = distance_profile(&p, &pi, 2).unwrap();
        assert!(matches!(exact_mixing_time(&prof, 0.01, DistanceKind::Tv), Err(Error::HorizonTooShort { .. })));
        let small = Budget { max_states: 512, max_steps: 5 };
        assert!(matches!(distance_profile_with(&p, &pi, 6, &small), Err(Error::BudgetExceeded(_))));
        assert!(matches!(distance_profile_until(&p, &pi, 1e-6, &small), Err(Error::BudgetExceeded(_))));
        let tiny = Budget { max_states: 1, max_steps: 5 };
        assert!(matches!(distance_profile_with(&p, &pi, 1, &tiny), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn first_crossing_with_non_monotone_profile() {
        let prof = DistanceProfile { tv: vec![1.0, 0.2, 0.4, 0.1], sep: vec![1.0, 0.5, 0.5, 0.2] };
        let mt = exact_mixing_time(&prof, 0.3, DistanceKind::Tv).unwrap();
        assert_eq!(mt, MixingTime { time: 1, holds_thereafter: false });
    }

    #[test]
    fn early_stop_on_floor() {
        let p = TransitionMatrix::validate(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        let pi = stationary_distribution(&p).unwrap();
        let prof = distance_profile(&p, &pi, 100).unwrap();
        assert_eq!(prof.horizon(), 1);
        assert_eq!(prof.tv[1], 0.0);
    }
}
