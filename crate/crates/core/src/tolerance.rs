/// Numerical tolerances used across the crate.
///
/// Every operation that compares floating-point quantities takes its
/// threshold from here so that a test suite can tighten or relax them in one
/// place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed deviation of a row sum from 1.
    pub row_sum: f64,
    /// Negative entries of at least this magnitude below zero are rejected;
    /// smaller ones are clamped to zero.
    pub negative_clamp: f64,
    /// Max-norm residual allowed in `pi P = pi`.
    pub stationary: f64,
    /// Eigenvalue equality (to 1, to 0, imaginary parts).
    pub eigen: f64,
    /// Detailed-balance residual for reversibility.
    pub reversible: f64,
    /// Negative link entries within this are clamped.
    pub link: f64,
    /// Allowed deviation of the last link row from pi.
    pub link_terminal: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            row_sum: 1e-12,
            negative_clamp: 1e-15,
            stationary: 1e-10,
            eigen: 1e-9,
            reversible: 1e-10,
            link: 1e-9,
            link_terminal: 1e-8,
        }
    }
}
