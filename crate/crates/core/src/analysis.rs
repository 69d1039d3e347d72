//! One-shot analysis of a chain: stationary law, spectrum and reversibility.

use std::cell::OnceCell;

use crate::bounds::cheeger_constant;
use crate::chain::{self, Spectrum, StationaryDistribution, TransitionMatrix};
use crate::error::Result;
use crate::tolerance::Tolerances;

/// Everything the bound catalogue needs to know about a chain.
#[derive(Debug, Clone)]
pub struct ChainAnalysis {
    pub matrix: TransitionMatrix,
    pub stationary: StationaryDistribution,
    pub spectrum: Spectrum,
    pub reversible: bool,
    cheeger: OnceCell<Result<f64>>,
}

impl ChainAnalysis {
    pub fn new(matrix: TransitionMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, &Tolerances::default())
    }

    pub fn with_tolerances(matrix: TransitionMatrix, tol: &Tolerances) -> Result<Self> {
        let stationary = chain::stationary_distribution_with(&matrix, tol)?;
        let reversible = chain::is_reversible_with(&matrix, &stationary, tol);
        let spectrum = chain::spectrum_with(&matrix, tol)?;
        Ok(ChainAnalysis { matrix, stationary, spectrum, reversible, cheeger: OnceCell::new() })
    }

    /// The conductance `Φ`, enumerated on first use.
    pub fn cheeger(&self) -> Result<f64> {
        self.cheeger.get_or_init(|| cheeger_constant(&self.matrix, &self.stationary)).clone()
    }

    /// Replace the computed spectrum by one known in closed form.
    pub fn with_known_spectrum(mut self, eigenvalues: &[f64], tol: &Tolerances) -> Result<Self> {
        self.spectrum = Spectrum::from_real(eigenvalues, tol)?;
        Ok(self)
    }
}
