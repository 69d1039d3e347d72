//! Mixing-time analysis for finite Markov chains.
//!
//! Given a transition matrix, `mixbound` computes the stationary law and the
//! spectrum, evaluates exact total-variation and separation profiles, and
//! compares them with a catalogue of spectral mixing-time bounds. It also
//! builds strong stationary dual chains and evaluates the hook Schur
//! polynomials that describe powers of companion matrices.
//!
//! ```
//! use mixbound::{examples, ChainAnalysis};
//!
//! let chain = examples::hypercube(3)?;
//! let analysis = ChainAnalysis::new(chain.matrix)?;
//! assert!((analysis.spectrum.gap() - 1.0 / 3.0).abs() < 1e-12);
//! # Ok::<(), mixbound::Error>(())
//! ```

pub mod analysis;
pub mod bounds;
pub mod chain;
pub mod distance;
pub mod duality;
pub mod error;
pub mod examples;
pub mod io;
pub mod random;
pub mod schur;
pub mod tolerance;

pub use analysis::ChainAnalysis;
pub use chain::{Spectrum, StationaryDistribution, TransitionMatrix};
pub use error::{Error, Result};
pub use tolerance::Tolerances;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/distances.md")]
    mod distances {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/duality.md")]
    mod duality {}
    #[doc = include_str!("../../../book/src/schur.md")]
    mod schur {}
    #[doc = include_str!("../../../book/src/examples.md")]
    mod examples {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
