use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mixbound::examples::{self, ExampleChain};
use mixbound::random::{random_chain, random_lazy_reversible};
use mixbound::{Tolerances, TransitionMatrix};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    PureBirth,
    BiasedWalk,
    StickyWalk,
    SkipFree,
    Hypercube,
    Random,
    RandomLazy,
}

/// Parameters shared by every example generator; each uses the ones it needs.
#[derive(Debug, Clone, Args)]
pub struct ExampleParams {
    /// Number of states (hypercube: dimension)
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Holding probability (pure-birth, skip-free)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Left, hold and right probabilities (biased-walk)
    #[arg(long, default_value_t = 0.2)]
    pub p: f64,
    #[arg(long, default_value_t = 0.2)]
    pub q: f64,
    #[arg(long, default_value_t = 0.6)]
    pub r: f64,
    /// Seed for the random generators
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge density for random-lazy
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
}

impl ExampleParams {
    pub fn build(&self, name: ExampleName) -> Result<ExampleChain, CliError> {
        let chain = match name {
            ExampleName::PureBirth => examples::pure_birth(self.n, self.beta.unwrap_or(0.5))?,
            ExampleName::BiasedWalk => examples::biased_walk(self.n, self.p, self.q, self.r)?,
            ExampleName::StickyWalk => examples::sticky_walk(self.n)?,
            ExampleName::SkipFree => examples::skip_free(self.n, self.beta.unwrap_or(0.0))?,
            ExampleName::Hypercube => examples::hypercube(self.n)?,
            ExampleName::Random | ExampleName::RandomLazy => {
                if self.n == 0 {
                    return Err(CliError::Usage("--n must be positive".into()));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let (name, matrix) = if name == ExampleName::Random {
                    ("random", random_chain(&mut rng, self.n)?)
                } else {
                    ("random-lazy", random_lazy_reversible(&mut rng, self.n, self.density)?)
                };
                ExampleChain {
                    name,
                    matrix,
                    known_spectrum: None,
                    known_pi: None,
                    reversible: name == "random-lazy",
                    notes: vec![format!("seed {}", self.seed)],
                }
            }
        };
        Ok(chain)
    }
}

/// Where a command's chain comes from: a matrix file or a generator.
#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Matrix file (CSV or JSON); `-` reads standard input
    #[arg(conflicts_with = "example")]
    pub input: Option<PathBuf>,
    /// Generate a standard chain instead of reading one
    #[arg(long, value_enum)]
    pub example: Option<ExampleName>,
    #[command(flatten)]
    pub params: ExampleParams,
}

/// A loaded chain plus whatever closed-form facts came with it.
pub struct Loaded {
    pub matrix: TransitionMatrix,
    pub known_spectrum: Option<Vec<f64>>,
}

impl Source {
    pub fn load(&self, tol: &Tolerances) -> Result<Loaded, CliError> {
        match (&self.input, self.example) {
            (_, Some(name)) => {
                let ex = self.params.build(name)?;
                Ok(Loaded { matrix: ex.matrix, known_spectrum: ex.known_spectrum })
            }
            (Some(path), None) => {
                let text = read_input(path)?;
                Ok(Loaded { matrix: mixbound::io::parse_matrix(&text, tol)?, known_spectrum: None })
            }
            (None, None) => Err(CliError::Usage("give a matrix file or --example".into())),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}
