use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};

use mixbound::distance::{distance_profile_until, distance_profile_with, sep_distance, Budget};
use mixbound::duality::{build_link_from_betas, dual_betas, verify_intertwining};
use mixbound::io::{format_number, link_to_csv, matrix_to_csv, matrix_to_json, profile_to_csv};
use mixbound::schur::{
    companion_power_entry, elementary_symmetric, hook_schur_from_esym, schur_by_enumeration, ssyt_count_hook,
    ssyt_enumerate, HookShape,
};
use mixbound::{ChainAnalysis, Error, Tolerances, TransitionMatrix};

use crate::source::{ExampleName, ExampleParams, Loaded, Source};
use crate::table::ComparisonTable;
use crate::CliError;

/// One step of the chain from the law `row`.
fn step(row: &[f64], p: &TransitionMatrix) -> Vec<f64> {
    let mut out = vec![0.0; p.n()];
    for (x, &w) in row.iter().enumerate().filter(|(_, w)| **w != 0.0) {
        for (y, o) in out.iter_mut().enumerate() {
            *o += w * p.get(x, y);
        }
    }
    out
}

fn write_or_return(out: Option<&PathBuf>, text: String) -> Result<String, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Swap in the closed-form spectrum when the chain came with one.
fn analysed(loaded: Loaded, numeric_only: bool, tol: &Tolerances) -> Result<ChainAnalysis, CliError> {
    let analysis = ChainAnalysis::with_tolerances(loaded.matrix, tol)?;
    match loaded.known_spectrum {
        Some(known) if !numeric_only => Ok(analysis.with_known_spectrum(&known, tol)?),
        _ => Ok(analysis),
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(|&v| format_number(v)).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    source: Source,
}

pub fn analyze(args: &AnalyzeArgs) -> Result<String, CliError> {
    let tol = Tolerances::default();
    let loaded = args.source.load(&tol)?;
    let known = loaded.known_spectrum.clone();
    let a = ChainAnalysis::with_tolerances(loaded.matrix, &tol)?;
    let s = &a.spectrum;
    let eigen: Vec<String> = s
        .eigenvalues()
        .iter()
        .map(|z| {
            if z.im == 0.0 {
                format_number(z.re)
            } else {
                format!("{}{}{}i", format_number(z.re), if z.im < 0.0 { "-" } else { "+" }, format_number(z.im.abs()))
            }
        })
        .collect();
    let mut out = String::new();
    writeln!(out, "states: {}", a.matrix.n()).unwrap();
    writeln!(out, "labels: {}", a.matrix.labels().join(",")).unwrap();
    writeln!(out, "pi: {}", join(a.stationary.weights())).unwrap();
    writeln!(out, "pi_min: {}", format_number(a.stationary.pi_min())).unwrap();
    writeln!(out, "reversible: {}", a.reversible).unwrap();
    writeln!(out, "lazy: {}", a.matrix.is_lazy()).unwrap();
    writeln!(out, "solver: {}", if s.used_symmetric_solver() { "symmetric" } else { "general" }).unwrap();
    writeln!(out, "eigenvalues: {}", eigen.join(",")).unwrap();
    writeln!(out, "beta_star: {}", format_number(s.beta_star())).unwrap();
    writeln!(out, "gap: {}", format_number(s.gap())).unwrap();
    writeln!(out, "t_rel: {}", format_number(s.t_rel())).unwrap();
    writeln!(out, "non_ergodic: {}", s.non_ergodic()).unwrap();
    if let Some(known) = known {
        let exact = a.clone().with_known_spectrum(&known, &tol)?;
        writeln!(out, "closed_form_beta_star: {}", format_number(exact.spectrum.beta_star())).unwrap();
    }
    Ok(out)
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    source: Source,
    /// Target distances (comma-separated or repeated)
    #[arg(long = "epsilon", value_delimiter = ',', default_values_t = [0.25, 0.1, 0.01])]
    epsilons: Vec<f64>,
    /// Longest horizon for the exact mixing time (defaults to the step budget)
    #[arg(long)]
    exact_horizon: Option<usize>,
    /// Use computed eigenvalues even when closed-form ones are known
    #[arg(long)]
    numeric_spectrum: bool,
    /// Write the table here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn bounds(args: &BoundsArgs, budget: &Budget) -> Result<String, CliError> {
    let tol = Tolerances::default();
    if let Some(&eps) = args.epsilons.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
        return Err(Error::EpsilonOutOfRange { epsilon: eps, range: "(0, 1)" }.into());
    }
    let analysis = analysed(args.source.load(&tol)?, args.numeric_spectrum, &tol)?;
    let exact_budget = Budget { max_steps: args.exact_horizon.unwrap_or(budget.max_steps), ..*budget };
    let table = ComparisonTable::build(&analysis, &args.epsilons, &exact_budget)?;
    for row in table.rows.iter().filter(|r| !r.consistent()) {
        eprintln!("warning: {} at epsilon {} is on the wrong side of the exact mixing time", row.report.name, row.report.epsilon);
    }
    write_or_return(args.out.as_ref(), table.to_csv())
}

#[derive(Debug, Args)]
pub struct DualArgs {
    #[command(flatten)]
    source: Source,
    /// Initial law: `first`, `uniform`, `state:K` or comma-separated weights
    #[arg(long, default_value = "first")]
    mu: String,
    /// Last time in the separation/tail table
    #[arg(long, default_value_t = 100)]
    horizon: usize,
    /// Use computed eigenvalues even when closed-form ones are known
    #[arg(long)]
    numeric_spectrum: bool,
    /// Write the link matrix here instead of standard output
    #[arg(long)]
    link_out: Option<PathBuf>,
}

fn parse_mu(raw: &str, n: usize) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("--mu: cannot parse {raw:?}"));
    match raw {
        "first" => {
            let mut mu = vec![0.0; n];
            mu[0] = 1.0;
            Ok(mu)
        }
        "uniform" => Ok(vec![1.0 / n as f64; n]),
        _ => {
            if let Some(k) = raw.strip_prefix("state:") {
                let k: usize = k.parse().map_err(|_| bad())?;
                if k >= n {
                    return Err(CliError::Usage(format!("--mu: state {k} out of range for {n} states")));
                }
                let mut mu = vec![0.0; n];
                mu[k] = 1.0;
                return Ok(mu);
            }
            raw.split(',').map(|x| x.trim().parse::<f64>().map_err(|_| bad())).collect()
        }
    }
}

pub fn dual(args: &DualArgs, budget: &Budget) -> Result<String, CliError> {
    let tol = Tolerances::default();
    if args.horizon > budget.max_steps {
        return Err(Error::BudgetExceeded(format!("horizon {} > {}", args.horizon, budget.max_steps)).into());
    }
    let loaded = args.source.load(&tol)?;
    let n = loaded.matrix.n();
    let mu = parse_mu(&args.mu, n)?;
    let analysis = analysed(loaded, args.numeric_spectrum, &tol)?;
    let betas = dual_betas(&analysis.spectrum, &tol)?;
    let (link, q) = build_link_from_betas(&analysis.matrix, &analysis.stationary, betas, &mu, &tol)?;
    let residual = verify_intertwining(&link, &analysis.matrix, &q.matrix())?;

    let tails = q.survival_profile(args.horizon);
    let mut table = format!("# intertwining residual {}\nt,sep,sst_tail\n", format_number(residual));
    let mut row = mu.clone();
    for (t, tail) in tails.iter().enumerate() {
        if t > 0 {
            row = step(&row, &analysis.matrix);
        }
        let sep = sep_distance(&row, analysis.stationary.weights())?;
        writeln!(table, "{t},{},{}", format_number(sep), format_number(*tail)).unwrap();
    }
    let link_csv = link_to_csv(&link);
    match &args.link_out {
        Some(_) => {
            write_or_return(args.link_out.as_ref(), link_csv)?;
            Ok(table)
        }
        None => Ok(format!("{link_csv}\n{table}")),
    }
}

#[derive(Debug, Args)]
pub struct SchurArgs {
    /// Partition, largest part first (e.g. `--shape 2 1`)
    #[arg(long, num_args = 1.., conflicts_with = "companion")]
    shape: Vec<usize>,
    /// Alphabet size / number of variables
    #[arg(long)]
    m: Option<usize>,
    /// Print the number of semistandard tableaux
    #[arg(long)]
    count: bool,
    /// List the tableaux, one per line, rows separated by `|`
    #[arg(long)]
    enumerate: bool,
    /// Evaluate the Schur polynomial here (comma-separated)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    point: Option<Vec<f64>>,
    /// Companion matrix coefficients e_1..e_m (comma-separated)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    companion: Option<Vec<f64>>,
    /// Power of the companion matrix
    #[arg(long, default_value_t = 1)]
    t: usize,
}

fn hook_of(shape: &[usize]) -> Option<(usize, usize)> {
    match shape.split_first() {
        Some((&arm, rest)) if arm >= 1 && rest.iter().all(|&k| k == 1) => Some((arm, rest.len())),
        _ => None,
    }
}

pub fn schur(args: &SchurArgs) -> Result<String, CliError> {
    if let Some(esym) = &args.companion {
        let m = esym.len();
        if m == 0 {
            return Err(CliError::Usage("--companion needs at least one coefficient".into()));
        }
        let mut out = String::new();
        for i in 1..=m {
            let row: Vec<f64> = (1..=m).map(|j| companion_power_entry(esym, args.t, i, j)).collect::<Result<_, _>>()?;
            writeln!(out, "{}", join(&row)).unwrap();
        }
        return Ok(out);
    }
    if args.shape.is_empty() {
        return Err(CliError::Usage("give --shape or --companion".into()));
    }
    let m = match (&args.point, args.m) {
        (Some(point), Some(m)) if point.len() != m => {
            return Err(Error::DimensionMismatch { expected: m, got: point.len() }.into());
        }
        (Some(point), _) => point.len(),
        (None, Some(m)) => m,
        (None, None) => return Err(CliError::Usage("give --m or --point".into())),
    };
    if m == 0 {
        return Err(CliError::Usage("--m must be positive".into()));
    }
    let hook = hook_of(&args.shape);
    let mut out = String::new();
    if args.count || (!args.enumerate && args.point.is_none()) {
        let count = match hook {
            Some((arm, leg)) => ssyt_count_hook(arm, leg, m).to_string(),
            None => ssyt_enumerate(&args.shape, m)?.len().to_string(),
        };
        writeln!(out, "{count}").unwrap();
    }
    if args.enumerate {
        for tableau in ssyt_enumerate(&args.shape, m)? {
            let rows: Vec<String> = tableau
                .rows
                .iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            writeln!(out, "{}", rows.join("|")).unwrap();
        }
    }
    if let Some(point) = &args.point {
        let value = match hook {
            Some((_, leg)) if leg > m => 0.0,
            Some((arm, leg)) => hook_schur_from_esym(&elementary_symmetric(point), HookShape::new(arm, leg)?)?,
            None => schur_by_enumeration(&args.shape, point)?,
        };
        writeln!(out, "{}", format_number(value)).unwrap();
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[arg(value_enum)]
    name: ExampleName,
    #[command(flatten)]
    params: ExampleParams,
    #[arg(long, value_enum, default_value = "csv")]
    format: MatrixFormat,
}

pub fn example(args: &ExampleArgs) -> Result<String, CliError> {
    let chain = args.params.build(args.name)?;
    Ok(match args.format {
        MatrixFormat::Csv => matrix_to_csv(&chain.matrix),
        MatrixFormat::Json => matrix_to_json(&chain.matrix),
    })
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    source: Source,
    /// Last time to record
    #[arg(long, default_value_t = 100, conflicts_with = "until")]
    horizon: usize,
    /// Instead of a fixed horizon, stop once TV is at most this
    #[arg(long)]
    until: Option<f64>,
}

pub fn profile(args: &ProfileArgs, budget: &Budget) -> Result<String, CliError> {
    let tol = Tolerances::default();
    let p = args.source.load(&tol)?.matrix;
    let pi = mixbound::chain::stationary_distribution_with(&p, &tol)?;
    let profile = match args.until {
        Some(eps) if !(eps > 0.0 && eps < 1.0) => {
            return Err(Error::EpsilonOutOfRange { epsilon: eps, range: "(0, 1)" }.into());
        }
        Some(eps) => distance_profile_until(&p, &pi, eps, budget)?,
        None => distance_profile_with(&p, &pi, args.horizon, budget)?,
    };
    Ok(profile_to_csv(&profile))
}
