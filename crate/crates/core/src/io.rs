//! Reading and writing matrices, profiles and reports.
//!
//! Matrices come either as headerless CSV (one row per line) or as JSON of
//! the form `{"labels": [...], "rows": [[...], ...]}`. Matrices are written
//! losslessly; computed quantities are written with 12 significant digits so
//! that reports are byte-stable.

use serde::{Deserialize, Serialize};

use crate::bounds::BoundReport;
use crate::chain::TransitionMatrix;
use crate::distance::DistanceProfile;
use crate::duality::LinkMatrix;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

#[derive(Debug, Serialize, Deserialize)]
struct MatrixJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    rows: Vec<Vec<f64>>,
}

/// Parse raw rows from headerless CSV without validating stochasticity.
pub fn parse_csv_rows(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::Parse { line, column: 0, message: e.to_string() }
        })?;
        let line = record.position().map_or(rows.len() + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(k, field)| {
                field.parse::<f64>().map_err(|_| Error::Parse {
                    line,
                    column: k + 1,
                    message: format!("expected a number, found {field:?}"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_csv(text: &str) -> Result<TransitionMatrix> {
    parse_csv_with(text, &Tolerances::default())
}

pub fn parse_csv_with(text: &str, tol: &Tolerances) -> Result<TransitionMatrix> {
    TransitionMatrix::validate_with(&parse_csv_rows(text)?, tol)
}

pub fn parse_json(text: &str) -> Result<TransitionMatrix> {
    parse_json_with(text, &Tolerances::default())
}

pub fn parse_json_with(text: &str, tol: &Tolerances) -> Result<TransitionMatrix> {
    let doc: MatrixJson = serde_json::from_str(text)
        .map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    match doc.labels {
        Some(labels) => TransitionMatrix::with_labels_tol(labels, &doc.rows, tol),
        None => TransitionMatrix::validate_with(&doc.rows, tol),
    }
}

/// JSON if the first non-blank character is `{`, CSV otherwise.
pub fn parse_matrix(text: &str, tol: &Tolerances) -> Result<TransitionMatrix> {
    if text.trim_start().starts_with('{') {
        parse_json_with(text, tol)
    } else {
        parse_csv_with(text, tol)
    }
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros removed.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        return format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (11 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn join(values: impl IntoIterator<Item = f64>) -> String {
    values.into_iter().map(format_number).collect::<Vec<_>>().join(",")
}

/// Entries are written in shortest round-trip form, so re-reading the output
/// gives back the same matrix bit for bit.
pub fn matrix_to_csv(p: &TransitionMatrix) -> String {
    p.rows()
        .into_iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",") + "\n")
        .collect()
}

pub fn matrix_to_json(p: &TransitionMatrix) -> String {
    let doc = MatrixJson { labels: Some(p.labels().to_vec()), rows: p.rows() };
    serde_json::to_string_pretty(&doc).expect("finite entries serialize") + "\n"
}

/// Header `t,tv,sep`, one line per time step.
pub fn profile_to_csv(profile: &DistanceProfile) -> String {
    let mut out = String::from("t,tv,sep\n");
    for (t, (tv, sep)) in profile.tv.iter().zip(&profile.sep).enumerate() {
        out.push_str(&format!("{t},{},{}\n", format_number(*tv), format_number(*sep)));
    }
    out
}

/// Header `name,epsilon,value,applicable`.
pub fn bounds_to_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from("name,epsilon,value,applicable\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.name,
            format_number(r.epsilon),
            format_number(r.value),
            r.hypotheses_met
        ));
    }
    out
}

/// One line per dual state, no header.
pub fn link_to_csv(link: &LinkMatrix) -> String {
    (0..link.n()).map(|j| join(link.row(j)) + "\n").collect()
}
