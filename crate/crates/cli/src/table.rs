use mixbound::bounds::{evaluate_bounds, BoundKind, BoundReport};
use mixbound::distance::{distance_profile_until, exact_mixing_time, Budget, DistanceKind};
use mixbound::io::format_number;
use mixbound::{ChainAnalysis, Result};

/// Bound values next to the exact mixing time, when it could be computed.
#[derive(Debug, Clone)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
}

#[derive(Debug, Clone)]
pub struct ComparisonRow {
    pub report: BoundReport,
    pub exact: Option<usize>,
}

impl ComparisonRow {
    /// `bound / t_mix`; at least 1 for a sound upper bound, at most 1 for a
    /// sound lower bound.
    pub fn ratio(&self) -> Option<f64> {
        match self.exact {
            Some(t) if t > 0 => Some(self.report.value / t as f64),
            _ => None,
        }
    }

    pub fn consistent(&self) -> bool {
        match (self.ratio(), self.report.hypotheses_met) {
            (Some(r), true) => match self.report.kind {
                BoundKind::Upper => r >= 1.0,
                BoundKind::Lower => r <= 1.0,
            },
            _ => true,
        }
    }
}

impl ComparisonTable {
    /// Evaluate every bound at every `ε`, and the exact `t_mix(ε)` when the
    /// TV profile reaches `ε` within `budget`.
    pub fn build(analysis: &ChainAnalysis, epsilons: &[f64], budget: &Budget) -> Result<Self> {
        let smallest = epsilons.iter().copied().fold(1.0, f64::min);
        let profile = distance_profile_until(&analysis.matrix, &analysis.stationary, smallest, budget).ok();
        let mut rows = Vec::new();
        for &eps in epsilons {
            let exact = profile
                .as_ref()
                .and_then(|p| exact_mixing_time(p, eps, DistanceKind::Tv).ok())
                .map(|m| m.time);
            rows.extend(evaluate_bounds(analysis, eps).into_iter().map(|report| ComparisonRow { report, exact }));
        }
        Ok(ComparisonTable { rows })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,epsilon,value,applicable,exact_tmix,ratio\n");
        for row in &self.rows {
            let r = &row.report;
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.name,
                format_number(r.epsilon),
                format_number(r.value),
                r.hypotheses_met,
                row.exact.map(|t| t.to_string()).unwrap_or_default(),
                row.ratio().map(format_number).unwrap_or_default(),
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mixbound::examples::sticky_walk;

    #[test]
    fn sticky_walk_table_is_consistent() {
        let analysis = ChainAnalysis::new(sticky_walk(8).unwrap().matrix).unwrap();
        let table = ComparisonTable::build(&analysis, &[0.25, 0.1], &Budget::default()).unwrap();
        assert_eq!(table.rows.len(), 16);
        assert!(table.rows.iter().all(|r| r.exact.is_some() && r.consistent()));
        let csv = table.to_csv();
        assert!(csv.starts_with("name,epsilon,value,applicable,exact_tmix,ratio\nl2_lower,0.25,"));
    }

    #[test]
    fn short_budget_leaves_exact_blank() {
        let analysis = ChainAnalysis::new(sticky_walk(8).unwrap().matrix).unwrap();
        let budget = Budget { max_states: 512, max_steps: 3 };
        let table = ComparisonTable::build(&analysis, &[0.25], &budget).unwrap();
        assert!(table.rows.iter().all(|r| r.exact.is_none()));
        assert!(table.to_csv().lines().nth(1).unwrap().ends_with(",,"));
    }
}
