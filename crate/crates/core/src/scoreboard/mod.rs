//! Violations-per-solution scoring, scenario partitioning and the summary
//! statistics computed over scorecards.

mod card;
pub(crate) mod exact;
mod scenario;
mod stats;
mod summary;

use std::collections::BTreeSet;

use num_rational::Ratio;
use thiserror::Error;

use crate::smells::store::StoreError;
use crate::smells::ViolationReport;

pub use card::{read_sheets, score_scenario, sheet_path, write_sheet, ScoreCard, ScoreSheet};
pub use scenario::{partition, ComplexityMetric, RuleSetSelector, ScenarioSelector, Subset};
pub use stats::{dispersion, pearson, rank_topics, top_smells, Rankings, SmellShare};
pub use summary::{
    top_smells_by_subject, topic_stats, topic_stats_path, write_stats, TopicStats, RANK_K, TOP_SMELLS_FILE,
};

/// Exact rational used for every score.
pub type Rate = Ratio<i64>;

#[derive(Debug, Error)]
pub enum ScoreError {
    #[error("no analyzable solutions in scenario")]
    EmptyScenario,
    #[error("rule set selects no rules")]
    EmptyRuleSet,
    #[error("baseline VS is zero, increase rate is undefined")]
    UndefinedBaseline,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("unknown topic `{0}`")]
    UnknownTopic(String),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("invalid selector `{0}`")]
    BadSelector(String),
    #[error("need {need} ranked entries, only {have} have defined values")]
    NotEnoughEntries { need: usize, have: usize },
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// Raw sums behind one VS value.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    /// Reports present, parse failures included.
    pub n_reports: u64,
    pub n_analyzed: u64,
    pub total_violations: u64,
}

impl Tally {
    /// Parse failures count toward `n_reports` only.
    pub fn of<'a>(reports: impl IntoIterator<Item = &'a ViolationReport>, rules: &BTreeSet<String>) -> Self {
        let mut t = Tally::default();
        for r in reports {
            t.n_reports += 1;
            if !r.parse_ok {
                continue;
            }
            t.n_analyzed += 1;
            t.total_violations += rules.iter().map(|id| r.count(id)).sum::<u64>();
        }
        t
    }

    pub fn n_failed(&self) -> u64 {
        self.n_reports - self.n_analyzed
    }

    pub fn vs(&self) -> Result<Rate, ScoreError> {
        if self.n_analyzed == 0 {
            return Err(ScoreError::EmptyScenario);
        }
        Ok(Rate::new(self.total_violations as i64, self.n_analyzed as i64))
    }
}

/// Violations per analyzed solution over `reports`, counting only `rules`.
pub fn compute_vs<'a>(
    reports: impl IntoIterator<Item = &'a ViolationReport>,
    rules: &BTreeSet<String>,
) -> Result<Rate, ScoreError> {
    if rules.is_empty() {
        return Err(ScoreError::EmptyRuleSet);
    }
    Tally::of(reports, rules).vs()
}

/// VS of the reference solutions; same policy as [`compute_vs`].
pub fn compute_baseline_vs<'a>(
    reports: impl IntoIterator<Item = &'a ViolationReport>,
    rules: &BTreeSet<String>,
) -> Result<Rate, ScoreError> {
    compute_vs(reports, rules)
}

/// Relative change of `vs` against `baseline_vs`.
pub fn compute_increase(vs: Rate, baseline_vs: Rate) -> Result<Rate, ScoreError> {
    if baseline_vs == Rate::from_integer(0) {
        return Err(ScoreError::UndefinedBaseline);
    }
    Ok((vs - baseline_vs) / baseline_vs)
}

/// Decimal approximation, for statistics and display.
pub fn to_f64(r: Rate) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `r` as a percentage with two decimals, e.g. `84.97`.
pub fn percent(r: Rate) -> String {
    format!("{:.2}", to_f64(r) * 100.0)
}
