//! Smell detection: rule catalog, engine, rule implementations and
//! persisted violation reports.

pub mod batch;
pub mod catalog;
mod engine;
mod rules;
pub mod store;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::java::{ParseFailure, Span};

pub use batch::{detect_corpus, CorpusReports};
pub use catalog::{
    catalog, default_rule_map, find_rule, Category, Detector, Param, RuleConfigError, RuleSet, SmellRule, SmellType,
};
pub use engine::{detect_file, detect_units};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub rule_id: String,
    pub file: String,
    pub span: Span,
    pub message: String,
    /// The source line the violation starts on, trimmed.
    pub snippet: String,
}

impl Violation {
    fn sort_key(&self) -> (&str, u32, u32, &str, &Span, &str) {
        (
            &self.file,
            self.span.start_line,
            self.span.start_col,
            &self.rule_id,
            &self.span,
            &self.message,
        )
    }
}

/// Who produced the analysed code: a model id or the baseline, for one task.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Subject {
    pub task_id: String,
    pub model_id: String,
}

impl Subject {
    pub fn new(task_id: impl Into<String>, model_id: impl Into<String>) -> Self {
        Self {
            task_id: task_id.into(),
            model_id: model_id.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub subject: Subject,
    pub parse_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parse_error: Option<ParseFailure>,
    pub violations: Vec<Violation>,
    /// Count per evaluated rule, zeros included.
    pub per_rule_counts: BTreeMap<String, u64>,
    pub per_type_counts: BTreeMap<SmellType, u64>,
}

impl ViolationReport {
    /// Builds a report for parsed code, sorting violations and filling the
    /// count tables for every enabled rule in `rules`.
    pub fn from_violations(subject: Subject, mut violations: Vec<Violation>, rules: &RuleSet) -> Self {
        violations.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        violations.dedup();
        let mut per_rule_counts: BTreeMap<String, u64> = BTreeMap::new();
        let mut per_type_counts: BTreeMap<SmellType, u64> = BTreeMap::new();
        for r in rules.enabled() {
            per_rule_counts.insert(r.rule_id.clone(), 0);
            per_type_counts.entry(r.smell_type).or_insert(0);
        }
        for v in &violations {
            *per_rule_counts.entry(v.rule_id.clone()).or_insert(0) += 1;
            if let Some(r) = rules.get(&v.rule_id) {
                *per_type_counts.entry(r.smell_type).or_insert(0) += 1;
            }
        }
        Self {
            subject,
            parse_ok: true,
            parse_error: None,
            violations,
            per_rule_counts,
            per_type_counts,
        }
    }

    pub fn parse_failure(subject: Subject, failure: ParseFailure) -> Self {
        Self {
            subject,
            parse_ok: false,
            parse_error: Some(failure),
            violations: Vec::new(),
            per_rule_counts: BTreeMap::new(),
            per_type_counts: BTreeMap::new(),
        }
    }

    pub fn total(&self) -> u64 {
        self.violations.len() as u64
    }

    pub fn count(&self, rule_id: &str) -> u64 {
        self.per_rule_counts.get(rule_id).copied().unwrap_or(0)
    }

    pub fn type_count(&self, t: SmellType) -> u64 {
        self.per_type_counts.get(&t).copied().unwrap_or(0)
    }
}
