//! Statistics derived from scorecards and reports, persisted next to the
//! scores so the tables can be rendered without recomputation.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    dispersion, pearson, rank_topics, to_f64, top_smells, ScenarioSelector, ScoreError, ScoreSheet, SmellShare,
};
use crate::corpus::BASELINE;
use crate::fsutil::write_if_changed;
use crate::smells::store::{to_json, StoreError};
use crate::smells::{CorpusReports, SmellType};

/// How many topics each ranking lists at most.
pub const RANK_K: usize = 3;
pub const TOP_SMELLS_FILE: &str = "top_smells.json";

/// Per-subject statistics over the topic subsets of one rule set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicStats {
    pub subject: String,
    /// Correlation of per-topic VS with the baseline's; `None` when undefined.
    pub pearson_with_baseline: Option<f64>,
    /// Population standard deviation of per-topic VS.
    pub dispersion: Option<f64>,
    pub best: Vec<String>,
    pub worst: Vec<String>,
    pub most_improved: Vec<String>,
    pub most_worsened: Vec<String>,
}

/// Statistics of every subject in a topic sheet.
pub fn topic_stats(sheet: &ScoreSheet) -> Vec<TopicStats> {
    let mut subjects: Vec<&str> = Vec::new();
    for c in &sheet.cards {
        if !subjects.contains(&c.subject.as_str()) {
            subjects.push(&c.subject);
        }
    }
    subjects
        .into_iter()
        .map(|subject| {
            let cards: Vec<_> = sheet.cards.iter().filter(|c| c.subject == subject).cloned().collect();
            let paired: Vec<(f64, f64)> = cards
                .iter()
                .filter_map(|c| Some((to_f64(c.baseline_vs?), to_f64(c.vs?))))
                .collect();
            let (xs, ys): (Vec<f64>, Vec<f64>) = paired.into_iter().unzip();
            let values: Vec<f64> = cards.iter().filter_map(|c| c.vs.map(to_f64)).collect();
            let k = cards
                .iter()
                .filter(|c| c.vs.is_some() && c.increase_rate.is_some())
                .count()
                .min(RANK_K);
            let names = |v: Vec<(String, super::Rate)>| v.into_iter().map(|(n, _)| n).collect::<Vec<_>>();
            let ranks = rank_topics(&cards, k).ok();
            let pick = |f: fn(super::Rankings) -> Vec<(String, super::Rate)>| {
                ranks.clone().map(f).map(names).unwrap_or_default()
            };
            TopicStats {
                subject: subject.to_string(),
                pearson_with_baseline: if subject == BASELINE {
                    None
                } else {
                    pearson(&xs, &ys).ok()
                },
                dispersion: dispersion(&values).ok(),
                best: pick(|r| r.best),
                worst: pick(|r| r.worst),
                // the baseline is its own reference
                most_improved: if subject == BASELINE {
                    Vec::new()
                } else {
                    pick(|r| r.most_improved)
                },
                most_worsened: if subject == BASELINE {
                    Vec::new()
                } else {
                    pick(|r| r.most_worsened)
                },
            }
        })
        .collect()
}

/// Shares of each smell type's violations per subject, over every analyzed
/// report.
pub fn top_smells_by_subject(reports: &CorpusReports) -> BTreeMap<String, BTreeMap<SmellType, Vec<SmellShare>>> {
    reports
        .iter()
        .map(|(subject, by_task)| {
            let per_type = SmellType::ALL
                .into_iter()
                .map(|t| (t, top_smells(by_task.values(), t)))
                .filter(|(_, v)| !v.is_empty())
                .collect();
            (subject.clone(), per_type)
        })
        .collect()
}

pub fn topic_stats_path(root: &Path, ruleset_stem: &str) -> std::path::PathBuf {
    root.join(format!("topic_{ruleset_stem}.json"))
}

/// Writes topic statistics for every unfiltered topic sheet and the top
/// smells of every subject. Returns how many files changed.
pub fn write_stats(root: &Path, sheets: &[ScoreSheet], reports: &CorpusReports) -> Result<usize, ScoreError> {
    let mut written = 0;
    let write = |path: std::path::PathBuf, bytes: Vec<u8>| -> Result<bool, ScoreError> {
        write_if_changed(&path, &bytes).map_err(|source| ScoreError::Store(StoreError::Io { path, source }))
    };
    for sheet in sheets {
        if matches!(&sheet.scenario, ScenarioSelector::ByTopic { only } if only.is_empty()) {
            let stats = topic_stats(sheet);
            written += usize::from(write(
                topic_stats_path(root, &sheet.ruleset.file_stem()),
                to_json(&stats),
            )?);
        }
    }
    written += usize::from(write(
        root.join(TOP_SMELLS_FILE),
        to_json(&top_smells_by_subject(reports)),
    )?);
    Ok(written)
}
