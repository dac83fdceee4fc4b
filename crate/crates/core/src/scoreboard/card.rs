use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{compute_increase, partition, Rate, RuleSetSelector, ScenarioSelector, ScoreError, Tally};
use crate::corpus::{Corpus, BASELINE};
use crate::fsutil::write_if_changed;
use crate::smells::store::{to_json, StoreError};
use crate::smells::CorpusReports;

/// Scores of one subject on one subset under one rule set. Rationals are
/// stored exactly as `p/q` strings; `None` means undefined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreCard {
    pub subject: String,
    pub subset: String,
    pub n_tasks: u64,
    /// Reports found, parse failures included.
    pub n_reports: u64,
    pub n_analyzed: u64,
    pub n_failed: u64,
    pub total_violations: u64,
    #[serde(with = "super::exact::option")]
    pub vs: Option<Rate>,
    #[serde(with = "super::exact::option")]
    pub baseline_vs: Option<Rate>,
    #[serde(with = "super::exact::option")]
    pub increase_rate: Option<Rate>,
}

/// All cards of one scenario and rule set, as persisted in
/// `scores/<scenario>/<ruleset>.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreSheet {
    pub scenario: ScenarioSelector,
    pub ruleset: RuleSetSelector,
    pub cards: Vec<ScoreCard>,
}

impl ScoreSheet {
    pub fn path(&self, root: &Path) -> PathBuf {
        sheet_path(root, &self.scenario, &self.ruleset)
    }

    pub fn card(&self, subject: &str, subset: &str) -> Option<&ScoreCard> {
        self.cards.iter().find(|c| c.subject == subject && c.subset == subset)
    }

    /// Subset labels in sheet order.
    pub fn subsets(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for c in &self.cards {
            if !seen.contains(&c.subset.as_str()) {
                seen.push(c.subset.as_str());
            }
        }
        seen
    }
}

pub fn sheet_path(root: &Path, scenario: &ScenarioSelector, ruleset: &RuleSetSelector) -> PathBuf {
    root.join(scenario.dir_name())
        .join(format!("{}.json", ruleset.file_stem()))
}

/// Scores every subject on every subset of `scenario`. A subset where a
/// subject has no analyzable solution gets an undefined VS rather than an
/// error; the baseline is the `baseline` subject's reports on the same tasks.
pub fn score_scenario(
    corpus: &Corpus,
    reports: &CorpusReports,
    subjects: &[String],
    scenario: &ScenarioSelector,
    ruleset: &RuleSetSelector,
) -> Result<ScoreSheet, ScoreError> {
    let rules: BTreeSet<String> = ruleset.resolve()?;
    let mut cards = Vec::new();
    for subset in partition(corpus, scenario)? {
        let tally = |subject: &str| {
            let by_task = reports.get(subject);
            Tally::of(
                subset.task_ids.iter().filter_map(|t| by_task.and_then(|m| m.get(t))),
                &rules,
            )
        };
        let baseline_vs = tally(BASELINE).vs().ok();
        for subject in subjects {
            let t = tally(subject);
            let vs = t.vs().ok();
            let increase_rate = match (vs, baseline_vs) {
                (Some(v), Some(b)) => compute_increase(v, b).ok(),
                _ => None,
            };
            cards.push(ScoreCard {
                subject: subject.clone(),
                subset: subset.label.clone(),
                n_tasks: subset.task_ids.len() as u64,
                n_reports: t.n_reports,
                n_analyzed: t.n_analyzed,
                n_failed: t.n_failed(),
                total_violations: t.total_violations,
                vs,
                baseline_vs,
                increase_rate,
            });
        }
    }
    Ok(ScoreSheet {
        scenario: scenario.clone(),
        ruleset: ruleset.clone(),
        cards,
    })
}

/// Returns whether the file changed.
pub fn write_sheet(root: &Path, sheet: &ScoreSheet) -> Result<bool, StoreError> {
    let path = sheet.path(root);
    write_if_changed(&path, &to_json(sheet)).map_err(|source| StoreError::Io { path, source })
}

/// Every sheet under `root`, ordered by path.
pub fn read_sheets(root: &Path) -> Result<Vec<ScoreSheet>, StoreError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| StoreError::Io { path, source }
    };
    let mut paths = Vec::new();
    for dir in fs::read_dir(root).map_err(io(root))? {
        let dir = dir.map_err(io(root))?.path();
        if !dir.is_dir() {
            continue;
        }
        for file in fs::read_dir(&dir).map_err(io(&dir))? {
            let file = file.map_err(io(&dir))?.path();
            if file.extension().is_some_and(|e| e == "json") {
                paths.push(file);
            }
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let bytes = fs::read(&p).map_err(io(&p))?;
            serde_json::from_slice(&bytes).map_err(|e| StoreError::Json {
                path: p.clone(),
                message: e.to_string(),
            })
        })
        .collect()
}
