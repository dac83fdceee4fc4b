//! End-to-end runs: analyze a corpus into persisted reports, score them, and
//! render the tables.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{load_manifest, Corpus, CorpusError, BASELINE};
use crate::report::{render_tables, ReportError};
use crate::scoreboard::{
    score_scenario, write_sheet, write_stats, RuleSetSelector, ScenarioSelector, ScoreError, ScoreSheet,
};
use crate::smells::batch::{corpus_jobs, job_digest, run_job};
use crate::smells::store::{FailureEntry, ReportStore, StoreError};
use crate::smells::{CorpusReports, Param, RuleConfigError, RuleSet, ViolationReport};

pub const REPORTS_DIR: &str = "reports";
pub const SCORES_DIR: &str = "scores";
pub const STATS_DIR: &str = "stats";
pub const TABLES_DIR: &str = "tables";

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("config error: {0}")]
    Config(String),
    #[error("cannot access {path}: {message}")]
    Io { path: PathBuf, message: String },
}

impl PipelineError {
    /// Process exit status: 1 for configuration problems, 2 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) => 1,
            PipelineError::Io { .. } => 2,
        }
    }
}

impl From<StoreError> for PipelineError {
    fn from(e: StoreError) -> Self {
        PipelineError::Io {
            path: e.path().to_path_buf(),
            message: e.to_string(),
        }
    }
}

impl From<CorpusError> for PipelineError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Io { path, source } if source.kind() != std::io::ErrorKind::NotFound => PipelineError::Io {
                path,
                message: source.to_string(),
            },
            other => PipelineError::Config(other.to_string()),
        }
    }
}

impl From<ScoreError> for PipelineError {
    fn from(e: ScoreError) -> Self {
        match e {
            ScoreError::Store(s) => s.into(),
            other => PipelineError::Config(other.to_string()),
        }
    }
}

impl From<RuleConfigError> for PipelineError {
    fn from(e: RuleConfigError) -> Self {
        PipelineError::Config(e.to_string())
    }
}

impl From<ReportError> for PipelineError {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Store(s) => s.into(),
            ReportError::Io { path, source } => PipelineError::Io {
                path,
                message: source.to_string(),
            },
        }
    }
}

/// Everything a run depends on. Mirrors the JSON config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub corpus: PathBuf,
    /// Subjects to analyse; empty means the baseline plus every model.
    pub subjects: Vec<String>,
    pub scenarios: Vec<ScenarioSelector>,
    pub rulesets: Vec<RuleSetSelector>,
    /// `rule-id.param` → value.
    pub thresholds: BTreeMap<String, Param>,
    pub out: PathBuf,
    pub parallelism: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            corpus: PathBuf::from("corpus"),
            subjects: Vec::new(),
            scenarios: vec![ScenarioSelector::All],
            rulesets: vec![RuleSetSelector::All],
            thresholds: BTreeMap::new(),
            out: PathBuf::from("out"),
            parallelism: 1,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PipelineError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| PipelineError::Config(format!("malformed config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.parallelism == 0 {
            return Err(PipelineError::Config("parallelism must be at least 1".into()));
        }
        if self.scenarios.is_empty() || self.rulesets.is_empty() {
            return Err(PipelineError::Config(
                "at least one scenario and one rule set are required".into(),
            ));
        }
        for r in &self.rulesets {
            r.resolve()?;
        }
        if self.out.is_file() {
            return Err(PipelineError::Config(format!(
                "output {} is a file",
                self.out.display()
            )));
        }
        Ok(())
    }

    pub fn load_corpus(&self) -> Result<Corpus, PipelineError> {
        if !self.corpus.exists() {
            return Err(PipelineError::Config(format!(
                "corpus not found: {}",
                self.corpus.display()
            )));
        }
        Ok(load_manifest(&self.corpus)?)
    }

    /// Configured subjects, or the baseline followed by every model.
    pub fn resolve_subjects(&self, corpus: &Corpus) -> Result<Vec<String>, PipelineError> {
        if self.subjects.is_empty() {
            return Ok(std::iter::once(BASELINE.to_string())
                .chain(corpus.models.iter().cloned())
                .collect());
        }
        for s in &self.subjects {
            if s != BASELINE && !corpus.models.contains(s) {
                return Err(PipelineError::Config(format!("unknown subject `{s}`")));
            }
        }
        Ok(self.subjects.clone())
    }

    pub fn rules(&self) -> Result<RuleSet, PipelineError> {
        Ok(RuleSet::all().with_overrides(&self.thresholds)?)
    }

    pub fn reports_dir(&self) -> PathBuf {
        self.out.join(REPORTS_DIR)
    }

    pub fn scores_dir(&self) -> PathBuf {
        self.out.join(SCORES_DIR)
    }

    pub fn stats_dir(&self) -> PathBuf {
        self.out.join(STATS_DIR)
    }

    pub fn tables_dir(&self) -> PathBuf {
        self.out.join(TABLES_DIR)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnalyzeSummary {
    pub reports: usize,
    /// Reports whose inputs changed since the last run.
    pub recomputed: usize,
    pub files_written: usize,
    pub failures: BTreeMap<String, Vec<FailureEntry>>,
}

fn pool(parallelism: usize) -> Result<rayon::ThreadPool, PipelineError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| PipelineError::Config(format!("cannot start {parallelism} workers: {e}")))
}

/// Analyses every (subject, task) pair, reusing persisted reports whose
/// inputs are unchanged. All writes happen on the calling thread.
pub fn analyze(
    config: &RunConfig,
    corpus: &Corpus,
    subjects: &[String],
) -> Result<(CorpusReports, AnalyzeSummary), PipelineError> {
    let rules = config.rules()?;
    let store = ReportStore::new(config.reports_dir());
    let jobs = corpus_jobs(corpus, subjects);
    let old: BTreeMap<&str, BTreeMap<String, String>> =
        subjects.iter().map(|s| (s.as_str(), store.read_digests(s))).collect();

    let results: Vec<(ViolationReport, String, bool)> = pool(config.parallelism)?.install(|| {
        jobs.par_iter()
            .map(|job| {
                let digest = job_digest(job, &rules);
                let subject = job.subject.model_id.as_str();
                let unchanged = old[subject].get(&job.subject.task_id) == Some(&digest);
                if unchanged {
                    if let Ok(r) = store.read(subject, &job.subject.task_id) {
                        return (r, digest, false);
                    }
                }
                (run_job(job, &rules), digest, true)
            })
            .collect()
    });

    let mut summary = AnalyzeSummary::default();
    let mut reports: CorpusReports = subjects.iter().map(|s| (s.clone(), BTreeMap::new())).collect();
    let mut digests: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for (report, digest, fresh) in results {
        summary.reports += 1;
        summary.recomputed += usize::from(fresh);
        if store.write(&report)? {
            summary.files_written += 1;
        }
        let (subject, task) = (report.subject.model_id.clone(), report.subject.task_id.clone());
        digests.entry(subject.clone()).or_default().insert(task.clone(), digest);
        reports.entry(subject).or_default().insert(task, report);
    }
    for subject in subjects {
        let by_task = &reports[subject];
        store.write_failures(subject, by_task)?;
        store.write_digests(subject, digests.get(subject).unwrap_or(&BTreeMap::new()))?;
        let failed = store.read_failures(subject)?;
        if !failed.is_empty() {
            summary.failures.insert(subject.clone(), failed);
        }
    }
    Ok((reports, summary))
}

/// Reads the persisted reports of `subjects`.
pub fn load_reports(config: &RunConfig, subjects: &[String]) -> Result<CorpusReports, PipelineError> {
    let store = ReportStore::new(config.reports_dir());
    subjects
        .iter()
        .map(|s| Ok((s.clone(), store.read_subject(s)?)))
        .collect()
}

/// Scores every configured scenario × rule set and persists the sheets.
/// Returns the sheets and how many files changed.
pub fn score(
    config: &RunConfig,
    corpus: &Corpus,
    reports: &CorpusReports,
    subjects: &[String],
) -> Result<(Vec<ScoreSheet>, usize), PipelineError> {
    let mut sheets = Vec::new();
    let mut written = 0;
    for scenario in &config.scenarios {
        for ruleset in &config.rulesets {
            let sheet = score_scenario(corpus, reports, subjects, scenario, ruleset)?;
            written += usize::from(write_sheet(&config.scores_dir(), &sheet)?);
            sheets.push(sheet);
        }
    }
    written += write_stats(&config.stats_dir(), &sheets, reports)?;
    Ok((sheets, written))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub analyze: AnalyzeSummary,
    pub scorecards: usize,
    pub sheets: usize,
    pub tables: Vec<PathBuf>,
    pub files_written: usize,
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.analyze;
        writeln!(f, "{} reports ({} recomputed)", a.reports, a.recomputed)?;
        writeln!(f, "{} scorecards in {} sheets", self.scorecards, self.sheets)?;
        writeln!(f, "{} tables", self.tables.len())?;
        for (subject, failed) in &a.failures {
            writeln!(f, "{subject}: {} unparseable solutions", failed.len())?;
        }
        write!(f, "{} files changed", self.files_written)
    }
}

/// analyze → score → report.
pub fn run_pipeline(config: &RunConfig) -> Result<RunSummary, PipelineError> {
    config.validate()?;
    let corpus = config.load_corpus()?;
    let subjects = config.resolve_subjects(&corpus)?;
    let (reports, analyze_summary) = analyze(config, &corpus, &subjects)?;
    let (sheets, score_written) = score(config, &corpus, &reports, &subjects)?;
    let tables = render_tables(&config.scores_dir(), &config.stats_dir(), &config.tables_dir())?;
    Ok(RunSummary {
        files_written: analyze_summary.files_written + score_written + tables.iter().filter(|t| t.1).count(),
        analyze: analyze_summary,
        scorecards: sheets.iter().map(|s| s.cards.len()).sum(),
        sheets: sheets.len(),
        tables: tables.into_iter().map(|t| t.0).collect(),
    })
}
