//! Detection over a whole corpus.

use std::collections::BTreeMap;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::{detect_units, RuleSet, Subject, ViolationReport};
use crate::corpus::Corpus;
use crate::java::{parse, ParseFailure, SourceFile, Span};

/// Reports keyed by subject, then task id.
pub type CorpusReports = BTreeMap<String, BTreeMap<String, ViolationReport>>;

/// One (subject, task) pair to analyse: the corpus-relative path and text.
#[derive(Debug, Clone)]
pub struct Job {
    pub subject: Subject,
    pub path: String,
    /// File contents, or the read error.
    pub text: Result<String, String>,
}

/// Collects the files of every (subject, task) pair. Tasks without a
/// solution for a subject are skipped.
pub fn corpus_jobs(corpus: &Corpus, subjects: &[String]) -> Vec<Job> {
    let mut jobs = Vec::new();
    for subject in subjects {
        for task in &corpus.tasks {
            let Some(rel) = task.subject_path(subject) else {
                continue;
            };
            let text = std::fs::read_to_string(corpus.resolve(rel)).map_err(|e| e.to_string());
            jobs.push(Job {
                subject: Subject::new(&task.task_id, subject),
                path: rel.to_string(),
                text,
            });
        }
    }
    jobs
}

/// Analyses one job. Unreadable files become failure reports.
pub fn run_job(job: &Job, rules: &RuleSet) -> ViolationReport {
    match &job.text {
        Ok(text) => {
            let outcome = parse(SourceFile::new(&job.path, text.as_str()));
            detect_units(job.subject.clone(), std::slice::from_ref(&outcome), rules)
        }
        Err(e) => ViolationReport::parse_failure(
            job.subject.clone(),
            ParseFailure {
                span: Span::point(1, 1),
                message: format!("cannot read {}: {e}", job.path),
            },
        ),
    }
}

/// Hex digest of everything a job's report depends on.
pub fn job_digest(job: &Job, rules: &RuleSet) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update(serde_json::to_vec(rules.rules()).expect("serializable"));
    h.update(job.subject.task_id.as_bytes());
    h.update([0]);
    h.update(job.path.as_bytes());
    h.update([0]);
    match &job.text {
        Ok(t) => h.update(t.as_bytes()),
        Err(e) => h.update(e.as_bytes()),
    }
    hex::encode(h.finalize())
}

/// One report per (subject, task) pair that has a file. Runs in parallel;
/// the result does not depend on scheduling.
pub fn detect_corpus(corpus: &Corpus, subjects: &[String], rules: &RuleSet) -> CorpusReports {
    let jobs = corpus_jobs(corpus, subjects);
    let reports: Vec<ViolationReport> = jobs.par_iter().map(|j| run_job(j, rules)).collect();
    let mut out: CorpusReports = subjects.iter().map(|s| (s.clone(), BTreeMap::new())).collect();
    for r in reports {
        out.entry(r.subject.model_id.clone())
            .or_default()
            .insert(r.subject.task_id.clone(), r);
    }
    out
}
