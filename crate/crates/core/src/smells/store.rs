//! Persisted violation reports: `reports/<subject>/<task_id>.json` plus a
//! `_failures.json` roster per subject.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ViolationReport;
use crate::fsutil::write_if_changed;
use crate::java::Span;

pub const FAILURES_FILE: &str = "_failures.json";
const DIGESTS_FILE: &str = "_digests.json";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed report {path}: {message}")]
    Json { path: PathBuf, message: String },
}

impl StoreError {
    pub fn path(&self) -> &Path {
        match self {
            StoreError::Io { path, .. } | StoreError::Json { path, .. } => path,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// One unparseable solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureEntry {
    pub task_id: String,
    pub span: Span,
    pub message: String,
}

/// Pretty JSON with a trailing newline; the canonical on-disk encoding.
pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("serializable");
    bytes.push(b'\n');
    bytes
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, StoreError> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    serde_json::from_slice(&bytes).map_err(|e| StoreError::Json {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Directory of persisted reports, one subdirectory per subject.
#[derive(Debug, Clone)]
pub struct ReportStore {
    root: PathBuf,
}

impl ReportStore {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn report_path(&self, subject: &str, task_id: &str) -> PathBuf {
        self.root.join(subject).join(format!("{task_id}.json"))
    }

    /// Writes `report` under its subject. Returns whether the file changed.
    pub fn write(&self, report: &ViolationReport) -> Result<bool, StoreError> {
        let path = self.report_path(&report.subject.model_id, &report.subject.task_id);
        write_if_changed(&path, &to_json(report)).map_err(io_err(&path))
    }

    pub fn read(&self, subject: &str, task_id: &str) -> Result<ViolationReport, StoreError> {
        read_json(&self.report_path(subject, task_id))
    }

    /// Subjects that have a report directory, sorted.
    pub fn subjects(&self) -> Result<Vec<String>, StoreError> {
        let mut out = Vec::new();
        let entries = match fs::read_dir(&self.root) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(io_err(&self.root)(e)),
        };
        for entry in entries {
            let entry = entry.map_err(io_err(&self.root))?;
            if entry.path().is_dir() {
                out.push(entry.file_name().to_string_lossy().into_owned());
            }
        }
        out.sort();
        Ok(out)
    }

    /// Every report of `subject`, keyed by task id.
    pub fn read_subject(&self, subject: &str) -> Result<BTreeMap<String, ViolationReport>, StoreError> {
        let dir = self.root.join(subject);
        let mut out = BTreeMap::new();
        for entry in fs::read_dir(&dir).map_err(io_err(&dir))? {
            let path = entry.map_err(io_err(&dir))?.path();
            let Some(name) = path.file_name().and_then(|n| n.to_str()) else {
                continue;
            };
            if name.starts_with('_') || !name.ends_with(".json") {
                continue;
            }
            let report: ViolationReport = read_json(&path)?;
            out.insert(report.subject.task_id.clone(), report);
        }
        Ok(out)
    }

    /// Writes the failure roster of `subject`, sorted by task id.
    pub fn write_failures(
        &self,
        subject: &str,
        reports: &BTreeMap<String, ViolationReport>,
    ) -> Result<bool, StoreError> {
        let roster: Vec<FailureEntry> = reports
            .values()
            .filter_map(|r| {
                r.parse_error.as_ref().map(|f| FailureEntry {
                    task_id: r.subject.task_id.clone(),
                    span: f.span,
                    message: f.message.clone(),
                })
            })
            .collect();
        let path = self.root.join(subject).join(FAILURES_FILE);
        write_if_changed(&path, &to_json(&roster)).map_err(io_err(&path))
    }

    pub fn read_failures(&self, subject: &str) -> Result<Vec<FailureEntry>, StoreError> {
        read_json(&self.root.join(subject).join(FAILURES_FILE))
    }

    /// Input digests recorded for `subject` (task id → hex digest); empty if
    /// none were recorded yet.
    pub fn read_digests(&self, subject: &str) -> BTreeMap<String, String> {
        read_json(&self.root.join(subject).join(DIGESTS_FILE)).unwrap_or_default()
    }

    pub fn write_digests(&self, subject: &str, digests: &BTreeMap<String, String>) -> Result<bool, StoreError> {
        let path = self.root.join(subject).join(DIGESTS_FILE);
        write_if_changed(&path, &to_json(digests)).map_err(io_err(&path))
    }
}
