//! Benchmark data model and manifest loading.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MANIFEST_FILE: &str = "corpus.json";
/// Subject name used for reference solutions.
pub const BASELINE: &str = "baseline";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskSource {
    Textbook,
    Stackoverflow,
}

impl TaskSource {
    pub fn as_str(self) -> &'static str {
        match self {
            TaskSource::Textbook => "textbook",
            TaskSource::Stackoverflow => "stackoverflow",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexityTriple {
    pub cyclomatic: u32,
    pub cognitive: u32,
    pub loc: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedSolution {
    pub model_id: String,
    pub path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correct: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodingTask {
    pub task_id: String,
    pub source: TaskSource,
    pub topic: String,
    pub description: String,
    pub input_length: u32,
    pub complexity: ComplexityTriple,
    pub reference_path: String,
    #[serde(default)]
    pub solutions: Vec<GeneratedSolution>,
}

impl CodingTask {
    pub fn solution(&self, model_id: &str) -> Option<&GeneratedSolution> {
        self.solutions.iter().find(|s| s.model_id == model_id)
    }

    /// Relative path of the file analysed for `subject` (a model id or [`BASELINE`]).
    pub fn subject_path(&self, subject: &str) -> Option<&str> {
        if subject == BASELINE {
            Some(&self.reference_path)
        } else {
            self.solution(subject).map(|s| s.path.as_str())
        }
    }
}

/// On-disk manifest layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub tasks: Vec<CodingTask>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub root: PathBuf,
    pub tasks: Vec<CodingTask>,
    pub models: BTreeSet<String>,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed manifest {path}: {message}")]
    ManifestSyntax { path: PathBuf, message: String },
    #[error("task {task_id}: missing file {path}")]
    MissingFile { task_id: String, path: PathBuf },
    #[error("duplicate task id {0}")]
    DuplicateTask(String),
    #[error("task {task_id}: duplicate solution for model {model_id}")]
    DuplicateSolution { task_id: String, model_id: String },
    #[error("task {task_id}: {message}")]
    InvalidTask { task_id: String, message: String },
    #[error("corpus has no tasks")]
    Empty,
}

pub fn word_count(text: &str) -> u32 {
    text.split_whitespace().count() as u32
}

impl Corpus {
    /// Builds a corpus rooted at `root`, checking every invariant including
    /// that referenced files exist.
    pub fn new(root: impl Into<PathBuf>, tasks: Vec<CodingTask>) -> Result<Self, CorpusError> {
        let root = root.into();
        if tasks.is_empty() {
            return Err(CorpusError::Empty);
        }
        let mut seen = HashSet::new();
        let mut models = BTreeSet::new();
        for t in &tasks {
            if !seen.insert(t.task_id.as_str()) {
                return Err(CorpusError::DuplicateTask(t.task_id.clone()));
            }
            let invalid = |message: String| CorpusError::InvalidTask {
                task_id: t.task_id.clone(),
                message,
            };
            if t.task_id.is_empty() {
                return Err(invalid("empty task id".into()));
            }
            if t.topic.trim().is_empty() {
                return Err(invalid("empty topic".into()));
            }
            if t.input_length == 0 || t.input_length != word_count(&t.description) {
                return Err(invalid(format!(
                    "input_length {} does not match description word count {}",
                    t.input_length,
                    word_count(&t.description)
                )));
            }
            if t.complexity.cyclomatic < 1 || t.complexity.loc < 1 {
                return Err(invalid("complexity cyclomatic and loc must be at least 1".into()));
            }
            let mut task_models = HashSet::new();
            for s in &t.solutions {
                if s.model_id.is_empty() || s.model_id == BASELINE {
                    return Err(invalid(format!("invalid model id {:?}", s.model_id)));
                }
                if !task_models.insert(s.model_id.as_str()) {
                    return Err(CorpusError::DuplicateSolution {
                        task_id: t.task_id.clone(),
                        model_id: s.model_id.clone(),
                    });
                }
                models.insert(s.model_id.clone());
            }
            for rel in std::iter::once(&t.reference_path).chain(t.solutions.iter().map(|s| &s.path)) {
                let p = root.join(rel);
                if !p.is_file() {
                    return Err(CorpusError::MissingFile {
                        task_id: t.task_id.clone(),
                        path: p,
                    });
                }
            }
        }
        Ok(Self { root, tasks, models })
    }

    pub fn resolve(&self, rel: &str) -> PathBuf {
        self.root.join(rel)
    }

    pub fn task(&self, task_id: &str) -> Option<&CodingTask> {
        self.tasks.iter().find(|t| t.task_id == task_id)
    }

    pub fn topics(&self) -> BTreeSet<&str> {
        self.tasks.iter().map(|t| t.topic.as_str()).collect()
    }

    pub fn to_manifest(&self) -> Manifest {
        Manifest {
            tasks: self.tasks.clone(),
        }
    }
}

/// Loads `path`, which may name the manifest file or its directory.
pub fn load_manifest(path: &Path) -> Result<Corpus, CorpusError> {
    let file = if path.is_dir() {
        path.join(MANIFEST_FILE)
    } else {
        path.to_path_buf()
    };
    let text = fs::read_to_string(&file).map_err(|source| CorpusError::Io {
        path: file.clone(),
        source,
    })?;
    let manifest: Manifest = serde_json::from_str(&text).map_err(|e| CorpusError::ManifestSyntax {
        path: file.clone(),
        message: e.to_string(),
    })?;
    let root = file.parent().map(Path::to_path_buf).unwrap_or_default();
    Corpus::new(root, manifest.tasks)
}

pub fn manifest_json(manifest: &Manifest) -> String {
    let mut s = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    s.push('\n');
    s
}

/// Writes the corpus manifest into `dir` atomically.
pub fn save_manifest(corpus: &Corpus, dir: &Path) -> std::io::Result<PathBuf> {
    let path = dir.join(MANIFEST_FILE);
    crate::fsutil::write_atomic(&path, manifest_json(&corpus.to_manifest()).as_bytes())?;
    Ok(path)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricStats {
    pub min: u32,
    pub avg: f64,
    pub max: u32,
}

impl MetricStats {
    fn of(values: impl Iterator<Item = u32>) -> Self {
        let v: Vec<u32> = values.collect();
        let sum: u64 = v.iter().map(|&x| x as u64).sum();
        Self {
            min: v.iter().copied().min().unwrap_or(0),
            avg: if v.is_empty() { 0.0 } else { sum as f64 / v.len() as f64 },
            max: v.iter().copied().max().unwrap_or(0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationSummary {
    pub n_tasks: usize,
    pub n_solutions: usize,
    pub n_topics: usize,
    pub tasks_per_source: BTreeMap<TaskSource, usize>,
    pub topics_per_source: BTreeMap<TaskSource, usize>,
    pub solutions_per_model: BTreeMap<String, usize>,
    pub unknown_correctness: usize,
    pub input_length: MetricStats,
    pub cyclomatic: MetricStats,
    pub cognitive: MetricStats,
    pub loc: MetricStats,
}

pub fn validate_corpus(corpus: &Corpus) -> ValidationSummary {
    let tasks = &corpus.tasks;
    let mut tasks_per_source = BTreeMap::new();
    let mut topics_by_source: BTreeMap<TaskSource, BTreeSet<&str>> = BTreeMap::new();
    let mut solutions_per_model = BTreeMap::new();
    let mut unknown = 0;
    for t in tasks {
        *tasks_per_source.entry(t.source).or_insert(0) += 1;
        topics_by_source.entry(t.source).or_default().insert(&t.topic);
        for s in &t.solutions {
            *solutions_per_model.entry(s.model_id.clone()).or_insert(0) += 1;
            if s.correct.is_none() {
                unknown += 1;
            }
        }
    }
    ValidationSummary {
        n_tasks: tasks.len(),
        n_solutions: tasks.iter().map(|t| t.solutions.len()).sum(),
        n_topics: corpus.topics().len(),
        tasks_per_source,
        topics_per_source: topics_by_source.into_iter().map(|(k, v)| (k, v.len())).collect(),
        solutions_per_model,
        unknown_correctness: unknown,
        input_length: MetricStats::of(tasks.iter().map(|t| t.input_length)),
        cyclomatic: MetricStats::of(tasks.iter().map(|t| t.complexity.cyclomatic)),
        cognitive: MetricStats::of(tasks.iter().map(|t| t.complexity.cognitive)),
        loc: MetricStats::of(tasks.iter().map(|t| t.complexity.loc)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn task(id: &str, topic: &str, source: TaskSource, cc: u32) -> CodingTask {
        CodingTask {
            task_id: id.into(),
            source,
            topic: topic.into(),
            description: "write a program".into(),
            input_length: 3,
            complexity: ComplexityTriple {
                cyclomatic: cc,
                cognitive: 0,
                loc: 10,
            },
            reference_path: "ref.java".into(),
            solutions: vec![GeneratedSolution {
                model_id: "m1".into(),
                path: "m1.java".into(),
                correct: None,
            }],
        }
    }

    fn root() -> tempfile::TempDir {
        let d = tempfile::tempdir().unwrap();
        fs::write(d.path().join("ref.java"), "class A {}").unwrap();
        fs::write(d.path().join("m1.java"), "class A {}").unwrap();
        d
    }

    #[test]
    fn two_tasks_one_model() {
        let d = root();
        let c = Corpus::new(
            d.path(),
            vec![
                task("T1", "String", TaskSource::Textbook, 1),
                task("T2", "Loop", TaskSource::Stackoverflow, 2),
            ],
        )
        .unwrap();
        assert_eq!(c.tasks.len(), 2);
        assert_eq!(c.models.iter().collect::<Vec<_>>(), vec!["m1"]);
    }

    #[test]
    fn duplicate_task_rejected() {
        let d = root();
        let err = Corpus::new(
            d.path(),
            vec![
                task("T7", "A", TaskSource::Textbook, 1),
                task("T7", "A", TaskSource::Textbook, 1),
            ],
        );
        assert!(matches!(err, Err(CorpusError::DuplicateTask(id)) if id == "T7"));
    }

    #[test]
    fn missing_file_rejected() {
        let d = root();
        let mut t = task("T1", "A", TaskSource::Textbook, 1);
        t.solutions[0].path = "nope.java".into();
        assert!(matches!(
            Corpus::new(d.path(), vec![t]),
            Err(CorpusError::MissingFile { .. })
        ));
    }

    #[test]
    fn input_length_must_match_description() {
        let d = root();
        let mut t = task("T1", "A", TaskSource::Textbook, 1);
        t.input_length = 4;
        assert!(matches!(
            Corpus::new(d.path(), vec![t]),
            Err(CorpusError::InvalidTask { .. })
        ));
    }

    #[test]
    fn malformed_manifest() {
        let d = root();
        fs::write(d.path().join(MANIFEST_FILE), "{ \"tasks\": [ }").unwrap();
        assert!(matches!(
            load_manifest(d.path()),
            Err(CorpusError::ManifestSyntax { .. })
        ));
    }

    #[test]
    fn round_trip() {
        let d = root();
        let c = Corpus::new(d.path(), vec![task("T1", "A", TaskSource::Textbook, 1)]).unwrap();
        save_manifest(&c, d.path()).unwrap();
        let again = load_manifest(&d.path().join(MANIFEST_FILE)).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn summary_counts() {
        let d = root();
        let c = Corpus::new(
            d.path(),
            vec![
                task("T1", "A", TaskSource::Textbook, 1),
                task("T2", "B", TaskSource::Textbook, 2),
                task("T3", "A", TaskSource::Stackoverflow, 6),
            ],
        )
        .unwrap();
        let s = validate_corpus(&c);
        assert_eq!(s.n_tasks, 3);
        assert_eq!(s.n_solutions, 3);
        assert_eq!(s.n_topics, 2);
        assert_eq!(s.tasks_per_source[&TaskSource::Textbook], 2);
        assert_eq!(s.topics_per_source[&TaskSource::Textbook], 2);
        assert_eq!(s.topics_per_source[&TaskSource::Stackoverflow], 1);
        assert_eq!(s.unknown_correctness, 3);
        assert_eq!((s.cyclomatic.min, s.cyclomatic.max), (1, 6));
        assert_eq!(s.cyclomatic.avg, 3.0);
    }
}
