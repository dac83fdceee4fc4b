//! Inputs shared by the benchmarks.

use std::path::PathBuf;

use smellbench_core::corpus::{load_manifest, Corpus};

/// The ten-task fixture corpus used by the core tests.
pub fn mini_corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/mini_corpus")
}

pub fn mini_corpus() -> Corpus {
    load_manifest(&mini_corpus_dir()).expect("fixture corpus loads")
}

/// Every reference and solution file of the fixture corpus as `(path, text)`.
pub fn sources() -> Vec<(String, String)> {
    let dir = mini_corpus_dir();
    let corpus = mini_corpus();
    let mut out = Vec::new();
    for t in &corpus.tasks {
        let paths = std::iter::once(&t.reference_path).chain(t.solutions.iter().map(|s| &s.path));
        for p in paths {
            out.push((
                p.clone(),
                std::fs::read_to_string(dir.join(p)).expect("fixture readable"),
            ));
        }
    }
    out
}
