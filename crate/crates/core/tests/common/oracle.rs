//! Loads the hand-audited expectations for the mini corpus and compares a
//! pipeline output tree against them.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use smellbench_core::pipeline::{run_pipeline, RunConfig, RunSummary};
use smellbench_core::scoreboard::{read_sheets, ScenarioSelector};
use smellbench_core::smells::store::ReportStore;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn mini_corpus() -> PathBuf {
    fixtures().join("mini_corpus")
}

fn oracle_csv(name: &str) -> Vec<BTreeMap<String, String>> {
    let path = fixtures().join("mini_corpus_oracle").join(name);
    let mut r = csv::Reader::from_path(&path).unwrap();
    r.deserialize().map(|row| row.unwrap()).collect()
}

pub fn oracle_scenarios() -> Vec<ScenarioSelector> {
    [
        "all",
        "topic",
        "source",
        "complexity:cyclomatic",
        "complexity:loc",
        "correctness:m1",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

pub fn oracle_config(out: &Path, parallelism: usize) -> RunConfig {
    RunConfig {
        corpus: mini_corpus(),
        scenarios: oracle_scenarios(),
        rulesets: ["all", "implementation", "design"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect(),
        out: out.to_path_buf(),
        parallelism,
        ..RunConfig::default()
    }
}

pub fn run_mini(out: &Path, parallelism: usize) -> RunSummary {
    run_pipeline(&oracle_config(out, parallelism)).unwrap()
}

/// `(subject, task) -> sorted (rule_id, line, col)` expected by the oracle.
pub fn expected_violations() -> BTreeMap<(String, String), Vec<(String, u32, u32)>> {
    let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
    for row in oracle_csv("violations.csv") {
        out.entry((row["subject"].clone(), row["task_id"].clone()))
            .or_default()
            .push((
                row["rule_id"].clone(),
                row["line"].parse().unwrap(),
                row["col"].parse().unwrap(),
            ));
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

/// Mismatches between persisted reports under `out` and the oracle lists.
pub fn violation_mismatches(out: &Path) -> Vec<String> {
    let store = ReportStore::new(out.join("reports"));
    let expected = expected_violations();
    let failures: BTreeMap<(String, String), (u32, u32)> = oracle_csv("failures.csv")
        .into_iter()
        .map(|row| {
            let key = (row["subject"].clone(), row["task_id"].clone());
            (key, (row["line"].parse().unwrap(), row["col"].parse().unwrap()))
        })
        .collect();
    let mut problems = Vec::new();
    for subject in ["baseline", "m1"] {
        for (task, report) in store.read_subject(subject).unwrap() {
            let key = (subject.to_string(), task.clone());
            if let Some(&at) = failures.get(&key) {
                let got = report
                    .parse_error
                    .as_ref()
                    .map(|e| (e.span.start_line, e.span.start_col));
                if got != Some(at) {
                    problems.push(format!("{subject}/{task}: parse failure at {got:?}, want {at:?}"));
                }
                continue;
            }
            let mut got: Vec<(String, u32, u32)> = report
                .violations
                .iter()
                .map(|v| (v.rule_id.clone(), v.span.start_line, v.span.start_col))
                .collect();
            got.sort();
            let want = expected.get(&key).cloned().unwrap_or_default();
            if got != want {
                problems.push(format!("{subject}/{task}: got {got:?}, want {want:?}"));
            }
        }
    }
    problems
}

/// Mismatches between the persisted scorecards and the oracle rows.
pub fn scorecard_mismatches(out: &Path) -> Vec<String> {
    let sheets = read_sheets(&out.join("scores")).unwrap();
    let mut got: BTreeMap<(String, String, String, String), Vec<String>> = BTreeMap::new();
    for sheet in &sheets {
        for c in &sheet.cards {
            let rate = |r: Option<smellbench_core::Rate>| r.map(|r| r.to_string()).unwrap_or_default();
            got.insert(
                (
                    sheet.scenario.to_string(),
                    sheet.ruleset.to_string(),
                    c.subset.clone(),
                    c.subject.clone(),
                ),
                vec![
                    c.n_tasks.to_string(),
                    c.n_analyzed.to_string(),
                    c.n_failed.to_string(),
                    c.total_violations.to_string(),
                    rate(c.vs),
                    rate(c.baseline_vs),
                    rate(c.increase_rate),
                ],
            );
        }
    }
    let mut problems = Vec::new();
    let rows = oracle_csv("scorecards.csv");
    for row in &rows {
        let key = (
            row["scenario"].clone(),
            row["ruleset"].clone(),
            row["subset"].clone(),
            row["subject"].clone(),
        );
        let want: Vec<String> = [
            "n_tasks",
            "n_analyzed",
            "n_failed",
            "total_violations",
            "vs",
            "baseline_vs",
            "increase_rate",
        ]
        .iter()
        .map(|k| row[*k].clone())
        .collect();
        match got.get(&key) {
            Some(g) if *g == want => {}
            Some(g) => problems.push(format!("{key:?}: got {g:?}, want {want:?}")),
            None => problems.push(format!("{key:?}: missing")),
        }
    }
    if got.len() != rows.len() {
        problems.push(format!("{} scorecards produced, oracle has {}", got.len(), rows.len()));
    }
    problems
}

pub fn tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.insert(
                    path.strip_prefix(root).unwrap().to_path_buf(),
                    std::fs::read(&path).unwrap(),
                );
            }
        }
    }
    out
}
