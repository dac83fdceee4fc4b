//! Random corpora and report sets, plus brute-force recounts over them.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use smellbench_core::corpus::{CodingTask, ComplexityTriple, Corpus, GeneratedSolution, TaskSource};
use smellbench_core::java::{ParseFailure, Span};
use smellbench_core::smells::{catalog, RuleSet, Subject, Violation, ViolationReport};

pub const TOPICS: [&str; 5] = ["Arrays", "Classes", "Loops", "Recursion", "Strings"];
pub const MODELS: [&str; 2] = ["m1", "m2"];

pub fn rule_ids() -> Vec<String> {
    catalog().into_iter().map(|r| r.rule_id).collect()
}

/// Up to `max` distinct catalog rules.
pub fn random_rules(rng: &mut impl Rng, max: usize) -> Vec<String> {
    let all = rule_ids();
    let n = rng.gen_range(1..=max);
    all.choose_multiple(rng, n).cloned().collect()
}

/// A report whose violations are spread over `counts`.
pub fn report_with(task: &str, model: &str, counts: &[(String, u32)]) -> ViolationReport {
    let violations = counts
        .iter()
        .flat_map(|(rule, n)| {
            (0..*n).map(move |i| Violation {
                rule_id: rule.clone(),
                file: "Main.java".into(),
                span: Span::point(i + 1, 1),
                message: format!("{rule} #{i}"),
                snippet: String::new(),
            })
        })
        .collect();
    ViolationReport::from_violations(Subject::new(task, model), violations, &RuleSet::all())
}

pub fn failed_report(task: &str, model: &str) -> ViolationReport {
    ViolationReport::parse_failure(
        Subject::new(task, model),
        ParseFailure {
            span: Span::point(1, 1),
            message: "unexpected token".into(),
        },
    )
}

/// Reports for `n_tasks` tasks over `rules`; about one in eight fails to parse.
pub fn random_reports(rng: &mut impl Rng, model: &str, n_tasks: usize, rules: &[String]) -> Vec<ViolationReport> {
    (0..n_tasks)
        .map(|i| {
            let task = format!("T{i:02}");
            if rng.gen_ratio(1, 8) {
                failed_report(&task, model)
            } else {
                let counts: Vec<(String, u32)> = rules.iter().map(|r| (r.clone(), rng.gen_range(0..5))).collect();
                report_with(&task, model, &counts)
            }
        })
        .collect()
}

/// Σ over parsed reports of violations whose rule is in `rules`, divided by
/// the number of parsed reports. Walks the raw violation lists.
pub fn brute_vs(reports: &[ViolationReport], rules: &BTreeSet<String>) -> Option<Ratio<i64>> {
    let mut total = 0i64;
    let mut n = 0i64;
    for r in reports {
        if r.parse_error.is_some() {
            continue;
        }
        n += 1;
        for v in &r.violations {
            if rules.contains(&v.rule_id) {
                total += 1;
            }
        }
    }
    (n > 0).then(|| Ratio::new(total, n))
}

pub fn task(
    id: &str,
    topic: &str,
    source: TaskSource,
    cyclomatic: u32,
    solutions: Vec<GeneratedSolution>,
) -> CodingTask {
    CodingTask {
        task_id: id.into(),
        source,
        topic: topic.into(),
        description: "Write a program".into(),
        input_length: 3,
        complexity: ComplexityTriple {
            cyclomatic,
            cognitive: cyclomatic * 2,
            loc: cyclomatic * 7 + 3,
        },
        reference_path: format!("{id}/ref.java"),
        solutions,
    }
}

pub fn solution(model: &str, id: &str, correct: Option<bool>) -> GeneratedSolution {
    GeneratedSolution {
        model_id: model.into(),
        path: format!("{id}/{model}.java"),
        correct,
    }
}

/// A corpus value without backing files, for partition checks.
pub fn in_memory(tasks: Vec<CodingTask>) -> Corpus {
    let models = tasks
        .iter()
        .flat_map(|t| t.solutions.iter().map(|s| s.model_id.clone()))
        .collect();
    Corpus {
        root: PathBuf::from("."),
        tasks,
        models,
    }
}

pub fn random_corpus(rng: &mut impl Rng) -> Corpus {
    let n = rng.gen_range(1..=40);
    let tasks = (0..n)
        .map(|i| {
            let id = format!("T{i:03}");
            let source = if rng.gen_bool(0.5) {
                TaskSource::Textbook
            } else {
                TaskSource::Stackoverflow
            };
            let flags = [Some(true), Some(false), None];
            let mut solutions = Vec::new();
            for m in MODELS {
                if rng.gen_ratio(9, 10) {
                    solutions.push(solution(m, &id, *flags.choose(rng).unwrap()));
                }
            }
            task(
                &id,
                TOPICS.choose(rng).unwrap(),
                source,
                rng.gen_range(1..=25),
                solutions,
            )
        })
        .collect();
    in_memory(tasks)
}

/// Task ids per label, recomputed directly from task metadata.
pub fn recount<F: Fn(&CodingTask) -> Option<String>>(corpus: &Corpus, key: F) -> BTreeMap<String, BTreeSet<String>> {
    let mut out: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for t in &corpus.tasks {
        if let Some(k) = key(t) {
            out.entry(k).or_default().insert(t.task_id.clone());
        }
    }
    out
}
