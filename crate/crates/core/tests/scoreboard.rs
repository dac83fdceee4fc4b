mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::synth::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use smellbench_core::corpus::{TaskSource, BASELINE};
use smellbench_core::scoreboard::*;
use smellbench_core::smells::{SmellType, ViolationReport};

fn set(ids: &[String]) -> BTreeSet<String> {
    ids.iter().cloned().collect()
}

fn r(n: i64, d: i64) -> Rate {
    Rate::new(n, d)
}

#[test]
fn vs_matches_recount_on_random_reports() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..50 {
        let rules = random_rules(&mut rng, 10);
        let s = set(&rules);
        let n = rng.gen_range(1..=20);
        let model = random_reports(&mut rng, "m1", n, &rules);
        let base = random_reports(&mut rng, BASELINE, n, &rules);
        let vs = compute_vs(&model, &s).ok();
        assert_eq!(vs, brute_vs(&model, &s));
        let b = compute_baseline_vs(&base, &s).ok();
        assert_eq!(b, brute_vs(&base, &s));
        if let (Some(v), Some(b)) = (vs, b) {
            match compute_increase(v, b) {
                Ok(inc) => assert_eq!(inc * b, v - b),
                Err(ScoreError::UndefinedBaseline) => assert_eq!(b, r(0, 1)),
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn rule_set_additivity_and_task_mixture() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..30 {
        let rules = random_rules(&mut rng, 10);
        if rules.len() < 2 {
            continue;
        }
        let (a, b) = rules.split_at(rules.len() / 2);
        let reports = random_reports(&mut rng, "m1", 12, &rules);
        let Ok(whole) = compute_vs(&reports, &set(&rules)) else {
            continue;
        };
        assert_eq!(
            whole,
            compute_vs(&reports, &set(a)).unwrap() + compute_vs(&reports, &set(b)).unwrap()
        );

        let (t1, t2) = reports.split_at(5);
        let n1 = t1.iter().filter(|r| r.parse_ok).count() as i64;
        let n2 = t2.iter().filter(|r| r.parse_ok).count() as i64;
        if n1 == 0 || n2 == 0 {
            continue;
        }
        let s = set(&rules);
        let mixed = (compute_vs(t1, &s).unwrap() * n1 + compute_vs(t2, &s).unwrap() * n2) / (n1 + n2);
        assert_eq!(mixed, whole);
    }
}

#[test]
fn scaling_counts_keeps_the_increase_rate() {
    let rules = vec!["magic-number".to_string(), "empty-block".to_string()];
    let s = set(&rules);
    let counts = |a: u32, b: u32| vec![(rules[0].clone(), a), (rules[1].clone(), b)];
    for c in 1..4 {
        let model = [
            report_with("t1", "m1", &counts(3 * c, c)),
            report_with("t2", "m1", &counts(0, 2 * c)),
        ];
        let base = [
            report_with("t1", BASELINE, &counts(c, 0)),
            report_with("t2", BASELINE, &counts(c, 0)),
        ];
        let inc = compute_increase(compute_vs(&model, &s).unwrap(), compute_vs(&base, &s).unwrap()).unwrap();
        assert_eq!(inc, r(2, 1));
    }
}

#[test]
fn parse_failures_leave_both_sums() {
    let rules = vec!["magic-number".to_string()];
    let ok = report_with("t1", "m1", &[(rules[0].clone(), 4)]);
    let t = Tally::of([&ok, &failed_report("t2", "m1")], &set(&rules));
    assert_eq!(
        (t.n_reports, t.n_analyzed, t.n_failed(), t.total_violations),
        (2, 1, 1, 4)
    );
    assert_eq!(t.vs().unwrap(), r(4, 1));
}

#[test]
fn recorded_codex_total() {
    // 35,844 violations over 1000 analyzed solutions.
    let s = set(&["magic-number".to_string()]);
    let mut reports = Vec::new();
    for i in 0..1000 {
        let n = if i < 844 { 36 } else { 35 };
        reports.push(report_with(
            &format!("t{i}"),
            "codex",
            &[("magic-number".to_string(), n)],
        ));
    }
    assert_eq!(compute_vs(&reports, &s).unwrap(), r(35844, 1000));
}

#[test]
fn recorded_pairs_share_one_baseline() {
    let back_solve = |vs: Rate, inc: Rate| vs / (Rate::from_integer(1) + inc);
    let codex = back_solve(r(35844, 1000), r(8497, 10000));
    let falcon = back_solve(r(27571, 1000), r(4228, 10000));
    assert!((to_f64(codex) - to_f64(falcon)).abs() < 0.005);
    assert!((to_f64(codex) - 19.378).abs() < 0.005);
    let inc = compute_increase(r(35844, 1000), r(19378, 1000)).unwrap();
    assert!((to_f64(inc) - 0.8497).abs() < 0.0005);
    let b = r(19378, 1000);
    assert_eq!(compute_increase(b, b).unwrap(), r(0, 1));
    assert_eq!(compute_increase(b * 2, b).unwrap(), r(1, 1));
}

#[test]
fn partition_examples() {
    let c = in_memory(vec![
        task(
            "t1",
            "A",
            TaskSource::Textbook,
            1,
            vec![solution("m1", "t1", Some(true))],
        ),
        task(
            "t2",
            "A",
            TaskSource::Stackoverflow,
            2,
            vec![solution("m1", "t2", Some(false))],
        ),
        task("t3", "B", TaskSource::Textbook, 6, vec![solution("m1", "t3", None)]),
    ]);
    let by_topic = partition(&c, &ScenarioSelector::ByTopic { only: vec![] }).unwrap();
    assert_eq!(
        by_topic,
        vec![
            Subset {
                label: "A".into(),
                task_ids: vec!["t1".into(), "t2".into()]
            },
            Subset {
                label: "B".into(),
                task_ids: vec!["t3".into()]
            },
        ]
    );
    let by_correct = partition(&c, &"correctness:m1".parse().unwrap()).unwrap();
    assert_eq!(
        by_correct
            .iter()
            .map(|s| (s.label.as_str(), s.task_ids.len()))
            .collect::<Vec<_>>(),
        vec![("correct", 1), ("incorrect", 1)]
    );
    assert!(matches!(
        partition(&c, &"topic:C".parse().unwrap()),
        Err(ScoreError::UnknownTopic(_))
    ));
    assert!(matches!(
        partition(&c, &"correctness:m9".parse().unwrap()),
        Err(ScoreError::UnknownModel(_))
    ));
    let by_source = partition(&c, &ScenarioSelector::BySource).unwrap();
    assert_eq!(
        by_source.iter().map(|s| s.label.as_str()).collect::<Vec<_>>(),
        vec!["stackoverflow", "textbook"]
    );
}

#[test]
fn unit_buckets_over_one_to_six() {
    let tasks = (1..=6)
        .map(|c| task(&format!("t{c}"), "A", TaskSource::Textbook, c, vec![]))
        .collect();
    let c = in_memory(tasks);
    let buckets = partition(&c, &"complexity:cyclomatic".parse().unwrap()).unwrap();
    assert_eq!(
        buckets.iter().map(|b| b.label.as_str()).collect::<Vec<_>>(),
        vec!["1", "2", "3", "4", "5", "6"]
    );
    // loc = 7c + 3: 10, 17, 24, 31, 38, 45
    let loc = partition(&c, &"complexity:loc".parse().unwrap()).unwrap();
    assert_eq!(
        loc.iter()
            .map(|b| (b.label.as_str(), b.task_ids.len()))
            .collect::<Vec<_>>(),
        vec![("10-19", 2), ("20-29", 1), ("30-39", 2), ("40-49", 1)]
    );
}

#[test]
fn partitions_cover_random_corpora() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..30 {
        let c = random_corpus(&mut rng);
        let all: BTreeSet<String> = c.tasks.iter().map(|t| t.task_id.clone()).collect();
        for sel in [
            "topic",
            "source",
            "complexity:cyclomatic",
            "complexity:cognitive",
            "complexity:loc:7",
            "all",
        ] {
            let parts = partition(&c, &sel.parse().unwrap()).unwrap();
            let mut union = BTreeSet::new();
            for p in &parts {
                for t in &p.task_ids {
                    assert!(union.insert(t.clone()), "{sel}: {t} twice");
                }
            }
            assert_eq!(union, all, "{sel}");
        }
    }
}

fn card(subset: &str, vs: Option<Rate>, inc: Option<Rate>) -> ScoreCard {
    ScoreCard {
        subject: "m1".into(),
        subset: subset.into(),
        n_tasks: 1,
        n_reports: 1,
        n_analyzed: 1,
        n_failed: 0,
        total_violations: 0,
        vs,
        baseline_vs: None,
        increase_rate: inc,
    }
}

#[test]
fn ranking_examples() {
    let one = |v: i64| Some(r(v, 1));
    let cards = vec![
        card("A", one(1), Some(r(-1, 10))),
        card("B", one(5), Some(r(4, 10))),
        card("C", one(3), Some(r(0, 1))),
    ];
    let k1 = rank_topics(&cards, 1).unwrap();
    assert_eq!(k1.best[0].0, "A");
    assert_eq!(k1.worst[0].0, "B");
    assert_eq!(k1.most_improved[0].0, "A");
    assert_eq!(k1.most_worsened[0].0, "B");

    // Hand sort of five topics, with a tie between Q and S on VS.
    let cards = vec![
        card("S", Some(r(7, 2)), Some(r(1, 5))),
        card("P", one(2), Some(r(-1, 2))),
        card("R", one(6), Some(r(3, 4))),
        card("Q", Some(r(7, 2)), Some(r(1, 3))),
        card("T", one(1), Some(r(1, 5))),
    ];
    let k3 = rank_topics(&cards, 3).unwrap();
    let names = |v: &[(String, Rate)]| v.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>();
    assert_eq!(names(&k3.best), ["T", "P", "Q"]);
    assert_eq!(names(&k3.worst), ["R", "Q", "S"]);
    assert_eq!(names(&k3.most_improved), ["P", "S", "T"]);
    assert_eq!(names(&k3.most_worsened), ["R", "Q", "S"]);
    assert!(matches!(
        rank_topics(&cards, 6),
        Err(ScoreError::NotEnoughEntries { need: 6, have: 5 })
    ));
}

#[test]
fn top_smell_weights() {
    let counts = |a: u32, b: u32| vec![("magic-number".to_string(), a), ("empty-block".to_string(), b)];
    let reports = [
        report_with("t1", "m1", &counts(2, 0)),
        report_with("t2", "m1", &counts(0, 0)),
    ];
    let single = top_smells(&reports, SmellType::MagicNumber);
    assert_eq!(single.len(), 1);
    assert_eq!(single[0].weight, r(1, 1));
    assert_eq!(single[0].per_solution, r(1, 1));

    let pair = |a: u32, b: u32| {
        vec![
            ("unused-import".to_string(), a),
            ("unused-private-field".to_string(), b),
        ]
    };
    let reports = [
        report_with("t1", "m1", &pair(20, 4)),
        report_with("t2", "m1", &pair(10, 6)),
    ];
    let dead = top_smells(&reports, SmellType::DeadCode);
    assert_eq!(
        dead.iter().map(|s| (s.rule_id.as_str(), s.weight)).collect::<Vec<_>>(),
        vec![("unused-import", r(3, 4)), ("unused-private-field", r(1, 4))]
    );
    assert!(top_smells(&reports, SmellType::Hierarchy).is_empty());
}

#[test]
fn pearson_is_affine_invariant_and_antisymmetric() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.gen_range(3..12);
        let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-50.0..50.0)).collect();
        let ys: Vec<f64> = (0..n).map(|_| rng.gen_range(-50.0..50.0)).collect();
        let base = pearson(&xs, &ys).unwrap();
        let (a, b) = (rng.gen_range(0.1..10.0), rng.gen_range(-20.0..20.0));
        let moved: Vec<f64> = xs.iter().map(|x| a * x + b).collect();
        assert!((pearson(&moved, &ys).unwrap() - base).abs() < 1e-9);
        let neg: Vec<f64> = ys.iter().map(|y| -y).collect();
        assert!((pearson(&xs, &neg).unwrap() + base).abs() < 1e-9);
    }
}

#[test]
fn scenario_sheet_round_trips_through_disk() {
    let c = in_memory(vec![
        task(
            "t1",
            "A",
            TaskSource::Textbook,
            1,
            vec![solution("m1", "t1", Some(true))],
        ),
        task("t2", "B", TaskSource::Textbook, 2, vec![solution("m1", "t2", None)]),
    ]);
    let mn = |n: u32| vec![("magic-number".to_string(), n)];
    let mut reports: BTreeMap<String, BTreeMap<String, ViolationReport>> = BTreeMap::new();
    reports
        .entry(BASELINE.into())
        .or_default()
        .insert("t1".into(), report_with("t1", BASELINE, &mn(2)));
    reports
        .entry(BASELINE.into())
        .or_default()
        .insert("t2".into(), report_with("t2", BASELINE, &mn(0)));
    reports
        .entry("m1".into())
        .or_default()
        .insert("t1".into(), report_with("t1", "m1", &mn(3)));
    reports
        .entry("m1".into())
        .or_default()
        .insert("t2".into(), failed_report("t2", "m1"));
    let subjects = vec![BASELINE.to_string(), "m1".to_string()];

    let sheet = score_scenario(
        &c,
        &reports,
        &subjects,
        &"topic".parse().unwrap(),
        &RuleSetSelector::All,
    )
    .unwrap();
    let a = sheet.card("m1", "A").unwrap();
    assert_eq!(
        (a.vs, a.baseline_vs, a.increase_rate),
        (Some(r(3, 1)), Some(r(2, 1)), Some(r(1, 2)))
    );
    let b = sheet.card("m1", "B").unwrap();
    assert_eq!(
        (b.n_tasks, b.n_analyzed, b.n_failed, b.vs, b.increase_rate),
        (1, 0, 1, None, None)
    );
    let base_b = sheet.card(BASELINE, "B").unwrap();
    assert_eq!((base_b.vs, base_b.increase_rate), (Some(r(0, 1)), None));

    let dir = tempfile::tempdir().unwrap();
    assert!(write_sheet(dir.path(), &sheet).unwrap());
    assert!(!write_sheet(dir.path(), &sheet).unwrap());
    assert!(dir.path().join("topic/all.json").is_file());
    let text = std::fs::read_to_string(dir.path().join("topic/all.json")).unwrap();
    assert!(text.contains("\"increase_rate\": \"1/2\""));
    assert_eq!(read_sheets(dir.path()).unwrap(), vec![sheet]);
}
