mod common;

use std::collections::BTreeSet;

use common::rule_fixtures;
use smellbench_core::java::parse_str;
use smellbench_core::smells::{catalog, detect_file, RuleSet, SmellType, Subject};

#[test]
fn every_fixture_matches() {
    let failures: Vec<String> = rule_fixtures::all().iter().filter_map(|f| f.check().err()).collect();
    assert!(
        failures.is_empty(),
        "{} fixture(s) failed:\n{}",
        failures.len(),
        failures.join("\n")
    );
}

#[test]
fn every_rule_has_positive_and_negative_fixture() {
    let fixtures = rule_fixtures::all();
    let pos: BTreeSet<&str> = fixtures.iter().filter(|f| f.positive()).map(|f| f.rule).collect();
    let neg: BTreeSet<&str> = fixtures.iter().filter(|f| !f.positive()).map(|f| f.rule).collect();
    for r in catalog() {
        assert!(
            pos.contains(r.rule_id.as_str()),
            "no positive fixture for {}",
            r.rule_id
        );
        assert!(
            neg.contains(r.rule_id.as_str()),
            "no negative fixture for {}",
            r.rule_id
        );
    }
}

#[test]
fn empty_try_and_catch_count_twice_for_incompleteness() {
    let src = "class A { void m() { try { } catch (Exception e) { } } }";
    let r = detect_file(Subject::new("t", "m"), &parse_str(src), &RuleSet::all());
    assert_eq!(r.count("empty-catch-block"), 1);
    assert_eq!(r.count("empty-block"), 1);
    assert_eq!(r.type_count(SmellType::Incompleteness), 2);
}

#[test]
fn counts_add_up_on_every_fixture() {
    for f in rule_fixtures::all() {
        let (path, text) = &f.files[0];
        let outcome = smellbench_core::java::parse(smellbench_core::java::SourceFile::new(path.clone(), text.clone()));
        let r = detect_file(Subject::new(f.name, "m"), &outcome, &RuleSet::all());
        let by_rule: u64 = r.per_rule_counts.values().sum();
        let by_type: u64 = r.per_type_counts.values().sum();
        assert_eq!(by_rule, r.total(), "{}", f.name);
        assert_eq!(by_type, r.total(), "{}", f.name);
    }
}
