//! Cross-tool deduplication checks built from synthetic report files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use smellbench_core::adapters::{
    canonicalize, diff_reports, import_reports, parse_findings, ExternalReport, ImportOptions, ReportFormat,
};
use smellbench_core::smells::{catalog, default_rule_map, Detector, RuleSet, Subject};

pub struct Sample {
    pub files: &'static [(&'static str, ReportFormat)],
    pub findings: usize,
    pub unmapped: usize,
    pub counts: &'static [(&'static str, u64)],
}

/// Committed detector reports and the canonical counts they must produce.
pub const SAMPLES: &[Sample] = &[
    Sample {
        files: &[("checkstyle.xml", ReportFormat::CheckstyleXml)],
        findings: 6,
        unmapped: 1,
        counts: &[
            ("empty-catch-block", 1),
            ("javadoc-method", 1),
            ("local-variable-naming", 1),
            ("magic-number", 1),
            ("unused-import", 1),
        ],
    },
    Sample {
        files: &[("pmd.xml", ReportFormat::PmdXml)],
        findings: 6,
        unmapped: 1,
        counts: &[
            ("avoid-instantiating-objects-in-loops", 1),
            ("empty-catch-block", 1),
            ("excessive-parameter-list", 1),
            ("local-variable-naming", 1),
            ("unused-local-variable", 1),
        ],
    },
    Sample {
        files: &[("cpd.xml", ReportFormat::PmdXml)],
        findings: 3,
        unmapped: 0,
        counts: &[("copy-paste", 3)],
    },
    Sample {
        files: &[("designite_design.csv", ReportFormat::DesigniteCsv)],
        findings: 4,
        unmapped: 1,
        counts: &[
            ("cyclically-dependent-modularization", 1),
            ("deficient-encapsulation", 1),
            ("unutilized-abstraction", 1),
        ],
    },
    Sample {
        files: &[("designite_impl.csv", ReportFormat::DesigniteCsv)],
        findings: 3,
        unmapped: 2,
        counts: &[("excessive-parameter-list", 1)],
    },
    Sample {
        files: &[
            ("checkstyle.xml", ReportFormat::CheckstyleXml),
            ("pmd.xml", ReportFormat::PmdXml),
            ("designite_impl.csv", ReportFormat::DesigniteCsv),
        ],
        findings: 15,
        unmapped: 4,
        counts: &[
            ("avoid-instantiating-objects-in-loops", 1),
            ("empty-catch-block", 1),
            ("excessive-parameter-list", 1),
            ("javadoc-method", 1),
            ("local-variable-naming", 1),
            ("magic-number", 1),
            ("unused-import", 1),
            ("unused-local-variable", 1),
        ],
    },
];

pub fn sample_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/adapters")
}

pub fn sample_options() -> ImportOptions {
    let shop = std::fs::read_to_string(sample_dir().join("src/demo/Shop.java")).unwrap();
    ImportOptions {
        strip_prefix: Some("/work/proj".into()),
        sources: BTreeMap::from([("src/demo/Shop.java".to_string(), shop)]),
    }
}

/// Imports every sample and lists where counts differ or where a report
/// does not diff empty against itself.
pub fn sample_mismatches() -> Vec<String> {
    let mut problems = Vec::new();
    for s in SAMPLES {
        let reports: Vec<ExternalReport> = s
            .files
            .iter()
            .map(|(name, format)| ExternalReport {
                format: *format,
                path: sample_dir().join(name),
                detector_version: None,
            })
            .collect();
        let label = s.files.iter().map(|f| f.0).collect::<Vec<_>>().join("+");
        let r = match import_reports(
            Subject::new("T1", "imported"),
            &reports,
            &default_rule_map(),
            &sample_options(),
        ) {
            Ok(r) => r,
            Err(e) => {
                problems.push(format!("{label}: {e}"));
                continue;
            }
        };
        let counts: Vec<(&str, u64)> = r
            .report
            .per_rule_counts
            .iter()
            .filter(|(_, c)| **c > 0)
            .map(|(k, c)| (k.as_str(), *c))
            .collect();
        if (r.findings, r.unmapped.len(), counts.as_slice()) != (s.findings, s.unmapped, s.counts) {
            problems.push(format!(
                "{label}: {} findings, {} unmapped, counts {counts:?}",
                r.findings,
                r.unmapped.len()
            ));
        }
        if !diff_reports(&r.report, &r.report).is_empty() {
            problems.push(format!("{label}: diff against itself is not empty"));
        }
    }
    problems
}

/// A one-finding report in the native format of `detector`, at line 7 of
/// `X.java`.
pub fn single_finding_report(detector: Detector, native: &str) -> (ReportFormat, String) {
    match detector {
        Detector::Checkstyle => (
            ReportFormat::CheckstyleXml,
            format!(
                "<?xml version=\"1.0\"?>\n<checkstyle version=\"10.12.4\">\n<file name=\"X.java\">\n<error line=\"7\" column=\"3\" severity=\"warning\" message=\"m\" source=\"com.puppycrawl.tools.checkstyle.checks.{native}Check\"/>\n</file>\n</checkstyle>\n"
            ),
        ),
        Detector::Pmd => (
            ReportFormat::PmdXml,
            format!(
                "<?xml version=\"1.0\"?>\n<pmd version=\"7.0.0\">\n<file name=\"X.java\">\n<violation beginline=\"7\" endline=\"7\" begincolumn=\"5\" endcolumn=\"9\" rule=\"{native}\" ruleset=\"r\" priority=\"3\">m</violation>\n</file>\n</pmd>\n"
            ),
        ),
        Detector::Designite => (
            ReportFormat::DesigniteCsv,
            format!(
                "Project Name,Package Name,Type Name,Method Name,Implementation Smell,Cause of the Smell,Method start line number\nproj,,X,m,{native},c,7\n"
            ),
        ),
    }
}

/// For every rule with more than one origin detector, imports one finding
/// per origin at the same place and returns `(rule_id, origins, count)`.
pub fn multi_origin_counts() -> Vec<(String, usize, u64)> {
    let map = default_rule_map();
    let opts = ImportOptions::default();
    let mut out = Vec::new();
    for rule in catalog().into_iter().filter(|r| r.origin_tags.len() > 1) {
        let mut per_detector: BTreeMap<Detector, &str> = BTreeMap::new();
        for (d, n) in &rule.native_names {
            per_detector.entry(*d).or_insert(n);
        }
        let mut findings = Vec::new();
        for (d, native) in &per_detector {
            let (format, text) = single_finding_report(*d, native);
            let (mut f, _) = parse_findings(format, &text, Path::new("synthetic"), &opts).expect("well-formed report");
            findings.append(&mut f);
        }
        let result = canonicalize(Subject::new("t", "imported"), findings, &map, &RuleSet::all(), &opts);
        assert!(result.unmapped.is_empty(), "{}: {:?}", rule.rule_id, result.unmapped);
        out.push((
            rule.rule_id.clone(),
            per_detector.len(),
            result.report.count(&rule.rule_id),
        ));
    }
    out
}
