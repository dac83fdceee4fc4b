//! Importing PMD, Checkstyle and DesigniteJava reports into canonical
//! violation reports, and comparing them with native ones.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::java::{parse, SourceFile, Span, TypeDecl};
use crate::smells::{Detector, RuleSet, Subject, Violation, ViolationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    PmdXml,
    CheckstyleXml,
    DesigniteCsv,
}

impl ReportFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportFormat::PmdXml => "pmd_xml",
            ReportFormat::CheckstyleXml => "checkstyle_xml",
            ReportFormat::DesigniteCsv => "designite_csv",
        }
    }

    pub fn detector(self) -> Detector {
        match self {
            ReportFormat::PmdXml => Detector::Pmd,
            ReportFormat::CheckstyleXml => Detector::Checkstyle,
            ReportFormat::DesigniteCsv => Detector::Designite,
        }
    }

    /// Guesses the format from file content.
    pub fn sniff(text: &str) -> Option<Self> {
        let t = text.trim_start_matches('\u{feff}').trim_start();
        if t.starts_with('<') {
            let doc = roxmltree::Document::parse(t).ok()?;
            return match doc.root_element().tag_name().name() {
                "checkstyle" => Some(ReportFormat::CheckstyleXml),
                "pmd" | "pmd-cpd" => Some(ReportFormat::PmdXml),
                _ => None,
            };
        }
        let header = t.lines().next()?.to_ascii_lowercase();
        (header.contains("smell") && header.contains("type")).then_some(ReportFormat::DesigniteCsv)
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReportFormat {
    type Err = AdapterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "pmd" | "pmd_xml" | "cpd" => Ok(ReportFormat::PmdXml),
            "checkstyle" | "checkstyle_xml" => Ok(ReportFormat::CheckstyleXml),
            "designite" | "designite_csv" | "designitejava" => Ok(ReportFormat::DesigniteCsv),
            _ => Err(AdapterError::UnknownDetector(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalReport {
    pub format: ReportFormat,
    pub path: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detector_version: Option<String>,
}

#[derive(Debug, Error)]
pub enum AdapterError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("unknown detector or report format `{0}`")]
    UnknownDetector(String),
}

/// One finding as the external tool reported it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Finding {
    pub detector: Detector,
    pub native_rule: String,
    pub file: String,
    pub span: Span,
    pub message: String,
}

/// Outcome of importing one or more external reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportResult {
    pub report: ViolationReport,
    /// Findings whose native rule has no canonical counterpart.
    pub unmapped: Vec<Finding>,
    /// Number of external findings read.
    pub findings: usize,
    /// Mapped findings dropped as cross-tool duplicates.
    pub collapsed: usize,
    pub detector_versions: BTreeMap<String, String>,
}

impl ImportResult {
    /// Unmapped counts per (detector, native rule).
    pub fn unmapped_counts(&self) -> BTreeMap<(Detector, String), usize> {
        let mut out = BTreeMap::new();
        for f in &self.unmapped {
            *out.entry((f.detector, f.native_rule.clone())).or_insert(0) += 1;
        }
        out
    }
}

/// Settings shared by all adapters.
#[derive(Debug, Clone, Default)]
pub struct ImportOptions {
    /// Prefix removed from reported file paths (tools often report
    /// absolute paths).
    pub strip_prefix: Option<String>,
    /// Source texts by (stripped) path, used to place Designite findings
    /// and to fill snippets.
    pub sources: BTreeMap<String, String>,
}

impl ImportOptions {
    fn normalize(&self, path: &str) -> String {
        let p = path.replace('\\', "/");
        match &self.strip_prefix {
            Some(prefix) => {
                let prefix = prefix.replace('\\', "/");
                let prefix = prefix.trim_end_matches('/');
                match p.strip_prefix(prefix) {
                    Some(rest) => rest.trim_start_matches('/').to_string(),
                    None => p,
                }
            }
            None => p,
        }
    }
}

fn format_err(path: &Path, message: impl Into<String>) -> AdapterError {
    AdapterError::Format {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn attr_u32(node: roxmltree::Node, name: &str, path: &Path) -> Result<Option<u32>, AdapterError> {
    match node.attribute(name) {
        None => Ok(None),
        Some(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format_err(path, format!("attribute {name}=\"{v}\" is not a line/column number"))),
    }
}

fn required<'a>(node: roxmltree::Node<'a, '_>, name: &str, path: &Path) -> Result<&'a str, AdapterError> {
    node.attribute(name).ok_or_else(|| {
        let pos = node.document().text_pos_at(node.range().start);
        format_err(
            path,
            format!(
                "<{}> at line {} lacks required attribute {name}",
                node.tag_name().name(),
                pos.row
            ),
        )
    })
}

/// Parsed findings plus the detector version found in the file, if any.
pub type Parsed = (Vec<Finding>, Option<String>);

/// Reads a Checkstyle XML report.
pub fn parse_checkstyle(text: &str, path: &Path, opts: &ImportOptions) -> Result<Parsed, AdapterError> {
    let doc = roxmltree::Document::parse(text).map_err(|e| format_err(path, e.to_string()))?;
    let root = doc.root_element();
    if root.tag_name().name() != "checkstyle" {
        return Err(format_err(
            path,
            format!("expected <checkstyle> root, found <{}>", root.tag_name().name()),
        ));
    }
    let mut out = Vec::new();
    for file in root.children().filter(|n| n.has_tag_name("file")) {
        let name = opts.normalize(required(file, "name", path)?);
        for err in file.children().filter(|n| n.has_tag_name("error")) {
            let line = attr_u32(err, "line", path)?.ok_or_else(|| format_err(path, "<error> lacks line"))?;
            let col = attr_u32(err, "column", path)?.unwrap_or(1);
            let source = required(err, "source", path)?;
            out.push(Finding {
                detector: Detector::Checkstyle,
                native_rule: checkstyle_rule_name(source),
                file: name.clone(),
                span: Span::point(line, col),
                message: err.attribute("message").unwrap_or_default().to_string(),
            });
        }
    }
    Ok((out, root.attribute("version").map(str::to_string)))
}

/// `com.puppycrawl...coding.MagicNumberCheck` → `MagicNumber`.
fn checkstyle_rule_name(source: &str) -> String {
    let last = source.rsplit('.').next().unwrap_or(source);
    last.strip_suffix("Check").unwrap_or(last).to_string()
}

/// Reads a PMD XML report or a CPD XML report.
pub fn parse_pmd(text: &str, path: &Path, opts: &ImportOptions) -> Result<Parsed, AdapterError> {
    let doc = roxmltree::Document::parse(text).map_err(|e| format_err(path, e.to_string()))?;
    let root = doc.root_element();
    let mut out = Vec::new();
    match root.tag_name().name() {
        "pmd" => {
            for file in root.children().filter(|n| n.has_tag_name("file")) {
                let name = opts.normalize(required(file, "name", path)?);
                for v in file.children().filter(|n| n.has_tag_name("violation")) {
                    let line = attr_u32(v, "beginline", path)?
                        .ok_or_else(|| format_err(path, "<violation> lacks beginline"))?;
                    let col = attr_u32(v, "begincolumn", path)?.unwrap_or(1);
                    let end_line = attr_u32(v, "endline", path)?.unwrap_or(line);
                    let end_col = attr_u32(v, "endcolumn", path)?.unwrap_or(col);
                    out.push(Finding {
                        detector: Detector::Pmd,
                        native_rule: required(v, "rule", path)?.to_string(),
                        file: name.clone(),
                        span: Span::new(line, col, end_line, end_col),
                        message: v.text().unwrap_or_default().trim().to_string(),
                    });
                }
            }
        }
        "pmd-cpd" => {
            for dup in root.children().filter(|n| n.has_tag_name("duplication")) {
                let tokens = dup.attribute("tokens").unwrap_or("?");
                let places: Vec<_> = dup.children().filter(|n| n.has_tag_name("file")).collect();
                // The first occurrence is the original; every later one is a copy.
                for place in places.iter().skip(1) {
                    let line = attr_u32(*place, "line", path)?.ok_or_else(|| format_err(path, "<file> lacks line"))?;
                    let col = attr_u32(*place, "column", path)?.unwrap_or(1);
                    out.push(Finding {
                        detector: Detector::Pmd,
                        native_rule: "CopyPasteDetector".into(),
                        file: opts.normalize(required(*place, "path", path)?),
                        span: Span::point(line, col),
                        message: format!("Found {tokens} duplicated tokens."),
                    });
                }
            }
        }
        other => {
            return Err(format_err(
                path,
                format!("expected <pmd> or <pmd-cpd> root, found <{other}>"),
            ))
        }
    }
    Ok((out, root.attribute("version").map(str::to_string)))
}

fn column_index(headers: &csv::StringRecord, names: &[&str]) -> Option<usize> {
    headers.iter().position(|h| {
        let h = h.trim().to_ascii_lowercase();
        names.iter().any(|n| h == *n)
    })
}

/// Reads a DesigniteJava design- or implementation-smell CSV.
pub fn parse_designite(text: &str, path: &Path, opts: &ImportOptions) -> Result<Parsed, AdapterError> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.trim_start_matches('\u{feff}').as_bytes());
    let headers = rdr.headers().map_err(|e| format_err(path, e.to_string()))?.clone();
    let col = |names: &[&str], what: &str| {
        column_index(&headers, names).ok_or_else(|| format_err(path, format!("missing required column {what}")))
    };
    let package = col(&["package", "package name"], "Package")?;
    let type_col = col(&["type", "type name"], "Type")?;
    let smell = col(
        &["smell", "design smell", "implementation smell", "code smell"],
        "Smell",
    )?;
    let method = column_index(&headers, &["method", "method name"]);
    let line_col = column_index(&headers, &["line", "method start line number", "start line"]);
    column_index(&headers, &["project", "project name"])
        .ok_or_else(|| format_err(path, "missing required column Project"))?;

    let index = SourceIndex::new(&opts.sources);
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| format_err(path, format!("row {}: {e}", i + 2)))?;
        let get = |c: usize| rec.get(c).unwrap_or("").to_string();
        let (pkg, ty, rule) = (get(package), get(type_col), get(smell));
        if ty.is_empty() || rule.is_empty() {
            return Err(format_err(path, format!("row {}: empty Type or Smell", i + 2)));
        }
        let method_name = method.map(get).filter(|m| !m.is_empty());
        let line = match line_col.map(get).filter(|l| !l.is_empty()) {
            Some(l) => Some(
                l.parse::<u32>()
                    .map_err(|_| format_err(path, format!("row {}: bad line `{l}`", i + 2)))?,
            ),
            None => None,
        };
        let (file, span) = index.place(&pkg, &ty, method_name.as_deref(), line);
        out.push(Finding {
            detector: Detector::Designite,
            native_rule: rule,
            file,
            span,
            message: match &method_name {
                Some(m) => format!("{pkg}.{ty}.{m}"),
                None => format!("{pkg}.{ty}"),
            },
        });
    }
    Ok((out, None))
}

/// Type locations in the available sources, for placing findings that
/// name a type instead of a line.
/// (package, simple type name) → (file, type span, method name spans)
type TypeIndex = BTreeMap<(String, String), (String, Span, BTreeMap<String, Span>)>;

struct SourceIndex {
    types: TypeIndex,
}

impl SourceIndex {
    fn new(sources: &BTreeMap<String, String>) -> Self {
        fn add(t: &TypeDecl, pkg: &str, file: &str, types: &mut TypeIndex) {
            let mut methods = BTreeMap::new();
            for m in t.methods() {
                methods.entry(m.name.name.clone()).or_insert(m.name.span);
            }
            types
                .entry((pkg.to_string(), t.name.name.clone()))
                .or_insert_with(|| (file.to_string(), t.span, methods));
            for n in t.nested_types() {
                add(n, pkg, file, types);
            }
        }
        let mut types = BTreeMap::new();
        for (path, text) in sources {
            let outcome = parse(SourceFile::new(path, text.as_str()));
            let Some(ast) = outcome.ast() else { continue };
            let pkg = ast.unit.package.as_ref().map(|p| p.name.clone()).unwrap_or_default();
            for t in &ast.unit.types {
                add(t, &pkg, path, &mut types);
            }
        }
        Self { types }
    }

    fn place(&self, pkg: &str, ty: &str, method: Option<&str>, line: Option<u32>) -> (String, Span) {
        let pkg_key = if pkg == "<All packages>" || pkg == "(default package)" {
            ""
        } else {
            pkg
        };
        let found = self.types.get(&(pkg_key.to_string(), ty.to_string())).or_else(|| {
            // Fall back to a unique match on the simple name.
            let mut hits = self.types.iter().filter(|((_, n), _)| n == ty);
            match (hits.next(), hits.next()) {
                (Some((_, v)), None) => Some(v),
                _ => None,
            }
        });
        match found {
            Some((file, span, methods)) => {
                let span = match (line, method.and_then(|m| methods.get(m))) {
                    (Some(l), _) => Span::point(l, 1),
                    (None, Some(m)) => *m,
                    (None, None) => *span,
                };
                (file.clone(), span)
            }
            None => {
                let file = if pkg_key.is_empty() {
                    format!("{ty}.java")
                } else {
                    format!("{}/{ty}.java", pkg_key.replace('.', "/"))
                };
                (file, Span::point(line.unwrap_or(1), 1))
            }
        }
    }
}

/// Reads the findings of one external report file.
pub fn read_findings(report: &ExternalReport, opts: &ImportOptions) -> Result<Parsed, AdapterError> {
    let text = std::fs::read_to_string(&report.path).map_err(|source| AdapterError::Io {
        path: report.path.clone(),
        source,
    })?;
    parse_findings(report.format, &text, &report.path, opts)
}

pub fn parse_findings(
    format: ReportFormat,
    text: &str,
    path: &Path,
    opts: &ImportOptions,
) -> Result<Parsed, AdapterError> {
    match format {
        ReportFormat::CheckstyleXml => parse_checkstyle(text, path, opts),
        ReportFormat::PmdXml => parse_pmd(text, path, opts),
        ReportFormat::DesigniteCsv => parse_designite(text, path, opts),
    }
}

/// Maps findings to canonical rules. A rule reported by several detectors
/// on the same line is counted once: for each (rule, file, line) only the
/// findings of the detector that reported most of them are kept.
pub fn canonicalize(
    subject: Subject,
    findings: Vec<Finding>,
    rule_map: &BTreeMap<(Detector, String), String>,
    rules: &RuleSet,
    opts: &ImportOptions,
) -> ImportResult {
    let total = findings.len();
    let mut unmapped = Vec::new();
    let mut groups: BTreeMap<(String, String, u32), BTreeMap<Detector, Vec<Finding>>> = BTreeMap::new();
    for f in findings {
        match rule_map.get(&(f.detector, f.native_rule.clone())) {
            Some(rule_id) => groups
                .entry((rule_id.clone(), f.file.clone(), f.span.start_line))
                .or_default()
                .entry(f.detector)
                .or_default()
                .push(f),
            None => unmapped.push(f),
        }
    }
    let mut violations = Vec::new();
    let mut mapped = 0;
    for ((rule_id, _, _), by_detector) in groups {
        mapped += by_detector.values().map(Vec::len).sum::<usize>();
        let keep = by_detector
            .into_values()
            .reduce(|best, cur| if cur.len() > best.len() { cur } else { best })
            .unwrap_or_default();
        for f in keep {
            let snippet = opts
                .sources
                .get(&f.file)
                .and_then(|t| t.lines().nth(f.span.start_line.saturating_sub(1) as usize))
                .map(|l| l.trim().to_string())
                .unwrap_or_default();
            violations.push(Violation {
                rule_id: rule_id.clone(),
                file: f.file,
                span: f.span,
                message: f.message,
                snippet,
            });
        }
    }
    unmapped.sort();
    let report = ViolationReport::from_violations(subject, violations, rules);
    // `from_violations` also drops exact duplicates.
    let collapsed = mapped - report.violations.len();
    ImportResult {
        report,
        unmapped,
        findings: total,
        collapsed,
        detector_versions: BTreeMap::new(),
    }
}

/// Imports several external reports for one subject as a single canonical
/// report.
pub fn import_reports(
    subject: Subject,
    reports: &[ExternalReport],
    rule_map: &BTreeMap<(Detector, String), String>,
    opts: &ImportOptions,
) -> Result<ImportResult, AdapterError> {
    let mut findings = Vec::new();
    let mut versions = BTreeMap::new();
    for r in reports {
        let (mut f, version) = read_findings(r, opts)?;
        if let Some(v) = r.detector_version.clone().or(version) {
            versions.insert(r.format.detector().as_str().to_string(), v);
        }
        findings.append(&mut f);
    }
    let mut result = canonicalize(subject, findings, rule_map, &RuleSet::all(), opts);
    result.detector_versions = versions;
    Ok(result)
}

/// Imports one external report.
pub fn import_report(
    subject: Subject,
    report: &ExternalReport,
    rule_map: &BTreeMap<(Detector, String), String>,
    opts: &ImportOptions,
) -> Result<ImportResult, AdapterError> {
    import_reports(subject, std::slice::from_ref(report), rule_map, opts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffRow {
    pub rule_id: String,
    pub native_count: u64,
    pub imported_count: u64,
    pub delta: i64,
}

/// Disagreements between a native and an imported report, compared on
/// (rule id, start line).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DiffSummary {
    /// One row per rule reported by either side.
    pub rows: Vec<DiffRow>,
    pub only_in_native: Vec<(String, u32)>,
    pub only_in_imported: Vec<(String, u32)>,
}

impl DiffSummary {
    pub fn is_empty(&self) -> bool {
        self.only_in_native.is_empty() && self.only_in_imported.is_empty() && self.rows.iter().all(|r| r.delta == 0)
    }

    /// Rules whose counts differ, with native minus imported.
    pub fn deltas(&self) -> BTreeMap<String, i64> {
        self.rows
            .iter()
            .filter(|r| r.delta != 0)
            .map(|r| (r.rule_id.clone(), r.delta))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["rule_id", "native_count", "imported_count", "delta"])
            .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.rule_id.clone(),
                r.native_count.to_string(),
                r.imported_count.to_string(),
                r.delta.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

fn line_multiset(r: &ViolationReport) -> BTreeMap<(String, u32), usize> {
    let mut m = BTreeMap::new();
    for v in &r.violations {
        *m.entry((v.rule_id.clone(), v.span.start_line)).or_insert(0) += 1;
    }
    m
}

pub fn diff_reports(native: &ViolationReport, imported: &ViolationReport) -> DiffSummary {
    let a = line_multiset(native);
    let b = line_multiset(imported);
    let keys: BTreeSet<&(String, u32)> = a.keys().chain(b.keys()).collect();
    let mut only_in_native = Vec::new();
    let mut only_in_imported = Vec::new();
    for k in keys {
        let (x, y) = (a.get(k).copied().unwrap_or(0), b.get(k).copied().unwrap_or(0));
        for _ in y..x {
            only_in_native.push(k.clone());
        }
        for _ in x..y {
            only_in_imported.push(k.clone());
        }
    }
    let mut counts: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    for v in &native.violations {
        counts.entry(&v.rule_id).or_default().0 += 1;
    }
    for v in &imported.violations {
        counts.entry(&v.rule_id).or_default().1 += 1;
    }
    let rows = counts
        .into_iter()
        .map(|(rule, (n, i))| DiffRow {
            rule_id: rule.to_string(),
            native_count: n,
            imported_count: i,
            delta: n as i64 - i as i64,
        })
        .collect();
    DiffSummary {
        rows,
        only_in_native,
        only_in_imported,
    }
}
