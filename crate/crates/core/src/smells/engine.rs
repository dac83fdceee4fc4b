use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use regex::Regex;

use super::rules;
use super::{RuleSet, Subject, Violation, ViolationReport};
use crate::java::{Ast, ParseOutcome, SourceFile, Span, TypeDecl};

/// A type declared somewhere in an analysis unit.
pub(crate) struct TypeInfo<'a> {
    pub decl: &'a TypeDecl,
    pub file: usize,
    /// Index (into `UnitIndex::types`) of the enclosing top-level type.
    pub top: usize,
}

/// Cross-file view of the files analysed together.
pub(crate) struct UnitIndex<'a> {
    pub files: Vec<&'a Ast>,
    pub types: Vec<TypeInfo<'a>>,
    pub by_name: HashMap<&'a str, Vec<usize>>,
}

impl<'a> UnitIndex<'a> {
    pub fn new(files: Vec<&'a Ast>) -> Self {
        let mut types = Vec::new();
        for (fi, ast) in files.iter().enumerate() {
            for t in &ast.unit.types {
                let top = types.len();
                collect(t, fi, top, &mut types);
            }
        }
        let mut by_name: HashMap<&str, Vec<usize>> = HashMap::new();
        for (i, t) in types.iter().enumerate() {
            by_name.entry(t.decl.name.name.as_str()).or_default().push(i);
        }
        Self { files, types, by_name }
    }

    /// First type with the given simple name.
    pub fn lookup(&self, name: &str) -> Option<&TypeInfo<'a>> {
        let simple = name.rsplit('.').next().unwrap_or(name);
        self.by_name
            .get(simple)
            .and_then(|v| v.first())
            .map(|&i| &self.types[i])
    }

    pub fn top_level(&self) -> impl Iterator<Item = (usize, &TypeInfo<'a>)> {
        self.types.iter().enumerate().filter(|(i, t)| t.top == *i)
    }
}

fn collect<'a>(t: &'a TypeDecl, file: usize, top: usize, out: &mut Vec<TypeInfo<'a>>) {
    out.push(TypeInfo { decl: t, file, top });
    for n in t.nested_types() {
        collect(n, file, top, out);
    }
}

pub(crate) struct Ctx<'a> {
    pub ast: &'a Ast,
    pub file: usize,
    pub unit: &'a UnitIndex<'a>,
}

impl Ctx<'_> {
    pub fn src(&self) -> &SourceFile {
        &self.ast.source
    }
}

/// Collects violations for one file, dropping those of disabled rules.
pub(crate) struct Sink<'a> {
    rules: &'a RuleSet,
    src: &'a SourceFile,
    file: String,
    pub out: Vec<Violation>,
}

impl<'a> Sink<'a> {
    fn new(rules: &'a RuleSet, src: &'a SourceFile) -> Self {
        Self {
            rules,
            src,
            file: src.display_path(),
            out: Vec::new(),
        }
    }

    pub fn on(&self, rule_id: &str) -> bool {
        self.rules.is_enabled(rule_id)
    }

    pub fn num(&self, rule_id: &str, key: &str) -> f64 {
        self.rules.get(rule_id).expect("rule present").number(key)
    }

    pub fn text(&self, rule_id: &str, key: &str) -> &'a str {
        self.rules.get(rule_id).expect("rule present").text(key)
    }

    /// The compiled pattern parameter `key` of `rule_id`, or `None` when
    /// the rule is off or the pattern does not compile.
    pub fn regex(&self, rule_id: &str, key: &str) -> Option<Regex> {
        if !self.on(rule_id) {
            return None;
        }
        cached_regex(self.text(rule_id, key))
    }

    pub fn emit(&mut self, rule_id: &str, span: Span, message: impl Into<String>) {
        if !self.on(rule_id) {
            return;
        }
        self.out.push(Violation {
            rule_id: rule_id.to_string(),
            file: self.file.clone(),
            span,
            message: message.into(),
            snippet: self.src.line(span.start_line).trim().to_string(),
        });
    }
}

/// Compiles each distinct pattern once per process.
pub(crate) fn cached_regex(pattern: &str) -> Option<Regex> {
    static CACHE: LazyLock<Mutex<HashMap<String, Option<Regex>>>> = LazyLock::new(Default::default);
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    cache
        .entry(pattern.to_string())
        .or_insert_with(|| Regex::new(pattern).ok())
        .clone()
}

/// Analyses one file on its own.
pub fn detect_file(subject: Subject, outcome: &ParseOutcome, rules: &RuleSet) -> ViolationReport {
    detect_units(subject, std::slice::from_ref(outcome), rules)
}

/// Analyses files that belong together (one solution). Cross-file rules see
/// every file in `outcomes`. Any parse failure makes the whole unit a failure.
pub fn detect_units(subject: Subject, outcomes: &[ParseOutcome], rules: &RuleSet) -> ViolationReport {
    if let Some(f) = outcomes.iter().find_map(|o| o.failure()) {
        return ViolationReport::parse_failure(subject, f.clone());
    }
    let files: Vec<&Ast> = outcomes.iter().filter_map(|o| o.ast()).collect();
    let unit = UnitIndex::new(files);
    let mut violations = Vec::new();
    for (i, ast) in unit.files.iter().enumerate() {
        let cx = Ctx {
            ast,
            file: i,
            unit: &unit,
        };
        let mut sink = Sink::new(rules, &ast.source);
        rules::run_all(&cx, &mut sink);
        violations.extend(sink.out);
    }
    ViolationReport::from_violations(subject, violations, rules)
}
