//! The rule catalog: one entry per canonical rule, each tagged with the
//! external detectors that implement it and its configurable parameters.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Implementation,
    Design,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Implementation => "implementation",
            Category::Design => "design",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmellType {
    InconsistentNaming,
    ExcessiveComplexity,
    Redundancy,
    Incompleteness,
    ImproperAlignment,
    MagicNumber,
    DeadCode,
    ResourceHandling,
    Documentation,
    Modularity,
    Encapsulation,
    Hierarchy,
    Abstraction,
}

impl SmellType {
    /// Catalog order: implementation types first, then design types.
    pub const ALL: [SmellType; 13] = [
        SmellType::InconsistentNaming,
        SmellType::ExcessiveComplexity,
        SmellType::Redundancy,
        SmellType::Incompleteness,
        SmellType::ImproperAlignment,
        SmellType::MagicNumber,
        SmellType::DeadCode,
        SmellType::ResourceHandling,
        SmellType::Documentation,
        SmellType::Modularity,
        SmellType::Encapsulation,
        SmellType::Hierarchy,
        SmellType::Abstraction,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SmellType::InconsistentNaming => "inconsistent-naming",
            SmellType::ExcessiveComplexity => "excessive-complexity",
            SmellType::Redundancy => "redundancy",
            SmellType::Incompleteness => "incompleteness",
            SmellType::ImproperAlignment => "improper-alignment",
            SmellType::MagicNumber => "magic-number",
            SmellType::DeadCode => "dead-code",
            SmellType::ResourceHandling => "resource-handling",
            SmellType::Documentation => "documentation",
            SmellType::Modularity => "modularity",
            SmellType::Encapsulation => "encapsulation",
            SmellType::Hierarchy => "hierarchy",
            SmellType::Abstraction => "abstraction",
        }
    }

    pub fn category(self) -> Category {
        match self {
            SmellType::Modularity | SmellType::Encapsulation | SmellType::Hierarchy | SmellType::Abstraction => {
                Category::Design
            }
            _ => Category::Implementation,
        }
    }
}

impl fmt::Display for SmellType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown smell type `{0}`")]
pub struct UnknownSmellType(pub String);

impl FromStr for SmellType {
    type Err = UnknownSmellType;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SmellType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| UnknownSmellType(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Detector {
    Pmd,
    Checkstyle,
    Designite,
}

impl Detector {
    pub fn as_str(self) -> &'static str {
        match self {
            Detector::Pmd => "pmd",
            Detector::Checkstyle => "checkstyle",
            Detector::Designite => "designite",
        }
    }
}

/// A configurable rule parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmellRule {
    pub rule_id: String,
    pub smell_type: SmellType,
    pub category: Category,
    pub origin_tags: BTreeSet<Detector>,
    /// Rule names used by the external detectors, keyed by detector.
    pub native_names: Vec<(Detector, String)>,
    pub thresholds: BTreeMap<String, Param>,
    pub enabled: bool,
    pub description: String,
}

impl SmellRule {
    pub fn number(&self, key: &str) -> f64 {
        match self.thresholds.get(key) {
            Some(Param::Number(n)) => *n,
            other => panic!("rule {} has no numeric parameter {key}: {other:?}", self.rule_id),
        }
    }

    pub fn text(&self, key: &str) -> &str {
        match self.thresholds.get(key) {
            Some(Param::Text(s)) => s,
            other => panic!("rule {} has no text parameter {key}: {other:?}", self.rule_id),
        }
    }
}

use Detector::{Checkstyle as CS, Designite as DJ, Pmd as PMD};
use SmellType::*;

const LOWER_CAMEL: &str = "^[a-z][a-zA-Z0-9]*$";

type Row = (
    &'static str,
    SmellType,
    &'static [(Detector, &'static str)],
    &'static [(&'static str, ParamDefault)],
    &'static str,
);

#[derive(Clone, Copy)]
enum ParamDefault {
    N(f64),
    T(&'static str),
}
use ParamDefault::{N, T};

#[rustfmt::skip]
const ROWS: &[Row] = &[
    // inconsistent naming
    ("local-variable-naming", InconsistentNaming, &[(PMD, "LocalVariableNamingConventions"), (CS, "LocalVariableName")], &[("format", T(LOWER_CAMEL))], "Local variable names follow lowerCamelCase."),
    ("formal-parameter-naming", InconsistentNaming, &[(PMD, "FormalParameterNamingConventions")], &[("format", T(LOWER_CAMEL))], "Method and constructor parameter names follow lowerCamelCase."),
    ("method-naming", InconsistentNaming, &[(PMD, "MethodNamingConventions"), (CS, "MethodName")], &[("format", T(LOWER_CAMEL))], "Method names follow lowerCamelCase."),
    ("class-naming", InconsistentNaming, &[(PMD, "ClassNamingConventions")], &[("format", T("^[A-Z][a-zA-Z0-9]*$"))], "Class, interface and enum names follow UpperCamelCase."),
    ("generics-naming", InconsistentNaming, &[(PMD, "GenericsNaming")], &[("format", T("^[A-Z]$"))], "Type parameter names are a single capital letter."),
    ("abbreviation-as-word-in-name", InconsistentNaming, &[(CS, "AbbreviationAsWordInName")], &[("max_abbreviation_length", N(2.0))], "Identifiers contain no abbreviation longer than the allowed number of capitals."),
    ("abstract-class-name", InconsistentNaming, &[(CS, "AbstractClassName")], &[("format", T("^Abstract.+$"))], "Abstract classes, and only abstract classes, use the Abstract prefix."),
    ("catch-parameter-name", InconsistentNaming, &[(CS, "CatchParameterName")], &[("format", T("^(e|t|ex|[a-z][a-z][a-zA-Z]+)$"))], "Catch parameter names are e, t, ex or a descriptive lowerCamelCase word."),
    ("constant-name", InconsistentNaming, &[(CS, "ConstantName")], &[("format", T("^[A-Z][A-Z0-9]*(_[A-Z0-9]+)*$"))], "Static final fields use UPPER_SNAKE_CASE."),
    ("illegal-identifier-name", InconsistentNaming, &[(CS, "IllegalIdentifierName")], &[("format", T("(?i)^(record|yield|var|permits|sealed|_)$"))], "Declared names avoid contextual keywords."),
    // excessive complexity
    ("simplify-boolean-expression", ExcessiveComplexity, &[(CS, "SimplifyBooleanExpression")], &[], "Boolean expressions do not compare against or combine with boolean literals."),
    ("simplify-conditional", ExcessiveComplexity, &[(PMD, "SimplifyConditional")], &[], "No null check before instanceof."),
    ("simplify-boolean-return", ExcessiveComplexity, &[(PMD, "SimplifyBooleanReturns"), (CS, "SimplifyBooleanReturn")], &[], "No if statement that only returns boolean literals."),
    ("simplified-ternary", ExcessiveComplexity, &[(PMD, "SimplifiedTernary")], &[], "No conditional expression with a boolean literal branch."),
    ("line-length", ExcessiveComplexity, &[(CS, "LineLength")], &[("max", N(100.0)), ("tab_width", N(8.0))], "Lines are at most the configured width."),
    ("method-length", ExcessiveComplexity, &[(CS, "MethodLength"), (DJ, "Long Method")], &[("max", N(150.0))], "Method bodies span at most the configured number of lines."),
    ("excessive-parameter-list", ExcessiveComplexity, &[(PMD, "ExcessiveParameterList"), (DJ, "Long Parameter List")], &[("max", N(7.0))], "Methods take at most the configured number of parameters."),
    // redundancy
    ("redundant-import", Redundancy, &[(CS, "RedundantImport")], &[], "No duplicate, java.lang or same-package imports."),
    ("redundant-modifier", Redundancy, &[(CS, "RedundantModifier")], &[], "No modifiers that the language already implies."),
    ("copy-paste", Redundancy, &[(PMD, "CopyPasteDetector")], &[("min_tokens", N(30.0))], "No repeated token sequences of the configured length."),
    // incompleteness
    ("missing-switch-default", Incompleteness, &[(CS, "MissingSwitchDefault")], &[], "Switch statements have a default label."),
    ("todo-comment", Incompleteness, &[(CS, "TodoComment")], &[("format", T("(TODO|FIXME):"))], "No TODO or FIXME markers in comments."),
    ("empty-control-statement", Incompleteness, &[(PMD, "EmptyControlStatement")], &[], "No control statement with an empty-statement body and no standalone empty block."),
    ("empty-catch-block", Incompleteness, &[(PMD, "EmptyCatchBlock"), (CS, "EmptyCatchBlock")], &[], "Catch blocks contain a statement or a comment."),
    ("empty-block", Incompleteness, &[(CS, "EmptyBlock")], &[], "Blocks of try, finally, if, else, loops, switch, synchronized and initializers are not empty."),
    // improper alignment
    ("indentation", ImproperAlignment, &[(CS, "Indentation")], &[("basic_offset", N(4.0)), ("tab_width", N(8.0))], "Lines are indented by the configured offset per nesting level."),
    ("file-tab-character", ImproperAlignment, &[(CS, "FileTabCharacter")], &[], "The file contains no tab characters."),
    ("need-braces", ImproperAlignment, &[(CS, "NeedBraces")], &[], "Bodies of if, else, for, while and do are blocks."),
    ("useless-parentheses", ImproperAlignment, &[(PMD, "UselessParentheses")], &[], "No parentheses that change nothing."),
    ("left-curly", ImproperAlignment, &[(CS, "LeftCurly")], &[], "Opening braces end their line."),
    ("right-curly", ImproperAlignment, &[(CS, "RightCurly")], &[], "Closing braces share a line with else, catch and finally and are otherwise alone."),
    ("paren-pad", ImproperAlignment, &[(CS, "ParenPad")], &[], "No whitespace just inside parentheses."),
    ("method-param-pad", ImproperAlignment, &[(CS, "MethodParamPad")], &[], "No whitespace between a method name and its parameter list."),
    ("variable-declaration-usage-distance", ImproperAlignment, &[(CS, "VariableDeclarationUsageDistance")], &[("max", N(3.0))], "Local variables are used within the configured number of statements."),
    ("declaration-order", ImproperAlignment, &[(CS, "DeclarationOrder")], &[], "Static fields, instance fields, constructors, then methods; fields by visibility."),
    // magic number
    ("magic-number", MagicNumber, &[(CS, "MagicNumber")], &[("ignore", T("-1,0,1,2"))], "Numeric literals outside constants are in the ignore set."),
    // dead code
    ("unused-formal-parameter", DeadCode, &[(PMD, "UnusedFormalParameter")], &[], "Parameters of private methods are used."),
    ("unused-local-variable", DeadCode, &[(PMD, "UnusedLocalVariable"), (CS, "UnusedLocalVariable")], &[], "Local variables are read."),
    ("unused-private-field", DeadCode, &[(PMD, "UnusedPrivateField")], &[], "Private fields are referenced."),
    ("unused-private-method", DeadCode, &[(PMD, "UnusedPrivateMethod")], &[], "Private methods are called."),
    ("unused-import", DeadCode, &[(CS, "UnusedImports")], &[], "Imported types are referenced."),
    // resource handling
    ("close-resource", ResourceHandling, &[(PMD, "CloseResource")], &[], "Local resources are closed, returned or handed over."),
    ("avoid-instantiating-objects-in-loops", ResourceHandling, &[(PMD, "AvoidInstantiatingObjectsInLoops")], &[], "No object creation inside loop bodies."),
    // documentation
    ("comment-required", Documentation, &[(PMD, "CommentRequired")], &[], "Public types carry a Javadoc comment."),
    ("comment-size", Documentation, &[(PMD, "CommentSize")], &[("max_lines", N(6.0)), ("max_line_length", N(80.0))], "Comments are short."),
    ("comment-content", Documentation, &[(PMD, "CommentContent")], &[("forbidden", T("(?i)idiot|jerk"))], "Comments contain no forbidden words."),
    ("javadoc-method", Documentation, &[(CS, "JavadocMethod"), (CS, "MissingJavadocMethod")], &[], "Public and protected methods have Javadoc with an @param tag per parameter."),
    ("javadoc-type", Documentation, &[(CS, "JavadocType")], &[], "Type Javadoc documents exactly the declared type parameters."),
    ("missing-javadoc-package", Documentation, &[(CS, "MissingJavadocPackage")], &[], "package-info.java carries package Javadoc."),
    ("javadoc-variable", Documentation, &[(CS, "JavadocVariable")], &[], "Fields and enum constants carry Javadoc."),
    // modularity
    ("god-class", Modularity, &[(PMD, "GodClass")], &[("max_members", N(40.0)), ("max_foreign_accesses", N(5.0))], "Classes are neither large nor reliant on foreign data."),
    ("data-class", Modularity, &[(PMD, "DataClass")], &[("min_exposed", N(3.0))], "Classes do more than expose state."),
    ("too-many-methods", Modularity, &[(PMD, "TooManyMethods")], &[("max", N(10.0))], "At most the configured number of non-accessor methods."),
    ("too-many-fields", Modularity, &[(PMD, "TooManyFields")], &[("max", N(15.0))], "At most the configured number of non-constant fields."),
    ("use-utility-class", Modularity, &[(PMD, "UseUtilityClass")], &[], "All-static classes hide their constructor."),
    ("hide-utility-class-constructor", Modularity, &[(CS, "HideUtilityClassConstructor")], &[], "Utility classes have no public or default constructor."),
    ("broken-modularization", Modularity, &[(DJ, "Broken Modularization")], &[("min_fields", N(5.0))], "Classes with many fields also have behaviour."),
    ("cyclically-dependent-modularization", Modularity, &[(DJ, "Cyclically-dependent Modularization")], &[], "Types do not depend on each other in a cycle."),
    ("hub-like-modularization", Modularity, &[(DJ, "Hub-like Modularization")], &[("min_fan_in", N(3.0)), ("min_fan_out", N(3.0))], "No type with both high fan-in and high fan-out."),
    ("insufficient-modularization", Modularity, &[(DJ, "Insufficient Modularization")], &[("max_public_methods", N(20.0)), ("max_methods", N(30.0)), ("max_wmc", N(100.0))], "Types are neither wide nor complex."),
    ("law-of-demeter", Modularity, &[(PMD, "LawOfDemeter")], &[("max_chain", N(2.0))], "No long call chains on non-builder receivers."),
    ("coupling-between-objects", Modularity, &[(PMD, "CouplingBetweenObjects")], &[("max", N(20.0))], "Few distinct types among fields, locals and return types."),
    ("class-fan-out", Modularity, &[(CS, "ClassFanOutComplexity")], &[("max", N(20.0))], "Few distinct referenced types beyond common library ones."),
    // encapsulation
    ("visibility-modifier", Encapsulation, &[(CS, "VisibilityModifier")], &[], "Non-constant fields are private."),
    ("excessive-public-count", Encapsulation, &[(PMD, "ExcessivePublicCount")], &[("max", N(45.0))], "Few public methods and fields."),
    ("deficient-encapsulation", Encapsulation, &[(DJ, "Deficient Encapsulation")], &[], "Types expose no public non-constant field."),
    ("final-parameters", Encapsulation, &[(CS, "FinalParameters")], &[], "Parameters of implemented methods are final."),
    ("final-class", Encapsulation, &[(CS, "FinalClass")], &[], "Classes with only private constructors are final."),
    ("hidden-field", Encapsulation, &[(CS, "HiddenField")], &[], "Locals and parameters do not shadow fields."),
    ("unexploited-encapsulation", Encapsulation, &[(DJ, "Unexploited Encapsulation")], &[], "No explicit type checks among types of one hierarchy."),
    // hierarchy
    ("broken-hierarchy", Hierarchy, &[(DJ, "Broken Hierarchy")], &[], "Subtypes use or override what they inherit."),
    ("cyclic-hierarchy", Hierarchy, &[(DJ, "Cyclic Hierarchy")], &[], "Supertypes do not refer to their subtypes."),
    ("deep-hierarchy", Hierarchy, &[(DJ, "Deep Hierarchy")], &[("max_depth", N(3.0))], "Inheritance chains are shallow."),
    ("missing-hierarchy", Hierarchy, &[(DJ, "Missing Hierarchy")], &[], "No explicit type checks among unrelated types."),
    ("multipath-hierarchy", Hierarchy, &[(DJ, "Multipath Hierarchy")], &[], "No supertype reachable along two paths."),
    ("rebellious-hierarchy", Hierarchy, &[(DJ, "Rebellious Hierarchy")], &[], "Overrides do not reject inherited behaviour."),
    ("wide-hierarchy", Hierarchy, &[(DJ, "Wide Hierarchy")], &[("min_subtypes", N(5.0))], "Supertypes have few direct subtypes."),
    ("dependency-cycles-between-packages", Hierarchy, &[(DJ, "Cyclic Dependency")], &[], "Packages do not import each other in a cycle."),
    // abstraction
    ("imperative-abstraction", Abstraction, &[(DJ, "Imperative Abstraction")], &[], "Classes are more than a single public operation."),
    ("multifaceted-abstraction", Abstraction, &[(DJ, "Multifaceted Abstraction")], &[("min_lcom", N(0.8)), ("min_fields", N(7.0)), ("min_methods", N(7.0))], "Classes are cohesive."),
    ("unnecessary-abstraction", Abstraction, &[(DJ, "Unnecessary Abstraction")], &[("max_fields", N(4.0))], "Classes have behaviour or substantial state."),
    ("unutilized-abstraction", Abstraction, &[(DJ, "Unutilized Abstraction")], &[], "Non-public types are used."),
];

fn build() -> Vec<SmellRule> {
    ROWS.iter()
        .map(|(id, ty, natives, params, desc)| SmellRule {
            rule_id: id.to_string(),
            smell_type: *ty,
            category: ty.category(),
            origin_tags: natives.iter().map(|(d, _)| *d).collect(),
            native_names: natives.iter().map(|(d, n)| (*d, n.to_string())).collect(),
            thresholds: params
                .iter()
                .map(|(k, v)| {
                    let p = match v {
                        N(n) => Param::Number(*n),
                        T(t) => Param::Text(t.to_string()),
                    };
                    (k.to_string(), p)
                })
                .collect(),
            enabled: true,
            description: desc.to_string(),
        })
        .collect()
}

/// Every rule, in catalog order.
pub fn catalog() -> Vec<SmellRule> {
    build()
}

pub fn find_rule(rule_id: &str) -> Option<SmellRule> {
    build().into_iter().find(|r| r.rule_id == rule_id)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RuleConfigError {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("rule `{rule}` has no parameter `{param}`")]
    UnknownParam { rule: String, param: String },
    #[error("override key `{0}` must look like <rule-id>.<parameter>")]
    BadKey(String),
    #[error("parameter `{key}` expects a {expected} value")]
    WrongKind { key: String, expected: &'static str },
    #[error("parameter `{key}` is not a valid pattern: {message}")]
    BadPattern { key: String, message: String },
    #[error("rule set is empty")]
    Empty,
}

/// Text parameters that hold regular expressions.
const PATTERN_PARAMS: &[&str] = &["format", "forbidden"];

/// The rules a detection run evaluates, with any parameter overrides applied.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleSet {
    rules: Vec<SmellRule>,
}

impl Default for RuleSet {
    fn default() -> Self {
        Self::all()
    }
}

impl RuleSet {
    pub fn all() -> Self {
        Self { rules: catalog() }
    }

    /// Uses `rules` as given; catalog rules missing from it are kept but
    /// disabled so parameter lookups still resolve.
    pub fn from_rules(rules: Vec<SmellRule>) -> Self {
        let mut all = rules;
        for r in catalog() {
            if !all.iter().any(|x| x.rule_id == r.rule_id) {
                all.push(SmellRule { enabled: false, ..r });
            }
        }
        Self { rules: all }
    }

    /// Enables exactly the listed rules.
    pub fn only(ids: &[&str]) -> Result<Self, RuleConfigError> {
        let mut rules = catalog();
        for id in ids {
            if !rules.iter().any(|r| r.rule_id == *id) {
                return Err(RuleConfigError::UnknownRule(id.to_string()));
            }
        }
        for r in &mut rules {
            r.enabled = ids.contains(&r.rule_id.as_str());
        }
        Ok(Self { rules })
    }

    pub fn rules(&self) -> &[SmellRule] {
        &self.rules
    }

    pub fn enabled(&self) -> impl Iterator<Item = &SmellRule> {
        self.rules.iter().filter(|r| r.enabled)
    }

    pub fn get(&self, rule_id: &str) -> Option<&SmellRule> {
        self.rules.iter().find(|r| r.rule_id == rule_id)
    }

    pub fn is_enabled(&self, rule_id: &str) -> bool {
        self.get(rule_id).is_some_and(|r| r.enabled)
    }

    /// Applies `rule-id.param` → value overrides.
    pub fn with_overrides(mut self, overrides: &BTreeMap<String, Param>) -> Result<Self, RuleConfigError> {
        for (key, value) in overrides {
            let (rule_id, param) = key
                .split_once('.')
                .ok_or_else(|| RuleConfigError::BadKey(key.clone()))?;
            let rule = self
                .rules
                .iter_mut()
                .find(|r| r.rule_id == rule_id)
                .ok_or_else(|| RuleConfigError::UnknownRule(rule_id.to_string()))?;
            let slot = rule
                .thresholds
                .get_mut(param)
                .ok_or_else(|| RuleConfigError::UnknownParam {
                    rule: rule_id.to_string(),
                    param: param.to_string(),
                })?;
            match (&*slot, value) {
                (Param::Number(_), Param::Number(_)) => *slot = value.clone(),
                (Param::Text(_), Param::Text(text)) => {
                    if PATTERN_PARAMS.contains(&param) {
                        regex::Regex::new(text).map_err(|e| RuleConfigError::BadPattern {
                            key: key.clone(),
                            message: e.to_string(),
                        })?;
                    }
                    *slot = value.clone();
                }
                (Param::Number(_), _) => {
                    return Err(RuleConfigError::WrongKind {
                        key: key.clone(),
                        expected: "numeric",
                    })
                }
                (Param::Text(_), _) => {
                    return Err(RuleConfigError::WrongKind {
                        key: key.clone(),
                        expected: "text",
                    })
                }
            }
        }
        Ok(self)
    }
}

/// Default (detector, native rule name) → canonical rule id map.
pub fn default_rule_map() -> BTreeMap<(Detector, String), String> {
    let mut map = BTreeMap::new();
    for r in catalog() {
        for (d, n) in &r.native_names {
            map.insert((*d, n.clone()), r.rule_id.clone());
        }
    }
    map
}
