use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ScoreError;
use crate::corpus::{ComplexityTriple, Corpus};
use crate::smells::{catalog, Category, SmellType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexityMetric {
    Cyclomatic,
    Cognitive,
    Loc,
}

impl ComplexityMetric {
    pub fn as_str(self) -> &'static str {
        match self {
            ComplexityMetric::Cyclomatic => "cyclomatic",
            ComplexityMetric::Cognitive => "cognitive",
            ComplexityMetric::Loc => "loc",
        }
    }

    pub fn default_width(self) -> u32 {
        match self {
            ComplexityMetric::Cyclomatic => 1,
            ComplexityMetric::Cognitive => 5,
            ComplexityMetric::Loc => 10,
        }
    }

    pub fn of(self, c: &ComplexityTriple) -> u32 {
        match self {
            ComplexityMetric::Cyclomatic => c.cyclomatic,
            ComplexityMetric::Cognitive => c.cognitive,
            ComplexityMetric::Loc => c.loc,
        }
    }
}

impl FromStr for ComplexityMetric {
    type Err = ScoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cyclomatic" => Ok(ComplexityMetric::Cyclomatic),
            "cognitive" => Ok(ComplexityMetric::Cognitive),
            "loc" => Ok(ComplexityMetric::Loc),
            _ => Err(ScoreError::BadSelector(s.to_string())),
        }
    }
}

/// Which subsets of the corpus a score is computed over.
///
/// Text forms: `all`, `topic`, `topic:A+B`, `source`,
/// `complexity:<metric>[:<width>]`, `correctness:<model>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ScenarioSelector {
    All,
    /// One subset per topic; a non-empty `only` restricts to those topics.
    ByTopic {
        only: Vec<String>,
    },
    BySource,
    /// Fixed-width buckets over the reference complexity.
    ByComplexity {
        metric: ComplexityMetric,
        width: u32,
    },
    /// Correct vs incorrect solutions of one model; unknown flags excluded.
    ByCorrectness {
        model_id: String,
    },
}

impl ScenarioSelector {
    /// Directory name under `scores/`.
    pub fn dir_name(&self) -> String {
        sanitize(&self.to_string())
    }
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            ':' | '+' => '-',
            c if c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.' => c,
            _ => '_',
        })
        .collect()
}

impl fmt::Display for ScenarioSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioSelector::All => f.write_str("all"),
            ScenarioSelector::ByTopic { only } if only.is_empty() => f.write_str("topic"),
            ScenarioSelector::ByTopic { only } => write!(f, "topic:{}", only.join("+")),
            ScenarioSelector::BySource => f.write_str("source"),
            ScenarioSelector::ByComplexity { metric, width } if *width == metric.default_width() => {
                write!(f, "complexity:{}", metric.as_str())
            }
            ScenarioSelector::ByComplexity { metric, width } => write!(f, "complexity:{}:{width}", metric.as_str()),
            ScenarioSelector::ByCorrectness { model_id } => write!(f, "correctness:{model_id}"),
        }
    }
}

impl FromStr for ScenarioSelector {
    type Err = ScoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ScoreError::BadSelector(s.to_string());
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        match (head, rest) {
            ("all", None) => Ok(ScenarioSelector::All),
            ("source", None) => Ok(ScenarioSelector::BySource),
            ("topic", None) => Ok(ScenarioSelector::ByTopic { only: Vec::new() }),
            ("topic", Some(list)) => {
                let only: Vec<String> = list.split('+').map(str::to_string).collect();
                if only.iter().any(String::is_empty) {
                    return Err(bad());
                }
                Ok(ScenarioSelector::ByTopic { only })
            }
            ("complexity", Some(rest)) => {
                let (metric, width) = match rest.split_once(':') {
                    Some((m, w)) => {
                        let metric: ComplexityMetric = m.parse().map_err(|_| bad())?;
                        (metric, w.parse::<u32>().map_err(|_| bad())?)
                    }
                    None => {
                        let metric: ComplexityMetric = rest.parse().map_err(|_| bad())?;
                        (metric, metric.default_width())
                    }
                };
                if width == 0 {
                    return Err(bad());
                }
                Ok(ScenarioSelector::ByComplexity { metric, width })
            }
            ("correctness", Some(m)) if !m.is_empty() => Ok(ScenarioSelector::ByCorrectness {
                model_id: m.to_string(),
            }),
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for ScenarioSelector {
    type Error = ScoreError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<ScenarioSelector> for String {
    fn from(s: ScenarioSelector) -> String {
        s.to_string()
    }
}

/// A labelled subset of task ids, in corpus order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subset {
    pub label: String,
    pub task_ids: Vec<String>,
}

/// Splits the corpus according to `selector`. Empty subsets are omitted.
pub fn partition(corpus: &Corpus, selector: &ScenarioSelector) -> Result<Vec<Subset>, ScoreError> {
    let subsets = |groups: Vec<(String, Vec<String>)>| {
        groups
            .into_iter()
            .filter(|(_, ids)| !ids.is_empty())
            .map(|(label, task_ids)| Subset { label, task_ids })
            .collect()
    };
    match selector {
        ScenarioSelector::All => Ok(subsets(vec![(
            "all".into(),
            corpus.tasks.iter().map(|t| t.task_id.clone()).collect(),
        )])),
        ScenarioSelector::ByTopic { only } => {
            let topics = corpus.topics();
            if let Some(missing) = only.iter().find(|t| !topics.contains(t.as_str())) {
                return Err(ScoreError::UnknownTopic(missing.clone()));
            }
            let mut groups: BTreeMap<&str, Vec<String>> = BTreeMap::new();
            for t in &corpus.tasks {
                if only.is_empty() || only.contains(&t.topic) {
                    groups.entry(&t.topic).or_default().push(t.task_id.clone());
                }
            }
            Ok(subsets(groups.into_iter().map(|(k, v)| (k.to_string(), v)).collect()))
        }
        ScenarioSelector::BySource => {
            let mut groups: BTreeMap<&str, Vec<String>> = BTreeMap::new();
            for t in &corpus.tasks {
                groups.entry(t.source.as_str()).or_default().push(t.task_id.clone());
            }
            Ok(subsets(groups.into_iter().map(|(k, v)| (k.to_string(), v)).collect()))
        }
        ScenarioSelector::ByComplexity { metric, width } => {
            if *width == 0 {
                return Err(ScoreError::BadSelector(selector.to_string()));
            }
            let mut groups: BTreeMap<u32, Vec<String>> = BTreeMap::new();
            for t in &corpus.tasks {
                let lo = metric.of(&t.complexity) / width * width;
                groups.entry(lo).or_default().push(t.task_id.clone());
            }
            let label = |lo: u32| match width {
                1 => lo.to_string(),
                w => format!("{lo}-{}", lo + w - 1),
            };
            Ok(subsets(groups.into_iter().map(|(lo, v)| (label(lo), v)).collect()))
        }
        ScenarioSelector::ByCorrectness { model_id } => {
            if !corpus.models.contains(model_id) {
                return Err(ScoreError::UnknownModel(model_id.clone()));
            }
            let (mut yes, mut no) = (Vec::new(), Vec::new());
            for t in &corpus.tasks {
                match t.solution(model_id).and_then(|s| s.correct) {
                    Some(true) => yes.push(t.task_id.clone()),
                    Some(false) => no.push(t.task_id.clone()),
                    None => {}
                }
            }
            Ok(subsets(vec![("correct".into(), yes), ("incorrect".into(), no)]))
        }
    }
}

/// Which rules a score counts.
///
/// Text forms: `all`, `implementation`, `design`, `type:<smell-type>`,
/// `rules:a+b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum RuleSetSelector {
    All,
    Category(Category),
    Type(SmellType),
    Explicit(Vec<String>),
}

impl RuleSetSelector {
    /// The selected rule ids; never empty.
    pub fn resolve(&self) -> Result<BTreeSet<String>, ScoreError> {
        let rules = catalog();
        let ids: BTreeSet<String> = match self {
            RuleSetSelector::All => rules.into_iter().map(|r| r.rule_id).collect(),
            RuleSetSelector::Category(c) => rules
                .into_iter()
                .filter(|r| r.category == *c)
                .map(|r| r.rule_id)
                .collect(),
            RuleSetSelector::Type(t) => rules
                .into_iter()
                .filter(|r| r.smell_type == *t)
                .map(|r| r.rule_id)
                .collect(),
            RuleSetSelector::Explicit(list) => {
                if let Some(unknown) = list.iter().find(|id| !rules.iter().any(|r| &r.rule_id == *id)) {
                    return Err(ScoreError::UnknownRule(unknown.clone()));
                }
                list.iter().cloned().collect()
            }
        };
        if ids.is_empty() {
            return Err(ScoreError::EmptyRuleSet);
        }
        Ok(ids)
    }

    /// File stem under `scores/<scenario>/`.
    pub fn file_stem(&self) -> String {
        sanitize(&self.to_string())
    }
}

impl fmt::Display for RuleSetSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleSetSelector::All => f.write_str("all"),
            RuleSetSelector::Category(c) => f.write_str(c.as_str()),
            RuleSetSelector::Type(t) => write!(f, "type:{t}"),
            RuleSetSelector::Explicit(ids) => write!(f, "rules:{}", ids.join("+")),
        }
    }
}

impl FromStr for RuleSetSelector {
    type Err = ScoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            None => match s {
                "all" => Ok(RuleSetSelector::All),
                "implementation" => Ok(RuleSetSelector::Category(Category::Implementation)),
                "design" => Ok(RuleSetSelector::Category(Category::Design)),
                _ => Err(ScoreError::BadSelector(s.to_string())),
            },
            Some(("type", t)) => t
                .parse()
                .map(RuleSetSelector::Type)
                .map_err(|_| ScoreError::BadSelector(s.to_string())),
            Some(("rules", list)) if !list.is_empty() => {
                Ok(RuleSetSelector::Explicit(list.split('+').map(str::to_string).collect()))
            }
            _ => Err(ScoreError::BadSelector(s.to_string())),
        }
    }
}

impl TryFrom<String> for RuleSetSelector {
    type Error = ScoreError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<RuleSetSelector> for String {
    fn from(s: RuleSetSelector) -> String {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selector_text_round_trips() {
        for s in [
            "all",
            "topic",
            "topic:Arrays+Loops",
            "source",
            "complexity:cyclomatic",
            "complexity:loc:25",
            "correctness:m1",
        ] {
            assert_eq!(s.parse::<ScenarioSelector>().unwrap().to_string(), s);
        }
        assert_eq!(
            "complexity:cognitive:5"
                .parse::<ScenarioSelector>()
                .unwrap()
                .to_string(),
            "complexity:cognitive"
        );
        for bad in [
            "",
            "topic:",
            "complexity",
            "complexity:loc:0",
            "complexity:size",
            "correctness:",
            "every",
        ] {
            assert!(bad.parse::<ScenarioSelector>().is_err(), "{bad}");
        }
        for s in [
            "all",
            "implementation",
            "design",
            "type:magic-number",
            "rules:line-length+magic-number",
        ] {
            assert_eq!(s.parse::<RuleSetSelector>().unwrap().to_string(), s);
        }
        assert!("type:smelly".parse::<RuleSetSelector>().is_err());
        assert_eq!(
            "complexity:loc:25".parse::<ScenarioSelector>().unwrap().dir_name(),
            "complexity-loc-25"
        );
    }

    #[test]
    fn rule_sets_resolve_to_catalog_subsets() {
        let all = RuleSetSelector::All.resolve().unwrap();
        let imp = RuleSetSelector::Category(Category::Implementation).resolve().unwrap();
        let des = RuleSetSelector::Category(Category::Design).resolve().unwrap();
        assert!(imp.is_disjoint(&des));
        assert_eq!(imp.len() + des.len(), all.len());
        let typed: usize = SmellType::ALL
            .iter()
            .map(|t| RuleSetSelector::Type(*t).resolve().unwrap().len())
            .sum();
        assert_eq!(typed, all.len());
        assert!(matches!(
            RuleSetSelector::Explicit(vec!["nope".into()]).resolve(),
            Err(ScoreError::UnknownRule(_))
        ));
    }
}
