use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Rate, ScoreCard, ScoreError};
use crate::smells::{catalog, SmellType, ViolationReport};

/// Pearson correlation coefficient of two equally long samples.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, ScoreError> {
    if xs.len() != ys.len() {
        return Err(ScoreError::DegenerateInput(format!(
            "lengths differ ({} vs {})",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(ScoreError::DegenerateInput("fewer than two points".into()));
    }
    let constant = |v: &[f64]| v.iter().all(|x| *x == v[0]);
    if constant(xs) || constant(ys) {
        return Err(ScoreError::DegenerateInput("zero variance".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Population standard deviation.
pub fn dispersion(values: &[f64]) -> Result<f64, ScoreError> {
    if values.len() < 2 {
        return Err(ScoreError::DegenerateInput("fewer than two values".into()));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    Ok((values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rankings {
    pub best: Vec<(String, Rate)>,
    pub worst: Vec<(String, Rate)>,
    pub most_improved: Vec<(String, Rate)>,
    pub most_worsened: Vec<(String, Rate)>,
}

fn top_k(mut entries: Vec<(String, Rate)>, k: usize, descending: bool) -> Vec<(String, Rate)> {
    entries.sort_by(|a, b| {
        let by_value = if descending { b.1.cmp(&a.1) } else { a.1.cmp(&b.1) };
        by_value.then_with(|| a.0.cmp(&b.0))
    });
    entries.truncate(k);
    entries
}

/// Best and worst `k` subsets by VS and by increase rate, using each card's
/// subset label as the topic name. Ties go to the lexicographically smaller
/// name.
pub fn rank_topics(cards: &[ScoreCard], k: usize) -> Result<Rankings, ScoreError> {
    let vs: Vec<(String, Rate)> = cards
        .iter()
        .filter_map(|c| c.vs.map(|v| (c.subset.clone(), v)))
        .collect();
    let inc: Vec<(String, Rate)> = cards
        .iter()
        .filter_map(|c| c.increase_rate.map(|v| (c.subset.clone(), v)))
        .collect();
    let have = vs.len().min(inc.len());
    if have < k {
        return Err(ScoreError::NotEnoughEntries { need: k, have });
    }
    Ok(Rankings {
        best: top_k(vs.clone(), k, false),
        worst: top_k(vs, k, true),
        most_improved: top_k(inc.clone(), k, false),
        most_worsened: top_k(inc, k, true),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmellShare {
    pub rule_id: String,
    pub violations: u64,
    /// Violations per analyzed solution.
    #[serde(with = "super::exact")]
    pub per_solution: Rate,
    /// Share of all violations of the group.
    #[serde(with = "super::exact")]
    pub weight: Rate,
}

/// Rules of `group` with at least one violation, most frequent first.
pub fn top_smells<'a>(reports: impl IntoIterator<Item = &'a ViolationReport>, group: SmellType) -> Vec<SmellShare> {
    let mut counts: BTreeMap<String, u64> = catalog()
        .into_iter()
        .filter(|r| r.smell_type == group)
        .map(|r| (r.rule_id, 0))
        .collect();
    let mut analyzed = 0i64;
    for r in reports.into_iter().filter(|r| r.parse_ok) {
        analyzed += 1;
        for (id, n) in counts.iter_mut() {
            *n += r.count(id);
        }
    }
    let total: u64 = counts.values().sum();
    if total == 0 {
        return Vec::new();
    }
    let mut out: Vec<SmellShare> = counts
        .into_iter()
        .filter(|(_, n)| *n > 0)
        .map(|(rule_id, n)| SmellShare {
            rule_id,
            violations: n,
            per_solution: Rate::new(n as i64, analyzed),
            weight: Rate::new(n as i64, total as i64),
        })
        .collect();
    out.sort_by(|a, b| match b.violations.cmp(&a.violations) {
        Ordering::Equal => a.rule_id.cmp(&b.rule_id),
        o => o,
    });
    out
}
