//! CSV rendering of persisted scorecards and statistics. Nothing here
//! computes a score: every number comes from a file under `scores/` or
//! `stats/`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::fsutil::write_if_changed;
use crate::scoreboard::{
    percent, read_sheets, to_f64, topic_stats_path, Rate, RuleSetSelector, ScenarioSelector, ScoreSheet, SmellShare,
    TopicStats, TOP_SMELLS_FILE,
};
use crate::smells::store::StoreError;
use crate::smells::SmellType;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// VS with three decimals; empty when undefined.
pub fn fmt_vs(v: Option<Rate>) -> String {
    v.map(|r| format!("{:.3}", to_f64(r))).unwrap_or_default()
}

/// Rate as a percentage with two decimals; empty when undefined.
pub fn fmt_rate(v: Option<Rate>) -> String {
    v.map(percent).unwrap_or_default()
}

fn fmt_float(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.4}")).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Cell {
    pub vs: Option<Rate>,
    pub increase_rate: Option<Rate>,
}

/// A grid of scorecard values: rows are topics or smell types, columns
/// subjects. Missing cells render as empty strings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Heatmap {
    pub row_label: String,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub cells: BTreeMap<(String, String), Cell>,
}

impl Heatmap {
    fn csv(&self, value: impl Fn(&Cell) -> String) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header: Vec<&str> = std::iter::once(self.row_label.as_str())
            .chain(self.cols.iter().map(String::as_str))
            .collect();
        w.write_record(&header).expect("in-memory write");
        for row in &self.rows {
            let mut rec = vec![row.clone()];
            for col in &self.cols {
                rec.push(
                    self.cells
                        .get(&(row.clone(), col.clone()))
                        .map(&value)
                        .unwrap_or_default(),
                );
            }
            w.write_record(&rec).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }

    pub fn values_csv(&self) -> Vec<u8> {
        self.csv(|c| fmt_vs(c.vs))
    }

    pub fn increase_csv(&self) -> Vec<u8> {
        self.csv(|c| fmt_rate(c.increase_rate))
    }
}

fn write(path: PathBuf, bytes: &[u8]) -> Result<(PathBuf, bool), ReportError> {
    match write_if_changed(&path, bytes) {
        Ok(changed) => Ok((path, changed)),
        Err(source) => Err(ReportError::Io { path, source }),
    }
}

/// Writes `<stem>_vs.csv` and `<stem>_increase.csv` into `dir`.
pub fn emit_heatmap(grid: &Heatmap, dir: &Path, stem: &str) -> Result<Vec<(PathBuf, bool)>, ReportError> {
    Ok(vec![
        write(dir.join(format!("{stem}_vs.csv")), &grid.values_csv())?,
        write(dir.join(format!("{stem}_increase.csv")), &grid.increase_csv())?,
    ])
}

fn subjects_of(sheet: &ScoreSheet) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for c in &sheet.cards {
        if !out.contains(&c.subject) {
            out.push(c.subject.clone());
        }
    }
    out
}

/// Topics × subjects for an unfiltered topic sheet.
pub fn topic_heatmap(sheet: &ScoreSheet) -> Heatmap {
    let mut rows: Vec<String> = sheet.subsets().into_iter().map(str::to_string).collect();
    rows.sort();
    Heatmap {
        row_label: "topic".into(),
        rows,
        cols: subjects_of(sheet),
        cells: sheet
            .cards
            .iter()
            .map(|c| {
                let cell = Cell {
                    vs: c.vs,
                    increase_rate: c.increase_rate,
                };
                ((c.subset.clone(), c.subject.clone()), cell)
            })
            .collect(),
    }
}

/// Smell types × subjects from per-type sheets of a single-subset scenario,
/// in catalog order, followed by an `all` row when the all-rules sheet is
/// present.
pub fn type_heatmap(sheets: &[&ScoreSheet]) -> Option<Heatmap> {
    let mut grid = Heatmap {
        row_label: "smell_type".into(),
        ..Heatmap::default()
    };
    let add = |label: String, sheet: &ScoreSheet, grid: &mut Heatmap| {
        for c in &sheet.cards {
            if !grid.cols.contains(&c.subject) {
                grid.cols.push(c.subject.clone());
            }
            grid.cells.insert(
                (label.clone(), c.subject.clone()),
                Cell {
                    vs: c.vs,
                    increase_rate: c.increase_rate,
                },
            );
        }
        grid.rows.push(label);
    };
    for t in SmellType::ALL {
        if let Some(sheet) = sheets.iter().find(|s| s.ruleset == RuleSetSelector::Type(t)) {
            add(t.to_string(), sheet, &mut grid);
        }
    }
    if grid.rows.is_empty() {
        return None;
    }
    if let Some(sheet) = sheets.iter().find(|s| s.ruleset == RuleSetSelector::All) {
        add("all".into(), sheet, &mut grid);
    }
    Some(grid)
}

fn sheet_csv(sheet: &ScoreSheet) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "subset",
        "subject",
        "n_tasks",
        "n_analyzed",
        "n_failed",
        "total_violations",
        "vs",
        "baseline_vs",
        "increase_rate",
    ])
    .expect("in-memory write");
    for c in &sheet.cards {
        w.write_record([
            c.subset.clone(),
            c.subject.clone(),
            c.n_tasks.to_string(),
            c.n_analyzed.to_string(),
            c.n_failed.to_string(),
            c.total_violations.to_string(),
            fmt_vs(c.vs),
            fmt_vs(c.baseline_vs),
            fmt_rate(c.increase_rate),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn topic_stats_csv(stats: &[TopicStats]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "subject",
        "pearson_with_baseline",
        "dispersion",
        "best",
        "worst",
        "most_improved",
        "most_worsened",
    ])
    .expect("in-memory write");
    for s in stats {
        w.write_record([
            s.subject.clone(),
            fmt_float(s.pearson_with_baseline),
            fmt_float(s.dispersion),
            s.best.join(";"),
            s.worst.join(";"),
            s.most_improved.join(";"),
            s.most_worsened.join(";"),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn top_smells_csv(top: &BTreeMap<String, BTreeMap<SmellType, Vec<SmellShare>>>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "subject",
        "smell_type",
        "rule_id",
        "violations",
        "per_solution",
        "weight",
    ])
    .expect("in-memory write");
    for (subject, by_type) in top {
        for t in SmellType::ALL {
            for share in by_type.get(&t).into_iter().flatten() {
                w.write_record([
                    subject.clone(),
                    t.to_string(),
                    share.rule_id.clone(),
                    share.violations.to_string(),
                    fmt_vs(Some(share.per_solution)),
                    fmt_rate(Some(share.weight)),
                ])
                .expect("in-memory write");
            }
        }
    }
    w.into_inner().expect("in-memory flush")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Option<T>, ReportError> {
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(source) => {
            return Err(ReportError::Io {
                path: path.to_path_buf(),
                source,
            })
        }
    };
    serde_json::from_slice(&bytes).map(Some).map_err(|e| {
        ReportError::Store(StoreError::Json {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    })
}

/// Renders every table from the persisted sheets and statistics. Returns
/// each table path and whether it changed.
pub fn render_tables(scores: &Path, stats: &Path, out: &Path) -> Result<Vec<(PathBuf, bool)>, ReportError> {
    let sheets = read_sheets(scores)?;
    let mut written = Vec::new();
    for sheet in &sheets {
        let stem = format!("{}_{}", sheet.scenario.dir_name(), sheet.ruleset.file_stem());
        written.push(write(out.join(format!("scores_{stem}.csv")), &sheet_csv(sheet))?);
        if matches!(&sheet.scenario, ScenarioSelector::ByTopic { only } if only.is_empty()) {
            let ruleset = sheet.ruleset.file_stem();
            written.extend(emit_heatmap(
                &topic_heatmap(sheet),
                out,
                &format!("heatmap_topic_{ruleset}"),
            )?);
            if let Some(ts) = read_json::<Vec<TopicStats>>(&topic_stats_path(stats, &ruleset))? {
                written.push(write(
                    out.join(format!("topic_stats_{ruleset}.csv")),
                    &topic_stats_csv(&ts),
                )?);
            }
        }
    }
    let whole: Vec<&ScoreSheet> = sheets.iter().filter(|s| s.scenario == ScenarioSelector::All).collect();
    if let Some(grid) = type_heatmap(&whole) {
        written.extend(emit_heatmap(&grid, out, "heatmap_type")?);
    }
    if let Some(top) = read_json(&stats.join(TOP_SMELLS_FILE))? {
        written.push(write(out.join("top_smells.csv"), &top_smells_csv(&top))?);
    }
    Ok(written)
}
