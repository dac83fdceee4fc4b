use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use smellbench_core::adapters::{
    diff_reports, import_reports, AdapterError, ExternalReport, ImportOptions, ReportFormat,
};
use smellbench_core::corpus::{validate_corpus, BASELINE};
use smellbench_core::gateway::{generate_corpus, EndpointConfig, Gateway, GatewayError, GenerationStatus};
use smellbench_core::pipeline::{analyze, load_reports, run_pipeline, score, PipelineError, RunConfig};
use smellbench_core::report::render_tables;
use smellbench_core::scoreboard::{RuleSetSelector, ScenarioSelector};
use smellbench_core::smells::store::ReportStore;
use smellbench_core::smells::{default_rule_map, SmellType, Subject};

#[derive(Debug, Parser)]
#[command(
    name = "smellbench",
    version,
    about = "Code-smell scoring of generated Java solutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Load and validate a corpus manifest and print its statistics.
    Ingest {
        #[arg(long)]
        corpus: PathBuf,
        /// Also write the statistics to `<out>/corpus_summary.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ask a completion endpoint for solutions of every task lacking one.
    Generate {
        #[arg(long)]
        corpus: PathBuf,
        /// Endpoint config (JSON).
        #[arg(long)]
        endpoint: PathBuf,
        #[arg(long)]
        model: String,
    },
    /// Detect smells and persist one report per (subject, task).
    Analyze(RunArgs),
    /// Convert external detector output into a canonical report.
    ImportReports(ImportArgs),
    /// Compute scorecards from persisted reports.
    Score(RunArgs),
    /// Render CSV tables from persisted scorecards.
    Report {
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Compare the reports of two subjects task by task.
    Diff {
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, default_value = BASELINE)]
        native: String,
        #[arg(long)]
        imported: String,
    },
    /// analyze, score and report in one go.
    Run(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON file with the same fields as the run config; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    subjects: Vec<String>,
    /// all | topic | source | complexity:<metric>[:<width>] | correctness:<model>
    #[arg(long, value_delimiter = ',')]
    scenario: Vec<String>,
    /// all | implementation | design | type:<name> | types
    #[arg(long, value_delimiter = ',')]
    ruleset: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct ImportArgs {
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Subject name the imported reports are stored under.
    #[arg(long)]
    subject: String,
    #[arg(long)]
    task: String,
    /// pmd_xml | checkstyle_xml | designite_csv; guessed from content if absent.
    #[arg(long)]
    format: Option<String>,
    /// Prefix removed from file paths in the reports.
    #[arg(long)]
    strip_prefix: Option<String>,
    /// Project root the report paths are relative to (after stripping);
    /// its sources are used to place findings on lines.
    #[arg(long)]
    sources: Option<PathBuf>,
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e.exit_code() {
            2 => CliError::Io(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<AdapterError> for CliError {
    fn from(e: AdapterError) -> Self {
        match e {
            AdapterError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<GatewayError> for CliError {
    fn from(e: GatewayError) -> Self {
        match e {
            GatewayError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

fn parse_rulesets(items: &[String]) -> Result<Vec<RuleSetSelector>, CliError> {
    let mut out = Vec::new();
    for item in items {
        if item == "types" {
            out.extend(SmellType::ALL.into_iter().map(RuleSetSelector::Type));
        } else {
            out.push(item.parse().map_err(|e| CliError::Config(format!("--ruleset: {e}")))?);
        }
    }
    Ok(out)
}

impl RunArgs {
    fn config(&self) -> Result<RunConfig, CliError> {
        let mut c = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        if let Some(p) = &self.corpus {
            c.corpus = p.clone();
        }
        if !self.subjects.is_empty() {
            c.subjects = self.subjects.clone();
        }
        if !self.scenario.is_empty() {
            c.scenarios = self
                .scenario
                .iter()
                .map(|s| s.parse::<ScenarioSelector>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Config(format!("--scenario: {e}")))?;
        }
        if !self.ruleset.is_empty() {
            c.rulesets = parse_rulesets(&self.ruleset)?;
        }
        if let Some(o) = &self.out {
            c.out = o.clone();
        }
        if let Some(j) = self.jobs {
            c.parallelism = j;
        }
        c.validate()?;
        Ok(c)
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    std::fs::write(path, bytes).map_err(|e| io_err(path, e))
}

/// Java sources under `root`, keyed by slash-separated relative path.
fn read_sources(root: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).map_err(|e| io_err(&dir, e))? {
            let path = entry.map_err(|e| io_err(&dir, e))?.path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().is_some_and(|e| e == "java") {
                let rel = path.strip_prefix(root).expect("under root");
                let key = rel
                    .components()
                    .map(|c| c.as_os_str().to_string_lossy())
                    .collect::<Vec<_>>()
                    .join("/");
                let text = std::fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
                out.insert(key, text);
            }
        }
    }
    Ok(out)
}

fn import(args: &ImportArgs) -> Result<(), CliError> {
    let forced = args.format.as_deref().map(str::parse::<ReportFormat>).transpose()?;
    let mut reports = Vec::new();
    for path in &args.files {
        let format = match forced {
            Some(f) => f,
            None => {
                let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
                ReportFormat::sniff(&text)
                    .ok_or_else(|| CliError::Config(format!("{}: cannot tell the report format", path.display())))?
            }
        };
        reports.push(ExternalReport {
            format,
            path: path.clone(),
            detector_version: None,
        });
    }
    let opts = ImportOptions {
        strip_prefix: args.strip_prefix.clone(),
        sources: match &args.sources {
            Some(dir) => read_sources(dir)?,
            None => BTreeMap::new(),
        },
    };
    let result = import_reports(
        Subject::new(&args.task, &args.subject),
        &reports,
        &default_rule_map(),
        &opts,
    )?;
    let store = ReportStore::new(args.out.join(smellbench_core::pipeline::REPORTS_DIR));
    store.write(&result.report).map_err(|e| CliError::Io(e.to_string()))?;
    println!(
        "{} findings, {} imported, {} collapsed, {} unmapped",
        result.findings,
        result.report.total(),
        result.collapsed,
        result.unmapped.len()
    );
    for ((detector, rule), n) in result.unmapped_counts() {
        eprintln!("unmapped {}:{rule} x{n}", detector.as_str());
    }
    Ok(())
}

fn diff(out: &Path, native: &str, imported: &str) -> Result<(), CliError> {
    let store = ReportStore::new(out.join(smellbench_core::pipeline::REPORTS_DIR));
    let a = store.read_subject(native).map_err(|e| CliError::Io(e.to_string()))?;
    let b = store.read_subject(imported).map_err(|e| CliError::Io(e.to_string()))?;
    let mut csv = String::from("task_id,rule_id,native_count,imported_count,delta\n");
    let mut disagreements = 0;
    for (task, left) in &a {
        let Some(right) = b.get(task) else { continue };
        let d = diff_reports(left, right);
        disagreements += d.only_in_native.len() + d.only_in_imported.len();
        for row in d.rows {
            csv.push_str(&format!(
                "{task},{},{},{},{}\n",
                row.rule_id, row.native_count, row.imported_count, row.delta
            ));
        }
    }
    let path = out
        .join(smellbench_core::pipeline::TABLES_DIR)
        .join(format!("diff_{native}_{imported}.csv"));
    write_file(&path, csv.as_bytes())?;
    print!("{csv}");
    eprintln!("{disagreements} located disagreements");
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Ingest { corpus, out } => {
            let c = RunConfig {
                corpus,
                ..RunConfig::default()
            }
            .load_corpus()?;
            let summary = serde_json::to_string_pretty(&validate_corpus(&c)).expect("summary serializes");
            if let Some(out) = out {
                write_file(&out.join("corpus_summary.json"), format!("{summary}\n").as_bytes())?;
            }
            println!("{summary}");
        }
        Command::Generate {
            corpus,
            endpoint,
            model,
        } => {
            let mut c = RunConfig {
                corpus,
                ..RunConfig::default()
            }
            .load_corpus()?;
            let text = std::fs::read_to_string(&endpoint)
                .map_err(|e| CliError::Config(format!("{}: {e}", endpoint.display())))?;
            let config: EndpointConfig =
                serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", endpoint.display())))?;
            let records = generate_corpus(&Gateway::new(config)?, &mut c, &model)?;
            let ok = records.iter().filter(|r| r.status == GenerationStatus::Ok).count();
            println!("{} requests, {ok} solutions written", records.len());
        }
        Command::Analyze(args) => {
            let config = args.config()?;
            let corpus = config.load_corpus()?;
            let subjects = config.resolve_subjects(&corpus)?;
            let (_, summary) = analyze(&config, &corpus, &subjects)?;
            println!("{} reports ({} recomputed)", summary.reports, summary.recomputed);
            for (subject, failed) in &summary.failures {
                println!("{subject}: {} unparseable solutions", failed.len());
            }
        }
        Command::ImportReports(args) => import(&args)?,
        Command::Score(args) => {
            let config = args.config()?;
            let corpus = config.load_corpus()?;
            let subjects = config.resolve_subjects(&corpus)?;
            let reports = load_reports(&config, &subjects)?;
            let (sheets, _) = score(&config, &corpus, &reports, &subjects)?;
            println!(
                "{} scorecards in {} sheets",
                sheets.iter().map(|s| s.cards.len()).sum::<usize>(),
                sheets.len()
            );
        }
        Command::Report { out } => {
            let config = RunConfig {
                out,
                ..RunConfig::default()
            };
            let tables = render_tables(&config.scores_dir(), &config.stats_dir(), &config.tables_dir())
                .map_err(|e| CliError::from(PipelineError::from(e)))?;
            for (path, _) in tables {
                println!("{}", path.display());
            }
        }
        Command::Diff { out, native, imported } => diff(&out, &native, &imported)?,
        Command::Run(args) => {
            let summary = run_pipeline(&args.config()?)?;
            println!("{summary}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (CliError::Config(m) | CliError::Io(m)) = &e;
            eprintln!("error: {m}");
            ExitCode::from(e.code())
        }
    }
}
