//! Java code-smell detection and violations-per-solution scoring.

pub mod adapters;
pub mod corpus;
pub mod fsutil;
pub mod gateway;
pub mod java;
pub mod metrics;
pub mod pipeline;
pub mod report;
pub mod scoreboard;
pub mod smells;

pub use corpus::{load_manifest, CodingTask, Corpus, BASELINE};
pub use pipeline::{run_pipeline, PipelineError, RunConfig, RunSummary};
pub use scoreboard::{Rate, ScoreCard, ScoreSheet};
pub use smells::{RuleSet, Subject, Violation, ViolationReport};
