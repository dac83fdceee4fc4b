#![allow(dead_code)]

pub mod adapter_checks;
pub mod metric_fixtures;
pub mod oracle;
pub mod rule_fixtures;
pub mod synth;
