//! Dataset ingestion, brute-force landmark verification oracles, metrics
//! computation and suite reporting.

pub mod bundle;
pub mod fixtures;
pub mod oracle;
pub mod suite;

pub use bundle::{
    load_bundle, load_suite_bundle, scan_suite, BundleMeta, LoadedBundle, BUNDLE_FILES,
    NOISELESS_LEVELS, NOISY_LEVELS,
};
pub use oracle::{
    brute_force_plans, oracle_check_landmarks, LandmarkViolation, OracleBounds, OracleError,
    PlanEnumeration,
};
pub use suite::{
    aggregate_records, records_from_csv, records_to_csv, run_bundle, run_suite, summary_to_csv,
    write_report, BenchConfig, GroupKey, MetricsRecord, SuiteFailure, SuiteReport, SuiteRow,
};

use std::path::Path;

use thiserror::Error;

use crate::parser::ParserError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{file}:{source}")]
    Parse { file: String, source: ParserError },
    #[error("{bundle}: hypotheses file is empty")]
    EmptyHypotheses { bundle: String },
    #[error("{bundle}: hypothesis atom `{atom}` is outside the grounded fact universe")]
    HypothesisOutsideUniverse { bundle: String, atom: String },
    #[error("{bundle}: obs.dat:{line}: `{text}` is not a ground action of the domain")]
    ObservationNotGroundAction { bundle: String, line: usize, text: String },
    #[error("{bundle}: real goal `{goal}` does not match any hypothesis")]
    RealGoalNotInHypotheses { bundle: String, goal: String },
    #[error("{bundle}: observability level {level} is not valid for noisy={noisy}")]
    BadObservabilityLevel { bundle: String, level: u8, noisy: bool },
    #[error("csv: {message}")]
    Csv { message: String },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl HarnessError {
    fn parse(file: impl AsRef<Path>, source: ParserError) -> Self {
        HarnessError::Parse { file: file.as_ref().display().to_string(), source }
    }
}
