//! File formats, oracle verification and the drift experiment behind the
//! `warmstart` command-line tool.

pub mod experiment;
pub mod format;
pub mod verify;

pub use experiment::{run_experiment, write_csv, ExperimentConfig, PredictorKind, RunRecord};
pub use format::{
    parse_instance, parse_prediction, parse_preflow, write_instance, ParseError, ParsedInstance,
};
pub use verify::{verify, VerifyError, VerifyReport};
