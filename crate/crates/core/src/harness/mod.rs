//! Experiment harness: signals, seeded noise, the three experiments, the
//! filter check, and the `mitlar` command line.
//!
//! Every experiment writes CSV files plus `summary.txt` into its output
//! directory. Floats in CSV files use `{:e}` formatting so identical inputs
//! produce byte-identical files.

pub mod cli;
pub mod compare;
pub mod config;
pub mod filter_check;
pub mod noise;
pub mod rates;
pub mod signal;
pub mod stopping_demo;

pub use cli::run;
pub use compare::{run_comparison, ComparisonRow};
pub use config::{AlphaRule, DeltaRule, Experiment, ExperimentConfig};
pub use filter_check::{run_filter, FilterReport};
pub use noise::{gen_noise, relative_error};
pub use rates::{observed_rates, run_rates, RateRow, RateStudy};
pub use signal::{gen_signal, Preset, SignalSpec, SineTerm};
pub use stopping_demo::{run_stopping, StoppingReport, StoppingSample};
