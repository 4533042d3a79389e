//! Command-line front end for the `breathers` crate: experiment configuration, artifact
//! writing and SVG figures.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod svg;

pub use commands::{run, Outcome, RunError};
pub use config::{ExperimentConfig, OUT_ENV};
