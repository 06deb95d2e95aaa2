//! Live Extract Method analysis for Java sources.
//!
//! The pipeline is: [`frontend`] parses a file into the normalized
//! [`model`]; [`metrics`] measures methods and classes; [`candidates`]
//! finds, ranks and grades extractable statement runs; [`extraction`]
//! rewrites the source; [`session`] re-runs the whole thing whenever the
//! code changes and logs every applied refactoring.

pub mod candidates;
pub mod config;
pub mod document;
pub mod error;
pub mod extraction;
pub mod frontend;
pub mod metrics;
pub mod model;
pub mod session;

pub use error::{Error, Result};

/// Scalar used by the concrete aliases below.
pub type Real = f64;

pub type Config = config::Config<Real>;
pub type HalsteadMetrics = metrics::HalsteadMetrics<Real>;
pub type MetricsReport = metrics::MetricsReport<Real>;

pub type ConfigF32 = config::Config<f32>;
pub type HalsteadMetricsF32 = metrics::HalsteadMetrics<f32>;
pub type MetricsReportF32 = metrics::MetricsReport<f32>;
