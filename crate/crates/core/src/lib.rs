//! klasstree: a decision-tree toolkit for regional development
//! classification.
//!
//! The crate covers the full pipeline:
//!
//! * [`klassen`] turns GDP panels into growth/contribution features and
//!   assigns the four development quadrants;
//! * [`dataset`] is the tabular data model with CSV ingestion;
//! * [`tree`] holds the shared tree structure and split mathematics;
//! * [`learners`] implements the gain-ratio tree, the naive-Bayes-leaf tree
//!   and the reduced-error-pruning tree;
//! * [`eval`] provides stratified cross-validation, the comparison metrics
//!   (accuracy, kappa, MAE, RMSE) and train/test experiments;
//! * [`model`] persists trained trees as JSON.
//!
//! All numeric work is generic over the [`Scalar`] float type; the aliases
//! below fix it to `f64` (the default throughout the CLI) or `f32`.

// `!(x > 0)` guards must also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dataset;
pub mod error;
pub mod eval;
pub mod klassen;
pub mod learners;
pub mod model;
pub mod num;
pub mod rng;
pub mod tree;

pub use error::{Error, Result};
pub use num::Scalar;

pub type Dataset64 = dataset::LabeledDataset<f64>;
pub type Dataset32 = dataset::LabeledDataset<f32>;
pub type Panel64 = klassen::GdpPanel<f64>;
pub type Panel32 = klassen::GdpPanel<f32>;
pub type Tree64 = tree::Tree<f64>;
pub type Tree32 = tree::Tree<f32>;
pub type Model64 = model::Model<f64>;
pub type Model32 = model::Model<f32>;
pub type EvalReport64 = eval::EvalReport<f64>;
pub type EvalReport32 = eval::EvalReport<f32>;
