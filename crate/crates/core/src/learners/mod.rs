//! The three induction algorithms and their pruning regimes.

mod grow;
mod j48;
pub mod nb;
mod nbtree;
mod reptree;

pub use j48::{normal_quantile, pessimistic_error_count, prune_pessimistic, train_j48};
pub use nb::{fit_nb, predict_nb, NbModel};
pub use nbtree::train_nbtree;
pub use reptree::{reduced_error_prune, train_reptree};

use serde::{Deserialize, Serialize};

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::num::Scalar;
use crate::tree::Tree;

/// Gain-ratio tree parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct J48Params {
    pub min_leaf_instances: usize,
    pub confidence: f64,
    pub pruned: bool,
}

impl Default for J48Params {
    fn default() -> Self {
        Self {
            min_leaf_instances: 2,
            confidence: 0.25,
            pruned: true,
        }
    }
}

impl J48Params {
    pub fn validate(&self) -> Result<()> {
        if self.min_leaf_instances < 1 {
            return Err(Error::InvalidParam(
                "min_leaf_instances must be at least 1".into(),
            ));
        }
        if !(self.confidence > 0.0 && self.confidence <= 0.5) {
            return Err(Error::InvalidParam(format!(
                "confidence must be in (0, 0.5], got {}",
                self.confidence
            )));
        }
        Ok(())
    }
}

/// Naive-Bayes tree parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NbTreeParams {
    pub min_split_instances: usize,
    pub min_relative_error_reduction: f64,
    pub utility_folds: usize,
}

impl Default for NbTreeParams {
    fn default() -> Self {
        Self {
            min_split_instances: 30,
            min_relative_error_reduction: 0.05,
            utility_folds: 5,
        }
    }
}

impl NbTreeParams {
    pub fn validate(&self) -> Result<()> {
        if self.min_split_instances < 1 || self.utility_folds < 2 {
            return Err(Error::InvalidParam(
                "min_split_instances must be >= 1 and utility_folds >= 2".into(),
            ));
        }
        if self.min_relative_error_reduction <= 0.0 {
            return Err(Error::InvalidParam(
                "min_relative_error_reduction must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Reduced-error-pruning tree parameters. `pruning_folds = 3` holds out a
/// third of the records for pruning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepTreeParams {
    pub pruning_folds: usize,
    pub seed: u64,
    pub min_leaf_instances: usize,
    pub pruned: bool,
}

impl Default for RepTreeParams {
    fn default() -> Self {
        Self {
            pruning_folds: 3,
            seed: 1,
            min_leaf_instances: 2,
            pruned: true,
        }
    }
}

impl RepTreeParams {
    pub fn validate(&self) -> Result<()> {
        if self.min_leaf_instances < 1 {
            return Err(Error::InvalidParam(
                "min_leaf_instances must be at least 1".into(),
            ));
        }
        if self.pruned && self.pruning_folds < 2 {
            return Err(Error::InvalidParam(
                "pruning_folds must be at least 2 when pruning".into(),
            ));
        }
        if self.pruning_folds < 1 {
            return Err(Error::InvalidParam("pruning_folds must be positive".into()));
        }
        Ok(())
    }
}

/// A learner selection with its parameters; the unit the evaluator and the
/// CLI pass around.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "learner", content = "params", rename_all = "lowercase")]
pub enum Learner {
    J48(J48Params),
    NbTree(NbTreeParams),
    RepTree(RepTreeParams),
}

impl Learner {
    pub fn name(&self) -> &'static str {
        match self {
            Learner::J48(_) => "J48",
            Learner::NbTree(_) => "NBTree",
            Learner::RepTree(_) => "REPTree",
        }
    }

    pub fn train<F: Scalar>(&self, ds: &LabeledDataset<F>) -> Result<Tree<F>> {
        match self {
            Learner::J48(p) => train_j48(ds, p),
            Learner::NbTree(p) => train_nbtree(ds, p),
            Learner::RepTree(p) => train_reptree(ds, p),
        }
    }

    /// The same learner with its pruning flag forced (NBTree is unaffected).
    pub fn with_pruned(&self, pruned: bool) -> Self {
        match self {
            Learner::J48(p) => Learner::J48(J48Params { pruned, ..p.clone() }),
            Learner::NbTree(p) => Learner::NbTree(p.clone()),
            Learner::RepTree(p) => Learner::RepTree(RepTreeParams { pruned, ..p.clone() }),
        }
    }
}
