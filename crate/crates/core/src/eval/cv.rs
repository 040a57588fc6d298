//! Cross-validated evaluation of one learner and side-by-side comparison of
//! several.

use serde::{Deserialize, Serialize};

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::eval::{folds::stratified_kfold, mae_rmse, ConfusionMatrix};
use crate::learners::Learner;
use crate::num::Scalar;

/// Metrics of one learner/dataset pairing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport<F> {
    pub learner: String,
    pub accuracy: F,
    pub kappa: F,
    pub mae: F,
    pub rmse: F,
    pub confusion: ConfusionMatrix,
    pub folds: usize,
    pub seed: u64,
}

/// One [`EvalReport`] per learner plus the accuracy argmax.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport<F> {
    pub reports: Vec<EvalReport<F>>,
    pub best_by_accuracy: String,
}

/// Stratified k-fold cross-validation: train on each fold's complement,
/// score on the fold, aggregate one report.
pub fn cross_validate<F: Scalar>(
    learner: &Learner,
    ds: &LabeledDataset<F>,
    k: usize,
    seed: u64,
) -> Result<EvalReport<F>> {
    let folds = stratified_kfold(ds, k, seed)?;
    let mut confusion = ConfusionMatrix::new(ds.class_labels().to_vec());
    let mut predictions: Vec<(Vec<F>, usize)> = Vec::with_capacity(ds.len());

    for fold in &folds {
        let in_fold: std::collections::HashSet<usize> = fold.iter().copied().collect();
        let train_idx: Vec<usize> = (0..ds.len()).filter(|i| !in_fold.contains(i)).collect();
        let tree = learner.train(&ds.subset(&train_idx))?;
        for &i in fold {
            let rec = &ds.records()[i];
            let actual = rec.class.ok_or(Error::UnlabeledRecord(i))?;
            let (predicted, probs) = tree.predict(rec)?;
            confusion.record(actual, predicted);
            predictions.push((probs, actual));
        }
    }

    let (mae, rmse) = mae_rmse(&predictions)?;
    Ok(EvalReport {
        learner: learner.name().to_string(),
        accuracy: confusion.accuracy()?,
        kappa: confusion.kappa()?,
        mae,
        rmse,
        confusion,
        folds: k,
        seed,
    })
}

/// Cross-validate every learner on the same folds and name the winner by
/// accuracy (ties keep the first listed).
pub fn compare_learners<F: Scalar>(
    ds: &LabeledDataset<F>,
    k: usize,
    seed: u64,
    learners: &[Learner],
) -> Result<ComparisonReport<F>> {
    if learners.is_empty() {
        return Err(Error::InvalidParam("no learners selected".into()));
    }
    let reports = learners
        .iter()
        .map(|l| cross_validate(l, ds, k, seed))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (i, r) in reports.iter().enumerate() {
        if r.accuracy > reports[best].accuracy {
            best = i;
        }
    }
    Ok(ComparisonReport {
        best_by_accuracy: reports[best].learner.clone(),
        reports,
    })
}
