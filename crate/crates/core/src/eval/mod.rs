//! Evaluation: stratified cross-validation, the four comparison metrics,
//! train/test experiments and report rendering.

mod cv;
mod experiment;
mod folds;
pub mod report;

pub use cv::{compare_learners, cross_validate, ComparisonReport, EvalReport};
pub use experiment::{run_experiment, DistrictRow, ExperimentOutcome};
pub use folds::stratified_kfold;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{from_f64, from_usize, Scalar};

/// Row-major confusion matrix: rows are actual classes, columns predicted,
/// in the fixed class-label order of the schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    labels: Vec<String>,
    counts: Vec<Vec<usize>>,
}

impl ConfusionMatrix {
    pub fn new(labels: Vec<String>) -> Self {
        let k = labels.len();
        Self {
            labels,
            counts: vec![vec![0; k]; k],
        }
    }

    pub fn from_counts(labels: Vec<String>, counts: Vec<Vec<usize>>) -> Result<Self> {
        let k = labels.len();
        if counts.len() != k || counts.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidData(format!(
                "confusion matrix must be {k}x{k}"
            )));
        }
        Ok(Self { labels, counts })
    }

    pub fn record(&mut self, actual: usize, predicted: usize) {
        self.counts[actual][predicted] += 1;
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> usize {
        (0..self.labels.len()).map(|i| self.counts[i][i]).sum()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.counts.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.labels.len())
            .map(|c| self.counts.iter().map(|row| row[c]).sum())
            .collect()
    }

    /// Percent of correct predictions: `100 * trace / total`.
    pub fn accuracy<F: Scalar>(&self) -> Result<F> {
        let total = self.total();
        if total == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(from_f64::<F>(100.0) * from_usize(self.trace()) / from_usize(total))
    }

    /// Cohen's kappa `(p_o - p_e) / (1 - p_e)`; 0 by convention when the
    /// expected agreement is 1 (single observed class).
    pub fn kappa<F: Scalar>(&self) -> Result<F> {
        let total = self.total();
        if total == 0 {
            return Err(Error::EmptyMatrix);
        }
        let n = from_usize::<F>(total);
        let p_o = from_usize::<F>(self.trace()) / n;
        let mut p_e = F::zero();
        for (r, c) in self.row_sums().iter().zip(self.col_sums()) {
            p_e = p_e + from_usize::<F>(*r) * from_usize(c) / (n * n);
        }
        let denom = F::one() - p_e;
        if denom.abs() < from_f64(1e-12) {
            return Ok(F::zero());
        }
        Ok((p_o - p_e) / denom)
    }
}

/// Mean absolute error and root mean squared error over the probability
/// components of each prediction against the one-hot actual class. Both
/// average over all `N x K` components.
pub fn mae_rmse<F: Scalar>(predictions: &[(Vec<F>, usize)]) -> Result<(F, F)> {
    let k = match predictions.first() {
        Some((p, _)) => p.len(),
        None => return Err(Error::EmptyTestSet),
    };
    let mut abs_sum = F::zero();
    let mut sq_sum = F::zero();
    for (probs, actual) in predictions {
        if probs.len() != k || *actual >= k {
            return Err(Error::PredictionLength {
                got: probs.len(),
                expected: k,
            });
        }
        for (i, &p) in probs.iter().enumerate() {
            let target = if i == *actual { F::one() } else { F::zero() };
            let d = p - target;
            abs_sum = abs_sum + d.abs();
            sq_sum = sq_sum + d * d;
        }
    }
    let components = from_usize::<F>(predictions.len() * k);
    Ok((abs_sum / components, (sq_sum / components).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cm(counts: &[&[usize]]) -> ConfusionMatrix {
        let labels = (0..counts.len()).map(|i| format!("C{i}")).collect();
        ConfusionMatrix::from_counts(labels, counts.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn accuracy_known_values() {
        assert_relative_eq!(cm(&[&[3, 0], &[0, 7]]).accuracy::<f64>().unwrap(), 100.0);
        assert_relative_eq!(cm(&[&[0, 3], &[7, 0]]).accuracy::<f64>().unwrap(), 0.0);
        assert_relative_eq!(
            cm(&[&[20, 5], &[10, 15]]).accuracy::<f64>().unwrap(),
            70.0
        );
        assert!(matches!(
            cm(&[&[0, 0], &[0, 0]]).accuracy::<f64>().unwrap_err(),
            Error::EmptyMatrix
        ));
    }

    #[test]
    fn kappa_known_values() {
        // perfect agreement with two populated classes
        assert_relative_eq!(cm(&[&[3, 0], &[0, 7]]).kappa::<f64>().unwrap(), 1.0);
        // independent margins: every cell equal
        assert_relative_eq!(cm(&[&[5, 5], &[5, 5]]).kappa::<f64>().unwrap(), 0.0);
        // hand value: p_o = 0.7, p_e = 0.5
        assert_relative_eq!(
            cm(&[&[20, 5], &[10, 15]]).kappa::<f64>().unwrap(),
            0.4,
            max_relative = 1e-12
        );
        // single observed class: p_e = 1 -> 0 by convention
        assert_relative_eq!(cm(&[&[9, 0], &[0, 0]]).kappa::<f64>().unwrap(), 0.0);
    }

    #[test]
    fn kappa_zero_on_outer_product_margins() {
        // counts[i][j] = r_i * c_j makes rows proportional to column margins
        let r = [2usize, 3];
        let c = [1usize, 4];
        let m = cm(&[
            &[r[0] * c[0], r[0] * c[1]],
            &[r[1] * c[0], r[1] * c[1]],
        ]);
        assert!(m.kappa::<f64>().unwrap().abs() < 1e-12);
    }

    #[test]
    fn mae_rmse_exact_predictions_are_zero() {
        let preds = vec![
            (vec![1.0, 0.0, 0.0, 0.0], 0usize),
            (vec![0.0, 0.0, 1.0, 0.0], 2usize),
        ];
        let (mae, rmse) = mae_rmse(&preds).unwrap();
        assert_eq!((mae, rmse), (0.0, 0.0));
    }

    #[test]
    fn mae_rmse_uniform_single_prediction() {
        let preds = vec![(vec![0.25; 4], 1usize)];
        let (mae, rmse) = mae_rmse(&preds).unwrap();
        assert_relative_eq!(mae, 0.375, max_relative = 1e-12);
        assert_relative_eq!(rmse, 0.433_012_701_892_219_3, max_relative = 1e-12);
    }

    #[test]
    fn mae_never_exceeds_rmse() {
        // deterministic pseudo-random probability vectors
        let mut state = 3u64;
        let mut rand = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) as f64) / (u32::MAX as f64 / 2.0)
        };
        for _ in 0..50 {
            let raw: Vec<f64> = (0..4).map(|_| rand().abs() + 1e-6).collect();
            let sum: f64 = raw.iter().sum();
            let probs: Vec<f64> = raw.iter().map(|x| x / sum).collect();
            let actual = (rand() * 2.0) as usize % 4;
            let (mae, rmse) = mae_rmse(&[(probs, actual)]).unwrap();
            assert!(mae <= rmse + 1e-12);
        }
    }

    #[test]
    fn mae_rmse_rejects_bad_shapes() {
        assert!(matches!(
            mae_rmse::<f64>(&[]).unwrap_err(),
            Error::EmptyTestSet
        ));
        let preds = vec![(vec![0.5, 0.5], 0usize), (vec![1.0], 0usize)];
        assert!(matches!(
            mae_rmse(&preds).unwrap_err(),
            Error::PredictionLength { .. }
        ));
    }
}
