//! Naive-Bayes leaf model: Laplace-smoothed priors, Gaussian
//! class-conditionals for numeric attributes and add-one smoothed label
//! frequencies for nominal ones.
//!
//! Conventions, fixed for reproducibility:
//! * priors: `(n_k + 1) / (n + K)`;
//! * Gaussian parameters are maximum-likelihood (variance divides by the
//!   class count), floored at [`VARIANCE_FLOOR`];
//! * a class absent from the node borrows the pooled mean/variance of the
//!   whole node so its density stays comparable;
//! * posteriors are computed in log space and normalized by softmax.

use serde::{Deserialize, Serialize};

use crate::dataset::{AttrKind, LabeledDataset, Record, Value};
use crate::error::{Error, Result};
use crate::num::{from_f64, from_usize, Scalar};

pub const VARIANCE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams<F> {
    pub mean: F,
    pub variance: F,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureModel<F> {
    /// One Gaussian per class, aligned to the class label order.
    Gaussian(Vec<GaussianParams<F>>),
    /// Smoothed label frequencies, `[class][label]`.
    Frequencies(Vec<Vec<F>>),
}

/// A fitted naive-Bayes classifier over one node's records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NbModel<F> {
    priors: Vec<F>,
    features: Vec<FeatureModel<F>>,
}

impl<F: Scalar> NbModel<F> {
    /// Fit the model on a non-empty, fully labeled dataset.
    pub fn fit(ds: &LabeledDataset<F>) -> Result<Self> {
        if ds.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let n = ds.len();
        let k = ds.n_classes();
        let class_counts = ds.class_distribution()?;

        let priors = class_counts
            .iter()
            .map(|&c| (from_usize::<F>(c) + F::one()) / from_usize(n + k))
            .collect();

        let floor = from_f64::<F>(VARIANCE_FLOOR);
        let features = ds
            .attributes()
            .iter()
            .enumerate()
            .map(|(a, attr)| match &attr.kind {
                AttrKind::Numeric => {
                    let pooled = gaussian_of(
                        ds.records().iter().map(|r| numeric_at(r, a)),
                        n,
                        floor,
                    );
                    let per_class = (0..k)
                        .map(|c| {
                            if class_counts[c] == 0 {
                                pooled.clone()
                            } else {
                                gaussian_of(
                                    ds.records()
                                        .iter()
                                        .filter(|r| r.class == Some(c))
                                        .map(|r| numeric_at(r, a)),
                                    class_counts[c],
                                    floor,
                                )
                            }
                        })
                        .collect();
                    FeatureModel::Gaussian(per_class)
                }
                AttrKind::Nominal(labels) => {
                    let v = labels.len();
                    let mut counts = vec![vec![0usize; v]; k];
                    for r in ds.records() {
                        if let (Some(c), Some(Value::Nominal(l))) = (r.class, r.values.get(a)) {
                            counts[c][*l] += 1;
                        }
                    }
                    let per_class = (0..k)
                        .map(|c| {
                            counts[c]
                                .iter()
                                .map(|&cnt| {
                                    (from_usize::<F>(cnt) + F::one())
                                        / from_usize(class_counts[c] + v)
                                })
                                .collect()
                        })
                        .collect();
                    FeatureModel::Frequencies(per_class)
                }
            })
            .collect();

        Ok(Self { priors, features })
    }

    pub fn priors(&self) -> &[F] {
        &self.priors
    }

    pub fn features(&self) -> &[FeatureModel<F>] {
        &self.features
    }

    /// Normalized posterior over classes for one record.
    pub fn posterior(&self, rec: &Record<F>) -> Result<Vec<F>> {
        if rec.values.len() != self.features.len() {
            return Err(Error::SchemaMismatch(format!(
                "record has {} values, model has {} features",
                rec.values.len(),
                self.features.len()
            )));
        }
        let k = self.priors.len();
        let mut log_scores: Vec<F> = self.priors.iter().map(|p| p.ln()).collect();
        for (feature, value) in self.features.iter().zip(&rec.values) {
            match (feature, value) {
                (FeatureModel::Gaussian(params), Value::Numeric(x)) => {
                    for (c, p) in params.iter().enumerate() {
                        log_scores[c] = log_scores[c] + log_gaussian(*x, p.mean, p.variance);
                    }
                }
                (FeatureModel::Frequencies(freqs), Value::Nominal(l)) => {
                    for c in 0..k {
                        let f = freqs[c].get(*l).copied().ok_or_else(|| {
                            Error::SchemaMismatch(format!("label index {l} out of range"))
                        })?;
                        log_scores[c] = log_scores[c] + f.ln();
                    }
                }
                _ => {
                    return Err(Error::SchemaMismatch(
                        "record value kind does not match the model".into(),
                    ))
                }
            }
        }
        // softmax
        let max = log_scores
            .iter()
            .fold(F::neg_infinity(), |a, &b| if b > a { b } else { a });
        let mut probs: Vec<F> = log_scores.iter().map(|&s| (s - max).exp()).collect();
        let sum = probs.iter().fold(F::zero(), |a, &b| a + b);
        for p in &mut probs {
            *p = *p / sum;
        }
        Ok(probs)
    }

    /// Posterior argmax; ties toward the smaller class index.
    pub fn predict(&self, rec: &Record<F>) -> Result<usize> {
        Ok(crate::tree::argmax(&self.posterior(rec)?))
    }
}

fn numeric_at<F: Scalar>(rec: &Record<F>, attribute: usize) -> F {
    match rec.values.get(attribute) {
        Some(Value::Numeric(v)) => *v,
        _ => F::nan(), // schema-validated datasets never hit this
    }
}

fn gaussian_of<F: Scalar>(
    values: impl Iterator<Item = F> + Clone,
    count: usize,
    floor: F,
) -> GaussianParams<F> {
    let n = from_usize::<F>(count);
    let mean = values.clone().fold(F::zero(), |a, b| a + b) / n;
    let variance = values
        .map(|v| (v - mean) * (v - mean))
        .fold(F::zero(), |a, b| a + b)
        / n;
    GaussianParams {
        mean,
        variance: if variance > floor { variance } else { floor },
    }
}

fn log_gaussian<F: Scalar>(x: F, mean: F, variance: F) -> F {
    let two = from_usize::<F>(2);
    let two_pi = from_f64::<F>(std::f64::consts::TAU);
    let d = x - mean;
    -(two_pi * variance).ln() / two - d * d / (two * variance)
}

/// Free-function aliases mirroring the operation names.
pub fn fit_nb<F: Scalar>(ds: &LabeledDataset<F>) -> Result<NbModel<F>> {
    NbModel::fit(ds)
}

pub fn predict_nb<F: Scalar>(model: &NbModel<F>, rec: &Record<F>) -> Result<Vec<F>> {
    model.posterior(rec)
}
