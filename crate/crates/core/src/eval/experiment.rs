//! Train-once / test-once experiments in the P1-P4 style: train on one or
//! more sources (concatenated in the given order), predict a test set,
//! report accuracy against its labels, the predicted quadrant distribution
//! and optional per-district aggregation.

use serde::{Deserialize, Serialize};

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::eval::ConfusionMatrix;
use crate::learners::Learner;
use crate::num::Scalar;

/// Aggregated classes for one district: the majority of its rows' actual
/// labels and of their predictions, ties toward the smaller class index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistrictRow {
    pub district: String,
    pub actual: String,
    pub predicted: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentOutcome<F> {
    pub id: String,
    pub learner: String,
    pub pruned: bool,
    pub accuracy: F,
    pub confusion: ConfusionMatrix,
    /// Predicted-class counts per class label, in label order.
    pub quadrant_distribution: Vec<(String, usize)>,
    /// Present when the caller supplies per-record district names.
    pub per_district: Option<Vec<DistrictRow>>,
}

pub fn run_experiment<F: Scalar>(
    id: &str,
    train_sources: &[&LabeledDataset<F>],
    test: &LabeledDataset<F>,
    test_districts: Option<&[String]>,
    learner: &Learner,
) -> Result<ExperimentOutcome<F>> {
    let train = LabeledDataset::concat(train_sources)?;
    if train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if test.is_empty() {
        return Err(Error::EmptyTestSet);
    }
    if test.attributes() != train.attributes()
        || test.class_attribute() != train.class_attribute()
    {
        return Err(Error::SchemaMismatch(
            "train and test schemas differ".into(),
        ));
    }
    if let Some(districts) = test_districts {
        if districts.len() != test.len() {
            return Err(Error::InvalidData(format!(
                "{} district names for {} test records",
                districts.len(),
                test.len()
            )));
        }
    }

    let tree = learner.train(&train)?;
    let labels = test.class_labels().to_vec();
    let mut confusion = ConfusionMatrix::new(labels.clone());
    let mut predicted_counts = vec![0usize; labels.len()];
    let mut actual_classes = Vec::with_capacity(test.len());
    let mut predicted_classes = Vec::with_capacity(test.len());

    for (i, rec) in test.records().iter().enumerate() {
        let actual = rec.class.ok_or(Error::UnlabeledRecord(i))?;
        let (predicted, _) = tree.predict(rec)?;
        confusion.record(actual, predicted);
        predicted_counts[predicted] += 1;
        actual_classes.push(actual);
        predicted_classes.push(predicted);
    }

    let per_district = test_districts.map(|districts| {
        let mut order: Vec<&String> = Vec::new();
        for d in districts {
            if !order.contains(&d) {
                order.push(d);
            }
        }
        order
            .into_iter()
            .map(|district| {
                let rows: Vec<usize> = districts
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| *d == district)
                    .map(|(i, _)| i)
                    .collect();
                let actual = majority(rows.iter().map(|&i| actual_classes[i]), labels.len());
                let predicted =
                    majority(rows.iter().map(|&i| predicted_classes[i]), labels.len());
                DistrictRow {
                    district: district.clone(),
                    actual: labels[actual].clone(),
                    predicted: labels[predicted].clone(),
                }
            })
            .collect()
    });

    Ok(ExperimentOutcome {
        id: id.to_string(),
        learner: learner.name().to_string(),
        pruned: matches!(
            learner,
            Learner::J48(crate::learners::J48Params { pruned: true, .. })
                | Learner::RepTree(crate::learners::RepTreeParams { pruned: true, .. })
        ),
        accuracy: confusion.accuracy()?,
        confusion,
        quadrant_distribution: labels.into_iter().zip(predicted_counts).collect(),
        per_district,
    })
}

fn majority(classes: impl Iterator<Item = usize>, k: usize) -> usize {
    let mut counts = vec![0usize; k];
    for c in classes {
        counts[c] += 1;
    }
    let mut best = 0;
    for i in 1..k {
        if counts[i] > counts[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::CsvOptions;
    use crate::learners::J48Params;

    type Ds = LabeledDataset<f64>;

    fn parse(text: &str) -> Ds {
        Ds::parse_csv(text.as_bytes(), &CsvOptions::default()).unwrap()
    }

    fn separable() -> Ds {
        let mut text = String::from("x,class\n");
        for i in 0..10 {
            text.push_str(&format!("{i},A\n"));
            text.push_str(&format!("{},B\n", 100 + i));
        }
        parse(&text)
    }

    #[test]
    fn train_equals_test_separable_is_perfect() {
        let ds = separable();
        let learner = Learner::J48(J48Params {
            pruned: false,
            ..J48Params::default()
        });
        let out = run_experiment("P0", &[&ds], &ds, None, &learner).unwrap();
        assert_eq!(out.accuracy, 100.0);
        assert!(!out.pruned);
        assert!(out.per_district.is_none());
    }

    #[test]
    fn distribution_sums_to_test_size() {
        let ds = separable();
        let learner = Learner::J48(J48Params::default());
        let out = run_experiment("P1", &[&ds], &ds, None, &learner).unwrap();
        let total: usize = out.quadrant_distribution.iter().map(|(_, c)| c).sum();
        assert_eq!(total, ds.len());
    }

    #[test]
    fn union_training_concatenates_in_order() {
        let a = parse("x,class\n1,A\n2,A\n101,B\n102,B\n");
        let b = parse("x,class\n3,A\n4,A\n103,B\n104,B\n");
        let learner = Learner::J48(J48Params::default());
        let out = run_experiment("P3", &[&a, &b], &a, None, &learner).unwrap();
        assert_eq!(out.accuracy, 100.0);
    }

    #[test]
    fn per_district_majority_aggregation() {
        let ds = parse(
            "x,class\n1,A\n2,A\n3,A\n101,B\n102,B\n103,B\n",
        );
        let districts: Vec<String> = vec![
            "North".into(),
            "North".into(),
            "South".into(),
            "South".into(),
            "South".into(),
            "North".into(),
        ];
        let learner = Learner::J48(J48Params {
            pruned: false,
            ..J48Params::default()
        });
        let out = run_experiment("P1", &[&ds], &ds, Some(&districts), &learner).unwrap();
        let rows = out.per_district.unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].district, "North");
        // North holds records {A, A, B} -> majority A; predictions are
        // perfect on this separable set, so predicted matches
        assert_eq!(rows[0].actual, "A");
        assert_eq!(rows[0].predicted, "A");
        assert_eq!(rows[1].district, "South");
        assert_eq!(rows[1].actual, "B");
    }

    #[test]
    fn schema_mismatch_and_empty_test_are_rejected() {
        let ds = separable();
        let other = parse("zzz,class\n1,A\n101,B\n");
        let learner = Learner::J48(J48Params::default());
        assert!(matches!(
            run_experiment("X", &[&ds], &other, None, &learner).unwrap_err(),
            Error::SchemaMismatch(_)
        ));
        let empty = ds.with_records(vec![]);
        assert!(matches!(
            run_experiment("X", &[&ds], &empty, None, &learner).unwrap_err(),
            Error::EmptyTestSet
        ));
    }
}
