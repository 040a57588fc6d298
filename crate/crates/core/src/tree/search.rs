//! Impurity-based split mathematics: information gain, split information,
//! gain ratio and the best binary threshold for a numeric attribute.

use crate::dataset::{LabeledDataset, Value};
use crate::error::{Error, Result};
use crate::num::{from_usize, Scalar};
use crate::tree::{ClassDistribution, Split};

/// Guard below which a split's information is considered degenerate.
pub const MIN_SPLIT_INFO: f64 = 1e-10;

/// Class distributions per branch of `split`.
pub fn partition_distributions<F: Scalar>(
    ds: &LabeledDataset<F>,
    split: &Split<F>,
) -> Result<Vec<ClassDistribution<F>>> {
    let mut branches = vec![ClassDistribution::zeros(ds.n_classes()); split.arity()];
    for (i, rec) in ds.records().iter().enumerate() {
        let class = rec.class.ok_or(Error::UnlabeledRecord(i))?;
        let b = split.branch_of(rec)?;
        if b >= branches.len() {
            return Err(Error::InvalidSplit(format!(
                "record routes to branch {b} of a {}-ary split",
                split.arity()
            )));
        }
        branches[b].add(class, F::one());
    }
    Ok(branches)
}

/// Parent entropy minus the branch-weighted entropy sum.
pub fn information_gain<F: Scalar>(ds: &LabeledDataset<F>, split: &Split<F>) -> Result<F> {
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let parent = ClassDistribution::from_dataset(ds)?;
    let branches = partition_distributions(ds, split)?;
    gain_from_distributions(&parent, &branches)
}

pub(crate) fn gain_from_distributions<F: Scalar>(
    parent: &ClassDistribution<F>,
    branches: &[ClassDistribution<F>],
) -> Result<F> {
    let n = parent.total();
    let mut weighted = F::zero();
    for b in branches {
        if b.total() > F::zero() {
            weighted = weighted + (b.total() / n) * b.entropy()?;
        }
    }
    Ok(parent.entropy()? - weighted)
}

/// `-sum((n_b/n) * log2(n_b/n))` over non-empty branches.
pub fn split_info<F: Scalar>(ds: &LabeledDataset<F>, split: &Split<F>) -> Result<F> {
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let branches = partition_distributions(ds, split)?;
    let n = from_usize::<F>(ds.len());
    let mut info = F::zero();
    for b in &branches {
        if b.total() > F::zero() {
            let p = b.total() / n;
            info = info - p * p.log2();
        }
    }
    Ok(info)
}

/// Information gain divided by split information. Returns `None` for a
/// degenerate split (split information below [`MIN_SPLIT_INFO`]) — an
/// inadmissible-split signal, not an error.
pub fn gain_ratio<F: Scalar>(ds: &LabeledDataset<F>, split: &Split<F>) -> Result<Option<F>> {
    let info = split_info(ds, split)?;
    if info.to_f64().unwrap_or(0.0) <= MIN_SPLIT_INFO {
        return Ok(None);
    }
    Ok(Some(information_gain(ds, split)? / info))
}

/// Best binary threshold for a numeric attribute by information gain.
///
/// Candidate thresholds are midpoints of adjacent distinct sorted values;
/// ties in gain break toward the smaller threshold. Returns `None` when the
/// attribute has fewer than two distinct values.
pub fn best_numeric_threshold<F: Scalar>(
    ds: &LabeledDataset<F>,
    attribute: usize,
) -> Result<Option<(F, F)>> {
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut pairs: Vec<(F, usize)> = Vec::with_capacity(ds.len());
    for (i, rec) in ds.records().iter().enumerate() {
        let class = rec.class.ok_or(Error::UnlabeledRecord(i))?;
        match rec.values.get(attribute) {
            Some(Value::Numeric(v)) => pairs.push((*v, class)),
            _ => {
                return Err(Error::InvalidSplit(format!(
                    "attribute {attribute} is not numeric"
                )))
            }
        }
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite values"));

    let n_classes = ds.n_classes();
    let parent = ClassDistribution::from_dataset(ds)?;
    let parent_entropy = parent.entropy()?;
    let n = parent.total();

    let mut left = ClassDistribution::zeros(n_classes);
    let mut right = parent.clone();
    let mut best: Option<(F, F)> = None;

    for i in 0..pairs.len().saturating_sub(1) {
        let (v, class) = pairs[i];
        left.add(class, F::one());
        right.add(class, -F::one());
        let next = pairs[i + 1].0;
        if next > v {
            let threshold = (v + next) / from_usize(2);
            let weighted = (left.total() / n) * left.entropy()?
                + (right.total() / n) * right.entropy()?;
            let gain = parent_entropy - weighted;
            let better = match &best {
                None => true,
                Some((_, best_gain)) => gain > *best_gain,
            };
            if better {
                best = Some((threshold, gain));
            }
        }
    }
    Ok(best)
}
