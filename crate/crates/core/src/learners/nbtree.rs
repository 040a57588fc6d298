//! Hybrid tree with naive-Bayes leaves.
//!
//! A node splits only when it holds at least `min_split_instances` records
//! and the best candidate split improves the cross-validated naive-Bayes
//! accuracy by at least `min_relative_error_reduction` (relative to the
//! node's own error). Node utility is stratified `utility_folds`-fold CV
//! accuracy of a naive-Bayes model on the node's records, seeded with 0;
//! a split's utility is the instance-weighted sum over its branches.

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::eval::stratified_kfold;
use crate::learners::grow::{candidate_splits, partition};
use crate::learners::nb::NbModel;
use crate::learners::NbTreeParams;
use crate::num::{from_usize, Scalar};
use crate::tree::{ClassDistribution, Node, Tree};

/// Seed for the internal utility cross-validation.
const UTILITY_SEED: u64 = 0;

pub fn train_nbtree<F: Scalar>(ds: &LabeledDataset<F>, params: &NbTreeParams) -> Result<Tree<F>> {
    params.validate()?;
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let root = grow_nb(ds, params)?;
    Tree::new(
        ds.attributes().to_vec(),
        ds.class_attribute().clone(),
        root,
    )
}

fn grow_nb<F: Scalar>(ds: &LabeledDataset<F>, params: &NbTreeParams) -> Result<Node<F>> {
    let distribution = ClassDistribution::from_dataset(ds)?;
    let count = from_usize::<F>(ds.len());
    let nb_leaf = |dist: ClassDistribution<F>| -> Result<Node<F>> {
        Ok(Node::nb_leaf(dist, count, NbModel::fit(ds)?))
    };

    if ds.len() < params.min_split_instances {
        return nb_leaf(distribution);
    }
    let node_utility = cv_accuracy(ds, params.utility_folds)?;
    let node_error = 1.0 - node_utility;
    if node_error <= 0.0 {
        return nb_leaf(distribution);
    }

    // candidates are evaluated in attribute order; strict improvement keeps
    // the smaller attribute index on utility ties
    let mut best: Option<(f64, _)> = None;
    for candidate in candidate_splits(ds)? {
        let branches = partition(ds, &candidate.split)?;
        let mut weighted = 0.0;
        for branch in &branches {
            if branch.is_empty() {
                continue;
            }
            let w = branch.len() as f64 / ds.len() as f64;
            weighted += w * cv_accuracy(branch, params.utility_folds)?;
        }
        if best.as_ref().is_none_or(|(u, _)| weighted > *u) {
            best = Some((weighted, candidate.split));
        }
    }

    let (split_utility, split) = match best {
        Some(b) => b,
        None => return nb_leaf(distribution),
    };
    let relative_reduction = (node_error - (1.0 - split_utility)) / node_error;
    if relative_reduction < params.min_relative_error_reduction {
        return nb_leaf(distribution);
    }

    let children = partition(ds, &split)?
        .into_iter()
        .map(|branch| {
            if branch.is_empty() {
                Ok(Node::leaf(distribution.clone(), F::zero()))
            } else {
                grow_nb(&branch, params)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Node::Internal {
        split,
        children,
        distribution,
        count,
    })
}

/// Stratified cross-validated accuracy of a naive-Bayes model on `ds`,
/// in [0, 1]. Nodes too small to cross-validate score 0.
fn cv_accuracy<F: Scalar>(ds: &LabeledDataset<F>, folds: usize) -> Result<f64> {
    let n = ds.len();
    if n < 2 {
        return Ok(0.0);
    }
    let k = folds.min(n);
    let fold_sets = stratified_kfold(ds, k, UTILITY_SEED)?;
    let mut correct = 0usize;
    for fold in &fold_sets {
        if fold.is_empty() {
            continue;
        }
        let in_fold: std::collections::HashSet<usize> = fold.iter().copied().collect();
        let train_idx: Vec<usize> = (0..n).filter(|i| !in_fold.contains(i)).collect();
        let model = NbModel::fit(&ds.subset(&train_idx))?;
        for &i in fold {
            let rec = &ds.records()[i];
            let class = rec.class.ok_or(Error::UnlabeledRecord(i))?;
            if model.predict(rec)? == class {
                correct += 1;
            }
        }
    }
    Ok(correct as f64 / n as f64)
}
