//! Shared greedy top-down growth used by the gain-ratio and information-gain
//! learners.
//!
//! Tie-breaking is fixed everywhere: candidates are evaluated in attribute
//! order and a later candidate must be strictly better to win, so equal
//! scores keep the smaller attribute index; threshold ties inside one
//! attribute already resolve toward the smaller threshold.

use crate::dataset::{AttrKind, LabeledDataset, Record};
use crate::error::{Error, Result};
use crate::num::{from_usize, Scalar};
use crate::tree::{
    best_numeric_threshold, information_gain, split_info, ClassDistribution, Node, Split,
};

/// Gains at or below this are treated as zero.
pub(crate) const GAIN_EPS: f64 = 1e-12;

/// Which score picks the split at a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Criterion {
    /// C4.5 selection: maximal gain ratio among candidates whose gain is at
    /// least the mean gain of all positive-gain candidates.
    GainRatio,
    /// Plain maximal information gain.
    InformationGain,
}

#[derive(Debug, Clone)]
pub(crate) struct Candidate<F> {
    pub split: Split<F>,
    pub gain: F,
    pub branch_sizes: Vec<usize>,
}

/// One candidate per attribute: the gain-maximizing threshold for numeric
/// attributes, the full nominal split (if at least two branches are
/// non-empty) for nominal ones.
pub(crate) fn candidate_splits<F: Scalar>(ds: &LabeledDataset<F>) -> Result<Vec<Candidate<F>>> {
    let mut candidates = Vec::new();
    for (a, attr) in ds.attributes().iter().enumerate() {
        let split = match &attr.kind {
            AttrKind::Numeric => match best_numeric_threshold(ds, a)? {
                Some((threshold, _)) => Split::NumericThreshold {
                    attribute: a,
                    threshold,
                },
                None => continue,
            },
            AttrKind::Nominal(labels) => Split::Nominal {
                attribute: a,
                arity: labels.len(),
            },
        };
        let branch_sizes = branch_sizes(ds, &split)?;
        if branch_sizes.iter().filter(|&&s| s > 0).count() < 2 {
            continue;
        }
        let gain = information_gain(ds, &split)?;
        candidates.push(Candidate {
            split,
            gain,
            branch_sizes,
        });
    }
    Ok(candidates)
}

pub(crate) fn branch_sizes<F: Scalar>(ds: &LabeledDataset<F>, split: &Split<F>) -> Result<Vec<usize>> {
    let mut sizes = vec![0usize; split.arity()];
    for rec in ds.records() {
        sizes[split.branch_of(rec)?] += 1;
    }
    Ok(sizes)
}

/// Partition records into per-branch datasets (record order preserved).
pub(crate) fn partition<F: Scalar>(
    ds: &LabeledDataset<F>,
    split: &Split<F>,
) -> Result<Vec<LabeledDataset<F>>> {
    let mut buckets: Vec<Vec<Record<F>>> = vec![Vec::new(); split.arity()];
    for rec in ds.records() {
        buckets[split.branch_of(rec)?].push(rec.clone());
    }
    Ok(buckets.into_iter().map(|b| ds.with_records(b)).collect())
}

/// Grow a tree recursively. Stops at pure nodes, when no candidate leaves
/// at least two branches with `min_leaf` instances, or when no candidate
/// scores positively. Empty branches become leaves carrying the parent
/// distribution with a zero instance count.
pub(crate) fn grow<F: Scalar>(
    ds: &LabeledDataset<F>,
    min_leaf: usize,
    criterion: Criterion,
) -> Result<Node<F>> {
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let distribution = ClassDistribution::from_dataset(ds)?;
    let count = from_usize::<F>(ds.len());
    if distribution.is_pure() {
        return Ok(Node::leaf(distribution, count));
    }

    let viable: Vec<Candidate<F>> = candidate_splits(ds)?
        .into_iter()
        .filter(|c| {
            c.gain.to_f64().unwrap_or(0.0) > GAIN_EPS
                && c.branch_sizes.iter().filter(|&&s| s >= min_leaf).count() >= 2
        })
        .collect();

    let chosen = match criterion {
        Criterion::InformationGain => viable
            .iter()
            .max_by(|a, b| a.gain.partial_cmp(&b.gain).expect("finite gains"))
            .cloned(),
        Criterion::GainRatio => {
            // admissibility gate: gain at least the mean candidate gain
            let mean_gain = if viable.is_empty() {
                F::zero()
            } else {
                viable.iter().fold(F::zero(), |s, c| s + c.gain) / from_usize(viable.len())
            };
            let mut best: Option<(F, &Candidate<F>)> = None;
            for c in &viable {
                if c.gain.to_f64().unwrap_or(0.0) + GAIN_EPS < mean_gain.to_f64().unwrap_or(0.0) {
                    continue;
                }
                let info = split_info(ds, &c.split)?;
                if info.to_f64().unwrap_or(0.0) <= crate::tree::MIN_SPLIT_INFO {
                    continue;
                }
                let ratio = c.gain / info;
                if best.as_ref().is_none_or(|(r, _)| ratio > *r) {
                    best = Some((ratio, c));
                }
            }
            best.map(|(_, c)| c.clone())
        }
    };

    let candidate = match chosen {
        Some(c) => c,
        None => return Ok(Node::leaf(distribution, count)),
    };

    let children = partition(ds, &candidate.split)?
        .into_iter()
        .map(|branch| {
            if branch.is_empty() {
                Ok(Node::leaf(distribution.clone(), F::zero()))
            } else {
                grow(&branch, min_leaf, criterion)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Node::Internal {
        split: candidate.split,
        children,
        distribution,
        count,
    })
}
