//! Information-gain tree with holdout reduced-error pruning.
//!
//! Training always performs the seeded shuffle and sets aside
//! `1/pruning_folds` of the records; growth runs on the remainder so that
//! the pruned and unpruned variants of one `(data, params, seed)` triple
//! share the same grown tree. Pruning itself runs only when `pruned` is set.

use crate::dataset::{LabeledDataset, Record};
use crate::error::{Error, Result};
use crate::learners::grow::{grow, Criterion};
use crate::learners::RepTreeParams;
use crate::num::Scalar;
use crate::rng::Lcg64;
use crate::tree::{Node, Tree};

pub fn train_reptree<F: Scalar>(ds: &LabeledDataset<F>, params: &RepTreeParams) -> Result<Tree<F>> {
    params.validate()?;
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }

    let mut indices: Vec<usize> = (0..ds.len()).collect();
    Lcg64::new(params.seed).shuffle(&mut indices);
    let holdout_size = ds.len() / params.pruning_folds;
    if params.pruned && holdout_size == 0 {
        return Err(Error::InvalidParam(format!(
            "pruning holdout is empty: {} records over {} folds",
            ds.len(),
            params.pruning_folds
        )));
    }
    let prune_set = ds.subset(&indices[..holdout_size]);
    let grow_set = ds.subset(&indices[holdout_size..]);

    let root = grow(&grow_set, params.min_leaf_instances, Criterion::InformationGain)?;
    let tree = Tree::new(
        ds.attributes().to_vec(),
        ds.class_attribute().clone(),
        root,
    )?;
    if params.pruned {
        reduced_error_prune(&tree, &prune_set)
    } else {
        Ok(tree)
    }
}

/// Bottom-up subtree replacement judged on a held-out pruning set: a
/// subtree collapses to its majority leaf whenever that does not increase
/// the misclassification count of the pruning records routed to it.
pub fn reduced_error_prune<F: Scalar>(
    tree: &Tree<F>,
    prune_set: &LabeledDataset<F>,
) -> Result<Tree<F>> {
    if prune_set.is_empty() {
        return Err(Error::EmptyDataset);
    }
    for rec in prune_set.records() {
        tree.validate_record(rec)?;
    }
    let records: Vec<&Record<F>> = prune_set.records().iter().collect();
    let (root, _) = prune_node(tree.root(), &records)?;
    tree.with_root(root)
}

/// Returns the pruned node and its misclassification count on `records`.
fn prune_node<F: Scalar>(node: &Node<F>, records: &[&Record<F>]) -> Result<(Node<F>, usize)> {
    match node {
        Node::Leaf { .. } => Ok((node.clone(), leaf_errors(node, records)?)),
        Node::Internal {
            split,
            children,
            distribution,
            count,
        } => {
            let mut buckets: Vec<Vec<&Record<F>>> = vec![Vec::new(); children.len()];
            for rec in records {
                let b = split.branch_of(rec)?;
                if let Some(bucket) = buckets.get_mut(b) {
                    bucket.push(rec);
                }
            }
            let mut pruned_children = Vec::with_capacity(children.len());
            let mut subtree_err = 0usize;
            for (child, bucket) in children.iter().zip(&buckets) {
                let (pruned, err) = prune_node(child, bucket)?;
                pruned_children.push(pruned);
                subtree_err += err;
            }
            let leaf_err = majority_errors(node, records)?;
            if leaf_err <= subtree_err {
                Ok((node.to_leaf(), leaf_err))
            } else {
                Ok((
                    Node::Internal {
                        split: split.clone(),
                        children: pruned_children,
                        distribution: distribution.clone(),
                        count: *count,
                    },
                    subtree_err,
                ))
            }
        }
    }
}

fn majority_errors<F: Scalar>(node: &Node<F>, records: &[&Record<F>]) -> Result<usize> {
    let majority = node.distribution().majority();
    let mut errors = 0;
    for rec in records {
        let class = rec
            .class
            .ok_or(Error::UnlabeledRecord(0))?;
        if class != majority {
            errors += 1;
        }
    }
    Ok(errors)
}

fn leaf_errors<F: Scalar>(node: &Node<F>, records: &[&Record<F>]) -> Result<usize> {
    match node {
        Node::Leaf { nb: Some(model), .. } => {
            let mut errors = 0;
            for rec in records {
                let class = rec.class.ok_or(Error::UnlabeledRecord(0))?;
                if model.predict(rec)? != class {
                    errors += 1;
                }
            }
            Ok(errors)
        }
        _ => majority_errors(node, records),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{Attribute, CsvOptions};
    use crate::tree::{ClassDistribution, Split};

    type Ds = LabeledDataset<f64>;

    fn parse(text: &str) -> Ds {
        Ds::parse_csv(text.as_bytes(), &CsvOptions::default()).unwrap()
    }

    #[test]
    fn pure_dataset_is_a_single_leaf_for_any_seed() {
        let ds = parse("x,class\n1,A\n2,A\n3,A\n4,A\n5,A\n6,A\n");
        for seed in [0, 1, 7, 1234] {
            let tree = train_reptree(
                &ds,
                &RepTreeParams {
                    seed,
                    ..RepTreeParams::default()
                },
            )
            .unwrap();
            assert_eq!(tree.num_leaves(), 1);
        }
    }

    #[test]
    fn same_seed_gives_identical_trees() {
        let ds = parse(
            "x,y,class\n1,9,A\n2,8,B\n3,7,A\n4,6,B\n5,5,A\n6,4,B\n7,3,A\n8,2,B\n9,1,A\n10,0,B\n",
        );
        let params = RepTreeParams::default();
        let a = train_reptree(&ds, &params).unwrap();
        let b = train_reptree(&ds, &params).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn unpruned_separable_dataset_reaches_full_training_accuracy() {
        // classes live on the two sides of a wide margin, so any grow
        // subset places the threshold inside the gap
        let mut text = String::from("x,class\n");
        for i in 0..15 {
            text.push_str(&format!("{},L\n", i as f64));
            text.push_str(&format!("{},R\n", 1000.0 + i as f64));
        }
        let ds = parse(&text);
        let tree = train_reptree(
            &ds,
            &RepTreeParams {
                pruned: false,
                ..RepTreeParams::default()
            },
        )
        .unwrap();
        for rec in ds.records() {
            assert_eq!(tree.predict(rec).unwrap().0, rec.class.unwrap());
        }
    }

    #[test]
    fn leaf_tree_is_unchanged_by_pruning() {
        let schema = vec![Attribute::numeric("x")];
        let class = Attribute::nominal("class", vec!["A".into(), "B".into()]);
        let tree = Tree::new(
            schema,
            class,
            Node::leaf(ClassDistribution::from_counts(vec![3.0, 1.0]), 4.0),
        )
        .unwrap();
        let prune_set = parse("x,class\n1,A\n2,B\n");
        let pruned = reduced_error_prune(&tree, &prune_set).unwrap();
        assert_eq!(pruned, tree);
    }

    #[test]
    fn disagreeing_subtree_collapses() {
        // children predict A/B by threshold, but the prune set is all A:
        // the collapsed majority leaf (A) makes strictly fewer errors.
        let schema = vec![Attribute::numeric("x")];
        let class = Attribute::nominal("class", vec!["A".into(), "B".into()]);
        let root = Node::Internal {
            split: Split::NumericThreshold {
                attribute: 0,
                threshold: 5.0,
            },
            children: vec![
                Node::leaf(ClassDistribution::from_counts(vec![1.0, 3.0]), 4.0),
                Node::leaf(ClassDistribution::from_counts(vec![4.0, 1.0]), 5.0),
            ],
            distribution: ClassDistribution::from_counts(vec![5.0, 4.0]),
            count: 9.0,
        };
        let tree = Tree::new(schema, class, root).unwrap();
        let prune_set = parse("x,class\n1,A\n2,A\n3,A\n8,A\n");
        let pruned = reduced_error_prune(&tree, &prune_set).unwrap();
        assert_eq!(pruned.num_leaves(), 1);
        let errs = |t: &Tree<f64>| {
            prune_set
                .records()
                .iter()
                .filter(|r| t.predict(r).unwrap().0 != r.class.unwrap())
                .count()
        };
        assert!(errs(&pruned) <= errs(&tree));
    }

    #[test]
    fn pruned_leaf_count_never_exceeds_unpruned() {
        let ds = parse(
            "x,y,class\n1,2,A\n2,9,B\n3,4,A\n4,7,B\n5,1,A\n6,8,B\n7,3,B\n8,6,A\n9,5,B\n10,2,A\n11,7,B\n12,4,A\n",
        );
        for seed in [1, 2, 3, 99] {
            let unpruned = train_reptree(
                &ds,
                &RepTreeParams {
                    seed,
                    pruned: false,
                    ..RepTreeParams::default()
                },
            )
            .unwrap();
            let pruned = train_reptree(
                &ds,
                &RepTreeParams {
                    seed,
                    ..RepTreeParams::default()
                },
            )
            .unwrap();
            assert!(pruned.num_leaves() <= unpruned.num_leaves());
        }
    }

    #[test]
    fn small_pruned_dataset_is_rejected() {
        let ds = parse("x,class\n1,A\n2,B\n");
        let err = train_reptree(
            &ds,
            &RepTreeParams {
                pruning_folds: 3,
                ..RepTreeParams::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidParam(_)));
    }

    #[test]
    fn unpruned_single_record_trains() {
        let ds = parse("x,class\n1,A\n");
        let tree = train_reptree(
            &ds,
            &RepTreeParams {
                pruned: false,
                ..RepTreeParams::default()
            },
        )
        .unwrap();
        assert_eq!(tree.num_leaves(), 1);
    }
}
