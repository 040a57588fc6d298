//! Gain-ratio tree with error-based (pessimistic) pruning.
//!
//! Pruning replaces a subtree by a majority leaf when the leaf's
//! pessimistic error count does not exceed the sum over the subtree's
//! leaves. The pessimistic count for a leaf holding `n` training instances
//! with `e` errors is `e + extra(n, e, cf)` where `extra` is the classic
//! upper confidence bound on the binomial:
//!
//! * `n = 0`: zero;
//! * `e = 0`: `n * (1 - cf^(1/n))`;
//! * `0 < e < 1`: linear interpolation between the `e = 0` and `e = 1`
//!   bounds;
//! * `e + 0.5 >= n`: `n - e`;
//! * otherwise the continuity-corrected normal approximation with
//!   `f = (e + 0.5) / n` and `z` the standard normal quantile at `1 - cf`:
//!   `n * (f + z^2/2n + z * sqrt(f/n - f^2/n + z^2/4n^2)) / (1 + z^2/n) - e`.

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::learners::grow::{grow, Criterion};
use crate::learners::J48Params;
use crate::num::Scalar;
use crate::tree::{Node, Tree};

pub fn train_j48<F: Scalar>(ds: &LabeledDataset<F>, params: &J48Params) -> Result<Tree<F>> {
    params.validate()?;
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let root = grow(ds, params.min_leaf_instances, Criterion::GainRatio)?;
    let tree = Tree::new(
        ds.attributes().to_vec(),
        ds.class_attribute().clone(),
        root,
    )?;
    if params.pruned {
        prune_pessimistic(&tree, params.confidence)
    } else {
        Ok(tree)
    }
}

/// Bottom-up error-based pruning at the given confidence. Node statistics
/// stored during training drive the decision; leaf count never increases.
pub fn prune_pessimistic<F: Scalar>(tree: &Tree<F>, confidence: f64) -> Result<Tree<F>> {
    if !(confidence > 0.0 && confidence <= 0.5) {
        return Err(Error::InvalidParam(format!(
            "confidence must be in (0, 0.5], got {confidence}"
        )));
    }
    tree.with_root(prune_node(tree.root(), confidence))
}

fn prune_node<F: Scalar>(node: &Node<F>, cf: f64) -> Node<F> {
    match node {
        Node::Leaf { .. } => node.clone(),
        Node::Internal {
            split,
            children,
            distribution,
            count,
        } => {
            let pruned: Vec<Node<F>> = children.iter().map(|c| prune_node(c, cf)).collect();
            let subtree_err: f64 = pruned.iter().map(|c| subtree_pessimistic(c, cf)).sum();
            let leaf_err = node_pessimistic(node, cf);
            if leaf_err <= subtree_err {
                node.to_leaf()
            } else {
                Node::Internal {
                    split: split.clone(),
                    children: pruned,
                    distribution: distribution.clone(),
                    count: *count,
                }
            }
        }
    }
}

fn subtree_pessimistic<F: Scalar>(node: &Node<F>, cf: f64) -> f64 {
    match node {
        Node::Leaf { .. } => node_pessimistic(node, cf),
        Node::Internal { children, .. } => {
            children.iter().map(|c| subtree_pessimistic(c, cf)).sum()
        }
    }
}

/// Pessimistic error count of predicting this node's majority class on the
/// instances routed to it during training. Empty branches carry the parent
/// distribution but zero instances, hence zero error.
fn node_pessimistic<F: Scalar>(node: &Node<F>, cf: f64) -> f64 {
    let n = node.count().to_f64().unwrap_or(0.0);
    if n <= 0.0 {
        return 0.0;
    }
    let e = node.distribution().error_weight().to_f64().unwrap_or(0.0);
    pessimistic_error_count(n, e, cf)
}

/// `e` plus the confidence-bound surplus; see the module docs.
pub fn pessimistic_error_count(n: f64, e: f64, cf: f64) -> f64 {
    e + add_errs(n, e, cf)
}

fn add_errs(n: f64, e: f64, cf: f64) -> f64 {
    if n <= 0.0 {
        return 0.0;
    }
    if e < 1.0 {
        let base = n * (1.0 - cf.powf(1.0 / n));
        if e == 0.0 {
            return base;
        }
        return base + e * (add_errs(n, 1.0, cf) - base);
    }
    if e + 0.5 >= n {
        return (n - e).max(0.0);
    }
    let z = normal_quantile(1.0 - cf);
    let f = (e + 0.5) / n;
    let r = (f + z * z / (2.0 * n) + z * (f / n - f * f / n + z * z / (4.0 * n * n)).sqrt())
        / (1.0 + z * z / n);
    r * n - e
}

/// Standard normal quantile, Acklam's rational approximation
/// (relative error below 1.2e-9 — far inside the pruning tolerances).
pub fn normal_quantile(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "quantile domain");
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.38357751867269e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
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
    fn quantile_matches_reference_points() {
        // Phi^-1(0.75), 30-digit reference
        assert!((normal_quantile(0.75) - 0.674_489_750_196_081_7).abs() < 1e-8);
        assert!((normal_quantile(0.5)).abs() < 1e-12);
        assert!((normal_quantile(0.975) - 1.959_963_984_540_054).abs() < 1e-8);
        assert!((normal_quantile(0.025) + 1.959_963_984_540_054).abs() < 1e-8);
    }

    #[test]
    fn pessimistic_counts_match_frozen_oracle() {
        // 30-digit references for CF = 0.25
        assert!((pessimistic_error_count(14.0, 5.0, 0.25) - 6.761_119_807_272_967).abs() < 1e-6);
        assert!((pessimistic_error_count(6.0, 2.0, 0.25) - 3.321_325_709_462_255).abs() < 1e-6);
        assert!((pessimistic_error_count(8.0, 3.0, 0.25) - 4.447_874_359_862_643).abs() < 1e-6);
    }

    #[test]
    fn hand_built_subtree_prunes_when_bound_favors_leaf() {
        // node (N=14, E=5) vs children (6,2) + (8,3): the summed child
        // bound 7.769 exceeds the node bound 6.761, so the split collapses.
        let schema = vec![Attribute::numeric("x")];
        let class = Attribute::nominal("class", vec!["A".into(), "B".into()]);
        let node = Node::Internal {
            split: Split::NumericThreshold {
                attribute: 0,
                threshold: 0.0,
            },
            children: vec![
                Node::leaf(ClassDistribution::from_counts(vec![4.0, 2.0]), 6.0),
                Node::leaf(ClassDistribution::from_counts(vec![5.0, 3.0]), 8.0),
            ],
            distribution: ClassDistribution::from_counts(vec![9.0, 5.0]),
            count: 14.0,
        };
        let tree = Tree::new(schema, class, node).unwrap();
        let pruned = prune_pessimistic(&tree, 0.25).unwrap();
        assert_eq!(pruned.num_leaves(), 1);
    }

    #[test]
    fn pure_subtree_collapses() {
        let schema = vec![Attribute::numeric("x")];
        let class = Attribute::nominal("class", vec!["A".into(), "B".into()]);
        let node = Node::Internal {
            split: Split::NumericThreshold {
                attribute: 0,
                threshold: 0.0,
            },
            children: vec![
                Node::leaf(ClassDistribution::from_counts(vec![6.0, 0.0]), 6.0),
                Node::leaf(ClassDistribution::from_counts(vec![8.0, 0.0]), 8.0),
            ],
            distribution: ClassDistribution::from_counts(vec![14.0, 0.0]),
            count: 14.0,
        };
        let tree = Tree::new(schema, class, node).unwrap();
        assert_eq!(prune_pessimistic(&tree, 0.25).unwrap().num_leaves(), 1);
    }

    #[test]
    fn all_one_class_trains_to_single_leaf() {
        let ds = parse("x,y,class\n1,4,A\n2,5,A\n3,6,A\n");
        let tree = train_j48(&ds, &J48Params::default()).unwrap();
        assert_eq!(tree.num_leaves(), 1);
        assert_eq!(tree.depth(), 0);
    }

    #[test]
    fn separating_attribute_becomes_root() {
        // r_i alone separates K1 from K4 around 10; other attributes carry
        // an identical value for both classes.
        let ds = parse(
            "r_i,r,y_i,y,class\n5,1,1,1,K4\n7,1,1,1,K4\n9,1,1,1,K4\n11,1,1,1,K1\n13,1,1,1,K1\n15,1,1,1,K1\n",
        );
        let tree = train_j48(
            &ds,
            &J48Params {
                pruned: false,
                ..J48Params::default()
            },
        )
        .unwrap();
        match tree.root() {
            Node::Internal { split, .. } => match split {
                Split::NumericThreshold {
                    attribute,
                    threshold,
                } => {
                    assert_eq!(*attribute, 0);
                    assert!(*threshold > 9.0 && *threshold < 11.0);
                }
                other => panic!("expected numeric split, got {other:?}"),
            },
            Node::Leaf { .. } => panic!("expected an internal root"),
        }
        // brute force over the four attributes confirms the argmax
        let mut best: Option<(usize, f64)> = None;
        for a in 0..4 {
            if let Some((theta, _)) = crate::tree::best_numeric_threshold(&ds, a).unwrap() {
                let split = Split::NumericThreshold {
                    attribute: a,
                    threshold: theta,
                };
                if let Some(r) = crate::tree::gain_ratio(&ds, &split).unwrap() {
                    if best.is_none_or(|(_, b)| r > b) {
                        best = Some((a, r));
                    }
                }
            }
        }
        assert_eq!(best.unwrap().0, 0);
    }

    #[test]
    fn pruned_never_has_more_leaves() {
        let ds = parse(
            "x,y,class\n1,1,A\n2,7,A\n3,2,B\n4,9,A\n5,3,B\n6,8,B\n7,1,A\n8,6,B\n9,4,A\n10,5,B\n",
        );
        let unpruned = train_j48(
            &ds,
            &J48Params {
                pruned: false,
                ..J48Params::default()
            },
        )
        .unwrap();
        let pruned = train_j48(&ds, &J48Params::default()).unwrap();
        assert!(pruned.num_leaves() <= unpruned.num_leaves());
    }

    #[test]
    fn training_accuracy_unpruned_at_least_pruned() {
        let ds = parse(
            "x,y,class\n1,5,A\n2,3,B\n3,8,A\n4,1,B\n5,9,A\n6,2,A\n7,7,B\n8,4,B\n9,6,A\n10,0,B\n11,5,A\n12,3,B\n",
        );
        let unpruned = train_j48(
            &ds,
            &J48Params {
                pruned: false,
                ..J48Params::default()
            },
        )
        .unwrap();
        let pruned = train_j48(&ds, &J48Params::default()).unwrap();
        let acc = |tree: &Tree<f64>| {
            ds.records()
                .iter()
                .filter(|r| tree.predict(r).unwrap().0 == r.class.unwrap())
                .count()
        };
        assert!(acc(&unpruned) >= acc(&pruned));
    }

    #[test]
    fn empty_dataset_is_rejected() {
        let class = Attribute::nominal("class", vec![]);
        let ds = Ds::new(vec![Attribute::numeric("x")], class, vec![]).unwrap();
        assert!(matches!(
            train_j48(&ds, &J48Params::default()).unwrap_err(),
            Error::EmptyDataset
        ));
    }
}
