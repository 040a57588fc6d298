//! Shared tree structure: class distributions, splits, nodes, prediction
//! and structural queries. The split-search math lives in [`search`], the
//! text/DOT renderers in [`export`].

mod export;
mod search;

pub use search::{
    best_numeric_threshold, gain_ratio, information_gain, partition_distributions, split_info,
    MIN_SPLIT_INFO,
};

use serde::{Deserialize, Serialize};

use crate::dataset::{AttrKind, Attribute, LabeledDataset, Record, Value};
use crate::error::{Error, Result};
use crate::learners::nb::NbModel;
use crate::num::{from_usize, Scalar};

/// Per-class non-negative weights with a cached total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassDistribution<F> {
    counts: Vec<F>,
    total: F,
}

impl<F: Scalar> ClassDistribution<F> {
    pub fn zeros(n_classes: usize) -> Self {
        Self {
            counts: vec![F::zero(); n_classes],
            total: F::zero(),
        }
    }

    pub fn from_counts(counts: Vec<F>) -> Self {
        let total = counts.iter().fold(F::zero(), |a, &b| a + b);
        Self { counts, total }
    }

    /// Count the class labels of a dataset. Every record must be labeled.
    pub fn from_dataset(ds: &LabeledDataset<F>) -> Result<Self> {
        let mut dist = Self::zeros(ds.n_classes());
        for (i, rec) in ds.records().iter().enumerate() {
            let class = rec.class.ok_or(Error::UnlabeledRecord(i))?;
            dist.add(class, F::one());
        }
        Ok(dist)
    }

    pub fn add(&mut self, class: usize, weight: F) {
        self.counts[class] = self.counts[class] + weight;
        self.total = self.total + weight;
    }

    pub fn counts(&self) -> &[F] {
        &self.counts
    }

    pub fn total(&self) -> F {
        self.total
    }

    pub fn n_classes(&self) -> usize {
        self.counts.len()
    }

    /// Shannon entropy in bits, with `0 * log 0 = 0`.
    pub fn entropy(&self) -> Result<F> {
        if !(self.total > F::zero()) {
            return Err(Error::EmptyDistribution);
        }
        let mut h = F::zero();
        for &c in &self.counts {
            if c > F::zero() {
                let p = c / self.total;
                h = h - p * p.log2();
            }
        }
        Ok(h)
    }

    /// Majority class index; ties break toward the smaller index.
    pub fn majority(&self) -> usize {
        let mut best = 0;
        for (i, &c) in self.counts.iter().enumerate() {
            if c > self.counts[best] {
                best = i;
            }
        }
        best
    }

    /// Relative frequencies. Total must be positive.
    pub fn probabilities(&self) -> Vec<F> {
        self.counts.iter().map(|&c| c / self.total).collect()
    }

    /// True when at most one class has positive weight.
    pub fn is_pure(&self) -> bool {
        self.counts.iter().filter(|&&c| c > F::zero()).count() <= 1
    }

    /// Misclassification weight of predicting the majority class.
    pub fn error_weight(&self) -> F {
        self.total - self.counts[self.majority()]
    }
}

/// A test at an internal node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split<F> {
    /// Binary test on a numeric attribute: branch 0 is `<= threshold`,
    /// branch 1 is `> threshold`.
    NumericThreshold { attribute: usize, threshold: F },
    /// One branch per declared label of a nominal attribute.
    Nominal { attribute: usize, arity: usize },
}

impl<F: Scalar> Split<F> {
    pub fn attribute(&self) -> usize {
        match self {
            Split::NumericThreshold { attribute, .. } | Split::Nominal { attribute, .. } => {
                *attribute
            }
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Split::NumericThreshold { .. } => 2,
            Split::Nominal { arity, .. } => *arity,
        }
    }

    /// Branch the record routes to, or an error on value-kind mismatch.
    pub fn branch_of(&self, rec: &Record<F>) -> Result<usize> {
        match self {
            Split::NumericThreshold {
                attribute,
                threshold,
            } => match rec.values.get(*attribute) {
                Some(Value::Numeric(v)) => Ok(usize::from(*v > *threshold)),
                _ => Err(Error::InvalidSplit(format!(
                    "numeric threshold on attribute {attribute} applied to a non-numeric value"
                ))),
            },
            Split::Nominal { attribute, .. } => match rec.values.get(*attribute) {
                Some(Value::Nominal(i)) => Ok(*i),
                _ => Err(Error::InvalidSplit(format!(
                    "nominal split on attribute {attribute} applied to a non-nominal value"
                ))),
            },
        }
    }

    /// Human-readable outcome of taking `branch`.
    pub fn branch_label(&self, branch: usize, schema: &[Attribute]) -> String {
        match self {
            Split::NumericThreshold { threshold, .. } => {
                if branch == 0 {
                    format!("<= {threshold}")
                } else {
                    format!("> {threshold}")
                }
            }
            Split::Nominal { attribute, .. } => schema[*attribute]
                .labels()
                .get(branch)
                .cloned()
                .unwrap_or_else(|| format!("#{branch}")),
        }
    }

    pub fn describe(&self, schema: &[Attribute]) -> String {
        match self {
            Split::NumericThreshold { attribute, .. } => schema[*attribute].name.clone(),
            Split::Nominal { attribute, .. } => schema[*attribute].name.clone(),
        }
    }
}

/// A tree node: an internal split or a leaf. `count` is the number of
/// training instances routed to the node; an empty branch keeps its
/// parent's distribution with `count = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Node<F> {
    Internal {
        split: Split<F>,
        children: Vec<Node<F>>,
        distribution: ClassDistribution<F>,
        count: F,
    },
    Leaf {
        distribution: ClassDistribution<F>,
        count: F,
        #[serde(default = "Option::default", skip_serializing_if = "Option::is_none")]
        nb: Option<NbModel<F>>,
    },
}

impl<F: Scalar> Node<F> {
    pub fn leaf(distribution: ClassDistribution<F>, count: F) -> Self {
        Node::Leaf {
            distribution,
            count,
            nb: None,
        }
    }

    pub fn nb_leaf(distribution: ClassDistribution<F>, count: F, model: NbModel<F>) -> Self {
        Node::Leaf {
            distribution,
            count,
            nb: Some(model),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::Leaf { .. })
    }

    pub fn distribution(&self) -> &ClassDistribution<F> {
        match self {
            Node::Internal { distribution, .. } | Node::Leaf { distribution, .. } => distribution,
        }
    }

    pub fn count(&self) -> F {
        match self {
            Node::Internal { count, .. } | Node::Leaf { count, .. } => *count,
        }
    }

    pub fn num_leaves(&self) -> usize {
        match self {
            Node::Leaf { .. } => 1,
            Node::Internal { children, .. } => children.iter().map(Node::num_leaves).sum(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Node::Leaf { .. } => 0,
            Node::Internal { children, .. } => {
                1 + children.iter().map(Node::depth).max().unwrap_or(0)
            }
        }
    }

    /// Collapse this node to a majority leaf over its own distribution.
    pub fn to_leaf(&self) -> Self {
        Node::leaf(self.distribution().clone(), self.count())
    }
}

/// A trained classifier: feature schema, class attribute and root node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree<F> {
    schema: Vec<Attribute>,
    class_attribute: Attribute,
    root: Node<F>,
}

impl<F: Scalar> Tree<F> {
    /// Assemble and validate a tree: split arities must match child counts,
    /// attribute indices must be in range with the right kind, distributions
    /// must span the class set, and every leaf must carry positive weight.
    pub fn new(schema: Vec<Attribute>, class_attribute: Attribute, root: Node<F>) -> Result<Self> {
        let n_classes = class_attribute.labels().len();
        validate_node(&root, &schema, n_classes)?;
        Ok(Self {
            schema,
            class_attribute,
            root,
        })
    }

    pub fn schema(&self) -> &[Attribute] {
        &self.schema
    }

    pub fn class_attribute(&self) -> &Attribute {
        &self.class_attribute
    }

    pub fn class_labels(&self) -> &[String] {
        self.class_attribute.labels()
    }

    pub fn root(&self) -> &Node<F> {
        &self.root
    }

    pub fn num_leaves(&self) -> usize {
        self.root.num_leaves()
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    /// Route a record to a leaf and return `(class index, probabilities)`.
    /// Probabilities are leaf relative frequencies, or the posterior at a
    /// naive-Bayes leaf; the class is the argmax with ties toward the
    /// smaller index.
    pub fn predict(&self, rec: &Record<F>) -> Result<(usize, Vec<F>)> {
        self.validate_record(rec)?;
        let mut node = &self.root;
        loop {
            match node {
                Node::Leaf {
                    distribution, nb, ..
                } => {
                    let probs = match nb {
                        Some(model) => model.posterior(rec)?,
                        None => distribution.probabilities(),
                    };
                    return Ok((argmax(&probs), probs));
                }
                Node::Internal {
                    split, children, ..
                } => {
                    let branch = split.branch_of(rec)?;
                    node = match children.get(branch) {
                        Some(child) => child,
                        // Unseen outcome: fall back to the heaviest branch.
                        None => children
                            .iter()
                            .max_by(|a, b| {
                                a.count()
                                    .partial_cmp(&b.count())
                                    .unwrap_or(std::cmp::Ordering::Equal)
                            })
                            .ok_or_else(|| {
                                Error::InvalidSplit("internal node with no children".into())
                            })?,
                    };
                }
            }
        }
    }

    /// [`Self::predict`], rendered with class labels.
    pub fn predict_label(&self, rec: &Record<F>) -> Result<(String, Vec<F>)> {
        let (class, probs) = self.predict(rec)?;
        Ok((self.class_labels()[class].clone(), probs))
    }

    pub fn validate_record(&self, rec: &Record<F>) -> Result<()> {
        if rec.values.len() != self.schema.len() {
            return Err(Error::SchemaMismatch(format!(
                "record has {} values, tree schema has {}",
                rec.values.len(),
                self.schema.len()
            )));
        }
        for (attr, value) in self.schema.iter().zip(&rec.values) {
            match (&attr.kind, value) {
                (AttrKind::Numeric, Value::Numeric(_)) => {}
                (AttrKind::Nominal(labels), Value::Nominal(i)) if *i < labels.len() => {}
                _ => {
                    return Err(Error::SchemaMismatch(format!(
                        "value for `{}` does not match the tree schema",
                        attr.name
                    )))
                }
            }
        }
        Ok(())
    }

    /// Indentation-based text rendering.
    pub fn export_text(&self) -> String {
        export::to_text(self)
    }

    /// Graphviz DOT digraph with one node per tree node.
    pub fn export_dot(&self) -> String {
        export::to_dot(self)
    }

    /// Replace the root (used by pruners); revalidates the result.
    pub fn with_root(&self, root: Node<F>) -> Result<Self> {
        Self::new(self.schema.clone(), self.class_attribute.clone(), root)
    }

    /// Re-run the structural checks (after deserialization).
    pub fn validate(&self) -> Result<()> {
        validate_node(&self.root, &self.schema, self.class_attribute.labels().len())
    }
}

fn validate_node<F: Scalar>(node: &Node<F>, schema: &[Attribute], n_classes: usize) -> Result<()> {
    if node.distribution().n_classes() != n_classes {
        return Err(Error::InvalidData(format!(
            "node distribution spans {} classes, schema declares {}",
            node.distribution().n_classes(),
            n_classes
        )));
    }
    match node {
        Node::Leaf { distribution, .. } => {
            if !(distribution.total() > F::zero()) {
                return Err(Error::InvalidData(
                    "leaf with a zero-weight distribution".into(),
                ));
            }
            Ok(())
        }
        Node::Internal {
            split, children, ..
        } => {
            let attr = schema.get(split.attribute()).ok_or_else(|| {
                Error::InvalidSplit(format!("attribute index {} out of range", split.attribute()))
            })?;
            match split {
                Split::NumericThreshold { threshold, .. } => {
                    if !attr.is_numeric() {
                        return Err(Error::InvalidSplit(format!(
                            "numeric threshold on nominal attribute `{}`",
                            attr.name
                        )));
                    }
                    if !threshold.is_finite() {
                        return Err(Error::InvalidSplit("non-finite threshold".into()));
                    }
                }
                Split::Nominal { arity, .. } => {
                    if attr.is_numeric() {
                        return Err(Error::InvalidSplit(format!(
                            "nominal split on numeric attribute `{}`",
                            attr.name
                        )));
                    }
                    if *arity != attr.labels().len() {
                        return Err(Error::InvalidSplit(format!(
                            "split arity {} does not match `{}`'s {} labels",
                            arity,
                            attr.name,
                            attr.labels().len()
                        )));
                    }
                }
            }
            if children.len() != split.arity() {
                return Err(Error::InvalidSplit(format!(
                    "{} children for a split of arity {}",
                    children.len(),
                    split.arity()
                )));
            }
            for child in children {
                validate_node(child, schema, n_classes)?;
            }
            Ok(())
        }
    }
}

/// Argmax with ties toward the smaller index.
pub(crate) fn argmax<F: Scalar>(xs: &[F]) -> usize {
    let mut best = 0;
    for (i, &x) in xs.iter().enumerate() {
        if x > xs[best] {
            best = i;
        }
    }
    best
}

/// Uniform distribution helper for degenerate cases.
#[allow(dead_code)]
pub(crate) fn uniform<F: Scalar>(k: usize) -> Vec<F> {
    vec![F::one() / from_usize(k); k]
}
