//! Deterministic text and Graphviz DOT renderings of a trained tree.

use crate::num::Scalar;
use crate::tree::{Node, Tree};

pub(crate) fn to_text<F: Scalar>(tree: &Tree<F>) -> String {
    let mut out = String::new();
    match tree.root() {
        Node::Leaf { .. } => {
            out.push_str(&leaf_text(tree, tree.root()));
            out.push('\n');
        }
        node => render_text(tree, node, 0, &mut out),
    }
    out
}

fn render_text<F: Scalar>(tree: &Tree<F>, node: &Node<F>, depth: usize, out: &mut String) {
    if let Node::Internal {
        split, children, ..
    } = node
    {
        let attr = split.describe(tree.schema());
        for (b, child) in children.iter().enumerate() {
            let prefix = "|   ".repeat(depth);
            let outcome = split.branch_label(b, tree.schema());
            match child {
                Node::Leaf { .. } => {
                    out.push_str(&format!(
                        "{prefix}{attr} {outcome}: {}\n",
                        leaf_text(tree, child)
                    ));
                }
                _ => {
                    out.push_str(&format!("{prefix}{attr} {outcome}\n"));
                    render_text(tree, child, depth + 1, out);
                }
            }
        }
    }
}

fn leaf_text<F: Scalar>(tree: &Tree<F>, node: &Node<F>) -> String {
    if let Node::Leaf {
        distribution,
        count,
        nb,
    } = node
    {
        let label = &tree.class_labels()[distribution.majority()];
        let errors = distribution.error_weight();
        let base = if errors > F::zero() {
            format!("{label} ({count}/{errors})")
        } else {
            format!("{label} ({count})")
        };
        if nb.is_some() {
            format!("NB {base}")
        } else {
            base
        }
    } else {
        unreachable!("leaf_text on an internal node")
    }
}

pub(crate) fn to_dot<F: Scalar>(tree: &Tree<F>) -> String {
    let mut out = String::from("digraph Tree {\n  node [shape=box];\n");
    let mut next_id = 0usize;
    render_dot(tree, tree.root(), &mut next_id, &mut out);
    out.push_str("}\n");
    out
}

/// Emit this node (preorder ids) and edges to its children.
/// Returns the node's id.
fn render_dot<F: Scalar>(
    tree: &Tree<F>,
    node: &Node<F>,
    next_id: &mut usize,
    out: &mut String,
) -> usize {
    let id = *next_id;
    *next_id += 1;
    match node {
        Node::Leaf { .. } => {
            out.push_str(&format!(
                "  n{id} [label=\"{}\"];\n",
                escape(&leaf_text(tree, node))
            ));
        }
        Node::Internal {
            split, children, ..
        } => {
            out.push_str(&format!(
                "  n{id} [label=\"{}\"];\n",
                escape(&split.describe(tree.schema()))
            ));
            for (b, child) in children.iter().enumerate() {
                let child_id = render_dot(tree, child, next_id, out);
                out.push_str(&format!(
                    "  n{id} -> n{child_id} [label=\"{}\"];\n",
                    escape(&split.branch_label(b, tree.schema()))
                ));
            }
        }
    }
    id
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use crate::dataset::Attribute;
    use crate::tree::{ClassDistribution, Node, Split, Tree};

    fn dist(counts: &[f64]) -> ClassDistribution<f64> {
        ClassDistribution::from_counts(counts.to_vec())
    }

    fn leaf_tree() -> Tree<f64> {
        Tree::new(
            vec![Attribute::numeric("x")],
            Attribute::nominal("class", vec!["A".into(), "B".into()]),
            Node::leaf(dist(&[5.0, 1.0]), 6.0),
        )
        .unwrap()
    }

    fn depth_one_tree() -> Tree<f64> {
        Tree::new(
            vec![Attribute::numeric("x")],
            Attribute::nominal("class", vec!["A".into(), "B".into()]),
            Node::Internal {
                split: Split::NumericThreshold {
                    attribute: 0,
                    threshold: 2.5,
                },
                children: vec![
                    Node::leaf(dist(&[3.0, 0.0]), 3.0),
                    Node::leaf(dist(&[0.0, 2.0]), 2.0),
                ],
                distribution: dist(&[3.0, 2.0]),
                count: 5.0,
            },
        )
        .unwrap()
    }

    #[test]
    fn leaf_renders_as_one_line() {
        let text = leaf_tree().export_text();
        assert_eq!(text, "A (6/1)\n");
    }

    #[test]
    fn depth_one_text_layout() {
        let text = depth_one_tree().export_text();
        assert_eq!(text, "x <= 2.5: A (3)\nx > 2.5: B (2)\n");
    }

    #[test]
    fn depth_one_dot_has_three_nodes_two_edges() {
        let dot = depth_one_tree().export_dot();
        assert_eq!(dot.matches("label=").count(), 5); // 3 nodes + 2 edges
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.starts_with("digraph Tree {"));
        assert!(dot.trim_end().ends_with('}'));
    }

    #[test]
    fn export_is_deterministic() {
        let tree = depth_one_tree();
        assert_eq!(tree.export_text(), tree.export_text());
        assert_eq!(tree.export_dot(), tree.export_dot());
    }
}
