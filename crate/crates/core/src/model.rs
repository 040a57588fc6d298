//! Model persistence: a JSON document carrying the schema, class labels,
//! the root node, the learner name with its parameters, a format version
//! and optional provenance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::learners::Learner;
use crate::num::Scalar;
use crate::tree::Tree;

pub const FORMAT_VERSION: u32 = 1;

/// Where a model file came from; filled in by front ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
}

/// A trained tree bundled with the learner that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Model<F> {
    pub format_version: u32,
    #[serde(flatten)]
    pub learner: Learner,
    pub tree: Tree<F>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl<F: Scalar> Model<F> {
    pub fn new(learner: Learner, tree: Tree<F>) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            learner,
            tree,
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    /// Pretty JSON with a trailing newline; field order is fixed, so equal
    /// models serialize byte-identically.
    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    /// Parse and structurally validate a model document.
    pub fn from_json(text: &str) -> Result<Self> {
        let model: Self = serde_json::from_str(text)?;
        if model.format_version != FORMAT_VERSION {
            return Err(Error::FormatVersion(model.format_version));
        }
        model.tree.validate()?;
        Ok(model)
    }
}
