//! Resolution interchange format.
//!
//! A resolution travels between tools as a small JSON document:
//!
//! ```json
//! {
//!   "ambient": { "dim": 5, "degrees": [2] },
//!   "terms": [[0, -2, -2, -2], [-3, -3, -3, -5]],
//!   "target": "bundle"
//! }
//! ```
//!
//! `dim` is the ambient projective dimension, `terms` lists twist multisets
//! with term 0 first, and canonical emission sorts each term descending.
//! Bit-exactness on input is not required.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{CompleteIntersection, FreeResolution, GradedFreeModule, ModelError, TargetKind};

#[derive(Debug, Error)]
pub enum InterchangeError {
    #[error("malformed resolution document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unknown target kind {0:?}")]
    UnknownTarget(String),
    #[error("term twist {0} exceeds the supported magnitude")]
    TwistOutOfRange(i64),
    #[error("term of rank {0} exceeds the supported size")]
    TermTooLarge(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

const MAX_TWIST: i64 = 1 << 40;
const MAX_TERM_RANK: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientDoc {
    pub dim: i64,
    pub degrees: Vec<i64>,
}

impl AmbientDoc {
    pub fn to_variety(&self) -> Result<CompleteIntersection, ModelError> {
        CompleteIntersection::new(self.dim, self.degrees.clone())
    }

    pub fn from_variety(v: &CompleteIntersection) -> Self {
        Self {
            dim: v.ambient_dim(),
            degrees: v.degrees().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDoc {
    pub ambient: AmbientDoc,
    pub terms: Vec<Vec<i64>>,
    pub target: String,
}

impl ResolutionDoc {
    pub fn from_resolution(res: &FreeResolution) -> Self {
        Self {
            ambient: AmbientDoc::from_variety(res.ambient()),
            terms: res.terms().iter().map(|t| t.twists().to_vec()).collect(),
            target: res.target().label().to_string(),
        }
    }

    pub fn to_resolution(&self) -> Result<FreeResolution, InterchangeError> {
        let target = TargetKind::from_label(&self.target)
            .ok_or_else(|| InterchangeError::UnknownTarget(self.target.clone()))?;
        let ambient = self.ambient.to_variety()?;
        for term in &self.terms {
            if term.len() > MAX_TERM_RANK {
                return Err(InterchangeError::TermTooLarge(term.len()));
            }
            if let Some(&bad) = term.iter().find(|a| a.abs() > MAX_TWIST) {
                return Err(InterchangeError::TwistOutOfRange(bad));
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|t| GradedFreeModule::new(t.clone()))
            .collect();
        Ok(FreeResolution::new(ambient, terms, target)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, InterchangeError> {
        Ok(serde_json::from_str(s)?)
    }
}
