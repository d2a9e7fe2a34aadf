//! Finite quasiorders used as label alphabets, and the domination order on
//! their nonempty subsets.
//!
//! A Q-definition file is a JSON document:
//!
//! ```json
//! {
//!   "labels": ["a", "b", "c"],
//!   "leq": [["a", "b"], ["b", "c"]]
//! }
//! ```
//!
//! `leq` lists generator pairs; the stored relation is their reflexive
//! transitive closure. Labels are kept sorted by name, so [`LabelId`] order
//! agrees with name order.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::is_identifier;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelId(pub u32);

impl LabelId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error)]
pub enum QoError {
    #[error("invalid Q-definition document: {0}")]
    Format(#[from] serde_json::Error),
    #[error("label '{0}' is declared more than once")]
    DuplicateLabel(String),
    #[error("label '{0}' is not a valid identifier")]
    InvalidLabel(String),
    #[error("undeclared label '{0}'")]
    UnknownLabel(String),
    #[error("label set must be nonempty")]
    EmptySet,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QoDocument {
    labels: Vec<String>,
    #[serde(default)]
    leq: Vec<[String; 2]>,
}

/// A finite quasiorder `(Q, ≤_Q)` with its relation stored closed.
#[derive(Clone, PartialEq, Eq)]
pub struct QOrder {
    labels: Vec<String>,
    // row-major n×n closure
    leq: Vec<bool>,
}

impl QOrder {
    /// Builds the reflexive transitive closure of `generators` over `labels`.
    pub fn from_generators<S: AsRef<str>>(
        labels: &[S],
        generators: &[(S, S)],
    ) -> Result<QOrder, QoError> {
        let mut names: Vec<String> = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            if !is_identifier(l) {
                return Err(QoError::InvalidLabel(l.to_string()));
            }
            names.push(l.to_string());
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(QoError::DuplicateLabel(w[0].clone()));
        }
        let n = names.len();
        let mut qo = QOrder {
            labels: names,
            leq: vec![false; n * n],
        };
        for i in 0..n {
            qo.leq[i * n + i] = true;
        }
        for (p, r) in generators {
            let p = qo.label(p.as_ref())?;
            let r = qo.label(r.as_ref())?;
            qo.leq[p.index() * n + r.index()] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if qo.leq[i * n + k] {
                    for j in 0..n {
                        if qo.leq[k * n + j] {
                            qo.leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Ok(qo)
    }

    pub fn from_json(text: &str) -> Result<QOrder, QoError> {
        let doc: QoDocument = serde_json::from_str(text)?;
        let gens: Vec<(String, String)> = doc.leq.into_iter().map(|[a, b]| (a, b)).collect();
        QOrder::from_generators(&doc.labels, &gens)
    }

    /// Serializes the closed relation (reflexive pairs omitted). Loading the
    /// output and serializing again yields the same bytes.
    pub fn to_json(&self) -> String {
        let doc = QoDocument {
            labels: self.labels.clone(),
            leq: self
                .ids()
                .flat_map(|p| self.ids().map(move |r| (p, r)))
                .filter(|&(p, r)| p != r && self.leq(p, r))
                .map(|(p, r)| [self.name(p).to_string(), self.name(r).to_string()])
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("serializable document");
        out.push('\n');
        out
    }

    /// The discrete order on `names`.
    pub fn antichain(names: &[&str]) -> QOrder {
        QOrder::from_generators::<&str>(names, &[]).expect("valid antichain labels")
    }

    /// `names[0] ≤ names[1] ≤ ⋯`.
    pub fn chain(names: &[&str]) -> QOrder {
        let gens: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        QOrder::from_generators(names, &gens).expect("valid chain labels")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = LabelId> + Clone {
        (0..self.labels.len() as u32).map(LabelId)
    }

    pub fn label(&self, name: &str) -> Result<LabelId, QoError> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(name))
            .map(|i| LabelId(i as u32))
            .map_err(|_| QoError::UnknownLabel(name.to_string()))
    }

    pub fn name(&self, id: LabelId) -> &str {
        &self.labels[id.index()]
    }

    pub fn leq(&self, p: LabelId, r: LabelId) -> bool {
        self.leq[p.index() * self.labels.len() + r.index()]
    }

    pub fn leq_by_name(&self, p: &str, r: &str) -> Result<bool, QoError> {
        Ok(self.leq(self.label(p)?, self.label(r)?))
    }

    /// `S ≤* R`: every element of `s` is below some element of `r`.
    pub fn dominates(&self, s: &[LabelId], r: &[LabelId]) -> Result<bool, QoError> {
        if s.is_empty() || r.is_empty() {
            return Err(QoError::EmptySet);
        }
        Ok(s.iter().all(|&x| r.iter().any(|&y| self.leq(x, y))))
    }
}

impl fmt::Debug for QOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(&str, &str)> = self
            .ids()
            .flat_map(|p| self.ids().map(move |r| (p, r)))
            .filter(|&(p, r)| p != r && self.leq(p, r))
            .map(|(p, r)| (self.name(p), self.name(r)))
            .collect();
        f.debug_struct("QOrder")
            .field("labels", &self.labels)
            .field("strict_pairs", &pairs)
            .finish()
    }
}
