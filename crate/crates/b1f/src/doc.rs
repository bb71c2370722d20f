//! On-disk document format for factorisations.
//!
//! A document is a single JSON object with fields `order`, `connection_set`,
//! `factors` (list of factors, each a list of `[a, b]` endpoint pairs) and a
//! string-to-string `meta` map. Emission is canonical: endpoint pairs are
//! stored smaller-first, each factor's edges are sorted, metadata keys are
//! ordered, and the output is pretty-printed with a trailing newline, so
//! equal factorisations serialise to byte-identical files.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CirculantGraph, FactorisationError, GraphError, OneFactorisation};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Factorisation(#[from] FactorisationError),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FactorisationDocument {
    pub order: usize,
    pub connection_set: Vec<usize>,
    pub factors: Vec<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

impl FactorisationDocument {
    /// Captures a factorisation of `graph` in canonical form.
    pub fn new(graph: &CirculantGraph, of: &OneFactorisation) -> FactorisationDocument {
        let factors = of
            .factors()
            .iter()
            .map(|f| f.edges().iter().map(|e| [e.a(), e.b()]).collect())
            .collect();
        FactorisationDocument {
            order: of.order(),
            connection_set: graph.distances().to_vec(),
            factors,
            meta: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> FactorisationDocument {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }

    /// Rebuilds the graph and factorisation, validating both.
    pub fn restore(&self) -> Result<(CirculantGraph, OneFactorisation), DocumentError> {
        let graph = CirculantGraph::new(self.order, &self.connection_set)?;
        let lists: Vec<Vec<(usize, usize)>> = self
            .factors
            .iter()
            .map(|f| f.iter().map(|&[a, b]| (a, b)).collect())
            .collect();
        let of = OneFactorisation::from_edge_lists(self.order, &lists)?;
        of.validate(&graph)?;
        Ok((graph, of))
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serialises");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<FactorisationDocument, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}
