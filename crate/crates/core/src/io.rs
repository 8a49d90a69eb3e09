//! JSON graph files.
//!
//! ```json
//! {"vertices":[{"id":"R","weight":"27"},{"id":"G","weight":"1"}],"edges":[["R","G"]]}
//! ```
//!
//! Weights are decimal strings so arbitrarily large values survive.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::graph::WeightedGraph;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    #[serde(with = "decimal")]
    pub weight: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<(String, String)>,
}

impl GraphFile {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        GraphFile {
            vertices: (0..g.vertex_count())
                .map(|v| VertexEntry { id: g.id(v).to_string(), weight: g.weight(v).clone() })
                .collect(),
            edges: g.edges().iter().map(|&(a, b)| (g.id(a).to_string(), g.id(b).to_string())).collect(),
        }
    }

    pub fn into_graph(self) -> Result<WeightedGraph> {
        WeightedGraph::new(self.vertices.into_iter().map(|v| (v.id, v.weight)).collect(), self.edges)
    }
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_graph()
}

pub fn graph_to_json(g: &WeightedGraph) -> String {
    serde_json::to_string_pretty(&GraphFile::from_graph(g)).expect("graph files always serialize")
}

/// Serde adapter writing a `BigUint` as a decimal string.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse::<BigUint>().map_err(|_| D::Error::custom(format!("`{raw}` is not a non-negative decimal integer")))
    }
}
