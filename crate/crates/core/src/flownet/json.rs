//! JSON documents for networks and flows.
//!
//! Numbers travel in the quadratic literal grammar, never as floats.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{validate_network, ArcId, Flow, Network, NetworkSpec, VertexId, Violation};
use crate::exactfield::{ParseError, QuadValue};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("json: {0}")]
    Serde(#[from] serde_json::Error),
    #[error("bad number: {0}")]
    Number(#[from] ParseError),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("arc ids must be 0..{count} in order; found {found} at position {position}")]
    ArcIds {
        count: usize,
        position: usize,
        found: usize,
    },
    #[error("invalid network: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("flow refers to network {found} but the network hashes to {expected}")]
    HashMismatch { expected: String, found: String },
    #[error("flow names arc {0}, which does not exist")]
    UnknownArc(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcDoc {
    pub id: usize,
    pub tail: String,
    pub head: String,
    pub cap: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkDoc {
    pub d: u64,
    pub vertices: Vec<String>,
    pub source: String,
    pub sink: String,
    pub arcs: Vec<ArcDoc>,
}

impl NetworkDoc {
    pub fn from_network(n: &Network) -> Self {
        NetworkDoc {
            d: n.d(),
            vertices: n.vertices().to_vec(),
            source: n.label(n.source()).to_string(),
            sink: n.label(n.sink()).to_string(),
            arcs: n
                .arcs()
                .iter()
                .map(|a| ArcDoc {
                    id: a.id.0,
                    tail: n.label(a.tail).to_string(),
                    head: n.label(a.head).to_string(),
                    cap: a.cap.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_network(&self) -> Result<Network, JsonError> {
        let lookup = |label: &str| {
            self.vertices
                .iter()
                .position(|v| v == label)
                .map(VertexId)
                .ok_or_else(|| JsonError::UnknownLabel(label.to_string()))
        };
        let mut arcs = Vec::with_capacity(self.arcs.len());
        for (position, a) in self.arcs.iter().enumerate() {
            if a.id != position {
                return Err(JsonError::ArcIds {
                    count: self.arcs.len(),
                    position,
                    found: a.id,
                });
            }
            let cap = QuadValue::parse(&a.cap, self.d)?;
            arcs.push((lookup(&a.tail)?, lookup(&a.head)?, cap));
        }
        let spec = NetworkSpec {
            d: self.d,
            vertices: self.vertices.clone(),
            source: lookup(&self.source)?,
            sink: lookup(&self.sink)?,
            arcs,
        };
        validate_network(&spec).map_err(JsonError::Invalid)
    }

    pub fn parse(text: &str) -> Result<Network, JsonError> {
        serde_json::from_str::<NetworkDoc>(text)?.to_network()
    }
}

/// Hex SHA-256 of the canonical network document.
pub fn network_hash(n: &Network) -> String {
    let canonical = serde_json::to_string(&NetworkDoc::from_network(n)).expect("serializable");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowDoc {
    pub network_hash: String,
    /// Arc id → flow literal. Missing arcs carry zero flow.
    pub values: BTreeMap<usize, String>,
}

impl FlowDoc {
    pub fn from_flow(n: &Network, f: &Flow) -> Self {
        FlowDoc {
            network_hash: network_hash(n),
            values: f
                .values()
                .iter()
                .enumerate()
                .map(|(i, v)| (i, v.to_string()))
                .collect(),
        }
    }

    /// Decode against `n`, checking the network hash. Capacity and
    /// conservation are not checked here.
    pub fn to_flow(&self, n: &Network) -> Result<Flow, JsonError> {
        let expected = network_hash(n);
        if self.network_hash != expected {
            return Err(JsonError::HashMismatch {
                expected,
                found: self.network_hash.clone(),
            });
        }
        let mut f = Flow::zero(n);
        for (&id, text) in &self.values {
            if id >= n.arc_count() {
                return Err(JsonError::UnknownArc(id));
            }
            f.set(ArcId(id), QuadValue::parse(text, n.d())?);
        }
        Ok(f)
    }
}
