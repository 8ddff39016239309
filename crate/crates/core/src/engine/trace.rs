//! Serialized forms of traces and reports.
//!
//! Every number is written in the quadratic literal grammar and every clock
//! in the ordinal display grammar. Numbers stay strings here because their
//! field is only known once the network is loaded.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{RunReport, Snapshot};
use crate::flownet::{Direction, Flow};
use crate::ordinals::Ordinal;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub clock: Ordinal,
    #[serde(flatten)]
    pub kind: EventKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeStep {
    pub arc: usize,
    pub dir: Direction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EventKind {
    Start {
        network_hash: String,
        strategy: String,
        #[serde(deserialize_with = "arc_keyed")]
        flow: BTreeMap<usize, String>,
    },
    Augment {
        edges: Vec<EdgeStep>,
        bottleneck: String,
    },
    LimitJump {
        depth: u32,
        ratio: String,
        probe_rounds: usize,
        value: String,
        #[serde(deserialize_with = "arc_keyed")]
        limit: BTreeMap<usize, String>,
    },
    Monitor {
        name: String,
        pass: bool,
        details: String,
    },
    Halt {
        reason: String,
    },
}

impl EventKind {
    /// Augmentations and limit jumps; these must carry strictly increasing
    /// clocks.
    pub fn changes_state(&self) -> bool {
        matches!(
            self,
            EventKind::Augment { .. } | EventKind::LimitJump { .. }
        )
    }
}

/// Tagged enums buffer their content, which turns integer map keys into
/// strings; parse them back.
fn arc_keyed<'de, D: serde::Deserializer<'de>>(de: D) -> Result<BTreeMap<usize, String>, D::Error> {
    BTreeMap::<String, String>::deserialize(de)?
        .into_iter()
        .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(serde::de::Error::custom))
        .collect()
}

pub(crate) fn values_map(f: &Flow) -> BTreeMap<usize, String> {
    f.values()
        .iter()
        .enumerate()
        .map(|(i, v)| (i, v.to_string()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotDoc {
    pub clock: Ordinal,
    pub terminated: bool,
    pub values: BTreeMap<usize, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonitorDoc {
    pub name: String,
    pub clock: Ordinal,
    pub pass: bool,
    pub details: String,
}

/// The run report as written to disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReportDoc {
    pub network_hash: String,
    pub strategy: String,
    pub final_clock: Ordinal,
    pub final_value: String,
    pub terminated: bool,
    pub halt: String,
    pub steps: usize,
    pub jumps: usize,
    pub final_flow: BTreeMap<usize, String>,
    pub snapshots: Vec<SnapshotDoc>,
    pub monitors: Vec<MonitorDoc>,
}

impl From<&Snapshot> for SnapshotDoc {
    fn from(s: &Snapshot) -> Self {
        SnapshotDoc {
            clock: s.clock.clone(),
            terminated: s.terminated,
            values: values_map(&s.flow),
        }
    }
}

impl RunReport {
    pub fn to_doc(&self) -> RunReportDoc {
        RunReportDoc {
            network_hash: self.network_hash.clone(),
            strategy: self.strategy.clone(),
            final_clock: self.final_clock.clone(),
            final_value: self.final_value.to_string(),
            terminated: self.terminated,
            halt: self.halt.describe(),
            steps: self.steps,
            jumps: self.jumps,
            final_flow: values_map(&self.final_flow),
            snapshots: self.snapshots.iter().map(SnapshotDoc::from).collect(),
            monitors: self
                .monitors
                .iter()
                .map(|m| MonitorDoc {
                    name: m.name.clone(),
                    clock: m.clock.clone(),
                    pass: m.pass,
                    details: m.details.clone(),
                })
                .collect(),
        }
    }

    /// One JSON object per line.
    pub fn trace_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.trace {
            out.push_str(&serde_json::to_string(e).expect("trace events serialize"));
            out.push('\n');
        }
        out
    }
}
