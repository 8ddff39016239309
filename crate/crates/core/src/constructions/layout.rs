//! Layout sidecar: generator parameters plus a role-name → arc-id map.
//!
//! The parameters are enough to rebuild the layout; the hash ties the
//! sidecar to one network document.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{glued_network, ConstructionError, GadgetLayout, GluedLayout};
use crate::exactfield::QuadValue;
use crate::flownet::{network_hash, Network};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutDoc {
    /// `euclidean` or `glued`.
    pub kind: String,
    pub k: usize,
    pub d: u64,
    pub a: String,
    pub b: String,
    pub network_hash: String,
    pub arc_count: usize,
    pub vertex_count: usize,
    pub arcs_first_level: usize,
    pub arcs_per_level: usize,
    pub capacity_factor: u64,
    pub big_capacity: String,
    pub roles: BTreeMap<String, usize>,
}

impl LayoutDoc {
    pub fn new(n: &Network, layout: &GluedLayout, a: &QuadValue, b: &QuadValue) -> Self {
        LayoutDoc {
            kind: if layout.k == 1 { "euclidean" } else { "glued" }.into(),
            k: layout.k,
            d: n.d(),
            a: a.to_string(),
            b: b.to_string(),
            network_hash: network_hash(n),
            arc_count: n.arc_count(),
            vertex_count: n.vertex_count(),
            arcs_first_level: GadgetLayout::ARCS,
            arcs_per_level: GluedLayout::ARCS_PER_LEVEL,
            capacity_factor: layout.capacity_factor,
            big_capacity: layout.big_capacity.to_string(),
            roles: layout.roles(),
        }
    }

    /// Rebuild the layout, checking it describes `n`.
    pub fn layout_for(&self, n: &Network) -> Result<GluedLayout, ConstructionError> {
        let parse = |s: &str| {
            QuadValue::parse(s, self.d).map_err(|e| ConstructionError::Invalid(e.to_string()))
        };
        let (built, layout) = glued_network(self.k, &parse(&self.a)?, &parse(&self.b)?)?;
        if network_hash(&built) != network_hash(n) {
            return Err(ConstructionError::Invalid(
                "layout sidecar was generated for a different network".into(),
            ));
        }
        Ok(layout)
    }
}
