//! Capacitated multigraphs, flows, residual graphs and single augmentations.
//!
//! Arcs are identified by a dense [`ArcId`] (their index), never by endpoint
//! pair, so parallel arcs are first-class. Flows are plain per-arc vectors and
//! every augmentation returns a fresh [`Flow`].

mod json;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactfield::QuadValue;

pub use json::{network_hash, ArcDoc, FlowDoc, JsonError, NetworkDoc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub id: ArcId,
    pub tail: VertexId,
    pub head: VertexId,
    pub cap: QuadValue,
}

/// Unvalidated network description. Call [`validate_network`] to obtain a
/// [`Network`].
#[derive(Debug, Clone)]
pub struct NetworkSpec {
    pub d: u64,
    pub vertices: Vec<String>,
    pub source: VertexId,
    pub sink: VertexId,
    /// `(tail, head, capacity)`; the arc id is the position in this list.
    pub arcs: Vec<(VertexId, VertexId, QuadValue)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("nonpositive capacity at arc {0}")]
    NonPositiveCapacity(ArcId),
    #[error("arc {arc} lives in Q(sqrt({found})) but the network uses Q(sqrt({expected}))")]
    MixedDiscriminant {
        arc: ArcId,
        expected: u64,
        found: u64,
    },
    #[error("source equals sink")]
    SourceIsSink,
    #[error("self-loop at arc {0}")]
    SelfLoop(ArcId),
    #[error("arc {0} references an unknown vertex")]
    UnknownVertex(ArcId),
    #[error("source or sink is not a vertex")]
    UnknownTerminal,
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("discriminant {0} is not square-free")]
    BadDiscriminant(u64),
}

/// A validated network. Immutable once built.
#[derive(Debug, Clone)]
pub struct Network {
    d: u64,
    vertices: Vec<String>,
    arcs: Vec<Arc>,
    source: VertexId,
    sink: VertexId,
    incident: Vec<Vec<ArcId>>,
}

/// Check every network invariant, reporting all violations.
pub fn validate_network(spec: &NetworkSpec) -> Result<Network, Vec<Violation>> {
    let mut out = Vec::new();
    let nv = spec.vertices.len();
    if !crate::exactfield::is_square_free(spec.d) {
        out.push(Violation::BadDiscriminant(spec.d));
    }
    let mut seen = std::collections::HashSet::new();
    for label in &spec.vertices {
        if !seen.insert(label) {
            out.push(Violation::DuplicateLabel(label.clone()));
        }
    }
    if spec.source.0 >= nv || spec.sink.0 >= nv {
        out.push(Violation::UnknownTerminal);
    } else if spec.source == spec.sink {
        out.push(Violation::SourceIsSink);
    }
    for (i, (tail, head, cap)) in spec.arcs.iter().enumerate() {
        let id = ArcId(i);
        if tail.0 >= nv || head.0 >= nv {
            out.push(Violation::UnknownVertex(id));
        } else if tail == head {
            out.push(Violation::SelfLoop(id));
        }
        if cap.d() != spec.d {
            out.push(Violation::MixedDiscriminant {
                arc: id,
                expected: spec.d,
                found: cap.d(),
            });
        } else if !cap.is_positive() {
            out.push(Violation::NonPositiveCapacity(id));
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    let arcs: Vec<Arc> = spec
        .arcs
        .iter()
        .enumerate()
        .map(|(i, (tail, head, cap))| Arc {
            id: ArcId(i),
            tail: *tail,
            head: *head,
            cap: cap.clone(),
        })
        .collect();
    let mut incident = vec![Vec::new(); nv];
    for a in &arcs {
        incident[a.tail.0].push(a.id);
        incident[a.head.0].push(a.id);
    }
    Ok(Network {
        d: spec.d,
        vertices: spec.vertices.clone(),
        arcs,
        source: spec.source,
        sink: spec.sink,
        incident,
    })
}

impl Network {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.vertices.iter().position(|l| l == label).map(VertexId)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id.0]
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    /// Arcs with `v` as tail or head, by ascending id.
    pub fn incident(&self, v: VertexId) -> &[ArcId] {
        &self.incident[v.0]
    }

    pub fn zero(&self) -> QuadValue {
        QuadValue::zero(self.d)
    }

    pub fn to_spec(&self) -> NetworkSpec {
        NetworkSpec {
            d: self.d,
            vertices: self.vertices.clone(),
            source: self.source,
            sink: self.sink,
            arcs: self
                .arcs
                .iter()
                .map(|a| (a.tail, a.head, a.cap.clone()))
                .collect(),
        }
    }
}

/// Per-arc flow values, indexed by arc id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    values: Vec<QuadValue>,
}

impl Flow {
    pub fn zero(n: &Network) -> Self {
        Flow {
            values: vec![n.zero(); n.arc_count()],
        }
    }

    pub fn from_values(values: Vec<QuadValue>) -> Self {
        Flow { values }
    }

    pub fn get(&self, id: ArcId) -> &QuadValue {
        &self.values[id.0]
    }

    pub fn set(&mut self, id: ArcId, v: QuadValue) {
        self.values[id.0] = v;
    }

    pub fn values(&self) -> &[QuadValue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowViolation {
    #[error("flow has {found} entries, network has {expected} arcs")]
    Arity { expected: usize, found: usize },
    #[error("flow value at arc {0} is in the wrong field")]
    Field(ArcId),
    #[error("negative flow at arc {arc}: {value}")]
    Negative { arc: ArcId, value: QuadValue },
    #[error("capacity exceeded at arc {arc}: {value} > {cap}")]
    CapacityExceeded {
        arc: ArcId,
        value: QuadValue,
        cap: QuadValue,
    },
    #[error("conservation violated at vertex {vertex}: net inflow {net}")]
    Conservation { vertex: String, net: QuadValue },
}

/// Check capacity bounds and conservation, reporting every violation.
pub fn validate_flow(n: &Network, f: &Flow) -> Result<(), Vec<FlowViolation>> {
    if f.len() != n.arc_count() {
        return Err(vec![FlowViolation::Arity {
            expected: n.arc_count(),
            found: f.len(),
        }]);
    }
    let mut out = Vec::new();
    let field_ok: Vec<bool> = f.values.iter().map(|v| v.d() == n.d).collect();
    for a in n.arcs() {
        let v = f.get(a.id);
        if !field_ok[a.id.0] {
            out.push(FlowViolation::Field(a.id));
            continue;
        }
        if v.is_negative() {
            out.push(FlowViolation::Negative {
                arc: a.id,
                value: v.clone(),
            });
        }
        if v > &a.cap {
            out.push(FlowViolation::CapacityExceeded {
                arc: a.id,
                value: v.clone(),
                cap: a.cap.clone(),
            });
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    for (i, label) in n.vertices.iter().enumerate() {
        let v = VertexId(i);
        if v == n.source || v == n.sink {
            continue;
        }
        let net = net_inflow(n, f, v);
        if !net.is_zero() {
            out.push(FlowViolation::Conservation {
                vertex: label.clone(),
                net,
            });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn net_inflow(n: &Network, f: &Flow, v: VertexId) -> QuadValue {
    let mut net = n.zero();
    for &id in n.incident(v) {
        let a = n.arc(id);
        if a.head == v {
            net = &net + f.get(id);
        }
        if a.tail == v {
            net = &net - f.get(id);
        }
    }
    net
}

/// Net flow out of the source.
pub fn flow_value(n: &Network, f: &Flow) -> QuadValue {
    -net_inflow(n, f, n.source)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

/// A traversal of an arc in the residual graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualEdge {
    pub arc: ArcId,
    pub dir: Direction,
    pub residual: QuadValue,
}

impl ResidualEdge {
    pub fn from_vertex(&self, n: &Network) -> VertexId {
        let a = n.arc(self.arc);
        match self.dir {
            Direction::Forward => a.tail,
            Direction::Backward => a.head,
        }
    }

    pub fn to_vertex(&self, n: &Network) -> VertexId {
        let a = n.arc(self.arc);
        match self.dir {
            Direction::Forward => a.head,
            Direction::Backward => a.tail,
        }
    }
}

/// Residual capacity of traversing `arc` in direction `dir`.
pub fn residual(n: &Network, f: &Flow, arc: ArcId, dir: Direction) -> QuadValue {
    match dir {
        Direction::Forward => &n.arc(arc).cap - f.get(arc),
        Direction::Backward => f.get(arc).clone(),
    }
}

/// Residual edges leaving `v` with positive residual, ordered by arc id
/// (forward before backward for the same arc).
pub fn residual_edges_from(n: &Network, f: &Flow, v: VertexId) -> Vec<ResidualEdge> {
    let mut out = Vec::new();
    for &id in n.incident(v) {
        let a = n.arc(id);
        for (dir, leaves) in [(Direction::Forward, a.tail), (Direction::Backward, a.head)] {
            if leaves != v {
                continue;
            }
            let r = residual(n, f, id, dir);
            if r.is_positive() {
                out.push(ResidualEdge {
                    arc: id,
                    dir,
                    residual: r,
                });
            }
        }
    }
    out
}

/// An s-t path in the residual graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugPath {
    pub edges: Vec<ResidualEdge>,
}

impl AugPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Visited vertices, starting with the tail of the first traversal.
    pub fn vertices(&self, n: &Network) -> Vec<VertexId> {
        let mut vs = Vec::with_capacity(self.edges.len() + 1);
        if let Some(e) = self.edges.first() {
            vs.push(e.from_vertex(n));
        }
        vs.extend(self.edges.iter().map(|e| e.to_vertex(n)));
        vs
    }

    pub fn template(&self) -> PathTemplate {
        PathTemplate(self.edges.iter().map(|e| (e.arc, e.dir)).collect())
    }
}

/// A fixed arc/direction sequence, instantiated against a flow to get an
/// [`AugPath`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathTemplate(pub Vec<(ArcId, Direction)>);

impl PathTemplate {
    pub fn instantiate(&self, n: &Network, f: &Flow) -> Result<AugPath, FlowError> {
        let mut edges = Vec::with_capacity(self.0.len());
        for &(arc, dir) in &self.0 {
            if arc.0 >= n.arc_count() {
                return Err(FlowError::UnknownArc(arc));
            }
            edges.push(ResidualEdge {
                arc,
                dir,
                residual: residual(n, f, arc, dir),
            });
        }
        let p = AugPath { edges };
        check_path_shape(n, &p)?;
        for e in &p.edges {
            if !e.residual.is_positive() {
                return Err(FlowError::Stale {
                    arc: e.arc,
                    dir: e.dir,
                });
            }
        }
        Ok(p)
    }

    /// `+1` per forward use, `-1` per backward use, for every arc.
    pub fn incidence(&self, arc_count: usize) -> Vec<i64> {
        let mut y = vec![0; arc_count];
        for &(arc, dir) in &self.0 {
            y[arc.0] += dir.sign();
        }
        y
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("empty augmenting path")]
    EmptyPath,
    #[error("arc {0} does not exist")]
    UnknownArc(ArcId),
    #[error("path does not start at the source")]
    WrongStart,
    #[error("path does not end at the sink")]
    WrongEnd,
    #[error("path is disconnected before traversal {0}")]
    Disconnected(usize),
    #[error("path revisits vertex {0}")]
    RepeatedVertex(String),
    #[error("stale path: no residual on arc {arc} ({dir:?})")]
    Stale { arc: ArcId, dir: Direction },
    #[error("flow is invalid for this network: {0}")]
    InvalidFlow(String),
}

fn check_path_shape(n: &Network, p: &AugPath) -> Result<(), FlowError> {
    let first = p.edges.first().ok_or(FlowError::EmptyPath)?;
    if first.from_vertex(n) != n.source {
        return Err(FlowError::WrongStart);
    }
    for (i, w) in p.edges.windows(2).enumerate() {
        if w[0].to_vertex(n) != w[1].from_vertex(n) {
            return Err(FlowError::Disconnected(i + 1));
        }
    }
    if p.edges.last().unwrap().to_vertex(n) != n.sink {
        return Err(FlowError::WrongEnd);
    }
    let mut seen = vec![false; n.vertex_count()];
    for v in p.vertices(n) {
        if std::mem::replace(&mut seen[v.0], true) {
            return Err(FlowError::RepeatedVertex(n.label(v).to_string()));
        }
    }
    Ok(())
}

/// Push the bottleneck along `p`. Residuals are recomputed from `f`; a path
/// with a non-positive residual is rejected and `f` is left untouched.
pub fn push(n: &Network, f: &Flow, p: &AugPath) -> Result<(Flow, QuadValue), FlowError> {
    if f.len() != n.arc_count() {
        return Err(FlowError::InvalidFlow("arity mismatch".into()));
    }
    for e in &p.edges {
        if e.arc.0 >= n.arc_count() {
            return Err(FlowError::UnknownArc(e.arc));
        }
    }
    check_path_shape(n, p)?;
    let mut bottleneck: Option<QuadValue> = None;
    for e in &p.edges {
        let r = residual(n, f, e.arc, e.dir);
        if !r.is_positive() {
            return Err(FlowError::Stale {
                arc: e.arc,
                dir: e.dir,
            });
        }
        bottleneck = Some(match bottleneck {
            Some(b) if b <= r => b,
            _ => r,
        });
    }
    let amount = bottleneck.expect("non-empty path");
    Ok((
        apply_path(f, p.edges.iter().map(|e| (e.arc, e.dir)), &amount),
        amount,
    ))
}

/// Add `amount` along a sequence of traversals without any checks.
pub(crate) fn apply_path(
    f: &Flow,
    steps: impl IntoIterator<Item = (ArcId, Direction)>,
    amount: &QuadValue,
) -> Flow {
    let mut g = f.clone();
    for (arc, dir) in steps {
        let v = match dir {
            Direction::Forward => g.get(arc) + amount,
            Direction::Backward => g.get(arc) - amount,
        };
        g.set(arc, v);
    }
    g
}

/// A shortest augmenting path (fewest edges), expanding residual edges by
/// ascending arc id. `None` iff `f` is maximum.
pub fn find_augmenting_path_bfs(n: &Network, f: &Flow) -> Option<AugPath> {
    let mut parent: Vec<Option<ResidualEdge>> = vec![None; n.vertex_count()];
    let mut seen = vec![false; n.vertex_count()];
    let mut queue = VecDeque::new();
    seen[n.source.0] = true;
    queue.push_back(n.source);
    while let Some(v) = queue.pop_front() {
        if v == n.sink {
            break;
        }
        for e in residual_edges_from(n, f, v) {
            let w = e.to_vertex(n);
            if !seen[w.0] {
                seen[w.0] = true;
                parent[w.0] = Some(e);
                queue.push_back(w);
            }
        }
    }
    if !seen[n.sink.0] {
        return None;
    }
    let mut edges = Vec::new();
    let mut v = n.sink;
    while v != n.source {
        let e = parent[v.0].clone().expect("BFS tree edge");
        v = e.from_vertex(n);
        edges.push(e);
    }
    edges.reverse();
    Some(AugPath { edges })
}

/// Vertices reachable from the source in the residual graph of `f`.
pub fn residual_reachable(n: &Network, f: &Flow) -> Vec<bool> {
    let mut seen = vec![false; n.vertex_count()];
    let mut stack = vec![n.source];
    seen[n.source.0] = true;
    while let Some(v) = stack.pop() {
        for e in residual_edges_from(n, f, v) {
            let w = e.to_vertex(n);
            if !seen[w.0] {
                seen[w.0] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Augment along shortest paths until none is left. Returns the maximum flow
/// and the number of augmentations.
pub fn edmonds_karp(n: &Network, f0: &Flow) -> (Flow, usize) {
    let mut f = f0.clone();
    let mut steps = 0;
    while let Some(p) = find_augmenting_path_bfs(n, &f) {
        f = push(n, &f, &p).expect("BFS path is augmenting").0;
        steps += 1;
    }
    (f, steps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremeKind {
    Zero,
    Saturated,
}

/// Arcs carrying zero flow or flow equal to capacity.
pub fn extreme_arcs(n: &Network, f: &Flow) -> Vec<(ArcId, ExtremeKind)> {
    n.arcs()
        .iter()
        .filter_map(|a| {
            let v = f.get(a.id);
            if v.is_zero() {
                Some((a.id, ExtremeKind::Zero))
            } else if v == &a.cap {
                Some((a.id, ExtremeKind::Saturated))
            } else {
                None
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCut {
    pub source_side: Vec<VertexId>,
    pub arcs: Vec<ArcId>,
    pub value: QuadValue,
}

/// Minimum s-t cut read off the residual graph of an Edmonds-Karp maximum
/// flow.
pub fn min_cut(n: &Network) -> MinCut {
    let (f, _) = edmonds_karp(n, &Flow::zero(n));
    let side = residual_reachable(n, &f);
    let arcs: Vec<ArcId> = n
        .arcs()
        .iter()
        .filter(|a| side[a.tail.0] && !side[a.head.0])
        .map(|a| a.id)
        .collect();
    let value = arcs.iter().fold(n.zero(), |acc, id| &acc + &n.arc(*id).cap);
    MinCut {
        source_side: (0..n.vertex_count())
            .filter(|&i| side[i])
            .map(VertexId)
            .collect(),
        arcs,
        value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_arc(cap: i64) -> Network {
        validate_network(&NetworkSpec {
            d: 5,
            vertices: vec!["s".into(), "t".into()],
            source: VertexId(0),
            sink: VertexId(1),
            arcs: vec![(VertexId(0), VertexId(1), QuadValue::int(cap, 5))],
        })
        .unwrap()
    }

    fn parallel(caps: &[i64]) -> Network {
        validate_network(&NetworkSpec {
            d: 5,
            vertices: vec!["s".into(), "t".into()],
            source: VertexId(0),
            sink: VertexId(1),
            arcs: caps
                .iter()
                .map(|&c| (VertexId(0), VertexId(1), QuadValue::int(c, 5)))
                .collect(),
        })
        .unwrap()
    }

    #[test]
    fn validation_reports_every_violation() {
        let spec = NetworkSpec {
            d: 5,
            vertices: vec!["s".into(), "a".into(), "t".into()],
            source: VertexId(0),
            sink: VertexId(2),
            arcs: vec![
                (VertexId(0), VertexId(1), QuadValue::zero(5)),
                (VertexId(1), VertexId(2), QuadValue::one(2)),
                (VertexId(1), VertexId(1), QuadValue::one(5)),
                (VertexId(1), VertexId(2), QuadValue::int(-1, 5)),
            ],
        };
        let errs = validate_network(&spec).unwrap_err();
        assert_eq!(errs.len(), 4);
        assert_eq!(errs[0].to_string(), "nonpositive capacity at arc 0");
        assert!(matches!(
            errs[1],
            Violation::MixedDiscriminant { found: 2, .. }
        ));
        assert_eq!(errs[2], Violation::SelfLoop(ArcId(2)));
        assert_eq!(errs[3], Violation::NonPositiveCapacity(ArcId(3)));

        let mut same = spec.clone();
        same.arcs.clear();
        same.sink = VertexId(0);
        assert_eq!(
            validate_network(&same).unwrap_err(),
            vec![Violation::SourceIsSink]
        );
    }

    #[test]
    fn single_arc_basics() {
        let n = single_arc(5);
        let f = Flow::zero(&n);
        assert!(flow_value(&n, &f).is_zero());
        let p = find_augmenting_path_bfs(&n, &f).unwrap();
        assert_eq!(p.len(), 1);
        let (g, b) = push(&n, &f, &p).unwrap();
        assert_eq!(b, QuadValue::int(5, 5));
        assert_eq!(flow_value(&n, &g), QuadValue::int(5, 5));
        assert!(find_augmenting_path_bfs(&n, &g).is_none());
        assert_eq!(
            extreme_arcs(&n, &g),
            vec![(ArcId(0), ExtremeKind::Saturated)]
        );
        assert_eq!(extreme_arcs(&n, &f), vec![(ArcId(0), ExtremeKind::Zero)]);
        // Replaying the now-stale path is rejected.
        assert_eq!(
            push(&n, &g, &p),
            Err(FlowError::Stale {
                arc: ArcId(0),
                dir: Direction::Forward
            })
        );
    }

    #[test]
    fn min_cut_examples() {
        assert_eq!(min_cut(&single_arc(5)).value, QuadValue::int(5, 5));
        let two = min_cut(&parallel(&[2, 3]));
        assert_eq!(two.value, QuadValue::int(5, 5));
        assert_eq!(two.arcs, vec![ArcId(0), ArcId(1)]);
    }

    #[test]
    fn bfs_prefers_smaller_arc_ids() {
        let n = parallel(&[2, 3]);
        let p = find_augmenting_path_bfs(&n, &Flow::zero(&n)).unwrap();
        assert_eq!(p.edges[0].arc, ArcId(0));
    }

    #[test]
    fn malformed_paths_are_rejected() {
        let n = single_arc(5);
        let f = Flow::zero(&n);
        assert_eq!(
            push(&n, &f, &AugPath { edges: vec![] }),
            Err(FlowError::EmptyPath)
        );
        let back = PathTemplate(vec![(ArcId(0), Direction::Backward)]);
        assert_eq!(back.instantiate(&n, &f), Err(FlowError::WrongStart));
        let bogus = PathTemplate(vec![(ArcId(7), Direction::Forward)]);
        assert_eq!(
            bogus.instantiate(&n, &f),
            Err(FlowError::UnknownArc(ArcId(7)))
        );
    }

    #[test]
    fn flow_validation_names_the_problem() {
        let n = single_arc(5);
        let bad = Flow::from_values(vec![QuadValue::int(6, 5)]);
        let errs = validate_flow(&n, &bad).unwrap_err();
        assert!(errs[0]
            .to_string()
            .starts_with("capacity exceeded at arc 0"));
        let neg = Flow::from_values(vec![QuadValue::int(-1, 5)]);
        assert!(matches!(
            validate_flow(&n, &neg).unwrap_err()[0],
            FlowViolation::Negative { .. }
        ));
    }
}
