//! Standalone checker for flows and traces.
//!
//! Nothing here calls the engine or the flow primitives: residuals, pushes,
//! reachability and extreme-arc counts are recomputed from the raw arc list
//! so that a bug in the engine cannot vouch for itself.

use std::collections::VecDeque;

use super::CliError;
use crate::engine::{EventKind, RunReportDoc, TraceEvent};
use crate::exactfield::QuadValue;
use crate::flownet::{network_hash, Direction, FlowDoc, Network, NetworkDoc};
use crate::ordinals::Ordinal;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub notes: Vec<String>,
    pub violations: Vec<String>,
}

impl VerifyOutcome {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Raw view of a network: tails, heads, capacities.
struct Raw {
    tails: Vec<usize>,
    heads: Vec<usize>,
    caps: Vec<QuadValue>,
    vertices: usize,
    source: usize,
    sink: usize,
    d: u64,
}

impl Raw {
    fn new(n: &Network) -> Self {
        Raw {
            tails: n.arcs().iter().map(|a| a.tail.0).collect(),
            heads: n.arcs().iter().map(|a| a.head.0).collect(),
            caps: n.arcs().iter().map(|a| a.cap.clone()).collect(),
            vertices: n.vertex_count(),
            source: n.source().0,
            sink: n.sink().0,
            d: n.d(),
        }
    }

    fn zero(&self) -> QuadValue {
        QuadValue::zero(self.d)
    }

    fn decode(
        &self,
        map: &std::collections::BTreeMap<usize, String>,
    ) -> Result<Vec<QuadValue>, String> {
        let mut out = vec![self.zero(); self.caps.len()];
        for (&id, text) in map {
            let slot = out.get_mut(id).ok_or_else(|| format!("unknown arc {id}"))?;
            *slot = QuadValue::parse(text, self.d).map_err(|e| format!("arc {id}: {e}"))?;
        }
        Ok(out)
    }

    /// Capacity and conservation violations of `f`.
    fn check(&self, f: &[QuadValue]) -> Vec<String> {
        let mut out = Vec::new();
        let zero = self.zero();
        for (i, v) in f.iter().enumerate() {
            if v < &zero || v > &self.caps[i] {
                out.push(format!(
                    "capacity exceeded at arc {i}: flow {v}, capacity {}",
                    self.caps[i]
                ));
            }
        }
        let mut excess = vec![self.zero(); self.vertices];
        for (i, v) in f.iter().enumerate() {
            excess[self.heads[i]] = &excess[self.heads[i]] + v;
            excess[self.tails[i]] = &excess[self.tails[i]] - v;
        }
        for (v, e) in excess.iter().enumerate() {
            if v != self.source && v != self.sink && !e.is_zero() {
                out.push(format!(
                    "conservation violated at vertex {v}: net inflow {e}"
                ));
            }
        }
        out
    }

    fn value(&self, f: &[QuadValue]) -> QuadValue {
        let mut total = self.zero();
        for (i, v) in f.iter().enumerate() {
            if self.tails[i] == self.source {
                total = &total + v;
            }
            if self.heads[i] == self.source {
                total = &total - v;
            }
        }
        total
    }

    fn residual(&self, f: &[QuadValue], arc: usize, dir: Direction) -> QuadValue {
        match dir {
            Direction::Forward => &self.caps[arc] - &f[arc],
            Direction::Backward => f[arc].clone(),
        }
    }

    fn sink_reachable(&self, f: &[QuadValue]) -> bool {
        let mut seen = vec![false; self.vertices];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(v) = queue.pop_front() {
            for arc in 0..self.caps.len() {
                let step = if self.tails[arc] == v
                    && !self.residual(f, arc, Direction::Forward).is_zero()
                {
                    Some(self.heads[arc])
                } else if self.heads[arc] == v && !f[arc].is_zero() {
                    Some(self.tails[arc])
                } else {
                    None
                };
                if let Some(w) = step {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        seen[self.sink]
    }

    fn extreme_count(&self, f: &[QuadValue]) -> usize {
        f.iter()
            .zip(&self.caps)
            .filter(|(v, c)| v.is_zero() || v == c)
            .count()
    }
}

fn load_network(text: &str) -> Result<Network, CliError> {
    Ok(NetworkDoc::parse(text)?)
}

/// Check a flow document against a network document.
pub fn verify_flow_text(network_text: &str, flow_text: &str) -> Result<VerifyOutcome, CliError> {
    let n = load_network(network_text)?;
    let raw = Raw::new(&n);
    let doc: FlowDoc =
        serde_json::from_str(flow_text).map_err(|e| CliError::Parse(e.to_string()))?;
    let mut out = VerifyOutcome::default();
    if doc.network_hash != network_hash(&n) {
        out.violations
            .push("flow was written for a different network".into());
        return Ok(out);
    }
    let f = raw.decode(&doc.values).map_err(CliError::Parse)?;
    out.violations = raw.check(&f);
    if out.ok() {
        out.notes
            .push(format!("feasible flow of value {}", raw.value(&f)));
        out.notes.push(if raw.sink_reachable(&f) {
            "an augmenting path remains".into()
        } else {
            "no augmenting path remains: the flow is maximum".into()
        });
    }
    Ok(out)
}

/// Replay a JSONL trace against a network, optionally cross-checking a run
/// report.
pub fn verify_trace_text(
    network_text: &str,
    trace_text: &str,
    report_text: Option<&str>,
) -> Result<VerifyOutcome, CliError> {
    let n = load_network(network_text)?;
    let mut events = Vec::new();
    for (i, line) in trace_text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let e: TraceEvent = serde_json::from_str(line)
            .map_err(|e| CliError::Parse(format!("trace line {}: {e}", i + 1)))?;
        events.push(e);
    }
    let report = report_text
        .map(|t| {
            serde_json::from_str::<RunReportDoc>(t)
                .map_err(|e| CliError::Parse(format!("report: {e}")))
        })
        .transpose()?;
    let mut replay = Replay::new(&n);
    replay.run(&events);
    if let Some(r) = &report {
        replay.compare(r);
    }
    Ok(replay.out)
}

struct Replay<'a> {
    n: &'a Network,
    raw: Raw,
    flow: Option<Vec<QuadValue>>,
    clock: Ordinal,
    last_clock: Ordinal,
    steps: usize,
    jumps: usize,
    halted: Option<String>,
    monitors: Vec<(String, Ordinal, bool)>,
    out: VerifyOutcome,
}

impl<'a> Replay<'a> {
    fn new(n: &'a Network) -> Self {
        Replay {
            n,
            raw: Raw::new(n),
            flow: None,
            clock: Ordinal::zero(),
            last_clock: Ordinal::zero(),
            steps: 0,
            jumps: 0,
            halted: None,
            monitors: Vec::new(),
            out: VerifyOutcome::default(),
        }
    }

    fn fail(&mut self, line: usize, msg: impl std::fmt::Display) {
        self.out.violations.push(format!("event {line}: {msg}"));
    }

    fn run(&mut self, events: &[TraceEvent]) {
        for (i, e) in events.iter().enumerate() {
            let line = i + 1;
            if self.halted.is_some() {
                self.fail(line, "event after halt");
                break;
            }
            if e.clock < self.last_clock {
                self.fail(
                    line,
                    format!("non-monotone clock: {} after {}", e.clock, self.last_clock),
                );
            }
            if e.kind.changes_state() && e.clock <= self.clock && self.flow.is_some() {
                self.fail(
                    line,
                    format!(
                        "non-monotone clock: state change at {} after {}",
                        e.clock, self.clock
                    ),
                );
            }
            self.last_clock = e.clock.clone();
            self.event(line, e);
        }
        if self.halted.is_none() {
            self.out.violations.push("trace has no halt event".into());
        }
        if self.out.ok() {
            self.out.notes.push(format!(
                "{} augmentations and {} limit jumps replayed, final clock {}",
                self.steps, self.jumps, self.clock
            ));
        }
    }

    fn event(&mut self, line: usize, e: &TraceEvent) {
        if self.flow.is_none() && !matches!(e.kind, EventKind::Start { .. }) {
            self.fail(line, "trace must open with a start event");
            self.flow = Some(vec![self.raw.zero(); self.raw.caps.len()]);
        }
        match &e.kind {
            EventKind::Start {
                network_hash: h,
                flow,
                ..
            } => {
                if self.flow.is_some() {
                    self.fail(line, "second start event");
                }
                if h != &network_hash(self.n) {
                    self.fail(line, "trace was written for a different network");
                }
                if !e.clock.is_zero() {
                    self.fail(line, "start event must be at clock 0");
                }
                match self.raw.decode(flow) {
                    Ok(f) => {
                        for v in self.raw.check(&f) {
                            self.fail(line, v);
                        }
                        self.flow = Some(f);
                    }
                    Err(msg) => {
                        self.fail(line, msg);
                        self.flow = Some(vec![self.raw.zero(); self.raw.caps.len()]);
                    }
                }
            }
            EventKind::Augment { edges, bottleneck } => {
                self.augment(line, &e.clock, edges, bottleneck)
            }
            EventKind::LimitJump {
                depth,
                value,
                limit,
                ..
            } => self.limit(line, &e.clock, *depth, value, limit),
            EventKind::Monitor { name, pass, .. } => self.monitor(line, &e.clock, name, *pass),
            EventKind::Halt { reason } => {
                let f = self.flow.clone().unwrap_or_default();
                let open = self.raw.sink_reachable(&f);
                if reason == "terminated" && open {
                    self.fail(
                        line,
                        "halt claims termination but an augmenting path remains",
                    );
                }
                if reason != "terminated" && !open && reason != "stopped" {
                    self.out
                        .notes
                        .push(format!("halt '{reason}' with no augmenting path left"));
                }
                if e.clock != self.clock {
                    self.fail(
                        line,
                        format!(
                            "halt clock {} differs from replayed clock {}",
                            e.clock, self.clock
                        ),
                    );
                }
                self.halted = Some(reason.clone());
            }
        }
    }

    fn augment(
        &mut self,
        line: usize,
        clock: &Ordinal,
        edges: &[crate::engine::EdgeStep],
        bottleneck: &str,
    ) {
        let expected = self.clock.successor();
        if clock != &expected {
            self.fail(
                line,
                format!("augmentation clock {clock}, expected {expected}"),
            );
        }
        let mut f = self.flow.take().expect("start handled");
        let arcs = self.raw.caps.len();
        let mut at = self.raw.source;
        let mut visited = vec![at];
        let mut width: Option<QuadValue> = None;
        for step in edges {
            if step.arc >= arcs {
                self.fail(line, format!("unknown arc {}", step.arc));
                self.flow = Some(f);
                return;
            }
            let (from, to) = match step.dir {
                Direction::Forward => (self.raw.tails[step.arc], self.raw.heads[step.arc]),
                Direction::Backward => (self.raw.heads[step.arc], self.raw.tails[step.arc]),
            };
            if from != at {
                self.fail(line, format!("path is not contiguous at arc {}", step.arc));
            }
            if visited.contains(&to) {
                self.fail(line, format!("path revisits vertex {to}"));
            }
            visited.push(to);
            at = to;
            let r = self.raw.residual(&f, step.arc, step.dir);
            if r.is_zero() {
                self.fail(
                    line,
                    format!(
                        "arc {} has no residual capacity in that direction",
                        step.arc
                    ),
                );
            }
            width = Some(match width {
                Some(w) if w <= r => w,
                _ => r,
            });
        }
        if at != self.raw.sink || edges.is_empty() {
            self.fail(line, "path does not end at the sink");
        }
        let width = width.unwrap_or_else(|| self.raw.zero());
        match QuadValue::parse(bottleneck, self.raw.d) {
            Ok(b) if b == width => {}
            Ok(b) => self.fail(
                line,
                format!("bottleneck {b} differs from minimum residual {width}"),
            ),
            Err(e) => self.fail(line, format!("bottleneck: {e}")),
        }
        for step in edges.iter().filter(|s| s.arc < arcs) {
            f[step.arc] = match step.dir {
                Direction::Forward => &f[step.arc] + &width,
                Direction::Backward => &f[step.arc] - &width,
            };
        }
        for v in self.raw.check(&f) {
            self.fail(line, v);
        }
        self.flow = Some(f);
        self.clock = expected;
        self.steps += 1;
    }

    fn limit(
        &mut self,
        line: usize,
        clock: &Ordinal,
        depth: u32,
        value: &str,
        limit: &std::collections::BTreeMap<usize, String>,
    ) {
        if depth == 0 {
            self.fail(line, "limit jump of depth 0");
        }
        let expected = self.clock.add(&Ordinal::omega_pow(depth));
        if clock != &expected {
            self.fail(line, format!("limit clock {clock}, expected {expected}"));
        }
        let before = self.raw.value(self.flow.as_deref().unwrap_or_default());
        match self.raw.decode(limit) {
            Ok(f) => {
                for v in self.raw.check(&f) {
                    self.fail(line, v);
                }
                let after = self.raw.value(&f);
                if after < before {
                    self.fail(
                        line,
                        format!("limit value {after} is below the value {before} before the jump"),
                    );
                }
                match QuadValue::parse(value, self.raw.d) {
                    Ok(v) if v == after => {}
                    _ => self.fail(
                        line,
                        format!("declared value {value} differs from limit value {after}"),
                    ),
                }
                self.flow = Some(f);
            }
            Err(msg) => self.fail(line, msg),
        }
        self.clock = expected;
        self.jumps += 1;
    }

    fn monitor(&mut self, line: usize, clock: &Ordinal, name: &str, pass: bool) {
        self.monitors.push((name.to_string(), clock.clone(), pass));
        let f = self.flow.clone().unwrap_or_default();
        let recomputed = match name {
            "extreme_arcs" => match clock.is_omega_power() {
                Some(k) => {
                    Some(!self.raw.sink_reachable(&f) || self.raw.extreme_count(&f) > k as usize)
                }
                None => {
                    self.fail(
                        line,
                        format!("extreme_arcs monitor at {clock}, which is not a power of ω"),
                    );
                    None
                }
            },
            "clock_bound" => Some(clock < &Ordinal::omega_pow(self.raw.caps.len() as u32)),
            _ => None,
        };
        if let Some(expected) = recomputed {
            if expected != pass {
                self.fail(
                    line,
                    format!("monitor {name} reports pass={pass}, recomputed {expected}"),
                );
            }
        }
        if !pass {
            self.out
                .notes
                .push(format!("monitor {name} failed at {clock}"));
        }
    }

    fn compare(&mut self, r: &RunReportDoc) {
        let mut bad = Vec::new();
        if r.network_hash != network_hash(self.n) {
            bad.push("report network hash".to_string());
        }
        if r.final_clock != self.clock {
            bad.push(format!(
                "final clock {} vs replayed {}",
                r.final_clock, self.clock
            ));
        }
        if r.steps != self.steps || r.jumps != self.jumps {
            bad.push(format!(
                "counts {}/{} vs replayed {}/{}",
                r.steps, r.jumps, self.steps, self.jumps
            ));
        }
        if Some(&r.halt) != self.halted.as_ref() {
            bad.push(format!("halt '{}' vs trace {:?}", r.halt, self.halted));
        }
        let f = self.flow.clone().unwrap_or_default();
        match self.raw.decode(&r.final_flow) {
            Ok(rf) if rf == f => {}
            _ => bad.push("final flow differs from the replayed flow".into()),
        }
        if QuadValue::parse(&r.final_value, self.raw.d).ok() != Some(self.raw.value(&f)) {
            bad.push(format!(
                "final value {} differs from the replayed value",
                r.final_value
            ));
        }
        let listed: Vec<(String, Ordinal, bool)> = r
            .monitors
            .iter()
            .map(|m| (m.name.clone(), m.clock.clone(), m.pass))
            .collect();
        if listed != self.monitors {
            bad.push("monitor list differs from the monitor events in the trace".into());
        }
        if bad.is_empty() {
            self.out
                .notes
                .push("report agrees with the replayed trace".into());
        }
        for b in bad {
            self.out.violations.push(format!("report mismatch: {b}"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{euclidean_network, EuclidMode, EuclideanStrategy};
    use crate::engine::{run, RunOptions, ShortestPath};
    use crate::flownet::Flow;

    fn fixture() -> (Network, String) {
        let a = QuadValue::parse("1/2 + 1/2*sqrt(5)", 5).unwrap();
        let b = QuadValue::one(5);
        let (n, _) = euclidean_network(&a, &b).unwrap();
        let text = serde_json::to_string(&NetworkDoc::from_network(&n)).unwrap();
        (n, text)
    }

    #[test]
    fn engine_traces_replay_cleanly() {
        let (n, text) = fixture();
        let a = QuadValue::parse("1/2 + 1/2*sqrt(5)", 5).unwrap();
        let (_, g) = euclidean_network(&a, &QuadValue::one(5)).unwrap();
        let mut s = EuclideanStrategy::new(g, EuclidMode::Certified).with_finish(true);
        let r = run(&n, &Flow::zero(&n), &mut s, &RunOptions::default()).unwrap();
        let report = serde_json::to_string(&r.to_doc()).unwrap();
        let out = verify_trace_text(&text, &r.trace_jsonl(), Some(&report)).unwrap();
        assert!(out.ok(), "{:?}", out.violations);
        assert!(r.jumps >= 1);
    }

    #[test]
    fn forged_bottleneck_and_clock_are_caught() {
        let (n, text) = fixture();
        let r = run(
            &n,
            &Flow::zero(&n),
            &mut ShortestPath,
            &RunOptions::default(),
        )
        .unwrap();
        let mut events = r.trace.clone();
        if let EventKind::Augment { bottleneck, .. } = &mut events[1].kind {
            *bottleneck = "1/1000".into();
        }
        events[2].clock = Ordinal::zero();
        let jsonl: String = events
            .iter()
            .map(|e| serde_json::to_string(e).unwrap() + "\n")
            .collect();
        let out = verify_trace_text(&text, &jsonl, None).unwrap();
        assert!(out.violations.iter().any(|v| v.contains("bottleneck")));
        assert!(out
            .violations
            .iter()
            .any(|v| v.contains("non-monotone clock")));
    }

    #[test]
    fn tampered_flow_is_rejected() {
        let (n, text) = fixture();
        let mut f = Flow::zero(&n);
        f.set(crate::flownet::ArcId(0), QuadValue::int(1, 5));
        let doc = serde_json::to_string(&FlowDoc::from_flow(&n, &f)).unwrap();
        let out = verify_flow_text(&text, &doc).unwrap();
        assert!(out
            .violations
            .iter()
            .any(|v| v.starts_with("conservation violated at vertex")));
        f.set(crate::flownet::ArcId(0), QuadValue::int(1000, 5));
        let doc = serde_json::to_string(&FlowDoc::from_flow(&n, &f)).unwrap();
        let out = verify_flow_text(&text, &doc).unwrap();
        assert!(out
            .violations
            .iter()
            .any(|v| v.starts_with("capacity exceeded at arc 0")));
    }
}
