//! Transfinite Ford-Fulkerson executor.
//!
//! A [`Strategy`] chooses each step. Augmentations advance the clock by 1; a
//! verified [`PhaseCertificate`] of depth `m` installs its limit flow and
//! advances the clock by ω^m. The engine never infers a limit on its own.

mod certificate;
mod monitors;
mod strategies;
mod trace;

use thiserror::Error;

use crate::exactfield::QuadValue;
use crate::flownet::{
    find_augmenting_path_bfs, flow_value, network_hash, push, validate_flow, AugPath, Flow,
    FlowError, Network,
};
use crate::ordinals::Ordinal;

pub use certificate::{
    apply_limit, verify_certificate, CertificateError, GuardedBlock, PhaseCertificate,
    PhasePattern, RoundItem, VerifiedPhase, DEFAULT_PROBE_ROUNDS,
};
pub use monitors::{monitor_clock_bound, monitor_extreme_arcs, MonitorVerdict};
pub use strategies::{MaxBottleneck, SeededRandom, ShortestPath};
pub use trace::{EdgeStep, EventKind, RunReportDoc, SnapshotDoc, TraceEvent};

/// What the strategy wants to do next.
#[derive(Debug, Clone)]
pub enum Decision {
    Augment(AugPath),
    LimitPhase(Box<PhaseCertificate>),
    Stop,
}

/// Read-only view handed to strategies.
pub struct RunState<'a> {
    pub network: &'a Network,
    pub flow: &'a Flow,
    pub clock: &'a Ordinal,
}

/// A saboteur. Must be a deterministic function of the states it has seen
/// (plus any explicit seed).
pub trait Strategy {
    fn name(&self) -> String;
    fn decide(&mut self, state: &RunState<'_>) -> Result<Decision, StrategyError>;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct StrategyError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: usize,
    pub max_jumps: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_steps: 100_000,
            max_jumps: 64,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub budget: Budget,
    /// Snapshot after every augmentation, not only at limits and clock 1.
    pub debug_snapshots: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HaltReason {
    /// No augmenting path exists.
    Terminated,
    /// The strategy ended the run.
    Stopped,
    BudgetExhausted {
        steps: bool,
        jumps: bool,
    },
    Aborted(AbortReason),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbortReason {
    InvalidPath(String),
    CertificateRejected { reason: String, detail: String },
    Strategy(String),
}

impl HaltReason {
    /// Stable one-line description used in traces and reports.
    pub fn describe(&self) -> String {
        match self {
            HaltReason::Terminated => "terminated".into(),
            HaltReason::Stopped => "stopped".into(),
            HaltReason::BudgetExhausted { steps: true, .. } => "budget exhausted: steps".into(),
            HaltReason::BudgetExhausted { .. } => "budget exhausted: jumps".into(),
            HaltReason::Aborted(AbortReason::InvalidPath(d)) => format!("invalid path: {d}"),
            HaltReason::Aborted(AbortReason::CertificateRejected { reason, detail }) => {
                format!("certificate rejected ({reason}): {detail}")
            }
            HaltReason::Aborted(AbortReason::Strategy(d)) => format!("strategy error: {d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub clock: Ordinal,
    pub flow: Flow,
    pub terminated: bool,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub strategy: String,
    pub network_hash: String,
    pub arc_count: usize,
    pub initial_flow: Flow,
    pub final_flow: Flow,
    pub final_value: QuadValue,
    pub final_clock: Ordinal,
    pub terminated: bool,
    pub halt: HaltReason,
    pub steps: usize,
    pub jumps: usize,
    pub guard_checks: usize,
    pub trace: Vec<TraceEvent>,
    pub snapshots: Vec<Snapshot>,
    pub monitors: Vec<MonitorVerdict>,
}

impl RunReport {
    pub fn monitors_pass(&self) -> bool {
        self.monitors.iter().all(|m| m.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("initial flow is invalid: {0}")]
    InvalidStart(String),
}

/// Drive `strategy` on `n` from `f0` until it stops, the flow is maximum, the
/// budget runs out, or a step is rejected.
pub fn run(
    n: &Network,
    f0: &Flow,
    strategy: &mut dyn Strategy,
    opts: &RunOptions,
) -> Result<RunReport, RunError> {
    if let Err(v) = validate_flow(n, f0) {
        let msg = v
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        return Err(RunError::InvalidStart(msg));
    }
    let mut ex = Executor::new(n, f0, strategy.name(), opts.debug_snapshots);
    let halt = loop {
        if find_augmenting_path_bfs(n, &ex.flow).is_none() {
            break HaltReason::Terminated;
        }
        let state = RunState {
            network: n,
            flow: &ex.flow,
            clock: &ex.clock,
        };
        let decision = match strategy.decide(&state) {
            Ok(d) => d,
            Err(e) => break HaltReason::Aborted(AbortReason::Strategy(e.0)),
        };
        match decision {
            Decision::Stop => break HaltReason::Stopped,
            Decision::Augment(path) => {
                if ex.steps >= opts.budget.max_steps {
                    break HaltReason::BudgetExhausted {
                        steps: true,
                        jumps: false,
                    };
                }
                if let Err(e) = ex.augment(&path) {
                    break HaltReason::Aborted(AbortReason::InvalidPath(e.to_string()));
                }
            }
            Decision::LimitPhase(cert) => {
                if ex.jumps >= opts.budget.max_jumps {
                    break HaltReason::BudgetExhausted {
                        steps: false,
                        jumps: true,
                    };
                }
                if let Err(e) = ex.limit(&cert) {
                    break HaltReason::Aborted(AbortReason::CertificateRejected {
                        reason: e.reason().to_string(),
                        detail: e.to_string(),
                    });
                }
            }
        }
    };
    Ok(ex.finish(halt))
}

struct Executor<'a> {
    n: &'a Network,
    flow: Flow,
    clock: Ordinal,
    steps: usize,
    jumps: usize,
    guard_checks: usize,
    initial: Flow,
    strategy: String,
    trace: Vec<TraceEvent>,
    snapshots: Vec<Snapshot>,
    monitors: Vec<MonitorVerdict>,
    debug_snapshots: bool,
}

impl<'a> Executor<'a> {
    fn new(n: &'a Network, f0: &Flow, strategy: String, debug_snapshots: bool) -> Self {
        let mut ex = Executor {
            n,
            flow: f0.clone(),
            clock: Ordinal::zero(),
            steps: 0,
            jumps: 0,
            guard_checks: 0,
            initial: f0.clone(),
            strategy,
            trace: Vec::new(),
            snapshots: Vec::new(),
            monitors: Vec::new(),
            debug_snapshots,
        };
        ex.trace.push(TraceEvent {
            clock: Ordinal::zero(),
            kind: EventKind::Start {
                network_hash: network_hash(n),
                strategy: ex.strategy.clone(),
                flow: trace::values_map(f0),
            },
        });
        ex
    }

    fn augment(&mut self, path: &AugPath) -> Result<(), FlowError> {
        let (next, bottleneck) = push(self.n, &self.flow, path)?;
        self.flow = next;
        self.clock = self.clock.successor();
        self.steps += 1;
        self.trace.push(TraceEvent {
            clock: self.clock.clone(),
            kind: EventKind::Augment {
                edges: path
                    .edges
                    .iter()
                    .map(|e| EdgeStep {
                        arc: e.arc.0,
                        dir: e.dir,
                    })
                    .collect(),
                bottleneck: bottleneck.to_string(),
            },
        });
        if self.debug_snapshots || self.clock == Ordinal::one() {
            self.checkpoint();
        }
        Ok(())
    }

    fn limit(&mut self, cert: &PhaseCertificate) -> Result<(), CertificateError> {
        let verified = verify_certificate(self.n, &self.flow, cert)?;
        let depth = verified.depth();
        let ratio = verified.ratio().clone();
        let rounds = verified.probe_rounds();
        self.guard_checks += verified.guard_checks();
        self.flow = apply_limit(&self.flow, verified)?;
        self.clock = self.clock.add(&Ordinal::omega_pow(depth));
        self.jumps += 1;
        self.trace.push(TraceEvent {
            clock: self.clock.clone(),
            kind: EventKind::LimitJump {
                depth,
                ratio: ratio.to_string(),
                probe_rounds: rounds,
                value: flow_value(self.n, &self.flow).to_string(),
                limit: trace::values_map(&self.flow),
            },
        });
        self.checkpoint();
        Ok(())
    }

    /// Record a snapshot and run the online monitors against it.
    fn checkpoint(&mut self) {
        let terminated = find_augmenting_path_bfs(self.n, &self.flow).is_none();
        let snap = Snapshot {
            clock: self.clock.clone(),
            flow: self.flow.clone(),
            terminated,
        };
        if let Some(v) = monitors::extreme_at(self.n, &snap) {
            self.trace.push(v.event(&self.clock));
            self.monitors.push(v);
        }
        self.snapshots.push(snap);
    }

    fn finish(mut self, halt: HaltReason) -> RunReport {
        let terminated = halt == HaltReason::Terminated;
        if terminated && self.snapshots.last().map(|s| &s.clock) != Some(&self.clock) {
            self.checkpoint();
        }
        let bound = monitors::clock_bound(self.n.arc_count(), &self.clock);
        self.trace.push(bound.event(&self.clock));
        self.monitors.push(bound);
        if self.guard_checks > 0 {
            let v = MonitorVerdict {
                name: "recharge_guards".into(),
                clock: self.clock.clone(),
                pass: true,
                details: format!("{} guarded blocks held during probing", self.guard_checks),
            };
            self.trace.push(v.event(&self.clock));
            self.monitors.push(v);
        }
        self.trace.push(TraceEvent {
            clock: self.clock.clone(),
            kind: EventKind::Halt {
                reason: halt.describe(),
            },
        });
        RunReport {
            strategy: self.strategy,
            network_hash: network_hash(self.n),
            arc_count: self.n.arc_count(),
            final_value: flow_value(self.n, &self.flow),
            initial_flow: self.initial,
            final_flow: self.flow,
            final_clock: self.clock,
            terminated,
            halt,
            steps: self.steps,
            jumps: self.jumps,
            guard_checks: self.guard_checks,
            trace: self.trace,
            snapshots: self.snapshots,
            monitors: self.monitors,
        }
    }
}
