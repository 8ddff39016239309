//! Runtime checks of the structural lemmas.
//!
//! At every clock ω^k the flow has at least k+1 extreme arcs unless the run
//! has already terminated, and no run on a network with m arcs reaches ω^m.

use super::{EventKind, RunReport, Snapshot, TraceEvent};
use crate::flownet::{extreme_arcs, Network};
use crate::ordinals::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonitorVerdict {
    pub name: String,
    pub clock: Ordinal,
    pub pass: bool,
    pub details: String,
}

impl MonitorVerdict {
    pub(crate) fn event(&self, clock: &Ordinal) -> TraceEvent {
        TraceEvent {
            clock: clock.clone(),
            kind: EventKind::Monitor {
                name: self.name.clone(),
                pass: self.pass,
                details: self.details.clone(),
            },
        }
    }
}

/// Verdict for one snapshot, or `None` if its clock is not a power of ω.
pub(crate) fn extreme_at(n: &Network, snap: &Snapshot) -> Option<MonitorVerdict> {
    let k = snap.clock.is_omega_power()?;
    let count = extreme_arcs(n, &snap.flow).len();
    let need = k as usize + 1;
    let pass = snap.terminated || count >= need;
    Some(MonitorVerdict {
        name: "extreme_arcs".into(),
        clock: snap.clock.clone(),
        pass,
        details: format!(
            "{count} extreme arcs, need {need}{}",
            if snap.terminated { " (terminated)" } else { "" }
        ),
    })
}

pub(crate) fn clock_bound(arc_count: usize, clock: &Ordinal) -> MonitorVerdict {
    let bound = Ordinal::omega_pow(arc_count as u32);
    MonitorVerdict {
        name: "clock_bound".into(),
        clock: clock.clone(),
        pass: clock < &bound,
        details: format!("final clock {clock} against bound {bound}"),
    }
}

/// Re-evaluate the extreme-arc lemma on every snapshot of `report` taken at a
/// clock of the form ω^k.
pub fn monitor_extreme_arcs(n: &Network, report: &RunReport) -> Vec<MonitorVerdict> {
    report
        .snapshots
        .iter()
        .filter_map(|s| extreme_at(n, s))
        .collect()
}

pub fn monitor_clock_bound(report: &RunReport, n: &Network) -> MonitorVerdict {
    clock_bound(n.arc_count(), &report.final_clock)
}
