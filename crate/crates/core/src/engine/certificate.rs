//! Phase certificates and their verification.
//!
//! A [`PhasePattern`] describes one round of a self-similar phase at scale 1.
//! Round `n` repeats every item with all amounts multiplied by `ratio^n`, so
//! the net change of the whole phase is the round's net change divided by
//! `1 - ratio`. Items may themselves be complete phases of lower depth, which
//! is how runs of length ω^k are described.

use thiserror::Error;

use crate::exactfield::{FieldError, QuadValue};
use crate::flownet::{push, validate_flow, ArcId, Flow, FlowViolation, Network, PathTemplate};

pub const DEFAULT_PROBE_ROUNDS: usize = 4;

/// One step inside a round.
#[derive(Debug, Clone, PartialEq)]
pub enum RoundItem {
    /// Push along `template`; the bottleneck must equal `amount` times the
    /// round factor exactly.
    Push {
        template: PathTemplate,
        amount: QuadValue,
    },
    /// A complete nested phase, started from the current flow with every
    /// amount scaled by `scale` times the round factor.
    Phase {
        pattern: Box<PhasePattern>,
        scale: QuadValue,
    },
    /// Pushes whose combined effect must leave `preserved` arcs unchanged and
    /// `zero_flow` arcs at zero before and after.
    Guarded(GuardedBlock),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GuardedBlock {
    pub label: String,
    pub pushes: Vec<(PathTemplate, QuadValue)>,
    pub preserved: Vec<ArcId>,
    pub zero_flow: Vec<ArcId>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhasePattern {
    pub items: Vec<RoundItem>,
    pub ratio: QuadValue,
    /// Net per-arc change of the full phase at scale 1.
    pub declared_delta: Vec<QuadValue>,
}

impl PhasePattern {
    /// Build a pattern whose declared delta is its own closed form.
    pub fn new(
        items: Vec<RoundItem>,
        ratio: QuadValue,
        arc_count: usize,
    ) -> Result<Self, CertificateError> {
        let mut p = PhasePattern {
            items,
            ratio,
            declared_delta: Vec::new(),
        };
        p.declared_delta = p.closed_form(arc_count)?;
        Ok(p)
    }

    /// 1 for a flat phase, 1 + the deepest child otherwise.
    pub fn depth(&self) -> u32 {
        1 + self
            .items
            .iter()
            .filter_map(|it| match it {
                RoundItem::Phase { pattern, .. } => Some(pattern.depth()),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// `(Σ incidence·amount + Σ scale·child delta) / (1 - ratio)`, using the
    /// children's declared deltas.
    pub fn closed_form(&self, arc_count: usize) -> Result<Vec<QuadValue>, CertificateError> {
        let d = self.ratio.d();
        let mut round = vec![QuadValue::zero(d); arc_count];
        let add_push = |round: &mut Vec<QuadValue>, t: &PathTemplate, amount: &QuadValue| {
            for &(arc, dir) in &t.0 {
                let slot = round.get_mut(arc.0).ok_or_else(|| {
                    CertificateError::Malformed(format!("arc {arc} out of range"))
                })?;
                *slot = match dir.sign() {
                    1 => slot.checked_add(amount)?,
                    _ => slot.checked_sub(amount)?,
                };
            }
            Ok::<(), CertificateError>(())
        };
        for item in &self.items {
            match item {
                RoundItem::Push { template, amount } => add_push(&mut round, template, amount)?,
                RoundItem::Guarded(g) => {
                    for (t, a) in &g.pushes {
                        add_push(&mut round, t, a)?;
                    }
                }
                RoundItem::Phase { pattern, scale } => {
                    if pattern.declared_delta.len() != arc_count {
                        return Err(CertificateError::Malformed(
                            "child delta has the wrong length".into(),
                        ));
                    }
                    for (slot, v) in round.iter_mut().zip(&pattern.declared_delta) {
                        *slot = slot.checked_add(&scale.checked_mul(v)?)?;
                    }
                }
            }
        }
        let denom = QuadValue::one(d).checked_sub(&self.ratio)?;
        Ok(round
            .iter()
            .map(|v| v.checked_div(&denom))
            .collect::<Result<_, _>>()?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseCertificate {
    pub pattern: PhasePattern,
    pub declared_limit: Flow,
    pub probe_rounds: usize,
}

impl PhaseCertificate {
    /// Certificate for running `pattern` from `start`, declaring
    /// `start + declared_delta` as the limit.
    pub fn from_pattern(start: &Flow, pattern: PhasePattern) -> Result<Self, FieldError> {
        let mut limit = start.clone();
        for (i, d) in pattern.declared_delta.iter().enumerate() {
            limit.set(ArcId(i), start.get(ArcId(i)).checked_add(d)?);
        }
        Ok(PhaseCertificate {
            pattern,
            declared_limit: limit,
            probe_rounds: DEFAULT_PROBE_ROUNDS,
        })
    }

    pub fn depth(&self) -> u32 {
        self.pattern.depth()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertificateError {
    #[error("ratio not < 1: {0}")]
    RatioNotBelowOne(String),
    #[error("negative ratio {0}")]
    NegativeRatio(String),
    #[error("nesting depth {depth} exceeds the arc count {arcs}")]
    NestingDepth { depth: u32, arcs: usize },
    #[error("probe rounds must be at least 2, got {0}")]
    ProbeRounds(usize),
    #[error("malformed pattern: {0}")]
    Malformed(String),
    #[error("probe round {round}, item {item}: {detail}")]
    Probe {
        /// 1-based.
        round: usize,
        item: usize,
        detail: String,
    },
    #[error("guard {label:?} failed in probe round {round}: {detail}")]
    Guard {
        label: String,
        round: usize,
        detail: String,
    },
    #[error("capacity violated by the limit flow: {0}")]
    Capacity(String),
    #[error("conservation violated by the limit flow: {0}")]
    Conservation(String),
    #[error(
        "closed form disagrees with the declared delta at arc {arc}: {computed} vs {declared}"
    )]
    ClosedForm {
        arc: usize,
        computed: String,
        declared: String,
    },
    #[error("declared limit disagrees with the closed form at arc {arc}")]
    DeclaredLimit { arc: usize },
    #[error("verified phase started from a different flow")]
    StartMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl CertificateError {
    /// Short stable name of the failing check.
    pub fn reason(&self) -> &'static str {
        match self {
            CertificateError::RatioNotBelowOne(_) => "ratio not < 1",
            CertificateError::NegativeRatio(_) => "negative ratio",
            CertificateError::NestingDepth { .. } => "nesting depth",
            CertificateError::ProbeRounds(_) => "probe rounds",
            CertificateError::Malformed(_) => "malformed",
            CertificateError::Probe { .. } => "probe",
            CertificateError::Guard { .. } => "guard",
            CertificateError::Capacity(_) => "capacity",
            CertificateError::Conservation(_) => "conservation",
            CertificateError::ClosedForm { .. } => "closed form",
            CertificateError::DeclaredLimit { .. } => "declared limit",
            CertificateError::StartMismatch => "start mismatch",
            CertificateError::Field(_) => "field",
        }
    }
}

/// Proof that a certificate checked out against a particular start flow.
/// Consumed by [`apply_limit`].
#[derive(Debug, Clone)]
pub struct VerifiedPhase {
    start: Flow,
    limit: Flow,
    depth: u32,
    ratio: QuadValue,
    probe_rounds: usize,
    guard_checks: usize,
}

impl VerifiedPhase {
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn limit(&self) -> &Flow {
        &self.limit
    }

    pub fn ratio(&self) -> &QuadValue {
        &self.ratio
    }

    pub fn probe_rounds(&self) -> usize {
        self.probe_rounds
    }

    /// Guarded blocks that passed during probing, nested phases included.
    pub fn guard_checks(&self) -> usize {
        self.guard_checks
    }
}

/// Check `cert` against the run state `f`: structure, then a concrete probe
/// of the first rounds, then validity of the declared limit, then the closed
/// form. Nothing outside the returned token is modified.
pub fn verify_certificate(
    n: &Network,
    f: &Flow,
    cert: &PhaseCertificate,
) -> Result<VerifiedPhase, CertificateError> {
    if cert.probe_rounds < 2 {
        return Err(CertificateError::ProbeRounds(cert.probe_rounds));
    }
    if cert.declared_limit.len() != n.arc_count() {
        return Err(CertificateError::Malformed(format!(
            "declared limit has {} entries for {} arcs",
            cert.declared_limit.len(),
            n.arc_count()
        )));
    }
    let depth = cert.pattern.depth();
    if depth as usize > n.arc_count() {
        return Err(CertificateError::NestingDepth {
            depth,
            arcs: n.arc_count(),
        });
    }
    check_structure(n, &cert.pattern)?;

    let mut probe = Prober {
        n,
        rounds: cert.probe_rounds,
        guards: 0,
    };
    let one = QuadValue::one(n.d());
    probe.rounds_of(f, &cert.pattern, &one)?;

    check_limit(n, &cert.declared_limit)?;
    let computed = check_closed_form(n, &cert.pattern)?;
    for (i, d) in computed.iter().enumerate() {
        if cert.declared_limit.get(ArcId(i)) != &(f.get(ArcId(i)) + d) {
            return Err(CertificateError::DeclaredLimit { arc: i });
        }
    }
    Ok(VerifiedPhase {
        start: f.clone(),
        limit: cert.declared_limit.clone(),
        depth,
        ratio: cert.pattern.ratio.clone(),
        probe_rounds: cert.probe_rounds,
        guard_checks: probe.guards,
    })
}

/// Install the verified limit. `f` must be the flow the phase was verified
/// against.
pub fn apply_limit(f: &Flow, phase: VerifiedPhase) -> Result<Flow, CertificateError> {
    if f != &phase.start {
        return Err(CertificateError::StartMismatch);
    }
    Ok(phase.limit)
}

fn check_structure(n: &Network, p: &PhasePattern) -> Result<(), CertificateError> {
    let d = n.d();
    let bad_field = |v: &QuadValue| v.d() != d;
    if bad_field(&p.ratio) {
        return Err(FieldError::MismatchedField(d, p.ratio.d()).into());
    }
    if p.ratio.is_negative() {
        return Err(CertificateError::NegativeRatio(p.ratio.to_string()));
    }
    if p.ratio >= QuadValue::one(d) {
        return Err(CertificateError::RatioNotBelowOne(p.ratio.to_string()));
    }
    if p.items.is_empty() {
        return Err(CertificateError::Malformed("round has no items".into()));
    }
    if p.declared_delta.len() != n.arc_count() || p.declared_delta.iter().any(bad_field) {
        return Err(CertificateError::Malformed(
            "declared delta does not match the network".into(),
        ));
    }
    let template_ok =
        |t: &PathTemplate| !t.0.is_empty() && t.0.iter().all(|(a, _)| a.0 < n.arc_count());
    for item in &p.items {
        match item {
            RoundItem::Push { template, amount } => {
                if !template_ok(template) || bad_field(amount) || !amount.is_positive() {
                    return Err(CertificateError::Malformed("bad push item".into()));
                }
            }
            RoundItem::Guarded(g) => {
                let arcs_ok = g
                    .preserved
                    .iter()
                    .chain(&g.zero_flow)
                    .all(|a| a.0 < n.arc_count());
                let pushes_ok = g
                    .pushes
                    .iter()
                    .all(|(t, a)| template_ok(t) && !bad_field(a) && a.is_positive());
                if !arcs_ok || !pushes_ok || g.pushes.is_empty() {
                    return Err(CertificateError::Malformed(format!(
                        "bad guarded block {:?}",
                        g.label
                    )));
                }
            }
            RoundItem::Phase { pattern, scale } => {
                if bad_field(scale) || !scale.is_positive() {
                    return Err(CertificateError::Malformed("bad nested scale".into()));
                }
                check_structure(n, pattern)?;
            }
        }
    }
    Ok(())
}

fn check_limit(n: &Network, limit: &Flow) -> Result<(), CertificateError> {
    let Err(violations) = validate_flow(n, limit) else {
        return Ok(());
    };
    let list = |pick: fn(&FlowViolation) -> bool| {
        violations
            .iter()
            .filter(|v| pick(v))
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    };
    let capacity = list(|v| !matches!(v, FlowViolation::Conservation { .. }));
    if !capacity.is_empty() {
        return Err(CertificateError::Capacity(capacity));
    }
    Err(CertificateError::Conservation(list(|v| {
        matches!(v, FlowViolation::Conservation { .. })
    })))
}

/// Recompute the closed form and compare it with the declared delta.
fn check_closed_form(n: &Network, p: &PhasePattern) -> Result<Vec<QuadValue>, CertificateError> {
    let computed = p.closed_form(n.arc_count())?;
    for (arc, (c, d)) in computed.iter().zip(&p.declared_delta).enumerate() {
        if c != d {
            return Err(CertificateError::ClosedForm {
                arc,
                computed: c.to_string(),
                declared: d.to_string(),
            });
        }
    }
    Ok(computed)
}

struct Prober<'a> {
    n: &'a Network,
    rounds: usize,
    guards: usize,
}

impl Prober<'_> {
    /// Run the first `self.rounds` rounds of `p` at `scale` from `f`.
    /// Returns the flow reached after the probe.
    fn rounds_of(
        &mut self,
        f: &Flow,
        p: &PhasePattern,
        scale: &QuadValue,
    ) -> Result<Flow, CertificateError> {
        let mut g = f.clone();
        let mut factor = scale.clone();
        for round in 1..=self.rounds {
            for (idx, item) in p.items.iter().enumerate() {
                g = self.item(&g, item, &factor, round, idx)?;
            }
            factor = &factor * &p.ratio;
        }
        // Net movement after the probe must match the partial geometric sum.
        let computed = p.closed_form(self.n.arc_count())?;
        let done = scale - &factor;
        for (i, c) in computed.iter().enumerate() {
            let want = f.get(ArcId(i)) + &(&done * c);
            if g.get(ArcId(i)) != &want {
                return Err(CertificateError::Probe {
                    round: self.rounds,
                    item: p.items.len(),
                    detail: format!("net change on arc {i} disagrees with the round pattern"),
                });
            }
        }
        Ok(g)
    }

    fn item(
        &mut self,
        g: &Flow,
        item: &RoundItem,
        factor: &QuadValue,
        round: usize,
        idx: usize,
    ) -> Result<Flow, CertificateError> {
        let probe_err = |detail: String| CertificateError::Probe {
            round,
            item: idx,
            detail,
        };
        match item {
            RoundItem::Push { template, amount } => self
                .push_exact(g, template, &(amount * factor))
                .map_err(probe_err),
            RoundItem::Guarded(block) => {
                let guard_err = |detail: String| CertificateError::Guard {
                    label: block.label.clone(),
                    round,
                    detail,
                };
                let zero_ok = |f: &Flow| {
                    block
                        .zero_flow
                        .iter()
                        .find(|a| !f.get(**a).is_zero())
                        .copied()
                };
                if let Some(a) = zero_ok(g) {
                    return Err(guard_err(format!("arc {a} carries flow before the block")));
                }
                let mut h = g.clone();
                for (t, a) in &block.pushes {
                    h = self.push_exact(&h, t, &(a * factor)).map_err(guard_err)?;
                }
                if let Some(a) = zero_ok(&h) {
                    return Err(guard_err(format!("arc {a} carries flow after the block")));
                }
                if let Some(a) = block.preserved.iter().find(|a| g.get(**a) != h.get(**a)) {
                    return Err(guard_err(format!("preserved arc {a} changed")));
                }
                self.guards += 1;
                Ok(h)
            }
            RoundItem::Phase { pattern, scale } => {
                let s = scale * factor;
                self.rounds_of(g, pattern, &s)?;
                let mut limit = g.clone();
                for (i, dlt) in pattern.declared_delta.iter().enumerate() {
                    limit.set(ArcId(i), g.get(ArcId(i)) + &(&s * dlt));
                }
                check_limit(self.n, &limit)?;
                check_closed_form(self.n, pattern)?;
                Ok(limit)
            }
        }
    }

    fn push_exact(&self, g: &Flow, t: &PathTemplate, expected: &QuadValue) -> Result<Flow, String> {
        let path = t.instantiate(self.n, g).map_err(|e| e.to_string())?;
        let (h, got) = push(self.n, g, &path).map_err(|e| e.to_string())?;
        if &got != expected {
            return Err(format!("bottleneck {got}, expected {expected}"));
        }
        Ok(h)
    }
}
