//! Networks whose Ford-Fulkerson runs simulate the subtractive Euclidean
//! algorithm, and the strategies that drive them.
//!
//! One gadget has a labelled arc per side (`e_a` with capacity `a`, `e_b`
//! with capacity `b`). A pair of paths P1(X), P2(X) through the gadget
//! subtracts the residual of the smaller labelled arc X from the larger one
//! and leaves every other residual that matters untouched, so repeated pairs
//! walk the remainder sequence of `(a, b)`.

mod glued;
mod layout;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{
    CertificateError, Decision, PhaseCertificate, PhasePattern, RoundItem, RunState, ShortestPath,
    Strategy, StrategyError, DEFAULT_PROBE_ROUNDS,
};
use crate::exactfield::{FieldError, QuadValue};
use crate::flownet::{
    residual, validate_network, ArcId, Direction, Flow, Network, NetworkSpec, PathTemplate,
    VertexId,
};

pub use glued::{glued_network, glued_pattern, GluedLayout, GluedStrategy, RechargeLayout};
pub use layout::LayoutDoc;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("capacities must satisfy 0 < b <= a, got a = {a}, b = {b}")]
    BadInputs { a: String, b: String },
    #[error("glued networks need k >= 1")]
    BadLevel,
    #[error("quotient sequence of {0} is not constant; no certificate can be emitted")]
    NotConstantQuotient(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("certificate construction failed: {0}")]
    Certificate(#[from] CertificateError),
    #[error("generated network is invalid: {0}")]
    Invalid(String),
}

// ---------------------------------------------------------------------------
// Subtractive Euclid
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleRow {
    pub a: QuadValue,
    pub b: QuadValue,
}

/// Rows `(a_i, b_i)` with `a_{i+1} = a_i - n_i b_i < b_i` and
/// `b_{i+1} = b_i - m_i a_{i+1} < a_{i+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanSchedule {
    pub rows: Vec<ScheduleRow>,
    /// `(n_i, m_i)` taking row `i` to row `i + 1`.
    pub quotients: Vec<(u64, u64)>,
    /// A remainder reached zero.
    pub finished: bool,
}

impl EuclideanSchedule {
    /// All remainders in order: a_0, b_0, a_1, b_1, ...
    pub fn remainders(&self) -> Vec<QuadValue> {
        let mut out = Vec::new();
        for r in &self.rows {
            out.push(r.a.clone());
            if r.a.is_zero() {
                break;
            }
            out.push(r.b.clone());
        }
        out
    }
}

fn quotient(big: &QuadValue, small: &QuadValue) -> Result<u64, ConstructionError> {
    let q = big.checked_div(small)?.floor();
    u64::try_from(q).map_err(|_| ConstructionError::BadInputs {
        a: big.to_string(),
        b: small.to_string(),
    })
}

/// Subtractive Euclid on `(a, b)`, at most `max_rows` rows.
pub fn euclidean_schedule(
    a: &QuadValue,
    b: &QuadValue,
    max_rows: usize,
) -> Result<EuclideanSchedule, ConstructionError> {
    check_inputs(a, b)?;
    let mut rows = vec![ScheduleRow {
        a: a.clone(),
        b: b.clone(),
    }];
    let mut quotients = Vec::new();
    let mut finished = false;
    while rows.len() < max_rows {
        let ScheduleRow { a, b } = rows.last().unwrap().clone();
        let n = quotient(&a, &b)?;
        let a1 = &a - &b.scale_int(n);
        if a1.is_zero() {
            quotients.push((n, 0));
            rows.push(ScheduleRow { a: a1, b });
            finished = true;
            break;
        }
        let m = quotient(&b, &a1)?;
        let b1 = &b - &a1.scale_int(m);
        quotients.push((n, m));
        finished = b1.is_zero();
        rows.push(ScheduleRow { a: a1, b: b1 });
        if finished {
            break;
        }
    }
    Ok(EuclideanSchedule {
        rows,
        quotients,
        finished,
    })
}

fn check_inputs(a: &QuadValue, b: &QuadValue) -> Result<(), ConstructionError> {
    let ok = a.d() == b.d() && b.is_positive() && b <= a;
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::BadInputs {
            a: a.to_string(),
            b: b.to_string(),
        })
    }
}

/// `Some(q)` when `big/small = θ` satisfies `θ² = qθ + 1` with `q = ⌊θ⌋`, so
/// every Euclid quotient from here on equals `q`.
pub fn constant_quotient(big: &QuadValue, small: &QuadValue) -> Option<u64> {
    let theta = big.checked_div(small).ok()?;
    let q = u64::try_from(theta.floor()).ok().filter(|&q| q >= 1)?;
    let qv = QuadValue::int(q as i64, theta.d());
    (&theta * &theta == &(&qv * &theta) + &QuadValue::one(theta.d())).then_some(q)
}

// ---------------------------------------------------------------------------
// Gadget
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Side::A => "a",
            Side::B => "b",
        }
    }
}

/// Arc and vertex ids of one gadget.
///
/// `e_X` is the labelled arc, `g_X` carries flow only between P1(X) and
/// P2(X), `h_X` accumulates what P2 routes through side X, and `X_t` is the
/// exit used by P2(X) after walking `e_X` backwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLayout {
    pub copy: usize,
    pub ua: VertexId,
    pub ub: VertexId,
    pub wa: VertexId,
    pub wb: VertexId,
    pub m: VertexId,
    pub s_a: ArcId,
    pub s_b: ArcId,
    pub e_a: ArcId,
    pub e_b: ArcId,
    pub g_a: ArcId,
    pub g_b: ArcId,
    pub h_a: ArcId,
    pub h_b: ArcId,
    pub m_t: ArcId,
    pub ua_t: ArcId,
    pub ub_t: ArcId,
}

impl GadgetLayout {
    pub const ARCS: usize = 11;
    pub const VERTICES: usize = 5;

    pub fn labelled(&self, x: Side) -> ArcId {
        match x {
            Side::A => self.e_a,
            Side::B => self.e_b,
        }
    }

    pub fn entry(&self, x: Side) -> ArcId {
        match x {
            Side::A => self.s_a,
            Side::B => self.s_b,
        }
    }

    pub fn gate(&self, x: Side) -> ArcId {
        match x {
            Side::A => self.g_a,
            Side::B => self.g_b,
        }
    }

    pub fn bypass(&self, x: Side) -> ArcId {
        match x {
            Side::A => self.h_a,
            Side::B => self.h_b,
        }
    }

    pub fn exit(&self, x: Side) -> ArcId {
        match x {
            Side::A => self.ua_t,
            Side::B => self.ub_t,
        }
    }

    pub fn w(&self, x: Side) -> VertexId {
        match x {
            Side::A => self.wa,
            Side::B => self.wb,
        }
    }

    /// Saturates the residual of `e_X` through the gate.
    pub fn p1(&self, x: Side) -> PathTemplate {
        use Direction::Forward as F;
        PathTemplate(vec![
            (self.entry(x), F),
            (self.labelled(x), F),
            (self.gate(x), F),
            (self.m_t, F),
        ])
    }

    /// Moves the P1 amount off `e_X` and onto `e_Y`; the bottleneck is the
    /// gate's flow.
    pub fn p2(&self, x: Side) -> PathTemplate {
        use Direction::{Backward as B, Forward as F};
        let y = x.other();
        PathTemplate(vec![
            (self.entry(y), F),
            (self.labelled(y), F),
            (self.bypass(y), F),
            (self.gate(x), B),
            (self.labelled(x), B),
            (self.exit(x), F),
        ])
    }

    pub fn arc_ids(&self) -> [ArcId; 11] {
        [
            self.s_a, self.s_b, self.e_a, self.e_b, self.g_a, self.g_b, self.h_a, self.h_b,
            self.m_t, self.ua_t, self.ub_t,
        ]
    }

    fn roles(&self, prefix: &str, out: &mut BTreeMap<String, usize>) {
        let names = [
            "s_a", "s_b", "e_a", "e_b", "g_a", "g_b", "h_a", "h_b", "m_t", "ua_t", "ub_t",
        ];
        for (name, id) in names.iter().zip(self.arc_ids()) {
            out.insert(format!("{prefix}{name}"), id.0);
        }
    }

    /// Labelled residuals `(c'(e_a), c'(e_b))`.
    pub fn residuals(&self, n: &Network, f: &Flow) -> (QuadValue, QuadValue) {
        (
            residual(n, f, self.e_a, Direction::Forward),
            residual(n, f, self.e_b, Direction::Forward),
        )
    }
}

/// Incremental network assembly. Vertex 0 is `s`, vertex 1 is `t`.
pub(crate) struct Builder {
    d: u64,
    vertices: Vec<String>,
    arcs: Vec<(VertexId, VertexId, QuadValue)>,
}

impl Builder {
    pub(crate) const S: VertexId = VertexId(0);
    pub(crate) const T: VertexId = VertexId(1);

    pub(crate) fn new(d: u64) -> Self {
        Builder {
            d,
            vertices: vec!["s".into(), "t".into()],
            arcs: Vec::new(),
        }
    }

    pub(crate) fn vertex(&mut self, label: String) -> VertexId {
        self.vertices.push(label);
        VertexId(self.vertices.len() - 1)
    }

    pub(crate) fn arc(&mut self, tail: VertexId, head: VertexId, cap: &QuadValue) -> ArcId {
        self.arcs.push((tail, head, cap.clone()));
        ArcId(self.arcs.len() - 1)
    }

    pub(crate) fn gadget(
        &mut self,
        copy: usize,
        a: &QuadValue,
        b: &QuadValue,
        big: &QuadValue,
    ) -> GadgetLayout {
        let mut v = |name: &str| self.vertex(format!("g{copy}.{name}"));
        let (ua, ub, wa, wb, m) = (v("ua"), v("ub"), v("wa"), v("wb"), v("m"));
        let (s, t) = (Self::S, Self::T);
        GadgetLayout {
            copy,
            ua,
            ub,
            wa,
            wb,
            m,
            s_a: self.arc(s, ua, big),
            s_b: self.arc(s, ub, big),
            e_a: self.arc(ua, wa, a),
            e_b: self.arc(ub, wb, b),
            g_a: self.arc(wa, m, big),
            g_b: self.arc(wb, m, big),
            h_a: self.arc(wa, m, big),
            h_b: self.arc(wb, m, big),
            m_t: self.arc(m, t, big),
            ua_t: self.arc(ua, t, big),
            ub_t: self.arc(ub, t, big),
        }
    }

    pub(crate) fn finish(self) -> Result<Network, ConstructionError> {
        validate_network(&NetworkSpec {
            d: self.d,
            vertices: self.vertices,
            source: Self::S,
            sink: Self::T,
            arcs: self.arcs,
        })
        .map_err(|v| {
            ConstructionError::Invalid(
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join("; "),
            )
        })
    }
}

/// The single-gadget network: 7 vertices, 11 arcs, every unlabelled arc of
/// capacity `4(a + b)`.
pub fn euclidean_network(
    a: &QuadValue,
    b: &QuadValue,
) -> Result<(Network, GadgetLayout), ConstructionError> {
    check_inputs(a, b)?;
    let big = (a + b).scale_int(4);
    let mut builder = Builder::new(a.d());
    let g = builder.gadget(1, a, b, &big);
    Ok((builder.finish()?, g))
}

/// Role name → arc id for the single-gadget network.
pub fn gadget_roles(g: &GadgetLayout) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    g.roles("", &mut out);
    out
}

/// One round of the Euclid phase that starts with `c'(e_Y) = big`,
/// `c'(e_X) = small` where `big/small = θ`, `θ² = qθ + 1`. The round brings
/// both residuals down by `θ²`, which is the ratio.
pub fn euclid_pattern(
    n: &Network,
    g: &GadgetLayout,
    big_side: Side,
    big: &QuadValue,
    small: &QuadValue,
) -> Result<PhasePattern, ConstructionError> {
    let q = constant_quotient(big, small)
        .ok_or_else(|| ConstructionError::NotConstantQuotient((big / small).to_string()))?;
    let theta = big / small;
    let x = big_side.other();
    let second = small / &theta;
    let mut items = Vec::new();
    for (side, amount) in [(x, small.clone()), (big_side, second)] {
        for _ in 0..q {
            items.push(RoundItem::Push {
                template: g.p1(side),
                amount: amount.clone(),
            });
            items.push(RoundItem::Push {
                template: g.p2(side),
                amount: amount.clone(),
            });
        }
    }
    let ratio = (&theta * &theta).recip()?;
    Ok(PhasePattern::new(items, ratio, n.arc_count())?)
}

// ---------------------------------------------------------------------------
// Euclidean strategy
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EuclidMode {
    /// Emit a certificate as soon as the labelled residuals have a constant
    /// quotient.
    Certified,
    /// Only ever augment.
    Concrete,
}

/// Runs subtractive Euclid on one gadget. Once a remainder hits zero it
/// continues with shortest paths; after a certified limit it stops unless
/// `finish` is set.
#[derive(Debug, Clone)]
pub struct EuclideanStrategy {
    gadget: GadgetLayout,
    mode: EuclidMode,
    finish: bool,
    reducing: Side,
    limit_taken: bool,
    probe_rounds: usize,
}

impl EuclideanStrategy {
    pub fn new(gadget: GadgetLayout, mode: EuclidMode) -> Self {
        EuclideanStrategy {
            gadget,
            mode,
            finish: false,
            reducing: Side::A,
            limit_taken: false,
            probe_rounds: DEFAULT_PROBE_ROUNDS,
        }
    }

    pub fn with_finish(mut self, finish: bool) -> Self {
        self.finish = finish;
        self
    }

    pub fn with_probe_rounds(mut self, k: usize) -> Self {
        self.probe_rounds = k;
        self
    }

    /// Next concrete Euclid path, or `None` once a remainder is zero.
    pub fn next_template(&mut self, n: &Network, f: &Flow) -> Option<PathTemplate> {
        let g = &self.gadget;
        for x in [Side::A, Side::B] {
            if f.get(g.gate(x)).is_positive() {
                return Some(g.p2(x));
            }
        }
        let res = |side: Side| residual(n, f, g.labelled(side), Direction::Forward);
        let (big, small) = (res(self.reducing), res(self.reducing.other()));
        if big.is_zero() || small.is_zero() {
            return None;
        }
        if big < small {
            self.reducing = self.reducing.other();
        }
        Some(g.p1(self.reducing.other()))
    }

    fn certificate(&self, n: &Network, f: &Flow) -> Option<PhaseCertificate> {
        let g = &self.gadget;
        if [Side::A, Side::B]
            .iter()
            .any(|&x| f.get(g.gate(x)).is_positive())
        {
            return None;
        }
        let (ra, rb) = g.residuals(n, f);
        let (big_side, big, small) = if rb > ra {
            (Side::B, rb, ra)
        } else {
            (Side::A, ra, rb)
        };
        if small.is_zero() {
            return None;
        }
        let pattern = euclid_pattern(n, g, big_side, &big, &small).ok()?;
        let mut cert = PhaseCertificate::from_pattern(f, pattern).ok()?;
        cert.probe_rounds = self.probe_rounds;
        Some(cert)
    }
}

impl Strategy for EuclideanStrategy {
    fn name(&self) -> String {
        match self.mode {
            EuclidMode::Certified => "euclidean".into(),
            EuclidMode::Concrete => "euclidean_concrete".into(),
        }
    }

    fn decide(&mut self, s: &RunState<'_>) -> Result<Decision, StrategyError> {
        if self.limit_taken {
            return if self.finish {
                ShortestPath.decide(s)
            } else {
                Ok(Decision::Stop)
            };
        }
        if self.mode == EuclidMode::Certified {
            if let Some(cert) = self.certificate(s.network, s.flow) {
                self.limit_taken = true;
                return Ok(Decision::LimitPhase(Box::new(cert)));
            }
        }
        match self.next_template(s.network, s.flow) {
            Some(t) => t
                .instantiate(s.network, s.flow)
                .map(Decision::Augment)
                .map_err(|e| StrategyError(format!("euclid path not augmenting: {e}"))),
            None => ShortestPath.decide(s),
        }
    }
}
