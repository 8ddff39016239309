//! Glued networks: copies `G_1, ..., G_k` of the gadget, where each `G_j`
//! (j ≥ 2) can recharge the labelled arcs of `G_{j-1}` through four extra
//! arcs.
//!
//! Level `j` of a run repeats: two Euclid half-phases on `G_j`, a recharge
//! that copies `G_j`'s new remainders into `G_{j-1}`, and then the complete
//! level `j-1` run at the new scale. Level 1 is the plain Euclid phase on
//! `G_1`, so level `j` has length ω^j.

use std::collections::BTreeMap;

use super::{
    check_inputs, constant_quotient, euclid_pattern, Builder, ConstructionError, GadgetLayout, Side,
};
use crate::engine::{
    Decision, GuardedBlock, PhaseCertificate, PhasePattern, RoundItem, RunState, ShortestPath,
    Strategy, StrategyError, DEFAULT_PROBE_ROUNDS,
};
use crate::exactfield::QuadValue;
use crate::flownet::{ArcId, Direction, Network, PathTemplate};

/// Recharge arcs between `source` = `G_j` and `target` = `G_{j-1}`.
///
/// `m_X` runs from the source's `w_X` to the target's `w_X` and is zero
/// outside a recharge; `f_X` feeds the target's `w_X` straight from `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RechargeLayout {
    pub level: usize,
    pub m_a: ArcId,
    pub m_b: ArcId,
    pub f_a: ArcId,
    pub f_b: ArcId,
}

impl RechargeLayout {
    pub fn middle(&self, x: Side) -> ArcId {
        match x {
            Side::A => self.m_a,
            Side::B => self.m_b,
        }
    }

    pub fn feed(&self, x: Side) -> ArcId {
        match x {
            Side::A => self.f_a,
            Side::B => self.f_b,
        }
    }

    /// Routes the source's spare `e_X` residual over `m_X` and backwards
    /// through the target's `e_X`.
    pub fn r1(&self, source: &GadgetLayout, target: &GadgetLayout, x: Side) -> PathTemplate {
        use Direction::{Backward as B, Forward as F};
        PathTemplate(vec![
            (source.entry(x), F),
            (source.labelled(x), F),
            (self.middle(x), F),
            (target.labelled(x), B),
            (target.exit(x), F),
        ])
    }

    /// Cancels `m_X` and the source's extra `e_X` flow again.
    pub fn r2(&self, source: &GadgetLayout, x: Side) -> PathTemplate {
        use Direction::{Backward as B, Forward as F};
        PathTemplate(vec![
            (self.feed(x), F),
            (self.middle(x), B),
            (source.labelled(x), B),
            (source.exit(x), F),
        ])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GluedLayout {
    pub k: usize,
    pub gadgets: Vec<GadgetLayout>,
    /// `recharges[j - 2]` connects `G_j` to `G_{j-1}`.
    pub recharges: Vec<RechargeLayout>,
    /// Unlabelled capacities are `capacity_factor · (a + b)`.
    pub capacity_factor: u64,
    pub big_capacity: QuadValue,
}

impl GluedLayout {
    /// Arcs added by each level after the first.
    pub const ARCS_PER_LEVEL: usize = GadgetLayout::ARCS + 4;

    /// `3k² + k`: the sum over levels `j ≤ k` of `6j − 2`, each level's share
    /// of the total flow in units of `a + b`.
    pub fn capacity_factor_for(k: usize) -> u64 {
        let k = k as u64;
        3 * k * k + k
    }

    /// `ℓ_1, ..., ℓ_2k`: the labelled arcs from left to right.
    pub fn labelled(&self) -> Vec<ArcId> {
        self.gadgets.iter().flat_map(|g| [g.e_a, g.e_b]).collect()
    }

    pub fn roles(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for g in &self.gadgets {
            g.roles(&format!("g{}.", g.copy), &mut out);
        }
        for r in &self.recharges {
            for (name, id) in [
                ("m_a", r.m_a),
                ("m_b", r.m_b),
                ("f_a", r.f_a),
                ("f_b", r.f_b),
            ] {
                out.insert(format!("r{}.{name}", r.level), id.0);
            }
        }
        for (i, id) in self.labelled().iter().enumerate() {
            out.insert(format!("l{}", i + 1), id.0);
        }
        out
    }
}

/// `k` glued gadgets with unlabelled capacity `(3k² + k)(a + b)`. For
/// `k = 1` this is exactly the single-gadget network.
pub fn glued_network(
    k: usize,
    a: &QuadValue,
    b: &QuadValue,
) -> Result<(Network, GluedLayout), ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::BadLevel);
    }
    check_inputs(a, b)?;
    let factor = GluedLayout::capacity_factor_for(k);
    let big = (a + b).scale_int(factor);
    let mut builder = Builder::new(a.d());
    let mut gadgets = vec![builder.gadget(1, a, b, &big)];
    let mut recharges = Vec::new();
    for j in 2..=k {
        let source = builder.gadget(j, a, b, &big);
        let target = gadgets.last().unwrap();
        recharges.push(RechargeLayout {
            level: j,
            m_a: builder.arc(source.wa, target.wa, &big),
            m_b: builder.arc(source.wb, target.wb, &big),
            f_a: builder.arc(Builder::S, target.wa, &big),
            f_b: builder.arc(Builder::S, target.wb, &big),
        });
        gadgets.push(source);
    }
    let layout = GluedLayout {
        k,
        gadgets,
        recharges,
        capacity_factor: factor,
        big_capacity: big,
    };
    Ok((builder.finish()?, layout))
}

/// The level-`level` phase at scale 1: `G_level` starts with labelled
/// residuals `(big, small)` on `(big_side, other)` and every lower copy is
/// saturated.
pub fn glued_pattern(
    n: &Network,
    layout: &GluedLayout,
    level: usize,
    big_side: Side,
    big: &QuadValue,
    small: &QuadValue,
) -> Result<PhasePattern, ConstructionError> {
    if level == 0 || level > layout.k {
        return Err(ConstructionError::BadLevel);
    }
    let right = &layout.gadgets[level - 1];
    if level == 1 {
        return euclid_pattern(n, right, big_side, big, small);
    }
    let q = constant_quotient(big, small)
        .ok_or_else(|| ConstructionError::NotConstantQuotient((big / small).to_string()))?;
    let theta = big / small;
    let ratio = (&theta * &theta).recip()?;
    let x = big_side.other();
    let left = &layout.gadgets[level - 2];
    let bridge = &layout.recharges[level - 2];

    let mut items = Vec::new();
    for (side, amount) in [(x, small.clone()), (big_side, small / &theta)] {
        for _ in 0..q {
            for template in [right.p1(side), right.p2(side)] {
                items.push(RoundItem::Push {
                    template,
                    amount: amount.clone(),
                });
            }
        }
    }
    for (side, amount) in [(big_side, big * &ratio), (x, small * &ratio)] {
        items.push(RoundItem::Guarded(GuardedBlock {
            label: format!("recharge g{}.e_{}", left.copy, side.tag()),
            pushes: vec![
                (bridge.r1(right, left, side), amount.clone()),
                (bridge.r2(right, side), amount),
            ],
            preserved: vec![right.e_a, right.e_b],
            zero_flow: vec![bridge.middle(side)],
        }));
    }
    let child = glued_pattern(n, layout, level - 1, big_side, big, small)?;
    items.push(RoundItem::Phase {
        pattern: Box::new(child),
        scale: ratio.clone(),
    });
    Ok(PhasePattern::new(items, ratio, n.arc_count())?)
}

/// Issues the level 1, 2, ..., k phases in order, reaching clock ω^k.
#[derive(Debug, Clone)]
pub struct GluedStrategy {
    layout: GluedLayout,
    big_side: Side,
    big: QuadValue,
    small: QuadValue,
    next_level: usize,
    finish: bool,
    probe_rounds: usize,
}

impl GluedStrategy {
    pub fn new(n: &Network, layout: GluedLayout) -> Result<Self, ConstructionError> {
        let g = &layout.gadgets[0];
        let (a, b) = (n.arc(g.e_a).cap.clone(), n.arc(g.e_b).cap.clone());
        let (big_side, big, small) = if b > a {
            (Side::B, b, a)
        } else {
            (Side::A, a, b)
        };
        if constant_quotient(&big, &small).is_none() {
            return Err(ConstructionError::NotConstantQuotient(
                (&big / &small).to_string(),
            ));
        }
        Ok(GluedStrategy {
            layout,
            big_side,
            big,
            small,
            next_level: 1,
            finish: false,
            probe_rounds: DEFAULT_PROBE_ROUNDS,
        })
    }

    pub fn with_finish(mut self, finish: bool) -> Self {
        self.finish = finish;
        self
    }

    pub fn with_probe_rounds(mut self, k: usize) -> Self {
        self.probe_rounds = k;
        self
    }

    pub fn layout(&self) -> &GluedLayout {
        &self.layout
    }
}

impl Strategy for GluedStrategy {
    fn name(&self) -> String {
        format!("glued(k={})", self.layout.k)
    }

    fn decide(&mut self, s: &RunState<'_>) -> Result<Decision, StrategyError> {
        if self.next_level > self.layout.k {
            return if self.finish {
                ShortestPath.decide(s)
            } else {
                Ok(Decision::Stop)
            };
        }
        let err = |e: ConstructionError| StrategyError(e.to_string());
        let pattern = glued_pattern(
            s.network,
            &self.layout,
            self.next_level,
            self.big_side,
            &self.big,
            &self.small,
        )
        .map_err(err)?;
        let mut cert = PhaseCertificate::from_pattern(s.flow, pattern)
            .map_err(|e| StrategyError(e.to_string()))?;
        cert.probe_rounds = self.probe_rounds;
        self.next_level += 1;
        Ok(Decision::LimitPhase(Box::new(cert)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::euclidean_network;
    use crate::engine::{run, RunOptions};
    use crate::flownet::{network_hash, Flow};
    use crate::ordinals::Ordinal;

    fn golden() -> (QuadValue, QuadValue) {
        (QuadValue::golden(), QuadValue::one(5))
    }

    #[test]
    fn sizes_grow_linearly() {
        let (a, b) = golden();
        for k in 1..=4 {
            let (n, l) = glued_network(k, &a, &b).unwrap();
            assert_eq!(n.arc_count(), 15 * k - 4);
            assert_eq!(n.vertex_count(), 2 + 5 * k);
            assert_eq!(l.labelled().len(), 2 * k);
        }
        assert_eq!(GluedLayout::capacity_factor_for(2), 14);
    }

    #[test]
    fn level_one_is_the_single_gadget() {
        let (a, b) = golden();
        let (n1, _) = glued_network(1, &a, &b).unwrap();
        let (n0, _) = euclidean_network(&a, &b).unwrap();
        assert_eq!(network_hash(&n0), network_hash(&n1));
    }

    #[test]
    fn labelled_capacities_alternate() {
        let (a, b) = golden();
        let (n, l) = glued_network(2, &a, &b).unwrap();
        let caps: Vec<QuadValue> = l
            .labelled()
            .iter()
            .map(|&id| n.arc(id).cap.clone())
            .collect();
        assert_eq!(caps, vec![a.clone(), b.clone(), a, b]);
    }

    #[test]
    fn k2_reaches_omega_squared() {
        let (a, b) = golden();
        let (n, l) = glued_network(2, &a, &b).unwrap();
        let mut s = GluedStrategy::new(&n, l).unwrap();
        let r = run(&n, &Flow::zero(&n), &mut s, &RunOptions::default()).unwrap();
        assert_eq!(r.final_clock, Ordinal::omega_pow(2), "{:?}", r.halt);
        assert_eq!(r.final_value, "8 + 4*sqrt(5)".parse().unwrap());
        assert!(r.guard_checks > 0);
        assert!(r.monitors_pass());
    }

    #[test]
    fn deeper_levels_stay_within_their_capacity() {
        let (a, b) = golden();
        for k in [3, 4] {
            let (n, l) = glued_network(k, &a, &b).unwrap();
            let bound = l.big_capacity.clone();
            let mut s = GluedStrategy::new(&n, l).unwrap();
            let r = run(&n, &Flow::zero(&n), &mut s, &RunOptions::default()).unwrap();
            assert_eq!(r.final_clock, Ordinal::omega_pow(k as u32), "{:?}", r.halt);
            assert!(r.final_value <= bound);
        }
    }

    /// From the ω state of `k = 2`, run level 2 up to its nested phase: the
    /// recharges leave `G_1` holding the scaled remainders and `m_X` empty.
    #[test]
    fn recharge_copies_remainders_into_the_left_copy() {
        use crate::engine::Budget;
        use crate::flownet::{push, residual};

        let (a, b) = golden();
        let (n, l) = glued_network(2, &a, &b).unwrap();
        let mut s = GluedStrategy::new(&n, l.clone()).unwrap();
        let opts = RunOptions {
            budget: Budget {
                max_jumps: 1,
                ..Budget::default()
            },
            debug_snapshots: false,
        };
        let mut f = run(&n, &Flow::zero(&n), &mut s, &opts).unwrap().final_flow;
        let (left, bridge) = (&l.gadgets[0], &l.recharges[0]);
        let res = |f: &Flow, id| residual(&n, f, id, Direction::Forward);
        assert!(res(&f, left.e_a).is_zero() && res(&f, left.e_b).is_zero());

        let pattern = glued_pattern(&n, &l, 2, Side::A, &a, &b).unwrap();
        for item in &pattern.items {
            let pushes = match item {
                RoundItem::Push { template, amount } => vec![(template.clone(), amount.clone())],
                RoundItem::Guarded(block) => block.pushes.clone(),
                RoundItem::Phase { .. } => break,
            };
            for (t, amount) in pushes {
                let (next, got) = push(&n, &f, &t.instantiate(&n, &f).unwrap()).unwrap();
                assert_eq!(got, amount);
                f = next;
            }
        }
        let ratio = pattern.ratio.clone();
        assert_eq!(res(&f, left.e_a), &a * &ratio);
        assert_eq!(res(&f, left.e_b), &b * &ratio);
        assert!(f.get(bridge.m_a).is_zero() && f.get(bridge.m_b).is_zero());
    }

    #[test]
    fn non_constant_quotient_is_refused() {
        let (n, l) =
            glued_network(2, &"7/2 + 1/2*sqrt(5)".parse().unwrap(), &QuadValue::one(5)).unwrap();
        assert!(matches!(
            GluedStrategy::new(&n, l),
            Err(ConstructionError::NotConstantQuotient(_))
        ));
    }
}
