//! Acceptance gate. Each criterion runs in isolation, is timed against its
//! budget, and prints one PASS or FAIL line.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::strategy::Strategy as Gen;
use proptest::test_runner::{Config, TestRunner};
use proptest::{prop_assert, prop_assert_eq};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{brute_min_cut, extreme_count, phi, q, random_rational_network, value_of};
use transflow::cli::bench_rows;
use transflow::cli::StrategyName;
use transflow::constructions::{
    euclidean_network, euclidean_schedule, glued_network, glued_pattern, EuclidMode,
    EuclideanStrategy, GadgetLayout, GluedLayout, GluedStrategy, Side,
};
use transflow::engine::{
    monitor_clock_bound, run, verify_certificate, AbortReason, Budget, Decision, EventKind,
    HaltReason, MaxBottleneck, PhaseCertificate, PhasePattern, RoundItem, RunOptions, RunReport,
    RunState, SeededRandom, ShortestPath, Strategy, StrategyError, DEFAULT_PROBE_ROUNDS,
};
use transflow::exactfield::QuadValue;
use transflow::flownet::{
    push, validate_network, ArcId, Direction, Flow, Network, NetworkSpec, PathTemplate, VertexId,
};
use transflow::ordinals::Ordinal;

type Check = fn();

fn main() {
    let criteria: [(&str, Option<u64>, Check); 8] = [
        ("1 euclidean omega-run", Some(5), euclidean_omega_run),
        ("2 residual fidelity", Some(5), residual_fidelity),
        ("3 extreme arcs at limits", None, extreme_arcs_at_limits),
        ("4 glued omega^2 and omega^3", Some(30), glued_runs),
        (
            "5 upper bound and exponent table",
            None,
            upper_bound_consistency,
        ),
        ("6 baseline termination and min cut", None, baseline_min_cut),
        ("7 certificate negative suite", None, certificate_negatives),
        (
            "8 exact arithmetic properties",
            Some(10),
            arithmetic_properties,
        ),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let took = started.elapsed();
        let over = budget.is_some_and(|s| took > Duration::from_secs(s));
        let limit = budget.map_or(String::new(), |s| format!(", limit {s}s"));
        let verdict = match (&outcome, over) {
            (Ok(()), false) => "PASS",
            _ => {
                failed += 1;
                "FAIL"
            }
        };
        println!(
            "{verdict} criterion {name} ({:.2}s{limit})",
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

fn golden_inputs() -> (QuadValue, QuadValue) {
    (phi(), QuadValue::one(5))
}

fn run_with(n: &Network, s: &mut dyn Strategy, budget: Budget, snapshots: bool) -> RunReport {
    let opts = RunOptions {
        budget,
        debug_snapshots: snapshots,
    };
    run(n, &Flow::zero(n), s, &opts).expect("zero flow is a valid start")
}

fn steps_only(max_steps: usize) -> Budget {
    Budget {
        max_steps,
        max_jumps: 0,
    }
}

fn bottlenecks(r: &RunReport) -> Vec<QuadValue> {
    r.trace
        .iter()
        .filter_map(|e| match &e.kind {
            EventKind::Augment { bottleneck, .. } => Some(q(bottleneck)),
            _ => None,
        })
        .collect()
}

fn snapshot_at<'a>(r: &'a RunReport, clock: &Ordinal) -> &'a Flow {
    &r.snapshots
        .iter()
        .find(|s| &s.clock == clock)
        .unwrap_or_else(|| panic!("no snapshot at {clock}"))
        .flow
}

// 1 -------------------------------------------------------------------------

fn euclidean_omega_run() {
    let (a, b) = golden_inputs();
    let (n, g) = euclidean_network(&a, &b).unwrap();
    let bound = (&a + &b).scale_int(4);
    let limit = q("3 + 1*sqrt(5)");

    assert_eq!(DEFAULT_PROBE_ROUNDS, 4);
    let r = run_with(
        &n,
        &mut EuclideanStrategy::new(g.clone(), EuclidMode::Certified),
        Budget::default(),
        false,
    );
    assert_eq!(r.halt, HaltReason::Stopped);
    assert_eq!(r.final_clock, Ordinal::omega());
    assert_eq!(r.final_value, limit);
    assert!(r.final_value <= bound);
    let probes: Vec<usize> = r
        .trace
        .iter()
        .filter_map(|e| match e.kind {
            EventKind::LimitJump { probe_rounds, .. } => Some(probe_rounds),
            _ => None,
        })
        .collect();
    assert_eq!(probes, vec![4]);

    // Sixty concrete rounds of four augmentations each.
    let rounds = 60;
    let concrete = run_with(
        &n,
        &mut EuclideanStrategy::new(g, EuclidMode::Concrete),
        steps_only(4 * rounds),
        false,
    );
    let pushes = bottlenecks(&concrete);
    assert_eq!(pushes.len(), 4 * rounds);
    let per_round: Vec<QuadValue> = pushes
        .chunks(4)
        .map(|c| c.iter().fold(QuadValue::zero(5), |acc, v| &acc + v))
        .collect();
    let ratio = phi().pow(-2);
    let first = &(&phi() + &phi()); // 2 + 2/φ = 2φ
    assert_eq!(per_round[0], *first);
    for w in per_round.windows(2) {
        assert_eq!(&w[0] * &ratio, w[1]);
    }
    let partial = per_round.iter().fold(QuadValue::zero(5), |acc, v| &acc + v);
    assert_eq!(partial, concrete.final_value);
    assert_eq!(partial, value_of(&n, &concrete.final_flow));
    let one = QuadValue::one(5);
    let tail = &(first * &ratio.pow(rounds as i32)) / &(&one - &ratio);
    assert_eq!(&limit - &partial, tail);
    assert!(partial <= bound);
}

// 2 -------------------------------------------------------------------------

/// Subtractive Euclid one subtraction at a time, written without the
/// library's quotient helper.
fn oracle_rows(a: &QuadValue, b: &QuadValue, rows: usize) -> Vec<(QuadValue, QuadValue)> {
    let mut out = vec![(a.clone(), b.clone())];
    let (mut a, mut b) = (a.clone(), b.clone());
    while out.len() < rows && !a.is_zero() && !b.is_zero() {
        while a >= b {
            a = &a - &b;
        }
        if !a.is_zero() {
            while b >= a {
                b = &b - &a;
            }
        }
        out.push((a.clone(), b.clone()));
    }
    out
}

fn labelled_residuals(n: &Network, g: &GadgetLayout, f: &Flow) -> (QuadValue, QuadValue) {
    (
        &n.arc(g.e_a).cap - f.get(g.e_a),
        &n.arc(g.e_b).cap - f.get(g.e_b),
    )
}

/// Residual pairs at every point where neither gate carries flow.
fn quiet_pairs(n: &Network, g: &GadgetLayout, r: &RunReport) -> Vec<(QuadValue, QuadValue)> {
    let zero = Flow::zero(n);
    std::iter::once(&zero)
        .chain(r.snapshots.iter().map(|s| &s.flow))
        .filter(|f| f.get(g.g_a).is_zero() && f.get(g.g_b).is_zero())
        .map(|f| labelled_residuals(n, g, f))
        .collect()
}

fn assert_rows_in_order(rows: &[(QuadValue, QuadValue)], seen: &[(QuadValue, QuadValue)]) {
    let mut at = 0;
    for (i, row) in rows.iter().enumerate() {
        let found = seen[at..].iter().position(|p| p == row);
        let offset = found.unwrap_or_else(|| panic!("row {i} {row:?} never appears"));
        at += offset;
    }
}

fn residual_fidelity() {
    let phases = 30;
    let (a, b) = golden_inputs();
    let schedule = euclidean_schedule(&a, &b, phases + 1).unwrap();
    let rows: Vec<_> = schedule
        .rows
        .iter()
        .map(|r| (r.a.clone(), r.b.clone()))
        .collect();
    assert_eq!(rows, oracle_rows(&a, &b, phases + 1));
    assert_eq!(rows.len(), phases + 1);
    let two = QuadValue::int(2, 5);
    for w in rows.windows(2) {
        assert!(&w[1].0 * &two <= w[0].0 && &w[1].1 * &two <= w[0].1);
        assert!(!w[1].0.commensurable(&w[1].1).unwrap());
    }
    let (n, g) = euclidean_network(&a, &b).unwrap();
    let r = run_with(
        &n,
        &mut EuclideanStrategy::new(g.clone(), EuclidMode::Concrete),
        steps_only(4 * phases),
        true,
    );
    assert_rows_in_order(&rows, &quiet_pairs(&n, &g, &r));
    assert_eq!(labelled_residuals(&n, &g, &r.final_flow), rows[phases]);

    let (a, b) = (QuadValue::int(8, 5), QuadValue::int(5, 5));
    let schedule = euclidean_schedule(&a, &b, 100).unwrap();
    assert!(schedule.finished);
    let rows: Vec<_> = schedule
        .rows
        .iter()
        .map(|r| (r.a.clone(), r.b.clone()))
        .collect();
    assert_eq!(rows, oracle_rows(&a, &b, 100));
    let (n, g) = euclidean_network(&a, &b).unwrap();
    let r = run_with(
        &n,
        &mut EuclideanStrategy::new(g.clone(), EuclidMode::Concrete),
        Budget::default(),
        true,
    );
    assert!(r.terminated);
    assert_rows_in_order(&rows, &quiet_pairs(&n, &g, &r));
    assert_eq!(r.final_value, brute_min_cut(&n));
}

// 3 -------------------------------------------------------------------------

fn extreme_arcs_at_limits() {
    let (a, b) = golden_inputs();
    let (n, g) = euclidean_network(&a, &b).unwrap();
    let r = run_with(
        &n,
        &mut EuclideanStrategy::new(g, EuclidMode::Certified),
        Budget::default(),
        false,
    );
    let at_omega = extreme_count(&n, snapshot_at(&r, &Ordinal::omega()));
    assert!(at_omega >= 2, "{at_omega} extreme arcs at w");
    assert!(r.monitors_pass());

    let (n, layout) = glued_network(2, &a, &b).unwrap();
    let r = run_with(
        &n,
        &mut GluedStrategy::new(&n, layout).unwrap(),
        Budget::default(),
        false,
    );
    let at_omega2 = extreme_count(&n, snapshot_at(&r, &Ordinal::omega_pow(2)));
    assert!(at_omega2 >= 3, "{at_omega2} extreme arcs at w^2");
    assert!(r.monitors_pass());
}

// 4 -------------------------------------------------------------------------

fn push_exact(n: &Network, f: &Flow, t: &PathTemplate, amount: &QuadValue) -> Flow {
    let path = t.instantiate(n, f).expect("template is augmenting");
    let (next, bottleneck) = push(n, f, &path).unwrap();
    assert_eq!(&bottleneck, amount);
    next
}

/// Execute the first round of the level-`level` pattern from `start` and
/// check every recharge block by hand.
fn replay_recharges(n: &Network, layout: &GluedLayout, level: usize, start: &Flow) {
    let (a, b) = golden_inputs();
    let pattern = glued_pattern(n, layout, level, Side::A, &a, &b).unwrap();
    let right = &layout.gadgets[level - 1];
    let bridge = &layout.recharges[level - 2];
    let middles = [bridge.m_a, bridge.m_b];
    let mut f = start.clone();
    let mut blocks = 0;
    for item in &pattern.items {
        match item {
            RoundItem::Push { template, amount } => f = push_exact(n, &f, template, amount),
            RoundItem::Guarded(block) => {
                let before = labelled_residuals(n, right, &f);
                assert!(middles.iter().all(|&m| f.get(m).is_zero()));
                for (t, amount) in &block.pushes {
                    f = push_exact(n, &f, t, amount);
                }
                assert_eq!(labelled_residuals(n, right, &f), before);
                assert!(middles.iter().all(|&m| f.get(m).is_zero()));
                blocks += 1;
            }
            RoundItem::Phase { .. } => break,
        }
    }
    assert_eq!(blocks, 2);
}

fn glued_runs() {
    let (a, b) = golden_inputs();
    for k in [2usize, 3] {
        let (n, layout) = glued_network(k, &a, &b).unwrap();
        let r = run_with(
            &n,
            &mut GluedStrategy::new(&n, layout.clone()).unwrap(),
            Budget::default(),
            false,
        );
        assert_eq!(
            r.final_clock,
            Ordinal::omega_pow(k as u32),
            "k={k}: {}",
            r.halt.describe()
        );
        assert!(r.final_value <= layout.big_capacity);
        if k == 2 {
            assert_eq!(layout.big_capacity, (&a + &b).scale_int(14));
        }
        assert!(r.guard_checks > 0);
        assert!(r.monitors_pass());
        let start = snapshot_at(&r, &Ordinal::omega_pow(k as u32 - 1));
        replay_recharges(&n, &layout, k, start);
    }
}

// 5 -------------------------------------------------------------------------

fn upper_bound_consistency() {
    let specs: Vec<String> = [
        "euclidean:phi:1",
        "euclidean:8:5",
        "glued:1:phi:1",
        "glued:2:phi:1",
        "glued:3:phi:1",
    ]
    .map(String::from)
    .to_vec();
    let strategies = [
        StrategyName::Euclidean,
        StrategyName::EuclideanConcrete,
        StrategyName::ShortestPath,
        StrategyName::MaxBottleneck,
        StrategyName::SeededRandom,
        StrategyName::Glued,
    ];
    for finish in [false, true] {
        let table = bench_rows(&specs, &strategies, 7, 200, finish, false).unwrap();
        for row in table.rows.iter().filter(|r| r.error.is_none()) {
            let clock: Ordinal = row.clock.parse().unwrap();
            assert!(clock < Ordinal::omega_pow(row.arcs as u32), "{row:?}");
        }
        assert_eq!(table.exponents, vec![(1, 1), (2, 2), (3, 3)]);
    }
    let (a, b) = golden_inputs();
    let (n, layout) = glued_network(3, &a, &b).unwrap();
    let r = run_with(
        &n,
        &mut GluedStrategy::new(&n, layout).unwrap().with_finish(true),
        Budget::default(),
        false,
    );
    assert!(r.terminated);
    assert!(monitor_clock_bound(&r, &n).pass);
}

// 6 -------------------------------------------------------------------------

fn baseline_min_cut() {
    let (a, b) = golden_inputs();
    let (n, _) = euclidean_network(&a, &b).unwrap();
    let r = run_with(&n, &mut ShortestPath, Budget::default(), false);
    assert!(r.terminated);
    assert!(r.steps <= n.vertex_count() * n.arc_count());
    assert!(r.steps <= 54);
    assert_eq!(r.final_value, q("12 + 4*sqrt(5)"));
    assert_eq!(r.final_value, (&a + &b).scale_int(8));
    assert_eq!(r.final_value, brute_min_cut(&n));

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..50u64 {
        let n = random_rational_network(&mut rng);
        let cut = brute_min_cut(&n);
        let strategies: [Box<dyn Strategy>; 3] = [
            Box::new(ShortestPath),
            Box::new(MaxBottleneck),
            Box::new(SeededRandom::new(i)),
        ];
        for mut s in strategies {
            let r = run_with(&n, s.as_mut(), Budget::default(), false);
            assert!(
                r.terminated,
                "network {i}, {}: {}",
                r.strategy,
                r.halt.describe()
            );
            assert_eq!(r.final_value, cut, "network {i}, {}", r.strategy);
        }
    }
}

// 7 -------------------------------------------------------------------------

struct OneShot(Option<PhaseCertificate>);

impl Strategy for OneShot {
    fn name(&self) -> String {
        "one_shot".into()
    }

    fn decide(&mut self, _: &RunState<'_>) -> Result<Decision, StrategyError> {
        Ok(self
            .0
            .take()
            .map_or(Decision::Stop, |c| Decision::LimitPhase(Box::new(c))))
    }
}

/// Reject through the verifier and through the engine, with state intact.
fn assert_rejected(n: &Network, cert: PhaseCertificate, reason: &str) -> String {
    let f0 = Flow::zero(n);
    let err = verify_certificate(n, &f0, &cert).expect_err("certificate must be rejected");
    assert_eq!(err.reason(), reason, "{err}");
    let r = run(n, &f0, &mut OneShot(Some(cert)), &RunOptions::default()).unwrap();
    match &r.halt {
        HaltReason::Aborted(AbortReason::CertificateRejected { reason: got, .. }) => {
            assert_eq!(got, reason)
        }
        other => panic!("expected a rejection, got {other:?}"),
    }
    assert_eq!(r.final_flow, f0);
    assert_eq!(r.final_clock, Ordinal::zero());
    assert_eq!((r.steps, r.jumps), (0, 0));
    err.to_string()
}

fn golden_certificate(n: &Network, g: &GadgetLayout) -> PhaseCertificate {
    let (a, b) = golden_inputs();
    let pattern = transflow::constructions::euclid_pattern(n, g, Side::A, &a, &b).unwrap();
    PhaseCertificate::from_pattern(&Flow::zero(n), pattern).unwrap()
}

fn certificate_negatives() {
    let (a, b) = golden_inputs();
    let (n, g) = euclidean_network(&a, &b).unwrap();
    let nudge = q("1/1000");

    let good = golden_certificate(&n, &g);
    assert!(verify_certificate(&n, &Flow::zero(&n), &good).is_ok());

    let mut cert = good.clone();
    let v = cert.declared_limit.get(g.e_a) - &nudge;
    cert.declared_limit.set(g.e_a, v);
    assert_rejected(&n, cert, "conservation");

    let mut cert = good.clone();
    let v = &n.arc(g.e_a).cap + &nudge;
    cert.declared_limit.set(g.e_a, v);
    assert_rejected(&n, cert, "capacity");

    let mut cert = good.clone();
    cert.pattern.ratio = QuadValue::one(5);
    assert_rejected(&n, cert, "ratio not < 1");

    let mut cert = good.clone();
    cert.pattern.ratio = -&phi().pow(-2);
    assert_rejected(&n, cert, "negative ratio");

    // Rounds 1 and 2 fit; the first push of round 3 needs more room on m_t
    // than this network leaves.
    let mut f = Flow::zero(&n);
    for round in 0..2 {
        let scale = phi().pow(-2 * round);
        for item in &good.pattern.items {
            if let RoundItem::Push { template, amount } = item {
                f = push_exact(&n, &f, template, &(amount * &scale));
            }
        }
    }
    let round3_first = phi().pow(-4);
    let mut spec: NetworkSpec = n.to_spec();
    spec.arcs[g.m_t.0].2 = f.get(g.m_t) + &(&round3_first / &QuadValue::int(2, 5));
    let choked = validate_network(&spec).unwrap();
    let detail = assert_rejected(&choked, golden_certificate(&choked, &g), "probe");
    assert!(detail.contains("probe round 3"), "{detail}");

    let single = validate_network(&NetworkSpec {
        d: 5,
        vertices: vec!["s".into(), "t".into()],
        source: VertexId(0),
        sink: VertexId(1),
        arcs: vec![(VertexId(0), VertexId(1), QuadValue::one(5))],
    })
    .unwrap();
    let half = q("1/2");
    let inner = PhasePattern {
        items: vec![RoundItem::Push {
            template: PathTemplate(vec![(ArcId(0), Direction::Forward)]),
            amount: half.clone(),
        }],
        ratio: half.clone(),
        declared_delta: vec![QuadValue::one(5)],
    };
    let outer = PhasePattern {
        items: vec![RoundItem::Phase {
            pattern: Box::new(inner),
            scale: half.clone(),
        }],
        ratio: half,
        declared_delta: vec![QuadValue::one(5)],
    };
    assert_eq!(outer.depth(), 2);
    let cert = PhaseCertificate {
        pattern: outer,
        declared_limit: Flow::from_values(vec![QuadValue::one(5)]),
        probe_rounds: DEFAULT_PROBE_ROUNDS,
    };
    assert_rejected(&single, cert, "nesting depth");
}

// 8 -------------------------------------------------------------------------

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: 10_000,
        failure_persistence: None,
        ..Config::default()
    })
}

fn quad(range: i64) -> impl Gen<Value = QuadValue> {
    (-range..=range, 1..=range, -range..=range, 1..=range)
        .prop_map(|(p1, q1, p2, q2)| QuadValue::from_parts(p1, q1, p2, q2, 5))
}

fn ordinal() -> impl Gen<Value = Ordinal> {
    proptest::collection::btree_map(0u32..6, 1u64..6, 0..4).prop_map(|m| {
        Ordinal::from_terms(m.into_iter().rev().collect()).expect("descending exponents")
    })
}

/// Sign of p + q√5 from a 50-digit truncation of √5.
fn decimal_sign(v: &QuadValue) -> i8 {
    let scale = BigInt::from(10u32).pow(50);
    let root5 = (BigInt::from(5u32) * &scale * &scale).sqrt();
    let (p, r) = (v.rat(), v.irr());
    let approx = p.numer() * r.denom() * &scale + r.numer() * p.denom() * &root5;
    // The truncation error is below |r.numer() * p.denom()|, far under the
    // gap that any nonzero value with these small coefficients keeps.
    if approx.is_zero() {
        0
    } else if approx.is_positive() {
        1
    } else {
        -1
    }
}

/// Ordinal sum by the absorption rule, on raw term lists.
fn oracle_add(x: &Ordinal, y: &Ordinal) -> Vec<(u32, u64)> {
    let Some(&(lead, coeff)) = y.terms().first() else {
        return x.terms().to_vec();
    };
    let mut out: Vec<(u32, u64)> = x.terms().iter().copied().filter(|t| t.0 > lead).collect();
    let merged = x
        .terms()
        .iter()
        .find(|t| t.0 == lead)
        .map_or(coeff, |t| t.1 + coeff);
    out.push((lead, merged));
    out.extend(y.terms().iter().skip(1).copied());
    out
}

fn oracle_cmp(x: &Ordinal, y: &Ordinal) -> std::cmp::Ordering {
    for (s, t) in x.terms().iter().zip(y.terms()) {
        let c = s.0.cmp(&t.0).then(s.1.cmp(&t.1));
        if c.is_ne() {
            return c;
        }
    }
    x.terms().len().cmp(&y.terms().len())
}

fn check(result: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) {
    if let Err(e) = result {
        panic!("{e}");
    }
}

fn arithmetic_properties() {
    let zero = QuadValue::zero(5);
    let one = QuadValue::one(5);
    check(runner().run(&(quad(30), quad(30), quad(30)), |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), one.clone());
        }
        let relations = [a < b, a == b, a > b].iter().filter(|&&x| x).count();
        prop_assert_eq!(relations, 1);
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        if a < b {
            prop_assert!(&a + &c < &b + &c);
            if c.is_positive() {
                prop_assert!(&a * &c < &b * &c);
            }
        }
        Ok(())
    }));
    check(runner().run(&quad(1_000), |v| {
        prop_assert_eq!(v.sign(), decimal_sign(&v), "{}", v);
        Ok(())
    }));
    assert_eq!(Ordinal::one().add(&Ordinal::omega()), Ordinal::omega());
    assert_ne!(Ordinal::omega().add(&Ordinal::one()), Ordinal::omega());
    check(
        runner().run(&(ordinal(), ordinal(), ordinal()), |(x, y, z)| {
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            let sum = x.add(&y);
            prop_assert_eq!(sum.terms().to_vec(), oracle_add(&x, &y));
            prop_assert_eq!(x.cmp(&y), oracle_cmp(&x, &y));
            let relations = [x < y, x == y, x > y].iter().filter(|&&r| r).count();
            prop_assert_eq!(relations, 1);
            Ok(())
        }),
    );
}
