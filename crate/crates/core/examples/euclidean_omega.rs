//! The Euclid gadget with a = φ, b = 1: a certified limit phase reaches
//! clock ω at value 3 + √5, while shortest paths finish in two steps.

use transflow::constructions::{euclidean_network, EuclidMode, EuclideanStrategy};
use transflow::engine::{run, Budget, EventKind, RunOptions, ShortestPath};
use transflow::exactfield::QuadValue;
use transflow::flownet::Flow;

fn main() {
    let (a, b) = (QuadValue::golden(), QuadValue::one(5));
    let (n, g) = euclidean_network(&a, &b).unwrap();
    println!(
        "{} vertices, {} arcs, unlabelled capacity {}",
        n.vertex_count(),
        n.arc_count(),
        n.arc(g.s_a).cap
    );

    let r = run(
        &n,
        &Flow::zero(&n),
        &mut EuclideanStrategy::new(g.clone(), EuclidMode::Certified),
        &RunOptions::default(),
    )
    .unwrap();
    for e in &r.trace {
        if let EventKind::LimitJump {
            depth,
            ratio,
            probe_rounds,
            value,
            ..
        } = &e.kind
        {
            println!("limit at {}: depth {depth}, ratio {ratio}, {probe_rounds} probe rounds, value {value}", e.clock);
        }
    }
    println!(
        "certified: clock {}, value {} (~{})",
        r.final_clock,
        r.final_value,
        r.final_value.to_decimal(12)
    );

    let opts = RunOptions {
        budget: Budget {
            max_steps: 40,
            max_jumps: 0,
        },
        debug_snapshots: false,
    };
    let c = run(
        &n,
        &Flow::zero(&n),
        &mut EuclideanStrategy::new(g, EuclidMode::Concrete),
        &opts,
    )
    .unwrap();
    let gap = &r.final_value - &c.final_value;
    println!(
        "concrete after {} steps: {} (gap ~{})",
        c.steps,
        c.final_value.to_decimal(12),
        gap.to_decimal(12)
    );

    let e = run(
        &n,
        &Flow::zero(&n),
        &mut ShortestPath,
        &RunOptions::default(),
    )
    .unwrap();
    println!(
        "shortest paths: clock {}, value {}",
        e.final_clock, e.final_value
    );
}
