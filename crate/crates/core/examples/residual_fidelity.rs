//! A concrete Euclid run reproduces the subtractive Euclid schedule in the
//! residual capacities of the two labelled arcs.

use transflow::constructions::{
    euclidean_network, euclidean_schedule, EuclidMode, EuclideanStrategy,
};
use transflow::engine::{run, Budget, RunOptions};
use transflow::exactfield::QuadValue;
use transflow::flownet::Flow;

fn show(a: QuadValue, b: QuadValue, rows: usize) {
    let schedule = euclidean_schedule(&a, &b, rows).unwrap();
    let (n, g) = euclidean_network(&a, &b).unwrap();
    let opts = RunOptions {
        budget: Budget {
            max_steps: 4 * rows,
            max_jumps: 0,
        },
        debug_snapshots: true,
    };
    let r = run(
        &n,
        &Flow::zero(&n),
        &mut EuclideanStrategy::new(g.clone(), EuclidMode::Concrete),
        &opts,
    )
    .unwrap();
    let residual = |f: &Flow| {
        (
            &n.arc(g.e_a).cap - f.get(g.e_a),
            &n.arc(g.e_b).cap - f.get(g.e_b),
        )
    };
    let seen: Vec<_> = std::iter::once(residual(&Flow::zero(&n)))
        .chain(r.snapshots.iter().map(|s| residual(&s.flow)))
        .collect();
    println!(
        "a = {a}, b = {b}: {} rows, finished {}",
        schedule.rows.len(),
        schedule.finished
    );
    for (i, row) in schedule.rows.iter().enumerate() {
        let hit = seen.contains(&(row.a.clone(), row.b.clone()));
        println!(
            "  row {i:>2}: a ~{:<14} b ~{:<14} in residuals: {hit}",
            row.a.to_decimal(10),
            row.b.to_decimal(10)
        );
    }
    println!(
        "  run: {} at clock {}, value {}",
        r.halt.describe(),
        r.final_clock,
        r.final_value
    );
}

fn main() {
    show(QuadValue::golden(), QuadValue::one(5), 8);
    show(QuadValue::int(8, 5), QuadValue::int(5, 5), 8);
}
