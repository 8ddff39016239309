//! Glued copies of the gadget: k levels give clock ω^k with every recharge
//! guarded, and the network grows by a fixed number of arcs per level.

use transflow::constructions::{glued_network, GluedLayout, GluedStrategy};
use transflow::engine::{run, RunOptions};
use transflow::exactfield::QuadValue;
use transflow::flownet::Flow;

fn main() {
    let (a, b) = (QuadValue::golden(), QuadValue::one(5));
    println!(
        "{:>2} {:>5} {:>5} {:>7}  {:<6} {:<16} {:>7}  guards",
        "k", "arcs", "verts", "cap", "clock", "value", "~value"
    );
    for k in 1..=4 {
        let (n, layout) = glued_network(k, &a, &b).unwrap();
        let mut s = GluedStrategy::new(&n, layout).unwrap();
        let r = run(&n, &Flow::zero(&n), &mut s, &RunOptions::default()).unwrap();
        assert!(r.monitors_pass());
        println!(
            "{k:>2} {:>5} {:>5} {:>4}(a+b)  {:<6} {:<16} {:>7}  {}",
            n.arc_count(),
            n.vertex_count(),
            GluedLayout::capacity_factor_for(k),
            r.final_clock.to_string(),
            r.final_value.to_string(),
            r.final_value.to_decimal(3),
            r.guard_checks
        );
    }
}
