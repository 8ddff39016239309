//! Run artifacts re-checked by the standalone verifier, then a forged trace
//! caught by it.

use transflow::cli::verify_trace_text;
use transflow::constructions::{glued_network, GluedStrategy};
use transflow::engine::{run, RunOptions};
use transflow::exactfield::QuadValue;
use transflow::flownet::{Flow, NetworkDoc};

fn main() {
    let (n, layout) = glued_network(2, &QuadValue::golden(), &QuadValue::one(5)).unwrap();
    let mut s = GluedStrategy::new(&n, layout).unwrap().with_finish(true);
    let r = run(&n, &Flow::zero(&n), &mut s, &RunOptions::default()).unwrap();
    let network = serde_json::to_string(&NetworkDoc::from_network(&n)).unwrap();
    let report = serde_json::to_string(&r.to_doc()).unwrap();
    let trace = r.trace_jsonl();

    let out = verify_trace_text(&network, &trace, Some(&report)).unwrap();
    println!("honest trace ({} events):", trace.lines().count());
    out.notes.iter().for_each(|l| println!("  ok: {l}"));

    // Claim the first limit was reached one step earlier than it was.
    let forged = trace.replacen("{\"clock\":\"w\",", "{\"clock\":\"5\",", 1);
    let out = verify_trace_text(&network, &forged, None).unwrap();
    println!("forged trace:");
    out.violations
        .iter()
        .for_each(|v| println!("  violation: {v}"));
}
