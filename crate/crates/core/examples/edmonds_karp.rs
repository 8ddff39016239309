//! Shortest augmenting paths on a small integer network, checked against
//! the minimum cut.

use transflow::engine::{run, RunOptions, ShortestPath};
use transflow::exactfield::QuadValue;
use transflow::flownet::{extreme_arcs, min_cut, validate_network, Flow, NetworkSpec, VertexId};

fn main() {
    let cap = |c| QuadValue::int(c, 5);
    let arcs = [
        (0, 1, 10),
        (0, 2, 5),
        (1, 2, 15),
        (1, 3, 5),
        (2, 4, 10),
        (3, 4, 10),
        (3, 5, 10),
        (4, 5, 10),
    ];
    let n = validate_network(&NetworkSpec {
        d: 5,
        vertices: ["s", "a", "b", "c", "d", "t"].map(String::from).to_vec(),
        source: VertexId(0),
        sink: VertexId(5),
        arcs: arcs
            .iter()
            .map(|&(u, v, c)| (VertexId(u), VertexId(v), cap(c)))
            .collect(),
    })
    .expect("well formed");

    let r = run(
        &n,
        &Flow::zero(&n),
        &mut ShortestPath,
        &RunOptions::default(),
    )
    .unwrap();
    println!(
        "halt: {}, clock {}, value {}",
        r.halt.describe(),
        r.final_clock,
        r.final_value
    );
    let cut = min_cut(&n);
    let names: Vec<&str> = cut.source_side.iter().map(|&v| n.label(v)).collect();
    println!("min cut {} with source side {names:?}", cut.value);
    assert_eq!(cut.value, r.final_value);
    println!(
        "{} extreme arcs at the maximum flow",
        extreme_arcs(&n, &r.final_flow).len()
    );
    for e in r.trace.iter().take(4) {
        println!("{}", serde_json::to_string(e).unwrap());
    }
}
