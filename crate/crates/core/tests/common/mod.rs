//! Oracles shared by the integration tests. None of them call into the
//! library's flow algorithms.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use transflow::exactfield::QuadValue;
use transflow::flownet::{validate_network, Flow, Network, NetworkSpec, VertexId};

pub fn phi() -> QuadValue {
    QuadValue::golden()
}

pub fn q(text: &str) -> QuadValue {
    text.parse().expect("test literal")
}

/// Minimum s-t cut by enumerating every vertex subset that holds the source
/// and not the sink.
pub fn brute_min_cut(n: &Network) -> QuadValue {
    let (s, t) = (n.source().0, n.sink().0);
    let free: Vec<usize> = (0..n.vertex_count())
        .filter(|&v| v != s && v != t)
        .collect();
    let mut best: Option<QuadValue> = None;
    for mask in 0u32..(1 << free.len()) {
        let mut side = vec![false; n.vertex_count()];
        side[s] = true;
        for (bit, &v) in free.iter().enumerate() {
            side[v] = mask & (1 << bit) != 0;
        }
        let cut = n
            .arcs()
            .iter()
            .filter(|a| side[a.tail.0] && !side[a.head.0])
            .fold(QuadValue::zero(n.d()), |acc, a| &acc + &a.cap);
        if best.as_ref().is_none_or(|b| &cut < b) {
            best = Some(cut);
        }
    }
    best.expect("at least one cut")
}

/// Arcs at zero flow or at capacity, counted straight from the flow vector.
pub fn extreme_count(n: &Network, f: &Flow) -> usize {
    n.arcs()
        .iter()
        .filter(|a| {
            let v = f.get(a.id);
            v.is_zero() || v == &a.cap
        })
        .count()
}

/// Net flow out of the source.
pub fn value_of(n: &Network, f: &Flow) -> QuadValue {
    n.arcs().iter().fold(QuadValue::zero(n.d()), |acc, a| {
        if a.tail == n.source() {
            &acc + f.get(a.id)
        } else if a.head == n.source() {
            &acc - f.get(a.id)
        } else {
            acc
        }
    })
}

/// A small network with integer capacities in `1..=20`.
pub fn random_rational_network(rng: &mut ChaCha8Rng) -> Network {
    let vertices = rng.gen_range(2..=8);
    let arcs = rng.gen_range(1..=3 * vertices);
    let mut list = Vec::new();
    for _ in 0..arcs {
        let tail = rng.gen_range(0..vertices);
        let mut head = rng.gen_range(0..vertices);
        while head == tail {
            head = rng.gen_range(0..vertices);
        }
        list.push((
            VertexId(tail),
            VertexId(head),
            QuadValue::int(rng.gen_range(1..=20), 5),
        ));
    }
    validate_network(&NetworkSpec {
        d: 5,
        vertices: (0..vertices).map(|i| format!("v{i}")).collect(),
        source: VertexId(0),
        sink: VertexId(vertices - 1),
        arcs: list,
    })
    .expect("random network is well formed")
}
