//! Baseline strategies. Each is a pure function of the residual graph, plus
//! an explicit seed for the random one.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Decision, RunState, Strategy, StrategyError};
use crate::exactfield::QuadValue;
use crate::flownet::{
    find_augmenting_path_bfs, residual_edges_from, AugPath, Flow, Network, ResidualEdge, VertexId,
};

/// Edmonds-Karp: fewest edges, smallest arc id first.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShortestPath;

impl Strategy for ShortestPath {
    fn name(&self) -> String {
        "shortest_path".into()
    }

    fn decide(&mut self, s: &RunState<'_>) -> Result<Decision, StrategyError> {
        Ok(find_augmenting_path_bfs(s.network, s.flow).map_or(Decision::Stop, Decision::Augment))
    }
}

/// Largest bottleneck; among those, fewest edges, then smallest arc ids.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxBottleneck;

impl Strategy for MaxBottleneck {
    fn name(&self) -> String {
        "max_bottleneck".into()
    }

    fn decide(&mut self, s: &RunState<'_>) -> Result<Decision, StrategyError> {
        let Some(width) = widest(s.network, s.flow) else {
            return Ok(Decision::Stop);
        };
        let path = bfs_with(s.network, s.flow, |e| e.residual >= width)
            .ok_or_else(|| StrategyError("no path at the widest bottleneck".into()))?;
        Ok(Decision::Augment(path))
    }
}

/// Largest achievable bottleneck of an s-t path, if any path exists.
/// Dijkstra on the max-min semiring; the source has unbounded width.
fn widest(n: &Network, f: &Flow) -> Option<QuadValue> {
    let count = n.vertex_count();
    let mut width: Vec<Option<QuadValue>> = vec![None; count];
    let mut done = vec![false; count];
    let mut v = n.source();
    loop {
        done[v.0] = true;
        if v == n.sink() {
            return width[v.0].clone();
        }
        for e in residual_edges_from(n, f, v) {
            let to = e.to_vertex(n);
            if done[to.0] {
                continue;
            }
            let through = match &width[v.0] {
                Some(w) if w < &e.residual => w.clone(),
                _ => e.residual,
            };
            if width[to.0].as_ref().is_none_or(|cur| &through > cur) {
                width[to.0] = Some(through);
            }
        }
        let next = (0..count)
            .filter(|&i| !done[i] && width[i].is_some())
            .max_by(|&a, &b| {
                width[a]
                    .partial_cmp(&width[b])
                    .expect("one field")
                    .then(b.cmp(&a))
            })?;
        v = VertexId(next);
    }
}

fn bfs_with(n: &Network, f: &Flow, keep: impl Fn(&ResidualEdge) -> bool) -> Option<AugPath> {
    let mut parent: Vec<Option<ResidualEdge>> = vec![None; n.vertex_count()];
    let mut seen = vec![false; n.vertex_count()];
    let mut queue = VecDeque::from([n.source()]);
    seen[n.source().0] = true;
    while let Some(v) = queue.pop_front() {
        for e in residual_edges_from(n, f, v).into_iter().filter(&keep) {
            let w = e.to_vertex(n);
            if !seen[w.0] {
                seen[w.0] = true;
                parent[w.0] = Some(e);
                queue.push_back(w);
            }
        }
    }
    if !seen[n.sink().0] {
        return None;
    }
    let mut edges = Vec::new();
    let mut v = n.sink();
    while v != n.source() {
        let e = parent[v.0].clone()?;
        v = e.from_vertex(n);
        edges.push(e);
    }
    edges.reverse();
    Some(AugPath { edges })
}

/// Randomized depth-first search with a ChaCha8 stream; identical seeds give
/// identical runs.
#[derive(Debug, Clone)]
pub struct SeededRandom {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SeededRandom {
    pub fn new(seed: u64) -> Self {
        SeededRandom {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Strategy for SeededRandom {
    fn name(&self) -> String {
        format!("seeded_random({})", self.seed)
    }

    fn decide(&mut self, s: &RunState<'_>) -> Result<Decision, StrategyError> {
        let n = s.network;
        let mut on_path = vec![false; n.vertex_count()];
        let mut dead = vec![false; n.vertex_count()];
        on_path[n.source().0] = true;
        // Each frame: remaining shuffled edges out of the frame's vertex.
        let mut stack: Vec<Vec<ResidualEdge>> = vec![self.shuffled(n, s.flow, n.source())];
        let mut path: Vec<ResidualEdge> = Vec::new();
        while let Some(frame) = stack.last_mut() {
            let Some(e) = frame.pop() else {
                stack.pop();
                if let Some(back) = path.pop() {
                    let v = back.to_vertex(n);
                    on_path[v.0] = false;
                    dead[v.0] = true;
                }
                continue;
            };
            let w = e.to_vertex(n);
            if on_path[w.0] || dead[w.0] {
                continue;
            }
            path.push(e);
            if w == n.sink() {
                return Ok(Decision::Augment(AugPath { edges: path }));
            }
            on_path[w.0] = true;
            let next = self.shuffled(n, s.flow, w);
            stack.push(next);
        }
        Ok(Decision::Stop)
    }
}

impl SeededRandom {
    fn shuffled(&mut self, n: &Network, f: &Flow, v: VertexId) -> Vec<ResidualEdge> {
        let mut out = residual_edges_from(n, f, v);
        out.shuffle(&mut self.rng);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flownet::{validate_network, ArcId, NetworkSpec};
    use crate::ordinals::Ordinal;

    fn net(arcs: &[(usize, usize, i64)], vertices: usize) -> Network {
        validate_network(&NetworkSpec {
            d: 5,
            vertices: (0..vertices).map(|i| format!("v{i}")).collect(),
            source: VertexId(0),
            sink: VertexId(vertices - 1),
            arcs: arcs
                .iter()
                .map(|&(u, v, c)| (VertexId(u), VertexId(v), QuadValue::int(c, 5)))
                .collect(),
        })
        .unwrap()
    }

    fn first_path(strategy: &mut dyn Strategy, n: &Network) -> AugPath {
        let f = Flow::zero(n);
        let clock = Ordinal::zero();
        let state = RunState {
            network: n,
            flow: &f,
            clock: &clock,
        };
        match strategy.decide(&state).unwrap() {
            Decision::Augment(p) => p,
            other => panic!("expected a path, got {other:?}"),
        }
    }

    #[test]
    fn max_bottleneck_prefers_the_wider_parallel_arc() {
        let n = net(&[(0, 1, 2), (0, 1, 3)], 2);
        let p = first_path(&mut MaxBottleneck, &n);
        assert_eq!(p.edges[0].arc, ArcId(1));
    }

    #[test]
    fn max_bottleneck_takes_the_long_wide_route() {
        // Direct arc of width 1 versus a two-hop route of width 4.
        let n = net(&[(0, 2, 1), (0, 1, 5), (1, 2, 4)], 3);
        let p = first_path(&mut MaxBottleneck, &n);
        assert_eq!(p.len(), 2);
        assert_eq!(widest(&n, &Flow::zero(&n)), Some(QuadValue::int(4, 5)));
    }

    #[test]
    fn seeded_random_is_reproducible() {
        let n = net(&[(0, 1, 3), (0, 2, 3), (1, 3, 2), (2, 3, 2), (1, 2, 1)], 4);
        let a: Vec<_> = (0..5)
            .map(|_| first_path(&mut SeededRandom::new(7), &n))
            .collect();
        let b: Vec<_> = (0..5)
            .map(|_| first_path(&mut SeededRandom::new(7), &n))
            .collect();
        assert_eq!(a, b);
        let p = &a[0];
        assert_eq!(p.vertices(&n).first(), Some(&VertexId(0)));
        assert_eq!(p.vertices(&n).last(), Some(&VertexId(3)));
    }
}
