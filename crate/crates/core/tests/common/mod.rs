#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use pzero::Graph;

/// Unit-weight Dijkstra over an adjacency list rebuilt from the edge
/// iterator. `None` marks unreachable nodes.
pub fn dijkstra(g: &Graph, source: usize) -> Vec<Option<u32>> {
    let n = g.node_count();
    let mut adj = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut dist: Vec<Option<u32>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(Reverse((0u32, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u].is_some_and(|best| d > best) {
            continue;
        }
        for &v in &adj[u] {
            let nd = d + 1;
            if dist[v].is_none_or(|cur| nd < cur) {
                dist[v] = Some(nd);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// Sort-based median.
pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// P(Binomial(trials, 1/2) >= successes).
pub fn sign_test_p_value(successes: usize, trials: usize) -> f64 {
    let mut log_fact = vec![0.0f64; trials + 1];
    for i in 1..=trials {
        log_fact[i] = log_fact[i - 1] + (i as f64).ln();
    }
    (successes..=trials)
        .map(|j| {
            (log_fact[trials] - log_fact[j] - log_fact[trials - j] - trials as f64 * 2f64.ln())
                .exp()
        })
        .sum()
}
