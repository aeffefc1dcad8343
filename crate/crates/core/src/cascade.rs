//! Independent cascade forward process, SIR(β) in synchronous rounds.
//!
//! In each round every currently infected node makes one Bernoulli(β)
//! attempt on each neighbor that is susceptible at the start of the round,
//! then is removed. Nodes hit by at least one successful attempt form the
//! next round's infected set. The process stops after `max_rounds` rounds
//! or as soon as no infected node remains.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::rng_from;

/// Round budget used when none is given.
pub const DEFAULT_ROUNDS: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CascadeParams {
    beta: f64,
    max_rounds: Option<u32>,
    seed: u64,
}

impl CascadeParams {
    /// `beta` must lie in `(0, 1]`. `max_rounds = None` runs until extinction.
    pub fn new(beta: f64, max_rounds: Option<u32>, seed: u64) -> Result<Self> {
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::invalid("beta", format!("{beta} is not in (0, 1]")));
        }
        Ok(CascadeParams {
            beta,
            max_rounds,
            seed,
        })
    }

    /// A cascade that never transmits (β = 0). Only meant for tests and
    /// degenerate-case checks; the observed set is always `{source}`.
    pub fn inert(max_rounds: Option<u32>, seed: u64) -> Self {
        CascadeParams {
            beta: 0.0,
            max_rounds,
            seed,
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn max_rounds(&self) -> Option<u32> {
        self.max_rounds
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Which snapshot the estimator observes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ObservedSet {
    /// Every node ever infected (infected ∪ removed).
    #[default]
    Cumulative,
    /// Only the most recent non-empty infection layer.
    Frontier,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeOutcome {
    pub source: NodeId,
    pub ever_infected: Vec<bool>,
    pub rounds_run: u32,
    /// `frontier_history[r]` lists the nodes infected at the start of round
    /// `r + 1`; entry 0 is `[source]`. Lists are in discovery order.
    pub frontier_history: Vec<Vec<NodeId>>,
}

impl CascadeOutcome {
    pub fn infected_count(&self) -> usize {
        self.frontier_history.iter().map(Vec::len).sum()
    }

    /// Ever-infected nodes in ascending id order.
    pub fn infected(&self) -> Vec<NodeId> {
        self.ever_infected
            .iter()
            .enumerate()
            .filter_map(|(u, &hit)| hit.then_some(u))
            .collect()
    }

    /// The observed infected set, ascending. Never empty.
    pub fn observed(&self, which: ObservedSet) -> Vec<NodeId> {
        match which {
            ObservedSet::Cumulative => self.infected(),
            ObservedSet::Frontier => {
                let mut last = self
                    .frontier_history
                    .iter()
                    .rev()
                    .find(|layer| !layer.is_empty())
                    .cloned()
                    .unwrap_or_else(|| vec![self.source]);
                last.sort_unstable();
                last
            }
        }
    }
}

/// Runs the cascade from `source`, drawing transmissions from `params.seed`.
pub fn run_cascade(g: &Graph, source: NodeId, params: &CascadeParams) -> Result<CascadeOutcome> {
    let mut rng = rng_from(params.seed);
    let beta = params.beta;
    run_cascade_with(g, source, params.max_rounds, |_, _| {
        beta > 0.0 && rng.random_bool(beta)
    })
}

/// Runs the cascade with a caller-supplied transmission oracle.
///
/// `transmit(u, v)` is called exactly once per attempt of infected `u` on
/// susceptible neighbor `v`, and decides whether it succeeds. Calls happen
/// in a deterministic order.
pub fn run_cascade_with<F>(
    g: &Graph,
    source: NodeId,
    max_rounds: Option<u32>,
    mut transmit: F,
) -> Result<CascadeOutcome>
where
    F: FnMut(NodeId, NodeId) -> bool,
{
    g.check_node(source)?;
    let n = g.node_count();
    let mut ever_infected = vec![false; n];
    // nodes infected in the current round stay attackable until the round ends
    let mut hit_this_round = vec![false; n];
    ever_infected[source] = true;

    let mut frontier_history = vec![vec![source]];
    let mut rounds_run = 0u32;
    loop {
        let frontier = frontier_history.last().expect("history starts non-empty");
        if frontier.is_empty() || max_rounds.is_some_and(|t| rounds_run >= t) {
            break;
        }
        let mut next = Vec::new();
        for &u in frontier {
            for &v in g.neighbors(u) {
                let susceptible = !ever_infected[v] || hit_this_round[v];
                if susceptible && transmit(u, v) && !hit_this_round[v] {
                    hit_this_round[v] = true;
                    ever_infected[v] = true;
                    next.push(v);
                }
            }
        }
        for &v in &next {
            hit_this_round[v] = false;
        }
        rounds_run += 1;
        frontier_history.push(next);
    }
    if frontier_history.len() > 1 && frontier_history.last().is_some_and(Vec::is_empty) {
        frontier_history.pop();
    }
    Ok(CascadeOutcome {
        source,
        ever_infected,
        rounds_run,
        frontier_history,
    })
}

/// Uniform node in `0..n`.
pub fn sample_source(n: usize, seed: u64) -> Result<NodeId> {
    if n == 0 {
        return Err(Error::invalid("n", "cannot sample from an empty node set"));
    }
    Ok(rng_from(seed).random_range(0..n))
}
