//! Center-of-gravity source estimator.
//!
//! The center `c` is the mean embedded position of the infected nodes. Each
//! node is scored by the Euclidean distance of its embedded position to `c`;
//! the node with the smallest score is the patient-zero estimate.

use std::cmp::Ordering;

use crate::embed::EmbeddedCoordinates;
use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::par::{map_range, Execution};

/// Per-node score; `None` marks a node excluded from scoring.
pub type Score = Option<f64>;

#[derive(Clone, Debug, PartialEq)]
pub struct CenterOfGravity(pub Vec<f64>);

impl CenterOfGravity {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Mean of the infected nodes' embedded columns. The result does not depend
/// on the order of `infected`.
pub fn center_of_gravity(x: &EmbeddedCoordinates, infected: &[NodeId]) -> Result<CenterOfGravity> {
    if infected.is_empty() {
        return Err(Error::EmptyInfectedSet);
    }
    let mut ids = infected.to_vec();
    ids.sort_unstable();
    let mut sum = vec![0.0; x.k()];
    for &u in &ids {
        if u >= x.node_count() {
            return Err(Error::NodeOutOfRange {
                node: u,
                n: x.node_count(),
            });
        }
        let col = x
            .column(u)
            .ok_or(Error::DisconnectedInfectedSet { node: u })?;
        for (s, v) in sum.iter_mut().zip(col) {
            *s += v;
        }
    }
    let count = ids.len() as f64;
    Ok(CenterOfGravity(
        sum.into_iter().map(|s| s / count).collect(),
    ))
}

pub fn score_nodes(x: &EmbeddedCoordinates, c: &CenterOfGravity) -> Result<Vec<Score>> {
    score_nodes_with(x, c, Execution::default())
}

/// `D(u) = ‖X[·,u] − c‖₂` for every valid node, `None` otherwise.
pub fn score_nodes_with(
    x: &EmbeddedCoordinates,
    c: &CenterOfGravity,
    exec: Execution,
) -> Result<Vec<Score>> {
    if c.dim() != x.k() {
        return Err(Error::DimensionMismatch {
            expected: x.k(),
            found: c.dim(),
        });
    }
    let center = c.as_slice();
    Ok(map_range(exec, x.node_count(), |u| {
        x.column(u).map(|col| {
            col.iter()
                .zip(center)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankingResult {
    pub scores: Vec<Score>,
    /// Node ids by ascending score, ties by ascending id, excluded nodes last.
    pub ranking: Vec<NodeId>,
    pub true_source: NodeId,
    /// 1-based position of the true source in `ranking`.
    pub true_source_rank: usize,
    /// Rank counting every node tied with the true source as ahead of it.
    pub pessimistic_rank: usize,
}

impl RankingResult {
    pub fn node_count(&self) -> usize {
        self.ranking.len()
    }

    /// `true_source_rank / n`, in `(0, 1]`.
    pub fn normalized_rank(&self) -> f64 {
        self.true_source_rank as f64 / self.node_count() as f64
    }

    pub fn normalized_pessimistic_rank(&self) -> f64 {
        self.pessimistic_rank as f64 / self.node_count() as f64
    }

    /// The rank-one node.
    pub fn estimate(&self) -> NodeId {
        self.ranking[0]
    }
}

/// Scored nodes before excluded ones, then ascending score (exact
/// comparison, no tolerance).
fn cmp_scores(a: &Score, b: &Score) -> Ordering {
    match (a, b) {
        (Some(x), Some(y)) => x.total_cmp(y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
}

pub fn rank_nodes(scores: &[Score], true_source: NodeId) -> Result<RankingResult> {
    let n = scores.len();
    if n == 0 {
        return Err(Error::Empty("scores"));
    }
    if true_source >= n {
        return Err(Error::NodeOutOfRange {
            node: true_source,
            n,
        });
    }
    let mut ranking: Vec<NodeId> = (0..n).collect();
    ranking.sort_by(|&a, &b| cmp_scores(&scores[a], &scores[b]).then(a.cmp(&b)));

    let true_source_rank = ranking
        .iter()
        .position(|&u| u == true_source)
        .expect("ranking is a permutation")
        + 1;
    let own = &scores[true_source];
    let pessimistic_rank = scores
        .iter()
        .filter(|s| cmp_scores(s, own) != Ordering::Greater)
        .count();

    Ok(RankingResult {
        scores: scores.to_vec(),
        ranking,
        true_source,
        true_source_rank,
        pessimistic_rank,
    })
}
