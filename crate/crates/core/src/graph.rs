//! Undirected simple graphs in compressed sparse row form.
//!
//! Nodes are dense `0..n` ids. Each undirected edge is stored twice, once in
//! each endpoint's neighbor slice, and every slice is sorted ascending.

use std::io::BufRead;

use rand::Rng;
use rand_distr::Geometric;

use crate::error::{Error, Result};
use crate::rng::rng_from;

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Graph {
    /// Builds a graph over `n` nodes from an edge list.
    ///
    /// Duplicate and reversed-duplicate edges collapse to one edge.
    /// Self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        if n == 0 {
            return Err(Error::invalid("n", "graph needs at least one node"));
        }
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if u == v {
                return Err(Error::invalid("edges", format!("self-loop on node {u}")));
            }
            pairs.push((u.min(v), u.max(v)));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_sorted_unique_pairs(n, &pairs))
    }

    /// `pairs` must hold `u < v`, sorted lexicographically, without duplicates.
    /// Neighbor slices then come out sorted without a separate sort pass.
    fn from_sorted_unique_pairs(n: usize, pairs: &[(NodeId, NodeId)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in pairs {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        for &(u, v) in pairs {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        Graph { offsets, targets }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Iterates every undirected edge once as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub(crate) fn check_node(&self, node: NodeId) -> Result<()> {
        if node < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node,
                n: self.node_count(),
            })
        }
    }
}

/// Samples G(n, p).
///
/// Walks the `n(n-1)/2` unordered pairs in lexicographic order and jumps
/// between successive edges with geometrically distributed gaps, so the cost
/// is O(n + m) expected instead of one coin flip per pair.
pub fn generate_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("n", "graph needs at least one node"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid("p", format!("{p} is not in [0, 1]")));
    }
    let mut pairs = Vec::new();
    if p > 0.0 && n > 1 {
        let gaps = Geometric::new(p).map_err(|e| Error::invalid("p", e.to_string()))?;
        let mut rng = rng_from(seed);
        pairs.reserve(((n as f64) * (n as f64 - 1.0) * p / 2.0 * 1.1) as usize);
        // (u, v) is the next candidate pair; `skip` failures precede the next edge.
        let (mut u, mut v) = (0usize, 1usize);
        loop {
            let mut skip = rng.sample(gaps);
            // advance (u, v) by `skip` pairs, row by row
            while skip > 0 {
                let left_in_row = (n - v) as u64;
                if skip < left_in_row {
                    v += skip as usize;
                    skip = 0;
                } else {
                    skip -= left_in_row;
                    u += 1;
                    v = u + 1;
                    if v >= n {
                        break;
                    }
                }
            }
            if v >= n {
                break;
            }
            pairs.push((u, v));
            v += 1;
            if v == n {
                u += 1;
                v = u + 1;
                if v >= n {
                    break;
                }
            }
        }
    }
    Ok(Graph::from_sorted_unique_pairs(n, &pairs))
}

/// Reads a whitespace-separated edge list.
///
/// Blank lines and lines starting with `#` are skipped. Node ids are used
/// as-is; the graph has `max_id + 1` nodes.
pub fn load_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_id = None;
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut next_id = || -> Result<NodeId> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                reason: "expected two node ids".into(),
            })?;
            tok.parse::<NodeId>().map_err(|_| Error::Parse {
                line: line_no,
                reason: format!("`{tok}` is not a non-negative integer node id"),
            })
        };
        let u = next_id()?;
        let v = next_id()?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: line_no,
                reason: format!("unexpected token `{extra}`"),
            });
        }
        if u == v {
            return Err(Error::SelfLoop {
                line: line_no,
                node: u,
            });
        }
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let n = max_id.ok_or(Error::Empty("edge list"))? + 1;
    Graph::from_edges(n, edges)
}

/// Hop distances from one source to every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceVector {
    source: NodeId,
    dist: Vec<u32>,
}

impl DistanceVector {
    /// Raw marker for nodes outside the source's component. Never a valid
    /// hop count; use [`DistanceVector::get`] to see it as `None`.
    pub const UNREACHABLE: u32 = u32::MAX;

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn get(&self, u: NodeId) -> Option<u32> {
        match self.dist[u] {
            Self::UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn is_reachable(&self, u: NodeId) -> bool {
        self.dist[u] != Self::UNREACHABLE
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    /// Raw distances, with [`DistanceVector::UNREACHABLE`] markers.
    pub fn as_raw(&self) -> &[u32] {
        &self.dist
    }

    pub fn iter(&self) -> impl Iterator<Item = Option<u32>> + '_ {
        (0..self.dist.len()).map(|u| self.get(u))
    }
}

pub fn bfs(g: &Graph, source: NodeId) -> Result<DistanceVector> {
    g.check_node(source)?;
    let mut dist = vec![DistanceVector::UNREACHABLE; g.node_count()];
    let mut queue = Vec::new();
    bfs_into(g, source, &mut dist, &mut queue);
    Ok(DistanceVector { source, dist })
}

/// BFS writing into a caller-owned row. `dist` must be filled with
/// `UNREACHABLE` and have length `n`; `queue` is scratch space.
pub(crate) fn bfs_into(g: &Graph, source: NodeId, dist: &mut [u32], queue: &mut Vec<NodeId>) {
    debug_assert_eq!(dist.len(), g.node_count());
    queue.clear();
    dist[source] = 0;
    queue.push(source);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let next = dist[u] + 1;
        for &v in g.neighbors(u) {
            if dist[v] == DistanceVector::UNREACHABLE {
                dist[v] = next;
                queue.push(v);
            }
        }
    }
}
