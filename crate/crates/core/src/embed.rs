//! Distance signatures and their Gaussian random projection.
//!
//! Row `i` of the signature matrix `F` holds the BFS distances from the
//! `i`-th infected node to every node. A `k × |I|` matrix `R` with
//! independent `N(0, 1/k)` entries maps each node's column of `F` to a point
//! in `R^k`: `X = R·F`, column `u` of `X` being the embedded position of `u`.
//!
//! Columns of nodes outside the infected component contain no finite
//! distances; they are flagged invalid and never embedded.

use std::io::Write;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::graph::{bfs_into, DistanceVector, Graph, NodeId};
use crate::par::{for_each_chunk, Execution};
use crate::rng::rng_from;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureMatrix {
    infected_ids: Vec<NodeId>,
    n: usize,
    /// `infected_ids.len() × n`, row-major, raw hop counts.
    data: Vec<u32>,
}

impl SignatureMatrix {
    pub fn infected_ids(&self) -> &[NodeId] {
        &self.infected_ids
    }

    pub fn rows(&self) -> usize {
        self.infected_ids.len()
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Distance from `infected_ids[row]` to `u`, `None` if unreachable.
    pub fn get(&self, row: usize, u: NodeId) -> Option<u32> {
        match self.data[row * self.n + u] {
            DistanceVector::UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    /// A column is valid when its node shares a component with the infected set.
    pub fn is_valid_column(&self, u: NodeId) -> bool {
        self.data[u] != DistanceVector::UNREACHABLE
    }

    pub fn valid_mask(&self) -> Vec<bool> {
        (0..self.n).map(|u| self.is_valid_column(u)).collect()
    }

    /// Writes `F` as CSV: header `row,0,1,..,n-1`, one line per infected node
    /// led by its id. Unreachable entries are left empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(
            std::iter::once("row".to_string()).chain((0..self.n).map(|u| u.to_string())),
        )?;
        for (row, id) in self.infected_ids.iter().enumerate() {
            let fields =
                (0..self.n).map(|u| self.get(row, u).map(|d| d.to_string()).unwrap_or_default());
            w.write_record(std::iter::once(id.to_string()).chain(fields))?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn build_signatures(g: &Graph, infected: &[NodeId]) -> Result<SignatureMatrix> {
    build_signatures_with(g, infected, Execution::default())
}

/// Builds `F` with one BFS per infected node. Rows follow ascending node id;
/// duplicate ids are collapsed.
pub fn build_signatures_with(
    g: &Graph,
    infected: &[NodeId],
    exec: Execution,
) -> Result<SignatureMatrix> {
    let mut ids = infected.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if ids.is_empty() {
        return Err(Error::EmptyInfectedSet);
    }
    for &id in &ids {
        g.check_node(id)?;
    }
    let n = g.node_count();
    let mut data = vec![DistanceVector::UNREACHABLE; ids.len() * n];
    for_each_chunk(exec, &mut data, n, |row, dist| {
        let mut queue = Vec::new();
        bfs_into(g, ids[row], dist, &mut queue);
    });
    if let Some(&node) = ids
        .iter()
        .find(|&&id| data[id] == DistanceVector::UNREACHABLE)
    {
        return Err(Error::DisconnectedInfectedSet { node });
    }
    Ok(SignatureMatrix {
        infected_ids: ids,
        n,
        data,
    })
}

#[derive(Clone, Debug, PartialEq)]
enum Entries {
    /// Column-major `k × input_dim`: entry `(l, i)` at `i * k + l`.
    Dense(Vec<f64>),
    Identity,
}

/// The projection `R`, either Gaussian or the identity ("exact mode").
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionMatrix {
    k: usize,
    input_dim: usize,
    seed: Option<u64>,
    entries: Entries,
}

impl ProjectionMatrix {
    /// Samples `k × input_dim` entries i.i.d. `N(0, 1/k)`.
    ///
    /// Variates come from the `StandardNormal` ziggurat sampler on a
    /// ChaCha8 stream seeded with `seed`, drawn row by row, each scaled by
    /// `1/sqrt(k)`.
    pub fn sample(k: usize, input_dim: usize, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid(
                "k",
                "projection dimension must be at least 1",
            ));
        }
        if input_dim == 0 {
            return Err(Error::invalid("input_dim", "must be at least 1"));
        }
        let scale = (1.0 / k as f64).sqrt();
        let mut rng = rng_from(seed);
        let mut data = vec![0.0; k * input_dim];
        for l in 0..k {
            for i in 0..input_dim {
                let z: f64 = rng.sample(StandardNormal);
                data[i * k + l] = z * scale;
            }
        }
        Ok(ProjectionMatrix {
            k,
            input_dim,
            seed: Some(seed),
            entries: Entries::Dense(data),
        })
    }

    /// Identity of size `dim`: the distortion-free exact mode.
    pub fn identity(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid(
                "k",
                "projection dimension must be at least 1",
            ));
        }
        Ok(ProjectionMatrix {
            k: dim,
            input_dim: dim,
            seed: None,
            entries: Entries::Identity,
        })
    }

    /// Builds a dense matrix from row-major `k × input_dim` values.
    pub fn from_rows(k: usize, input_dim: usize, rows: &[f64]) -> Result<Self> {
        if k == 0 || input_dim == 0 {
            return Err(Error::invalid("k", "matrix dimensions must be at least 1"));
        }
        if rows.len() != k * input_dim {
            return Err(Error::DimensionMismatch {
                expected: k * input_dim,
                found: rows.len(),
            });
        }
        let mut data = vec![0.0; k * input_dim];
        for l in 0..k {
            for i in 0..input_dim {
                data[i * k + l] = rows[l * input_dim + i];
            }
        }
        Ok(ProjectionMatrix {
            k,
            input_dim,
            seed: None,
            entries: Entries::Dense(data),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.entries, Entries::Identity)
    }

    pub fn get(&self, l: usize, i: usize) -> f64 {
        assert!(l < self.k && i < self.input_dim);
        match &self.entries {
            Entries::Dense(d) => d[i * self.k + l],
            Entries::Identity => f64::from(u8::from(l == i)),
        }
    }

    /// Writes `R · x` into `out` (length `k`), where `x(i)` yields the
    /// `i`-th input coordinate.
    fn apply_into(&self, x: impl Fn(usize) -> f64, out: &mut [f64]) {
        match &self.entries {
            Entries::Identity => {
                for (i, o) in out.iter_mut().enumerate() {
                    *o = x(i);
                }
            }
            Entries::Dense(d) => {
                out.fill(0.0);
                for (i, col) in d.chunks_exact(self.k).enumerate() {
                    let xi = x(i);
                    for (o, &r) in out.iter_mut().zip(col) {
                        *o += r * xi;
                    }
                }
            }
        }
    }

    /// `R · x` for a single input vector.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                found: x.len(),
            });
        }
        let mut out = vec![0.0; self.k];
        self.apply_into(|i| x[i], &mut out);
        Ok(out)
    }

    /// `R · M` for a row-major `input_dim × cols` matrix `M`. The result is
    /// returned column-major (`cols` blocks of `k` values).
    pub fn project_matrix(&self, m: &[f64], cols: usize, exec: Execution) -> Result<Vec<f64>> {
        if m.len() != self.input_dim * cols {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim * cols,
                found: m.len(),
            });
        }
        let mut out = vec![0.0; self.k * cols];
        if cols > 0 {
            for_each_chunk(exec, &mut out, self.k, |u, dst| {
                self.apply_into(|i| m[i * cols + u], dst)
            });
        }
        Ok(out)
    }
}

/// Embedded node positions `X = R·F`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedCoordinates {
    k: usize,
    /// Node-major: column `u` of `X` at `u * k .. (u + 1) * k`.
    coords: Vec<f64>,
    valid: Vec<bool>,
}

impl EmbeddedCoordinates {
    /// Wraps node-major coordinates. Entries of invalid columns are ignored.
    pub fn from_columns(k: usize, coords: Vec<f64>, valid: Vec<bool>) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("k", "dimension must be at least 1"));
        }
        if coords.len() != k * valid.len() {
            return Err(Error::DimensionMismatch {
                expected: k * valid.len(),
                found: coords.len(),
            });
        }
        Ok(EmbeddedCoordinates { k, coords, valid })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.valid.len()
    }

    pub fn is_valid(&self, u: NodeId) -> bool {
        self.valid[u]
    }

    pub fn valid_mask(&self) -> &[bool] {
        &self.valid
    }

    /// Embedded position of `u`, `None` for nodes outside the infected component.
    pub fn column(&self, u: NodeId) -> Option<&[f64]> {
        self.valid[u].then(|| &self.coords[u * self.k..(u + 1) * self.k])
    }

    /// Returns a copy with every coordinate multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        EmbeddedCoordinates {
            k: self.k,
            coords: self.coords.iter().map(|x| x * factor).collect(),
            valid: self.valid.clone(),
        }
    }

    /// Writes `X` as CSV: header `row,0,1,..,n-1`, one line per dimension.
    /// Invalid columns are left empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let n = self.node_count();
        let mut w = csv::Writer::from_writer(out);
        w.write_record(std::iter::once("row".to_string()).chain((0..n).map(|u| u.to_string())))?;
        for l in 0..self.k {
            let fields = (0..n).map(|u| {
                self.column(u)
                    .map(|c| format!("{:?}", c[l]))
                    .unwrap_or_default()
            });
            w.write_record(std::iter::once(l.to_string()).chain(fields))?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn embed(f: &SignatureMatrix, r: &ProjectionMatrix) -> Result<EmbeddedCoordinates> {
    embed_with(f, r, Execution::default())
}

/// Computes `R·F` over the valid columns of `F`.
pub fn embed_with(
    f: &SignatureMatrix,
    r: &ProjectionMatrix,
    exec: Execution,
) -> Result<EmbeddedCoordinates> {
    if r.input_dim() != f.rows() {
        return Err(Error::DimensionMismatch {
            expected: f.rows(),
            found: r.input_dim(),
        });
    }
    let k = r.k();
    let n = f.node_count();
    let valid = f.valid_mask();
    let mut coords = vec![0.0; k * n];
    for_each_chunk(exec, &mut coords, k, |u, dst| {
        if valid[u] {
            r.apply_into(|i| f64::from(f.data[i * n + u]), dst);
        }
    });
    Ok(EmbeddedCoordinates { k, coords, valid })
}

/// Smallest `k` with `k ≥ 8 ln(n) / ε²`.
pub fn jl_dimension(n: usize, epsilon: f64) -> Result<usize> {
    if n < 2 {
        return Err(Error::invalid("n", "need at least two points"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(
            "epsilon",
            format!("{epsilon} is not in (0, 1)"),
        ));
    }
    Ok((8.0 * (n as f64).ln() / (epsilon * epsilon)).ceil() as usize)
}

/// Default embedding dimension for an `n`-node graph: `⌈2·log₂ n⌉`, at least 1.
pub fn default_dimension(n: usize) -> usize {
    ((2.0 * (n.max(1) as f64).log2()).ceil() as usize).max(1)
}
