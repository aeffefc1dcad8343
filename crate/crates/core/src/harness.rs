//! Seeded experiment runs and parameter sweeps.
//!
//! One run generates (or reuses) a graph, samples a source, runs the
//! cascade, embeds the observed set and ranks the true source. A sweep
//! repeats that `runs` times for each value of one parameter.
//!
//! Seeding: the graph, source and cascade streams of run `r` derive from
//! `(master_seed, r)` only, so every sweep value sees the same graphs and,
//! where the swept parameter allows, the same cascades. The projection and
//! null-score streams derive from `(master_seed, sweep_index, r)`.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::cascade::{run_cascade, sample_source, CascadeOutcome, CascadeParams, ObservedSet};
use crate::embed::{build_signatures_with, default_dimension, embed_with, ProjectionMatrix};
use crate::error::{Error, Result};
use crate::estimator::{center_of_gravity, rank_nodes, score_nodes_with, RankingResult};
use crate::graph::{generate_er, Graph};
use crate::par::Execution;
use crate::rng::{derive, rng_from, tag};

/// How edge density is given.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Density {
    /// Expected degree `d`; `p = d / (n − 1)`.
    Degree(f64),
    Probability(f64),
}

impl Density {
    pub fn probability(self, n: usize) -> f64 {
        match self {
            Density::Probability(p) => p,
            Density::Degree(_) if n < 2 => 0.0,
            Density::Degree(d) => d / (n - 1) as f64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    /// `⌈2·log₂ n⌉`.
    Auto,
    Fixed(usize),
    /// Identity projection, `k = |I|`.
    Exact,
}

impl Dimension {
    fn resolve(self, n: usize) -> Option<usize> {
        match self {
            Dimension::Auto => Some(default_dimension(n)),
            Dimension::Fixed(k) => Some(k),
            Dimension::Exact => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EstimatorKind {
    #[default]
    Embedding,
    /// Uniform random scores; the chance baseline.
    Null,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    N,
    P,
    Beta,
    K,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::N => "n",
            SweepParam::P => "p",
            SweepParam::Beta => "beta",
            SweepParam::K => "k",
        }
    }

    /// Grid used when no values are given.
    pub fn default_values(self) -> Vec<f64> {
        match self {
            SweepParam::N => vec![500.0, 1000.0, 2000.0, 5000.0, 10_000.0],
            SweepParam::P => vec![1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3, 1e-2],
            SweepParam::Beta => vec![0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5],
            SweepParam::K => vec![1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0],
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n" => Ok(SweepParam::N),
            "p" => Ok(SweepParam::P),
            "beta" => Ok(SweepParam::Beta),
            "k" => Ok(SweepParam::K),
            other => Err(Error::invalid(
                "param",
                format!("`{other}` is not one of n, p, beta, k"),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub n: usize,
    pub density: Density,
    pub beta: f64,
    /// Round budget `t`; `None` runs to extinction.
    pub rounds: Option<u32>,
    pub dimension: Dimension,
    pub runs: usize,
    pub master_seed: u64,
    pub sweep: Option<Sweep>,
    pub estimator: EstimatorKind,
    pub observed: ObservedSet,
    /// Fixed input graph; when set, `n` and `density` are ignored.
    pub graph: Option<Arc<Graph>>,
    /// Disable transmission entirely (β = 0). Degenerate-case testing only.
    pub inert: bool,
    pub execution: Execution,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n: 10_000,
            density: Density::Degree(10.0),
            beta: 0.25,
            rounds: Some(crate::cascade::DEFAULT_ROUNDS),
            dimension: Dimension::Auto,
            runs: 100,
            master_seed: 0,
            sweep: None,
            estimator: EstimatorKind::Embedding,
            observed: ObservedSet::Cumulative,
            graph: None,
            inert: false,
            execution: Execution::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn node_count(&self) -> usize {
        self.graph.as_ref().map_or(self.n, |g| g.node_count())
    }

    pub fn probability(&self) -> f64 {
        match &self.graph {
            Some(g) => {
                let n = g.node_count() as f64;
                if n < 2.0 {
                    0.0
                } else {
                    2.0 * g.edge_count() as f64 / (n * (n - 1.0))
                }
            }
            None => self.density.probability(self.n),
        }
    }

    /// Checks one sweep point (the sweep itself is ignored).
    pub fn validate_point(&self) -> Result<()> {
        if self.graph.is_none() {
            if self.n == 0 {
                return Err(Error::invalid("n", "graph needs at least one node"));
            }
            let p = self.probability();
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(
                    "p",
                    format!("edge probability {p} is not in [0, 1]"),
                ));
            }
        }
        if !self.inert && !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::invalid(
                "beta",
                format!("{} is not in (0, 1]", self.beta),
            ));
        }
        if self.dimension == Dimension::Fixed(0) {
            return Err(Error::invalid(
                "k",
                "embedding dimension must be at least 1",
            ));
        }
        if self.runs == 0 {
            return Err(Error::invalid("runs", "need at least one run"));
        }
        Ok(())
    }

    /// The configuration at one sweep value.
    pub fn at(&self, param: SweepParam, value: f64) -> Result<ExperimentConfig> {
        let mut c = self.clone();
        c.sweep = None;
        match param {
            SweepParam::N | SweepParam::P if self.graph.is_some() => {
                return Err(Error::invalid(
                    "param",
                    format!("cannot sweep `{param}` over a fixed input graph"),
                ));
            }
            SweepParam::N => c.n = integer_value("n", value)?,
            SweepParam::P => c.density = Density::Probability(value),
            SweepParam::Beta => c.beta = value,
            SweepParam::K => c.dimension = Dimension::Fixed(integer_value("k", value)?),
        }
        c.validate_point()?;
        Ok(c)
    }

    fn cascade_params(&self, seed: u64) -> Result<CascadeParams> {
        if self.inert {
            Ok(CascadeParams::inert(self.rounds, seed))
        } else {
            CascadeParams::new(self.beta, self.rounds, seed)
        }
    }
}

fn integer_value(name: &'static str, value: f64) -> Result<usize> {
    if value >= 1.0 && value.fract() == 0.0 && value <= u32::MAX as f64 {
        Ok(value as usize)
    } else {
        Err(Error::invalid(
            name,
            format!("{value} is not a positive integer"),
        ))
    }
}

/// Embedding dimension column: a number, or `exact` for the identity projection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KValue {
    Fixed(usize),
    Exact,
}

impl fmt::Display for KValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KValue::Fixed(k) => write!(f, "{k}"),
            KValue::Exact => f.write_str("exact"),
        }
    }
}

impl Serialize for KValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One line of `runs.csv`. Field order is the column order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub run_id: usize,
    pub sweep_value: Option<f64>,
    pub n: usize,
    pub p: f64,
    pub beta: f64,
    pub t: Option<u32>,
    pub k: KValue,
    pub seed: u64,
    pub infected_count: usize,
    pub rounds_run: u32,
    pub true_source: usize,
    pub true_source_rank: usize,
    pub pessimistic_rank: usize,
    pub normalized_rank: f64,
    pub wall_time_ms: f64,
}

/// Everything produced by one run.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub record: RunRecord,
    pub outcome: CascadeOutcome,
    pub ranking: RankingResult,
}

/// Position of a run within a sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunPoint {
    pub sweep_index: usize,
    pub run_index: usize,
    pub sweep_value: Option<f64>,
}

/// Per-run seed shared by every sweep value.
pub fn run_seed(master_seed: u64, run_index: usize) -> u64 {
    derive(master_seed, &[run_index as u64])
}

/// The graph used by run `run_index`: the fixed input graph, or a fresh
/// G(n, p) sample.
pub fn run_graph(
    config: &ExperimentConfig,
    run_index: usize,
) -> Result<std::borrow::Cow<'_, Graph>> {
    match &config.graph {
        Some(g) => Ok(std::borrow::Cow::Borrowed(g.as_ref())),
        None => {
            let seed = run_seed(config.master_seed, run_index);
            let p = config.density.probability(config.n);
            Ok(std::borrow::Cow::Owned(generate_er(
                config.n,
                p,
                derive(seed, &[tag::GRAPH]),
            )?))
        }
    }
}

/// The projection used at `point` for an observed set of `rows` nodes.
pub fn run_projection(
    config: &ExperimentConfig,
    point: RunPoint,
    rows: usize,
) -> Result<ProjectionMatrix> {
    match config.dimension.resolve(config.node_count()) {
        Some(k) => ProjectionMatrix::sample(
            k,
            rows,
            derive(
                config.master_seed,
                &[
                    point.sweep_index as u64,
                    point.run_index as u64,
                    tag::PROJECTION,
                ],
            ),
        ),
        None => ProjectionMatrix::identity(rows),
    }
}

/// Executes one run at `point`. Deterministic in `(config, point)`.
pub fn run_point(config: &ExperimentConfig, point: RunPoint) -> Result<RunOutput> {
    config.validate_point()?;
    let started = Instant::now();
    let exec = config.execution;
    let seed = run_seed(config.master_seed, point.run_index);

    let graph = run_graph(config, point.run_index)?;
    let n = graph.node_count();
    let source = sample_source(n, derive(seed, &[tag::SOURCE]))?;
    let outcome = run_cascade(
        &graph,
        source,
        &config.cascade_params(derive(seed, &[tag::CASCADE]))?,
    )?;
    let observed = outcome.observed(config.observed);

    let k = config.dimension.resolve(n);
    let scores = match config.estimator {
        EstimatorKind::Embedding => {
            let signatures = build_signatures_with(&graph, &observed, exec)?;
            let projection = run_projection(config, point, signatures.rows())?;
            let coords = embed_with(&signatures, &projection, exec)?;
            let center = center_of_gravity(&coords, &observed)?;
            score_nodes_with(&coords, &center, exec)?
        }
        EstimatorKind::Null => {
            let mut rng = rng_from(derive(
                config.master_seed,
                &[
                    point.sweep_index as u64,
                    point.run_index as u64,
                    tag::NULL_SCORES,
                ],
            ));
            (0..n).map(|_| Some(rng.random::<f64>())).collect()
        }
    };
    let ranking = rank_nodes(&scores, source)?;

    let record = RunRecord {
        run_id: point.run_index,
        sweep_value: point.sweep_value,
        n,
        p: config.probability(),
        beta: if config.inert { 0.0 } else { config.beta },
        t: config.rounds,
        k: k.map_or(KValue::Exact, KValue::Fixed),
        seed,
        infected_count: outcome.infected_count(),
        rounds_run: outcome.rounds_run,
        true_source: source,
        true_source_rank: ranking.true_source_rank,
        pessimistic_rank: ranking.pessimistic_rank,
        normalized_rank: ranking.normalized_rank(),
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    Ok(RunOutput {
        record,
        outcome,
        ranking,
    })
}

/// A single run with run index 0 and no sweep.
pub fn run_single(config: &ExperimentConfig) -> Result<RunRecord> {
    if config.sweep.is_some() {
        return Err(Error::invalid(
            "sweep",
            "run_single takes a config without a sweep",
        ));
    }
    run_point(
        config,
        RunPoint {
            sweep_index: 0,
            run_index: 0,
            sweep_value: None,
        },
    )
    .map(|o| o.record)
}

/// Runs every `(value, run)` pair of the sweep and streams the records as CSV
/// to `sink`, ordered by sweep index then run id. Returns the records in the
/// same order.
pub fn run_sweep<W: Write + Send>(config: &ExperimentConfig, sink: W) -> Result<Vec<RunRecord>> {
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| Error::invalid("sweep", "no sweep parameter set"))?;
    if sweep.values.is_empty() {
        return Err(Error::invalid("values", "sweep value list is empty"));
    }
    let points = sweep
        .values
        .iter()
        .map(|&v| config.at(sweep.param, v))
        .collect::<Result<Vec<_>>>()?;

    let jobs: Vec<(usize, RunPoint)> = (0..points.len())
        .flat_map(|s| (0..config.runs).map(move |r| (s, r)))
        .enumerate()
        .map(|(idx, (s, r))| {
            (
                idx,
                RunPoint {
                    sweep_index: s,
                    run_index: r,
                    sweep_value: Some(sweep.values[s]),
                },
            )
        })
        .collect();

    let mut writer = csv::Writer::from_writer(sink);
    let records = if config.execution.is_parallel() {
        run_jobs_parallel(&points, &jobs, &mut writer)?
    } else {
        let mut out = Vec::with_capacity(jobs.len());
        for (_, point) in &jobs {
            let rec = run_point(&points[point.sweep_index], *point)?.record;
            writer.serialize(&rec)?;
            out.push(rec);
        }
        out
    };
    writer.flush()?;
    Ok(records)
}

#[cfg(feature = "parallel")]
fn run_jobs_parallel<W: Write + Send>(
    points: &[ExperimentConfig],
    jobs: &[(usize, RunPoint)],
    writer: &mut csv::Writer<W>,
) -> Result<Vec<RunRecord>> {
    use rayon::prelude::*;
    use std::sync::mpsc;

    let (tx, rx) = mpsc::channel::<(usize, RunRecord)>();
    std::thread::scope(|scope| {
        // single writer, reorders completed runs into job order
        let drain = scope.spawn(move || -> Result<Vec<RunRecord>> {
            let mut pending = std::collections::BTreeMap::new();
            let mut out = Vec::new();
            for (idx, rec) in rx {
                pending.insert(idx, rec);
                while let Some(rec) = pending.remove(&out.len()) {
                    writer.serialize(&rec)?;
                    out.push(rec);
                }
            }
            Ok(out)
        });
        let computed = jobs.par_iter().try_for_each_with(tx, |tx, &(idx, point)| {
            let mut cfg = points[point.sweep_index].clone();
            cfg.execution = Execution::Sequential;
            let rec = run_point(&cfg, point)?.record;
            tx.send((idx, rec))
                .map_err(|_| Error::Io(std::io::Error::other("run writer stopped")))
        });
        let written = drain.join().expect("writer thread panicked");
        match (computed, written) {
            (_, Err(e)) => Err(e),
            (Err(e), _) => Err(e),
            (Ok(()), Ok(out)) => Ok(out),
        }
    })
}

#[cfg(not(feature = "parallel"))]
fn run_jobs_parallel<W: Write + Send>(
    _points: &[ExperimentConfig],
    _jobs: &[(usize, RunPoint)],
    _writer: &mut csv::Writer<W>,
) -> Result<Vec<RunRecord>> {
    unreachable!("parallel execution requires the `parallel` feature")
}

/// Statistics of `normalized_rank` for one sweep value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub param: String,
    pub sweep_value: Option<f64>,
    pub runs: usize,
    pub median: f64,
    pub mean: f64,
    pub q1: f64,
    pub q3: f64,
    pub iqr: f64,
    pub min: f64,
    pub max: f64,
}

/// Linear-interpolation quantile (`(N−1)·q` rule) of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Groups records by sweep value, in order of first appearance.
pub fn aggregate(records: &[RunRecord], param: &str) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(Error::Empty("run records"));
    }
    let mut groups: Vec<(Option<f64>, Vec<f64>)> = Vec::new();
    for rec in records {
        let key = rec.sweep_value;
        let same = |k: &Option<f64>| k.map(f64::to_bits) == key.map(f64::to_bits);
        match groups.iter_mut().find(|(k, _)| same(k)) {
            Some((_, v)) => v.push(rec.normalized_rank),
            None => groups.push((key, vec![rec.normalized_rank])),
        }
    }
    Ok(groups
        .into_iter()
        .map(|(value, mut ranks)| {
            ranks.sort_by(f64::total_cmp);
            let q1 = quantile(&ranks, 0.25);
            let q3 = quantile(&ranks, 0.75);
            SummaryRow {
                param: param.to_string(),
                sweep_value: value,
                runs: ranks.len(),
                median: quantile(&ranks, 0.5),
                mean: ranks.iter().sum::<f64>() / ranks.len() as f64,
                q1,
                q3,
                iqr: q3 - q1,
                min: ranks[0],
                max: ranks[ranks.len() - 1],
            }
        })
        .collect())
}

pub fn write_summary<W: Write>(summary: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in summary {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_summary<R: std::io::Read>(input: R) -> Result<Vec<SummaryRow>> {
    let mut r = csv::Reader::from_reader(input);
    let rows = r
        .deserialize()
        .collect::<std::result::Result<Vec<SummaryRow>, _>>()?;
    if rows.is_empty() {
        return Err(Error::Empty("summary"));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            n: 300,
            runs: 4,
            master_seed: 17,
            ..Default::default()
        }
    }

    fn record(value: Option<f64>, rank: f64) -> RunRecord {
        RunRecord {
            run_id: 0,
            sweep_value: value,
            n: 10,
            p: 0.1,
            beta: 0.25,
            t: Some(4),
            k: KValue::Fixed(3),
            seed: 0,
            infected_count: 1,
            rounds_run: 1,
            true_source: 0,
            true_source_rank: 1,
            pessimistic_rank: 1,
            normalized_rank: rank,
            wall_time_ms: 0.0,
        }
    }

    #[test]
    fn complete_graph_saturates() {
        let cfg = ExperimentConfig {
            n: 100,
            density: Density::Probability(1.0),
            beta: 1.0,
            rounds: Some(1),
            dimension: Dimension::Exact,
            ..small()
        };
        let rec = run_single(&cfg).unwrap();
        assert_eq!(rec.infected_count, 100);
        assert!((1..=100).contains(&rec.true_source_rank));
        assert_eq!(rec.k, KValue::Exact);
    }

    #[test]
    fn inert_run_ranks_source_first() {
        let cfg = ExperimentConfig {
            inert: true,
            dimension: Dimension::Exact,
            density: Density::Degree(8.0),
            ..small()
        };
        let rec = run_single(&cfg).unwrap();
        assert_eq!(rec.infected_count, 1);
        assert_eq!(rec.true_source_rank, 1);
        assert_eq!(rec.beta, 0.0);
    }

    #[test]
    fn run_single_is_deterministic() {
        let mut a = run_single(&small()).unwrap();
        let mut b = run_single(&small()).unwrap();
        a.wall_time_ms = 0.0;
        b.wall_time_ms = 0.0;
        assert_eq!(a, b);
    }

    #[test]
    fn config_validation() {
        let bad = [
            ExperimentConfig { n: 0, ..small() },
            ExperimentConfig {
                beta: 1.5,
                ..small()
            },
            ExperimentConfig {
                beta: 0.0,
                ..small()
            },
            ExperimentConfig { runs: 0, ..small() },
            ExperimentConfig {
                density: Density::Probability(2.0),
                ..small()
            },
            ExperimentConfig {
                density: Density::Degree(400.0),
                ..small()
            },
            ExperimentConfig {
                dimension: Dimension::Fixed(0),
                ..small()
            },
        ];
        for cfg in bad {
            assert!(cfg.validate_point().is_err(), "{cfg:?}");
        }
        assert!(small().at(SweepParam::K, 2.5).is_err());
        assert!(small().at(SweepParam::Beta, 1.2).is_err());
        assert_eq!(small().at(SweepParam::N, 50.0).unwrap().n, 50);
        let fixed = ExperimentConfig {
            graph: Some(Arc::new(generate_er(20, 0.2, 0).unwrap())),
            ..small()
        };
        assert!(fixed.at(SweepParam::N, 10.0).is_err());
        assert!(fixed.at(SweepParam::Beta, 0.5).is_ok());
    }

    #[test]
    fn sweep_errors() {
        let mut cfg = small();
        assert!(run_sweep(&cfg, Vec::new()).is_err());
        cfg.sweep = Some(Sweep {
            param: SweepParam::Beta,
            values: vec![],
        });
        assert!(run_sweep(&cfg, Vec::new()).is_err());
        cfg.sweep = Some(Sweep {
            param: SweepParam::Beta,
            values: vec![0.2, 1.5],
        });
        assert!(run_sweep(&cfg, Vec::new()).is_err());
    }

    #[test]
    fn sweep_shape_and_order() {
        let cfg = ExperimentConfig {
            sweep: Some(Sweep {
                param: SweepParam::K,
                values: vec![2.0, 5.0],
            }),
            ..small()
        };
        let mut buf = Vec::new();
        let recs = run_sweep(&cfg, &mut buf).unwrap();
        assert_eq!(recs.len(), 8);
        let order: Vec<_> = recs
            .iter()
            .map(|r| (r.sweep_value.unwrap(), r.run_id))
            .collect();
        assert_eq!(
            order,
            [
                (2.0, 0),
                (2.0, 1),
                (2.0, 2),
                (2.0, 3),
                (5.0, 0),
                (5.0, 1),
                (5.0, 2),
                (5.0, 3)
            ]
        );
        // same cascades across k
        for r in 0..4 {
            assert_eq!(recs[r].true_source, recs[r + 4].true_source);
            assert_eq!(recs[r].infected_count, recs[r + 4].infected_count);
        }
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(
            "run_id,sweep_value,n,p,beta,t,k,seed,infected_count,rounds_run,true_source,\
             true_source_rank,pessimistic_rank,normalized_rank,wall_time_ms\n"
        ));
        assert_eq!(text.lines().count(), 9);
    }

    #[test]
    fn aggregate_statistics() {
        let one = aggregate(&[record(Some(1.0), 0.37)], "k").unwrap();
        let r = &one[0];
        assert_eq!(
            (r.median, r.mean, r.q1, r.q3, r.min, r.max, r.iqr),
            (0.37, 0.37, 0.37, 0.37, 0.37, 0.37, 0.0)
        );

        let three: Vec<_> = [0.3, 0.1, 0.2]
            .iter()
            .map(|&x| record(Some(2.0), x))
            .collect();
        let s = aggregate(&three, "k").unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0].median - 0.2).abs() < 1e-15);
        assert!((s[0].mean - 0.2).abs() < 1e-15);
        assert_eq!((s[0].min, s[0].max), (0.1, 0.3));

        assert!(aggregate(&[], "k").is_err());
    }

    #[test]
    fn aggregate_groups_in_order() {
        let recs = vec![
            record(Some(0.5), 0.1),
            record(Some(0.25), 0.2),
            record(Some(0.5), 0.3),
        ];
        let s = aggregate(&recs, "beta").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].sweep_value, Some(0.5));
        assert_eq!(s[0].runs, 2);
        assert_eq!(s[1].sweep_value, Some(0.25));
    }

    #[test]
    fn summary_csv_roundtrip() {
        let recs = vec![record(Some(0.5), 0.1), record(None, 0.2)];
        let s = aggregate(&recs, "beta").unwrap();
        let mut buf = Vec::new();
        write_summary(&s, &mut buf).unwrap();
        assert_eq!(read_summary(buf.as_slice()).unwrap(), s);
    }
}
