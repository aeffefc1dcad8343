use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use pzero::cascade::ObservedSet;
use pzero::embed::{build_signatures_with, embed_with};
use pzero::harness::{
    aggregate, read_summary, run_graph, run_point, run_projection, run_sweep, Density, Dimension,
    EstimatorKind, ExperimentConfig, RunOutput, RunPoint, Sweep, SweepParam,
};
use pzero::plot::emit_plot;
use pzero::{load_edge_list, par, Execution};

#[derive(Parser)]
#[command(
    name = "pzero",
    version,
    about = "Patient-zero inference on independent-cascade epidemics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation and inference, write runs.csv
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// Also write the signature matrix and embedding as CSV
        #[arg(long)]
        dump: bool,
    },
    /// Sweep one parameter, write runs.csv, summary.csv and plot.svg
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, env = "PZERO_PARAM")]
        param: SweepParam,
        /// Comma-separated values; a default grid is used when omitted
        #[arg(long, env = "PZERO_VALUES", value_delimiter = ',')]
        values: Vec<f64>,
    },
    /// Render plot.svg from an existing summary.csv
    Plot {
        summary: PathBuf,
        /// Output directory (defaults to the summary's directory)
        #[arg(long, env = "PZERO_OUT")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Number of nodes
    #[arg(long, env = "PZERO_N", default_value_t = 10_000)]
    n: usize,
    /// Expected degree, p = degree / (n - 1)
    #[arg(long, env = "PZERO_DEGREE", conflicts_with = "p")]
    degree: Option<f64>,
    /// Edge probability
    #[arg(long, env = "PZERO_P")]
    p: Option<f64>,
    #[arg(long, env = "PZERO_BETA", default_value_t = 0.25)]
    beta: f64,
    /// Round budget; 0 stops before any transmission. Omit with --unbounded
    #[arg(
        long,
        env = "PZERO_ROUNDS",
        default_value_t = 4,
        conflicts_with = "unbounded"
    )]
    rounds: u32,
    /// Run cascades until extinction
    #[arg(long)]
    unbounded: bool,
    /// Embedding dimension (default ceil(2 log2 n))
    #[arg(long, env = "PZERO_K", conflicts_with = "exact")]
    k: Option<usize>,
    /// Identity projection, k = |I|
    #[arg(long, env = "PZERO_EXACT")]
    exact: bool,
    #[arg(long, env = "PZERO_RUNS", default_value_t = 100)]
    runs: usize,
    #[arg(long, env = "PZERO_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: available parallelism)
    #[arg(long, env = "PZERO_THREADS")]
    threads: Option<usize>,
    /// Output directory
    #[arg(long, env = "PZERO_OUT", default_value = ".")]
    out: PathBuf,
    /// Edge-list file; skips graph generation
    #[arg(long, env = "PZERO_GRAPH")]
    graph: Option<PathBuf>,
    /// Observe only the last infection layer instead of every infected node
    #[arg(long, env = "PZERO_FRONTIER")]
    frontier: bool,
    /// Score nodes uniformly at random (chance baseline)
    #[arg(long, env = "PZERO_NULL")]
    null: bool,
}

impl CommonArgs {
    fn config(&self) -> anyhow::Result<ExperimentConfig> {
        let graph = match &self.graph {
            Some(path) => {
                let file =
                    File::open(path).with_context(|| format!("opening {}", path.display()))?;
                let g = load_edge_list(BufReader::new(file))
                    .with_context(|| format!("reading {}", path.display()))?;
                Some(Arc::new(g))
            }
            None => None,
        };
        let density = match (self.degree, self.p) {
            (_, Some(p)) => Density::Probability(p),
            (Some(d), None) => Density::Degree(d),
            (None, None) => Density::Degree(10.0),
        };
        let dimension = match (self.exact, self.k) {
            (true, _) => Dimension::Exact,
            (false, Some(k)) => Dimension::Fixed(k),
            (false, None) => Dimension::Auto,
        };
        let execution = if self.threads == Some(1) {
            Execution::Sequential
        } else {
            Execution::default()
        };
        let config = ExperimentConfig {
            n: self.n,
            density,
            beta: self.beta,
            rounds: (!self.unbounded).then_some(self.rounds),
            dimension,
            runs: self.runs,
            master_seed: self.seed,
            sweep: None,
            estimator: if self.null {
                EstimatorKind::Null
            } else {
                EstimatorKind::Embedding
            },
            observed: if self.frontier {
                ObservedSet::Frontier
            } else {
                ObservedSet::Cumulative
            },
            graph,
            inert: false,
            execution,
        };
        Ok(config)
    }

    fn prepare_out(&self) -> anyhow::Result<&Path> {
        fs::create_dir_all(&self.out)
            .with_context(|| format!("creating {}", self.out.display()))?;
        Ok(&self.out)
    }
}

fn simulate(common: &CommonArgs, dump: bool) -> anyhow::Result<()> {
    let config = common.config()?;
    config.validate_point()?;
    let out = common.prepare_out()?;
    let point = RunPoint {
        sweep_index: 0,
        run_index: 0,
        sweep_value: None,
    };
    let output = run_point(&config, point)?;
    let runs_path = out.join("runs.csv");
    let mut w = csv::Writer::from_path(&runs_path)?;
    w.serialize(&output.record)?;
    w.flush()?;

    if dump {
        dump_matrices(&config, &output, point, out)?;
    }

    let rec = &output.record;
    println!(
        "estimate={} true_source={} rank={} pessimistic_rank={} normalized_rank={} infected={} rounds={}",
        output.ranking.estimate(),
        rec.true_source,
        rec.true_source_rank,
        rec.pessimistic_rank,
        rec.normalized_rank,
        rec.infected_count,
        rec.rounds_run
    );
    eprintln!("wrote {}", runs_path.display());
    Ok(())
}

/// Recomputes F and X for the run and writes them next to runs.csv.
fn dump_matrices(
    config: &ExperimentConfig,
    output: &RunOutput,
    point: RunPoint,
    out: &Path,
) -> anyhow::Result<()> {
    let graph = run_graph(config, point.run_index)?;
    let observed = output.outcome.observed(config.observed);
    let f = build_signatures_with(&graph, &observed, config.execution)?;
    let r = run_projection(config, point, f.rows())?;
    let x = embed_with(&f, &r, config.execution)?;
    f.write_csv(BufWriter::new(File::create(out.join("signatures.csv"))?))?;
    x.write_csv(BufWriter::new(File::create(out.join("embedding.csv"))?))?;
    Ok(())
}

fn sweep(common: &CommonArgs, param: SweepParam, values: Vec<f64>) -> anyhow::Result<()> {
    let mut config = common.config()?;
    let values = if values.is_empty() {
        param.default_values()
    } else {
        values
    };
    config.sweep = Some(Sweep { param, values });
    let out = common.prepare_out()?;
    let runs_path = out.join("runs.csv");
    let sink = BufWriter::new(
        File::create(&runs_path).with_context(|| format!("creating {}", runs_path.display()))?,
    );
    let records = run_sweep(&config, sink)?;
    let summary = aggregate(&records, param.name())?;
    let plot_path = out.join("plot.svg");
    emit_plot(&summary, &plot_path)?;
    for row in &summary {
        eprintln!(
            "{}={} runs={} median={:.4} mean={:.4} iqr=[{:.4}, {:.4}]",
            row.param,
            row.sweep_value.map(|v| v.to_string()).unwrap_or_default(),
            row.runs,
            row.median,
            row.mean,
            row.q1,
            row.q3
        );
    }
    eprintln!("wrote {}, summary.csv, plot.svg", runs_path.display());
    Ok(())
}

fn plot(summary_path: &Path, out: Option<PathBuf>) -> anyhow::Result<()> {
    let file =
        File::open(summary_path).with_context(|| format!("opening {}", summary_path.display()))?;
    let summary = read_summary(BufReader::new(file))?;
    let dir = match out {
        Some(d) => d,
        None => summary_path
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from(".")),
    };
    fs::create_dir_all(&dir)?;
    let plot_path = dir.join("plot.svg");
    emit_plot(&summary, &plot_path)?;
    eprintln!("wrote {}", plot_path.display());
    Ok(())
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Simulate { common, dump } => {
            if common.threads == Some(0) {
                bail!("--threads must be at least 1");
            }
            par::install(common.threads, || simulate(&common, dump))?
        }
        Command::Sweep {
            common,
            param,
            values,
        } => {
            if common.threads == Some(0) {
                bail!("--threads must be at least 1");
            }
            let threads = common.threads;
            par::install(threads, || sweep(&common, param, values))?
        }
        Command::Plot { summary, out } => plot(&summary, out),
    }
}
