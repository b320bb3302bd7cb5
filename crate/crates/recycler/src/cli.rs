//! The `recycler` command line.
//!
//! Exit codes: 0 success, 1 usage or runtime error, 2 failed verification.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use recycler_core::{
    coloring_regime_note, ising_threshold, rc_threshold, threshold_basic, threshold_improved,
    ColoringParams, ExactDistribution, Graph, HardcoreParams, RCParams, RejectionScope, Sample,
    SpinParams, Variant,
};

use crate::bench::{family_graph, run_bench, summarize, tail_checks, write_csv};
use crate::model::ModelSpec;
use crate::record::{RunRecord, RunSummary};
use crate::runner::{replicate, with_threads, RunConfig};
use crate::stats::{goodness_of_fit, GofReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "recycler",
    version,
    about = "Perfect samplers for Gibbs distributions on graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw exact samples, one JSON line per completed run.
    Sample(SampleArgs),
    /// Compare a sampler against exact enumeration on a small graph.
    Verify(VerifyArgs),
    /// Measure iterations across graph sizes; writes CSV.
    Bench(BenchArgs),
    /// Print the linear-time thresholds for a maximum degree.
    Thresholds(ThresholdArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelKind {
    Hardcore,
    Ising,
    Potts,
    Rc,
    Coloring,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Basic,
    Improved,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScopeArg {
    Neighbors,
    Neighbors2,
    Restart,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    /// Hard-core fugacity.
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, value_enum, default_value = "basic")]
    variant: VariantArg,
    /// Inverse temperature (Ising, Potts).
    #[arg(long, default_value_t = 0.1)]
    beta: f64,
    /// Coupling sign, +1 or -1 (Ising, Potts).
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    j: i32,
    /// Potts colors (integer, default 3) or random cluster q (> 1, default 2).
    #[arg(long)]
    q: Option<f64>,
    /// Random cluster edge probability.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Random cluster: skip the spanning-tree add-back after a rejection.
    #[arg(long)]
    no_tree_trick: bool,
    /// Number of colors (coloring).
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Sites removed on rejection (Ising, Potts, coloring).
    #[arg(long, value_enum, default_value = "neighbors")]
    policy: ScopeArg,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Edge-list file: `u v` per line, `#` comments, optional `n <count>` header.
    #[arg(long, conflicts_with_all = ["family", "size"])]
    graph: Option<PathBuf>,
    /// path, cycle, grid2d (size × size) or complete.
    #[arg(long, requires = "size")]
    family: Option<String>,
    #[arg(long)]
    size: Option<usize>,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Base seed; run i uses stream i of this seed.
    #[arg(long, env = "RR_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores). Output order never depends on it.
    #[arg(long)]
    parallel: Option<usize>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, default_value_t = 1)]
    samples: u64,
    /// Iteration cap per run; capped runs are counted, never emitted.
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall time per run (makes output vary between reruns).
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Largest total variation distance that passes.
    #[arg(long, default_value_t = 0.01)]
    tolerance: f64,
    /// Smallest chi-square p-value that passes.
    #[arg(long, default_value_t = 1e-3)]
    significance: f64,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    family: String,
    /// Comma-separated sizes (grid2d: side length).
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    reps: u64,
    #[command(flatten)]
    run: RunArgs,
    /// Warn when parameters are outside the proven linear-time regime.
    #[arg(long)]
    regime_check: bool,
    /// Write 0 for wall_ns so the CSV is reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
    /// Tail exponents m for the check P(T >= 2 (m/gamma) n) <= 2^-m.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    tails: Vec<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ThresholdArgs {
    #[arg(long)]
    max_degree: usize,
    /// Random cluster q.
    #[arg(long, default_value_t = 2.0)]
    q: f64,
}

fn scope(arg: ScopeArg) -> RejectionScope {
    match arg {
        ScopeArg::Neighbors => RejectionScope::Neighbors,
        ScopeArg::Neighbors2 => RejectionScope::Neighbors2,
        ScopeArg::Restart => RejectionScope::Restart,
    }
}

impl ModelArgs {
    fn spec(&self) -> anyhow::Result<ModelSpec> {
        Ok(match self.model {
            ModelKind::Hardcore => {
                let variant = match self.variant {
                    VariantArg::Basic => Variant::Basic,
                    VariantArg::Improved => Variant::Improved,
                };
                ModelSpec::Hardcore(HardcoreParams::new(self.lambda, variant)?)
            }
            ModelKind::Ising => ModelSpec::Spin(
                SpinParams::ising(self.beta, self.j)?.with_scope(scope(self.policy)),
            ),
            ModelKind::Potts => {
                let q = self.q.unwrap_or(3.0);
                if q.fract() != 0.0 || !(2.0..=1e6).contains(&q) {
                    bail!("invalid parameter `q`: Potts needs an integer q >= 2, got {q}");
                }
                ModelSpec::Spin(
                    SpinParams::potts(self.beta, self.j, q as u32)?.with_scope(scope(self.policy)),
                )
            }
            ModelKind::Rc => ModelSpec::Rc(RCParams::new(
                self.p,
                self.q.unwrap_or(2.0),
                !self.no_tree_trick,
            )?),
            ModelKind::Coloring => {
                ModelSpec::Coloring(ColoringParams::new(self.k, scope(self.policy))?)
            }
        })
    }
}

impl GraphArgs {
    fn load(&self) -> anyhow::Result<Graph> {
        match (&self.graph, &self.family, self.size) {
            (Some(path), _, _) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
            }
            (None, Some(family), Some(size)) => Ok(family_graph(family, size)?.1),
            _ => bail!("give either --graph FILE or --family NAME --size N"),
        }
    }
}

fn output(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_sample(args: &SampleArgs) -> anyhow::Result<i32> {
    let spec = args.model.spec()?;
    let graph = args.graph.load()?;
    if args.cap == Some(0) {
        bail!("invalid parameter `cap`: must be at least 1");
    }
    let config = RunConfig {
        seed: args.run.seed,
        runs: args.samples,
        cap: args.cap,
        timing: args.timing,
    };
    let reps = with_threads(args.run.parallel, || replicate(&spec, &graph, config))?;
    let mut out = output(&args.out)?;
    let mut completed = 0;
    for rep in &reps {
        if let Some(record) = RunRecord::from_replication(spec.name(), args.run.seed, rep) {
            serde_json::to_writer(&mut out, &record)?;
            writeln!(out)?;
            completed += 1;
        }
    }
    out.flush()?;
    let summary = RunSummary {
        requested: args.samples,
        completed,
        interrupted: args.samples - completed,
    };
    eprintln!("{}", serde_json::json!({ "summary": summary }));
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    model: &'static str,
    params: String,
    exact: &'a ExactDistribution,
    report: &'a GofReport,
}

/// Runs `samples` replications and tallies completed outputs.
pub fn empirical_counts(
    spec: &ModelSpec,
    graph: &Graph,
    seed: u64,
    samples: u64,
) -> recycler_core::Result<BTreeMap<Sample, u64>> {
    let config = RunConfig {
        seed,
        runs: samples,
        cap: None,
        timing: false,
    };
    let mut counts = BTreeMap::new();
    for rep in replicate(spec, graph, config)? {
        if let Some(s) = rep.outcome.sample {
            *counts.entry(s).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<i32> {
    let spec = args.model.spec()?;
    let graph = args.graph.load()?;
    spec.build(&graph)?;
    let exact = spec.exact(&graph)?;
    let counts = with_threads(args.run.parallel, || {
        empirical_counts(&spec, &graph, args.run.seed, args.samples)
    })?;
    let report = goodness_of_fit(&exact, &counts, args.tolerance, args.significance);
    let json = VerifyOutput {
        model: spec.name(),
        params: spec.params_label(),
        exact: &exact,
        report: &report,
    };
    println!("{}", serde_json::to_string(&json)?);
    eprintln!(
        "{} {} [{}]: TV {:.5} (tolerance {}), chi-square {:.2} on {} df, p = {:.4} -> {}",
        spec.name(),
        exact.instance,
        spec.params_label(),
        report.tv,
        report.tolerance,
        report.chi_square,
        report.df,
        report.p_value,
        if report.pass { "PASS" } else { "FAIL" }
    );
    Ok(if report.pass {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn cmd_bench(args: &BenchArgs) -> anyhow::Result<i32> {
    let spec = args.model.spec()?;
    if args.regime_check {
        for &size in &args.sizes {
            let (_, graph) = family_graph(&args.family, size)?;
            if let Some(w) = spec.regime_warning(&graph) {
                eprintln!("warning: size {size}: {w}");
            }
        }
    }
    let rows = with_threads(args.run.parallel, || {
        run_bench(
            &spec,
            &args.family,
            &args.sizes,
            args.reps,
            args.run.seed,
            !args.no_timing,
        )
    })?;
    write_csv(&rows, output(&args.out)?)?;

    eprintln!("# n, reps, mean T, std err, mean T / n");
    for s in summarize(&rows) {
        eprintln!(
            "# {}, {}, {:.2}, {:.2}, {:.4}",
            s.n, s.reps, s.mean_t, s.std_err, s.mean_t_per_site
        );
    }
    let (_, first) = family_graph(&args.family, args.sizes[0])?;
    match spec.drift_gamma(&first) {
        Some(gamma) => {
            eprintln!(
                "# tail check with gamma = {gamma:.6}: n, m, threshold, fraction, 2^-m, pass"
            );
            for t in tail_checks(&rows, gamma, &args.tails) {
                eprintln!(
                    "# {}, {}, {:.0}, {:.4}, {:.4}, {}",
                    t.n, t.m, t.threshold, t.fraction, t.bound, t.pass
                );
            }
        }
        None => eprintln!("# no positive drift bound for these parameters; tail check skipped"),
    }
    Ok(EXIT_OK)
}

fn cmd_thresholds(args: &ThresholdArgs) -> anyhow::Result<i32> {
    let d = args.max_degree;
    if d == 0 {
        bail!("invalid parameter `max-degree`: must be at least 1");
    }
    let show = |name: &str, value: recycler_core::Result<f64>| match value {
        Ok(v) => println!("{name:<28} {v:.6}"),
        Err(e) => println!("{name:<28} n/a ({e})"),
    };
    println!("max degree {d}, q {}", args.q);
    show("hardcore basic lambda", threshold_basic(d));
    show("hardcore improved lambda", threshold_improved(d));
    show("ising beta", ising_threshold(d));
    show("rc p (tree trick)", rc_threshold(d, args.q, true));
    show("rc p (no tree trick)", rc_threshold(d, args.q, false));
    let note = coloring_regime_note(d, d + 1, None);
    println!("{:<28} {}", "coloring", note.claim);
    Ok(EXIT_OK)
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Sample(a) => cmd_sample(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Thresholds(a) => cmd_thresholds(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}
