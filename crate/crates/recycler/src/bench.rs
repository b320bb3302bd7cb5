//! Running-time experiments: iterations of the Repeat loop across graph
//! sizes, with a per-size summary and the geometric tail check
//! `P(T >= 2 (m / gamma) n) <= 2^-m`.

use std::io::Write;

use serde::Serialize;

use recycler_core::{Family, Graph, Result};

use crate::model::ModelSpec;
use crate::runner::{replicate, RunConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub model: &'static str,
    pub family: String,
    /// Sites the run fills: vertices, or edges for the random cluster model.
    pub n: usize,
    pub params: String,
    pub rep: u64,
    pub iterations: u64,
    pub wall_ns: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeSummary {
    pub n: usize,
    pub reps: usize,
    pub mean_t: f64,
    pub std_err: f64,
    pub mean_t_per_site: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailCheck {
    pub n: usize,
    pub m: u32,
    pub threshold: f64,
    pub fraction: f64,
    pub bound: f64,
    /// `bound` plus three binomial standard errors.
    pub allowance: f64,
    pub pass: bool,
}

/// Parses a family name and size. `grid2d` with size `s` is the `s × s` grid.
pub fn family_graph(name: &str, size: usize) -> Result<(Family, Graph)> {
    let family = match name {
        "path" => Family::Path(size),
        "cycle" => Family::Cycle(size),
        "grid2d" | "grid" => Family::Grid2d(size, size),
        "complete" => Family::Complete(size),
        other => {
            return Err(recycler_core::Error::InvalidParameter {
                name: "family",
                reason: format!("unknown family `{other}` (path, cycle, grid2d, complete)"),
            })
        }
    };
    Ok((family, Graph::family(family)?))
}

pub fn family_label(family: Family) -> String {
    match family {
        Family::Path(n) => format!("path{n}"),
        Family::Cycle(n) => format!("cycle{n}"),
        Family::Grid2d(r, c) => format!("grid{r}x{c}"),
        Family::Complete(n) => format!("complete{n}"),
    }
}

/// All replications for every size, in (size, rep) order.
pub fn run_bench(
    spec: &ModelSpec,
    family: &str,
    sizes: &[usize],
    reps: u64,
    seed: u64,
    timing: bool,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &size in sizes {
        let (fam, graph) = family_graph(family, size)?;
        let config = RunConfig {
            seed,
            runs: reps,
            cap: None,
            timing,
        };
        for rep in replicate(spec, &graph, config)? {
            rows.push(BenchRow {
                model: spec.name(),
                family: family_label(fam),
                n: spec.site_count(&graph),
                params: spec.params_label(),
                rep: rep.index,
                iterations: rep.outcome.iterations,
                wall_ns: rep.wall_ns,
                seed,
            });
        }
    }
    Ok(rows)
}

/// Mean iterations per size, in order of first appearance.
pub fn summarize(rows: &[BenchRow]) -> Vec<SizeSummary> {
    let mut sizes: Vec<usize> = Vec::new();
    for r in rows {
        if !sizes.contains(&r.n) {
            sizes.push(r.n);
        }
    }
    sizes
        .into_iter()
        .map(|n| {
            let ts: Vec<f64> = rows
                .iter()
                .filter(|r| r.n == n)
                .map(|r| r.iterations as f64)
                .collect();
            let k = ts.len() as f64;
            let mean = ts.iter().sum::<f64>() / k;
            let var = if ts.len() > 1 {
                ts.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (k - 1.0)
            } else {
                0.0
            };
            SizeSummary {
                n,
                reps: ts.len(),
                mean_t: mean,
                std_err: (var / k).sqrt(),
                mean_t_per_site: mean / n as f64,
            }
        })
        .collect()
}

/// `(max - min) / min` of the per-size mean iterations per site.
pub fn ratio_spread(summary: &[SizeSummary]) -> f64 {
    let ratios = summary.iter().map(|s| s.mean_t_per_site);
    let max = ratios.clone().fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.fold(f64::INFINITY, f64::min);
    (max - min) / min
}

pub fn tail_checks(rows: &[BenchRow], gamma: f64, ms: &[u32]) -> Vec<TailCheck> {
    let summary = summarize(rows);
    let mut out = Vec::new();
    for s in &summary {
        let ts: Vec<u64> = rows
            .iter()
            .filter(|r| r.n == s.n)
            .map(|r| r.iterations)
            .collect();
        for &m in ms {
            let threshold = 2.0 * (m as f64 / gamma) * s.n as f64;
            let hits = ts.iter().filter(|&&t| t as f64 >= threshold).count();
            let fraction = hits as f64 / ts.len() as f64;
            let bound = 0.5f64.powi(m as i32);
            let allowance = bound + 3.0 * (bound * (1.0 - bound) / ts.len() as f64).sqrt();
            out.push(TailCheck {
                n: s.n,
                m,
                threshold,
                fraction,
                bound,
                allowance,
                pass: fraction <= allowance,
            });
        }
    }
    out
}

pub fn write_csv(rows: &[BenchRow], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
