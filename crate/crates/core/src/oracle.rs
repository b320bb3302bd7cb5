//! Exhaustive enumeration of each model's law on small graphs.
//!
//! Weights are handled in log space, shifted by their maximum before
//! exponentiation, and summed with Neumaier compensation. Configurations of
//! weight zero are left out of the support.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::engine::Sample;
use crate::error::{Error, Result};
use crate::graph::{Graph, UnionFind};
use crate::spin::SpinKind;

/// Largest site count (vertices or edges) enumerated.
pub const MAX_SITES: usize = 24;
/// Largest number of raw configurations enumerated.
pub const MAX_CONFIGURATIONS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExactDistribution {
    pub model: String,
    pub instance: String,
    /// Serialized as a list of `[configuration, probability]` pairs.
    #[cfg_attr(feature = "serde", serde(serialize_with = "entries_as_pairs"))]
    pub entries: BTreeMap<Sample, f64>,
    /// Normalizing constant of the unnormalized weights.
    pub normalizer: f64,
    /// Number of configurations in the support.
    pub count: usize,
}

impl ExactDistribution {
    pub fn probability(&self, sample: &Sample) -> f64 {
        self.entries.get(sample).copied().unwrap_or(0.0)
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn total_mass(&self) -> f64 {
        neumaier_sum(self.entries.values().copied())
    }

    /// `1/2 Σ |empirical - exact|` over the union of both supports.
    pub fn total_variation(&self, counts: &BTreeMap<Sample, u64>) -> f64 {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return 1.0;
        }
        let n = total as f64;
        let inside = self
            .entries
            .iter()
            .map(|(s, &p)| libm::fabs(counts.get(s).copied().unwrap_or(0) as f64 / n - p));
        let outside = counts
            .iter()
            .filter(|(s, _)| !self.entries.contains_key(s))
            .map(|(_, &c)| c as f64 / n);
        0.5 * neumaier_sum(inside.chain(outside))
    }

    /// Expected total variation distance of an exact sampler's empirical
    /// law after `samples` draws, to leading order:
    /// `1/2 Σ sqrt(2 p (1-p) / (π N))`.
    pub fn expected_noise_tv(&self, samples: u64) -> f64 {
        let n = samples as f64;
        0.5 * neumaier_sum(
            self.entries
                .values()
                .map(|&p| libm::sqrt(2.0 * p * (1.0 - p) / (core::f64::consts::PI * n))),
        )
    }
}

#[cfg(feature = "serde")]
fn entries_as_pairs<S: serde::Serializer>(
    entries: &BTreeMap<Sample, f64>,
    serializer: S,
) -> core::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(entries.iter())
}

/// Compensated (Neumaier) summation.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in values {
        let t = sum + x;
        if libm::fabs(sum) >= libm::fabs(x) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn normalize(
    model: &str,
    graph: &Graph,
    params: String,
    weighted: Vec<(Sample, f64)>,
) -> Result<ExactDistribution> {
    let max = weighted
        .iter()
        .map(|&(_, lw)| lw)
        .fold(f64::NEG_INFINITY, f64::max);
    if weighted.is_empty() || !max.is_finite() {
        return Err(Error::InvariantViolation(format!(
            "{model}: no configuration has positive weight"
        )));
    }
    let shifted = neumaier_sum(weighted.iter().map(|&(_, lw)| libm::exp(lw - max)));
    let log_z = max + libm::log(shifted);
    let count = weighted.len();
    let entries = weighted
        .into_iter()
        .map(|(s, lw)| (s, libm::exp(lw - max) / shifted))
        .collect();
    Ok(ExactDistribution {
        model: model.into(),
        instance: format!(
            "n={} m={} {params}",
            graph.vertex_count(),
            graph.edge_count()
        ),
        entries,
        normalizer: libm::exp(log_z),
        count,
    })
}

fn guard_sites(what: &str, sites: usize) -> Result<()> {
    if sites > MAX_SITES {
        return Err(Error::SizeGuard(format!(
            "{sites} {what} exceeds the limit of {MAX_SITES}"
        )));
    }
    Ok(())
}

fn guard_configurations(base: usize, n: usize) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total.saturating_mul(base as u64);
        if total > MAX_CONFIGURATIONS {
            return Err(Error::SizeGuard(format!(
                "{base}^{n} configurations exceeds the limit of {MAX_CONFIGURATIONS}"
            )));
        }
    }
    Ok(total)
}

fn ln(x: f64) -> f64 {
    if x > 0.0 {
        libm::log(x)
    } else {
        f64::NEG_INFINITY
    }
}

/// Independent sets weighted by `lambda^|S|`.
pub fn enumerate_hardcore(graph: &Graph, lambda: f64) -> Result<ExactDistribution> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(crate::error::invalid(
            "lambda",
            format!("must be finite and > 0, got {lambda}"),
        ));
    }
    let n = graph.vertex_count();
    guard_sites("vertices", n)?;
    let edge_masks: Vec<u32> = graph
        .edges()
        .iter()
        .map(|&(u, v)| (1 << u) | (1 << v))
        .collect();
    let log_lambda = libm::log(lambda);
    let mut weighted = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if edge_masks.iter().any(|&m| mask & m == m) {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let lw = set.len() as f64 * log_lambda;
        weighted.push((Sample::Vertices(set), lw));
    }
    normalize("hardcore", graph, format!("lambda={lambda}"), weighted)
}

/// Ising (colors ±1, weight `exp(beta J Σ x_u x_v)`) or Potts (colors
/// `1..=q`, weight `exp(beta J #concordant edges)`).
pub fn enumerate_spin(
    graph: &Graph,
    beta: f64,
    j: i32,
    kind: SpinKind,
) -> Result<ExactDistribution> {
    crate::spin::SpinParams::new(beta, j, kind)?;
    let n = graph.vertex_count();
    let k = kind.colors();
    guard_configurations(k, n)?;
    let mut slots = vec![0usize; n];
    let mut weighted = Vec::new();
    loop {
        let lw: f64 = graph
            .edges()
            .iter()
            .map(|&(u, v)| kind.edge_log_weight(beta, j, slots[u], slots[v]))
            .sum();
        let colors = slots.iter().map(|&s| kind.color_of(s)).collect();
        weighted.push((Sample::Colors(colors), lw));
        if !advance(&mut slots, k) {
            break;
        }
    }
    let label = match kind {
        SpinKind::Ising => "ising",
        SpinKind::Potts { .. } => "potts",
    };
    normalize(
        label,
        graph,
        format!("beta={beta} j={j} colors={k}"),
        weighted,
    )
}

// Odometer increment over base-k digits; false once it wraps.
fn advance(digits: &mut [usize], k: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < k {
            return true;
        }
        *d = 0;
    }
    false
}

fn components(graph: &Graph, edges: impl IntoIterator<Item = usize>) -> usize {
    let mut uf = UnionFind::new(graph.vertex_count());
    for e in edges {
        let (u, v) = graph.edge(e);
        uf.union(u, v);
    }
    uf.set_count()
}

/// Edge subsets weighted by `p^|A| (1-p)^|E∖A| q^c(A)`.
pub fn enumerate_rc(graph: &Graph, p: f64, q: f64) -> Result<ExactDistribution> {
    if !(0.0..=1.0).contains(&p) {
        return Err(crate::error::invalid(
            "p",
            format!("must lie in [0, 1], got {p}"),
        ));
    }
    if !(q > 0.0 && q.is_finite()) {
        return Err(crate::error::invalid(
            "q",
            format!("must be finite and > 0, got {q}"),
        ));
    }
    let m = graph.edge_count();
    guard_sites("edges", m)?;
    let (lp, lnp, lq) = (ln(p), ln(1.0 - p), libm::log(q));
    let mut weighted = Vec::new();
    for mask in 0u32..(1u32 << m) {
        let chosen: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        let ones = chosen.len() as f64;
        let mut lw = lq * components(graph, chosen.iter().copied()) as f64;
        if ones > 0.0 {
            lw += ones * lp;
        }
        if ones < m as f64 {
            lw += (m as f64 - ones) * lnp;
        }
        if lw.is_finite() {
            let edges = chosen.iter().map(|&e| graph.edge(e)).collect();
            weighted.push((Sample::Edges(edges), lw));
        }
    }
    normalize("rc", graph, format!("p={p} q={q}"), weighted)
}

/// Uniform law on proper `k`-colorings (colors `1..=k`).
pub fn enumerate_colorings(graph: &Graph, k: usize) -> Result<ExactDistribution> {
    if k < 1 {
        return Err(crate::error::invalid("k", "need at least one color"));
    }
    let n = graph.vertex_count();
    guard_configurations(k, n)?;
    let mut slots = vec![0usize; n];
    let mut weighted = Vec::new();
    loop {
        if graph.edges().iter().all(|&(u, v)| slots[u] != slots[v]) {
            let colors = slots.iter().map(|&s| s as i32 + 1).collect();
            weighted.push((Sample::Colors(colors), 0.0));
        }
        if n == 0 || !advance(&mut slots, k) {
            break;
        }
    }
    if weighted.is_empty() {
        return Err(Error::NoProperColoring(k));
    }
    normalize("coloring", graph, format!("k={k}"), weighted)
}

/// Law of the Potts coloring obtained from an exact random cluster law by
/// coloring each component uniformly from `1..=q`.
pub fn compose_rc_to_potts(
    graph: &Graph,
    rc: &ExactDistribution,
    q: usize,
) -> Result<ExactDistribution> {
    let n = graph.vertex_count();
    guard_configurations(q, n)?;
    let mut mass: BTreeMap<Sample, Vec<f64>> = BTreeMap::new();
    for (sample, &prob) in &rc.entries {
        let Sample::Edges(edges) = sample else {
            return Err(Error::InvariantViolation(
                "expected an edge-subset law".into(),
            ));
        };
        let mut uf = UnionFind::new(n);
        for &(u, v) in edges {
            uf.union(u, v);
        }
        let mut roots: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        for r in roots.iter_mut() {
            *r = distinct.binary_search(r).unwrap_or(0);
        }
        let c = distinct.len();
        let share = prob / libm::pow(q as f64, c as f64);
        let mut digits = vec![0usize; c];
        loop {
            let colors = roots.iter().map(|&r| digits[r] as i32 + 1).collect();
            mass.entry(Sample::Colors(colors)).or_default().push(share);
            if c == 0 || !advance(&mut digits, q) {
                break;
            }
        }
    }
    let entries: BTreeMap<Sample, f64> = mass
        .into_iter()
        .map(|(s, parts)| (s, neumaier_sum(parts)))
        .collect();
    Ok(ExactDistribution {
        model: "potts-from-rc".into(),
        instance: rc.instance.clone(),
        count: entries.len(),
        entries,
        normalizer: rc.normalizer,
    })
}
