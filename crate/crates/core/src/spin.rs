//! Heat-bath recycling for the Ising and Potts models.
//!
//! Ising: colors ±1, `pi(x) ∝ exp(beta * J * Σ_{uv∈E} x(u) x(v))`.
//! Potts: colors `1..=q`, `pi(x) ∝ exp(beta * J * #{uv∈E : x(u) = x(v)})`.
//! Color 0 marks a vertex that contributes nothing to the energy.
//!
//! A step at inactive `v` with fixed color `a` (0 unless `v` still borders the
//! active set) accepts with probability `rho / M`, where
//! `rho ∝ Z_v(x) / psi(a, x_active)`, `Z_v` is the heat-bath normalizer of
//! `v` given all its neighbors, and `M` is the maximum of `rho` over the
//! colorings of `v`'s active neighbors. With no fixed neighbors and `a = 0`
//! this is `cosh(beta*S) / cosh(beta*d)` for Ising. On acceptance `v` takes a
//! heat-bath color; on rejection the sites chosen by the rejection scope are
//! removed and keep their colors as fixed values.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::engine::{heat_bath_acceptance, Recycler, Sample, StepOutcome};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::rng::RandomSource;
use crate::state::{RejectionScope, VertexState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum SpinKind {
    Ising,
    Potts { q: u32 },
}

impl SpinKind {
    pub fn colors(&self) -> usize {
        match *self {
            SpinKind::Ising => 2,
            SpinKind::Potts { q } => q as usize,
        }
    }

    /// Encoded color of palette slot `i`.
    pub fn color_of(&self, i: usize) -> i32 {
        match self {
            SpinKind::Ising => [-1, 1][i],
            SpinKind::Potts { .. } => i as i32 + 1,
        }
    }

    /// Palette slot of a nonzero color.
    pub fn slot_of(&self, color: i32) -> usize {
        match self {
            SpinKind::Ising => usize::from(color > 0),
            SpinKind::Potts { .. } => color as usize - 1,
        }
    }

    /// Per-edge log weight `beta * J * coupling(a, b)` for palette slots.
    pub fn edge_log_weight(&self, beta: f64, j: i32, a: usize, b: usize) -> f64 {
        let bj = beta * j as f64;
        match self {
            SpinKind::Ising => bj * (self.color_of(a) * self.color_of(b)) as f64,
            SpinKind::Potts { .. } => {
                if a == b {
                    bj
                } else {
                    0.0
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpinParams {
    pub beta: f64,
    /// +1 ferromagnetic, -1 antiferromagnetic.
    pub j: i32,
    pub kind: SpinKind,
    pub scope: RejectionScope,
}

impl SpinParams {
    pub fn ising(beta: f64, j: i32) -> Result<Self> {
        Self::new(beta, j, SpinKind::Ising)
    }

    pub fn potts(beta: f64, j: i32, q: u32) -> Result<Self> {
        Self::new(beta, j, SpinKind::Potts { q })
    }

    pub fn new(beta: f64, j: i32, kind: SpinKind) -> Result<Self> {
        let params = SpinParams {
            beta,
            j,
            kind,
            scope: RejectionScope::Neighbors,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_scope(mut self, scope: RejectionScope) -> Self {
        self.scope = scope;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(invalid(
                "beta",
                format!("must be finite and >= 0, got {}", self.beta),
            ));
        }
        if self.j != 1 && self.j != -1 {
            return Err(invalid("j", format!("must be +1 or -1, got {}", self.j)));
        }
        if let SpinKind::Potts { q } = self.kind {
            if q < 2 {
                return Err(invalid("q", format!("Potts needs q >= 2, got {q}")));
            }
        }
        Ok(())
    }
}

/// Largest `beta` with guaranteed linear expected time: `ln(1 + 1/Δ) / Δ`.
pub fn ising_threshold(delta: usize) -> Result<f64> {
    if delta < 1 {
        return Err(invalid("delta", "maximum degree must be at least 1"));
    }
    let d = delta as f64;
    Ok(libm::log1p(1.0 / d) / d)
}

/// Worst-case expected one-step change of `|V_t|`: `(Δ+1) e^{-βΔ} - Δ`.
pub fn ising_drift_bound(delta: usize, beta: f64) -> f64 {
    let d = delta as f64;
    (d + 1.0) * libm::exp(-beta * d) - d
}

fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + libm::log(values.iter().map(|&v| libm::exp(v - max)).sum::<f64>())
}

#[derive(Debug, Clone)]
pub struct SpinSampler<'g> {
    graph: &'g Graph,
    params: SpinParams,
    // coupling[a][b] = beta * J * coupling(slot a, slot b)
    coupling: Vec<Vec<f64>>,
    state: VertexState,
}

/// Colors seen around a vertex, by palette slot.
#[derive(Debug, Clone)]
struct Neighborhood {
    active: Vec<u32>,
    fixed: Vec<u32>,
    degree: u32,
    own: Option<usize>,
}

impl<'g> SpinSampler<'g> {
    pub fn new(graph: &'g Graph, params: SpinParams) -> Result<Self> {
        params.validate()?;
        let k = params.kind.colors();
        let coupling = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| params.kind.edge_log_weight(params.beta, params.j, a, b))
                    .collect()
            })
            .collect();
        Ok(SpinSampler {
            graph,
            params,
            coupling,
            state: VertexState::new(graph.vertex_count()),
        })
    }

    pub fn params(&self) -> SpinParams {
        self.params
    }

    /// `(d, S)`: active neighbor count and sum of their ±1 spins (Ising
    /// encoding; for Potts `S` sums the encoded colors).
    pub fn local_field(&self, v: usize) -> (u32, i32) {
        let mut d = 0;
        let mut s = 0;
        for &u in self.graph.neighbors(v) {
            if self.state.is_active(u) {
                d += 1;
                s += self.state.color(u);
            }
        }
        (d, s)
    }

    fn neighborhood(&self, v: usize) -> Neighborhood {
        let k = self.params.kind.colors();
        let mut active = vec![0u32; k];
        let mut fixed = vec![0u32; k];
        for &u in self.graph.neighbors(v) {
            let c = self.state.color(u);
            if c == 0 {
                continue;
            }
            let slot = self.params.kind.slot_of(c);
            if self.state.is_active(u) {
                active[slot] += 1;
            } else {
                fixed[slot] += 1;
            }
        }
        let own = match self.state.color(v) {
            0 => None,
            c => Some(self.params.kind.slot_of(c)),
        };
        Neighborhood {
            degree: active.iter().sum(),
            active,
            fixed,
            own,
        }
    }

    /// Log heat-bath weights of each color for `v` given neighbor counts.
    fn heat_bath_logits(&self, active: &[u32], fixed: &[u32]) -> Vec<f64> {
        let k = active.len();
        (0..k)
            .map(|c| {
                (0..k)
                    .map(|b| (active[b] + fixed[b]) as f64 * self.coupling[c][b])
                    .sum()
            })
            .collect()
    }

    fn log_rho(&self, active: &[u32], nb: &Neighborhood) -> f64 {
        let mut value = log_sum_exp(&self.heat_bath_logits(active, &nb.fixed));
        if let Some(a) = nb.own {
            value -= (0..active.len())
                .map(|b| active[b] as f64 * self.coupling[a][b])
                .sum::<f64>();
        }
        value
    }

    /// Maximum of `log_rho` over colorings of the active neighbors. The
    /// heat-bath normalizer is convex in the color counts, so with `a = 0`
    /// the maximum sits at a single-color neighborhood; with `a != 0` and the
    /// number of `a`-colored neighbors held fixed, the rest concentrate on
    /// one color.
    fn log_rho_max(&self, nb: &Neighborhood) -> f64 {
        let k = nb.active.len();
        let d = nb.degree;
        let mut best = f64::NEG_INFINITY;
        let mut counts = vec![0u32; k];
        match nb.own {
            None => {
                for c in 0..k {
                    counts.fill(0);
                    counts[c] = d;
                    best = best.max(self.log_rho(&counts, nb));
                }
            }
            Some(a) => {
                for on_own in 0..=d {
                    for c in (0..k).filter(|&c| c != a) {
                        counts.fill(0);
                        counts[a] = on_own;
                        counts[c] = d - on_own;
                        best = best.max(self.log_rho(&counts, nb));
                    }
                }
            }
        }
        best
    }

    /// Probability that a step at inactive `v` accepts, in the current state.
    pub fn acceptance_probability(&self, v: usize) -> Result<f64> {
        let nb = self.neighborhood(v);
        let log_rho = self.log_rho(&nb.active, &nb);
        let log_max = self.log_rho_max(&nb);
        heat_bath_acceptance(libm::exp(log_rho - log_max), 1.0)
    }

    /// Heat-bath law of `v`'s color given all current neighbor colors.
    pub fn heat_bath_distribution(&self, v: usize) -> Vec<f64> {
        let nb = self.neighborhood(v);
        let logits = self.heat_bath_logits(&nb.active, &nb.fixed);
        let norm = log_sum_exp(&logits);
        logits.iter().map(|&l| libm::exp(l - norm)).collect()
    }

    pub fn state(&self) -> &VertexState {
        &self.state
    }
}

impl Recycler for SpinSampler<'_> {
    fn site_count(&self) -> usize {
        self.state.len()
    }

    fn active_count(&self) -> usize {
        self.state.active_count()
    }

    fn is_active(&self, site: usize) -> bool {
        self.state.is_active(site)
    }

    fn choose_site(&self, _rng: &mut RandomSource) -> Result<usize> {
        self.state.lowest_pending().ok_or(Error::StepOnComplete)
    }

    fn step(&mut self, v: usize, rng: &mut RandomSource) -> Result<StepOutcome> {
        if self.is_complete() {
            return Err(Error::StepOnComplete);
        }
        if v >= self.site_count() || self.state.is_active(v) {
            return Err(Error::InvalidSite(v));
        }
        // The acceptance probability does not depend on the proposed color,
        // so the color is only drawn once the step is known to accept.
        let accept = self.acceptance_probability(v)?;
        if rng.uniform() < accept {
            let law = self.heat_bath_distribution(v);
            let u = rng.uniform();
            let mut acc = 0.0;
            let mut slot = law.len() - 1;
            for (i, p) in law.iter().enumerate() {
                acc += p;
                if u < acc {
                    slot = i;
                    break;
                }
            }
            self.state
                .activate(self.graph, v, self.params.kind.color_of(slot));
            return Ok(StepOutcome::accepted(v));
        }
        let removed = self.state.rejection_set(self.graph, v, self.params.scope);
        self.state.remove_sites(self.graph, v, &removed);
        Ok(StepOutcome::rejected(v, removed))
    }

    fn sample(&self) -> Sample {
        Sample::Colors(self.state.colors().to_vec())
    }

    fn reset(&mut self) {
        self.state.reset();
    }

    fn check_invariants(&self) -> core::result::Result<(), String> {
        self.state.check(self.graph, false)?;
        let k = self.params.kind.colors();
        for v in 0..self.state.len() {
            let c = self.state.color(v);
            if c != 0 && !(0..k).any(|i| self.params.kind.color_of(i) == c) {
                return Err(format!("vertex {v} has color {c} outside the palette"));
            }
        }
        Ok(())
    }
}
