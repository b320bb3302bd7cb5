//! Heat-bath recycling for the uniform law on proper `k`-colorings.
//!
//! Colors are `1..=k`; 0 is blank and constrains nothing. At inactive `v`,
//! the proposal is uniform over colors unused by every colored neighbor
//! (active or fixed). With `f` distinct fixed neighbor colors and `a`
//! distinct neighbor colors overall, the step accepts with probability
//! `(k - a) / (k - f)`; on a fresh vertex this is the familiar `(k - a) / k`.
//! Rejections remove the sites chosen by the [`RejectionScope`], which keep
//! their colors as fixed values while they border the active set.

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
pub struct ColoringParams {
    pub k: usize,
    pub policy: RejectionScope,
}

impl ColoringParams {
    pub fn new(k: usize, policy: RejectionScope) -> Result<Self> {
        if k < 2 {
            return Err(invalid("k", format!("need at least 2 colors, got {k}")));
        }
        Ok(ColoringParams { k, policy })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Regime {
    /// `k <= Δ`: a proper extension is not guaranteed; the sampler refuses.
    Infeasible,
    /// `Δ < k`, but not large enough for any proven linear-time bound.
    OutsideProvable,
    /// `k` well above `Δ^4`, where the asymptotic linear-time result can
    /// apply; its constant is unspecified.
    AsymptoticOnly,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegimeNote {
    pub max_degree: usize,
    pub k: usize,
    pub regime: Regime,
    pub claim: &'static str,
    pub remark: &'static str,
    /// Mean change of `|V_t|` per step, when measured.
    pub drift: Option<f64>,
}

pub const REGIME_CLAIM: &str =
    "linear expected number of steps when k is Omega(Delta^4); the constant is not specified";

/// Describes where `k` sits relative to the known running-time results for
/// maximum degree `delta`. No numeric threshold is produced.
pub fn coloring_regime_note(delta: usize, k: usize, drift: Option<f64>) -> RegimeNote {
    let (regime, remark) = if k <= delta {
        (
            Regime::Infeasible,
            "k <= max degree: the sampler refuses to run",
        )
    } else if (k as u128) > (delta as u128).pow(4) && k > delta + 1 {
        (
            Regime::AsymptoticOnly,
            "k exceeds Delta^4; linear time holds only asymptotically with an unknown constant",
        )
    } else {
        (
            Regime::OutsideProvable,
            "outside any provable regime; sampler may still be run",
        )
    };
    RegimeNote {
        max_degree: delta,
        k,
        regime,
        claim: REGIME_CLAIM,
        remark,
        drift,
    }
}

#[derive(Debug, Clone)]
pub struct ColoringSampler<'g> {
    graph: &'g Graph,
    params: ColoringParams,
    state: VertexState,
    used: Vec<bool>,
}

impl<'g> ColoringSampler<'g> {
    pub fn new(graph: &'g Graph, params: ColoringParams) -> Result<Self> {
        let params = ColoringParams::new(params.k, params.policy)?;
        if params.k <= graph.max_degree() {
            return Err(invalid(
                "k",
                format!(
                    "need k > max degree {} so every partial coloring extends, got {}",
                    graph.max_degree(),
                    params.k
                ),
            ));
        }
        Ok(ColoringSampler {
            graph,
            params,
            state: VertexState::new(graph.vertex_count()),
            used: vec![false; params.k + 1],
        })
    }

    pub fn params(&self) -> ColoringParams {
        self.params
    }

    /// `(a, f)`: distinct colors among all colored neighbors of `v`, and
    /// among its fixed (inactive) neighbors only.
    pub fn neighbor_colors(&self, v: usize) -> (usize, usize) {
        let k = self.params.k;
        let mut fixed = vec![false; k + 1];
        let mut any = vec![false; k + 1];
        for &u in self.graph.neighbors(v) {
            let c = self.state.color(u) as usize;
            if c == 0 {
                continue;
            }
            any[c] = true;
            if !self.state.is_active(u) {
                fixed[c] = true;
            }
        }
        let count = |m: &[bool]| m.iter().filter(|&&b| b).count();
        (count(&any), count(&fixed))
    }

    pub fn acceptance_probability(&self, v: usize) -> Result<f64> {
        let k = self.params.k;
        let (a, f) = self.neighbor_colors(v);
        heat_bath_acceptance((k - a) as f64, (k - f) as f64)
    }

    pub fn state(&self) -> &VertexState {
        &self.state
    }
}

impl Recycler for ColoringSampler<'_> {
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
        let accept = self.acceptance_probability(v)?;
        if rng.uniform() < accept {
            self.used.fill(false);
            for &u in self.graph.neighbors(v) {
                self.used[self.state.color(u) as usize] = true;
            }
            let free: Vec<usize> = (1..=self.params.k).filter(|&c| !self.used[c]).collect();
            let c = free[rng.uniform_int(free.len())];
            self.state.activate(self.graph, v, c as i32);
            return Ok(StepOutcome::accepted(v));
        }
        let removed = self.state.rejection_set(self.graph, v, self.params.policy);
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
        for &(u, v) in self.graph.edges() {
            let (cu, cv) = (self.state.color(u), self.state.color(v));
            if cu != 0 && cu == cv && (self.state.is_active(u) || self.state.is_active(v)) {
                return Err(format!("edge ({u}, {v}) is monochromatic with color {cu}"));
            }
        }
        if let Some(v) =
            (0..self.state.len()).find(|&v| self.state.color(v) as usize > self.params.k)
        {
            return Err(format!(
                "vertex {v} has color outside 1..={}",
                self.params.k
            ));
        }
        Ok(())
    }
}
