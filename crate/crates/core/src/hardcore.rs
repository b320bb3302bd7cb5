//! Weighted independent sets (the hard-core gas), `pi(x) ∝ lambda^{|x|}`.
//!
//! Two variants share one step:
//!
//! * `Basic` adds the lowest-numbered inactive vertex and, on a conflict,
//!   takes `w` as the lowest-numbered neighbor colored 1. It removes `w`, all
//!   active neighbors of `w`, and the active neighbors of `v` numbered below `w`.
//! * `Improved` keeps the inactive vertices of every graph component
//!   connected by peeling leaves off a spanning forest of the complement, and
//!   looks for `w` in cyclic order from a uniformly random neighbor of `v`. It
//!   removes `w`, its active neighbors, and the active neighbors of `v` passed
//!   over before `w` was found.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::engine::{Recycler, Sample, StepOutcome};
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, UnionFind};
use crate::rng::RandomSource;
use crate::state::VertexState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Variant {
    #[default]
    Basic,
    Improved,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HardcoreParams {
    pub lambda: f64,
    pub variant: Variant,
}

impl HardcoreParams {
    pub fn new(lambda: f64, variant: Variant) -> Result<Self> {
        let params = HardcoreParams { lambda, variant };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(invalid(
                "lambda",
                format!("must be positive and finite, got {}", self.lambda),
            ));
        }
        Ok(())
    }
}

/// Largest fugacity with positive drift for the basic variant: `1 / (2Δ - 1)`.
pub fn threshold_basic(delta: usize) -> Result<f64> {
    if delta < 1 {
        return Err(invalid("delta", "maximum degree must be at least 1"));
    }
    Ok(1.0 / (2.0 * delta as f64 - 1.0))
}

/// Fugacity bound from the weighted potential with `alpha = 3Δ/4`: `4 / (3Δ - 4)`.
pub fn threshold_improved(delta: usize) -> Result<f64> {
    if delta < 2 {
        return Err(invalid("delta", "4 / (3Δ - 4) needs Δ >= 2"));
    }
    Ok(4.0 / (3.0 * delta as f64 - 4.0))
}

/// Largest fugacity whose per-step drift in `|V_t|` is at least `gamma`,
/// giving at most `n / gamma` expected iterations.
pub fn lambda_for_drift(delta: usize, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(invalid("gamma", format!("must lie in (0, 1), got {gamma}")));
    }
    if delta < 1 {
        return Err(invalid("delta", "maximum degree must be at least 1"));
    }
    Ok(1.0 / (2.0 * delta as f64 / (1.0 - gamma) - 1.0))
}

/// Lower bound on the expected one-step change of `|V_t|` for the basic variant.
pub fn drift_bound(delta: usize, lambda: f64) -> f64 {
    (1.0 - (2.0 * delta as f64 - 1.0) * lambda) / (1.0 + lambda)
}

const NO_PARENT: usize = usize::MAX;

/// Spanning forest of the inactive vertices. Leaves can be activated without
/// disconnecting what remains.
#[derive(Debug, Clone)]
struct ComplementForest {
    parent: Vec<usize>,
    children: Vec<u32>,
    leaves: Vec<usize>,
    initial: (Vec<usize>, Vec<u32>, Vec<usize>),
}

impl ComplementForest {
    fn new(graph: &Graph) -> Self {
        let n = graph.vertex_count();
        let mut parent = vec![NO_PARENT; n];
        let mut children = vec![0u32; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let start = order.len();
            order.push(root);
            let mut head = start;
            while head < order.len() {
                let x = order[head];
                head += 1;
                for &y in graph.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = x;
                        children[x] += 1;
                        order.push(y);
                    }
                }
            }
        }
        let leaves: Vec<usize> = order.into_iter().filter(|&v| children[v] == 0).collect();
        ComplementForest {
            initial: (parent.clone(), children.clone(), leaves.clone()),
            parent,
            children,
            leaves,
        }
    }

    fn reset(&mut self) {
        self.parent.clone_from(&self.initial.0);
        self.children.clone_from(&self.initial.1);
        self.leaves.clone_from(&self.initial.2);
    }

    fn next(&self) -> Option<usize> {
        self.leaves.last().copied()
    }

    fn activate_top(&mut self) {
        let v = self.leaves.pop().expect("leaf available");
        let p = self.parent[v];
        self.parent[v] = NO_PARENT;
        if p != NO_PARENT {
            self.children[p] -= 1;
            if self.children[p] == 0 {
                self.leaves.push(p);
            }
        }
    }

    /// Re-attaches removed vertices below `v` (which stays on the stack top
    /// until it gains children).
    fn attach(&mut self, v: usize, attachments: &[(usize, usize)]) {
        if attachments.is_empty() {
            return;
        }
        debug_assert_eq!(self.next(), Some(v));
        self.leaves.pop();
        for &(u, p) in attachments {
            self.parent[u] = p;
            self.children[u] = 0;
            self.children[p] += 1;
        }
        for &(u, _) in attachments {
            if self.children[u] == 0 {
                self.leaves.push(u);
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct HardcoreSampler<'g> {
    graph: &'g Graph,
    params: HardcoreParams,
    accept_zero: f64,
    state: VertexState,
    forest: Option<ComplementForest>,
    component: Vec<usize>,
    conflicts: u64,
    examined_before_hit: u64,
}

impl<'g> HardcoreSampler<'g> {
    pub fn new(graph: &'g Graph, params: HardcoreParams) -> Result<Self> {
        params.validate()?;
        let forest = (params.variant == Variant::Improved).then(|| ComplementForest::new(graph));
        let mut uf = UnionFind::new(graph.vertex_count());
        for &(u, v) in graph.edges() {
            uf.union(u, v);
        }
        let component = (0..graph.vertex_count()).map(|v| uf.find(v)).collect();
        Ok(HardcoreSampler {
            graph,
            params,
            accept_zero: 1.0 / (1.0 + params.lambda),
            state: VertexState::new(graph.vertex_count()),
            forest,
            component,
            conflicts: 0,
            examined_before_hit: 0,
        })
    }

    pub fn params(&self) -> HardcoreParams {
        self.params
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// Number of active vertices colored 1.
    pub fn occupied(&self) -> usize {
        (0..self.state.len())
            .filter(|&v| self.state.is_active(v) && self.state.color(v) == 1)
            .count()
    }

    pub fn color(&self, v: usize) -> i32 {
        self.state.color(v)
    }

    /// `|V_t| - alpha * Σ x_t(v)`.
    pub fn potential(&self, alpha: f64) -> f64 {
        self.state.active_count() as f64 - alpha * self.occupied() as f64
    }

    /// `3Δ/4`, the weight that balances acceptance and rejection losses.
    pub fn default_alpha(&self) -> f64 {
        3.0 * self.graph.max_degree() as f64 / 4.0
    }

    /// Cumulative `(conflicts, neighbors of v examined before w)` over all
    /// steps since construction; only the improved variant counts.
    pub fn search_stats(&self) -> (u64, u64) {
        (self.conflicts, self.examined_before_hit)
    }

    fn find_conflict_basic(&self, v: usize) -> Option<(usize, Vec<usize>)> {
        let w = self
            .graph
            .neighbors(v)
            .iter()
            .copied()
            .find(|&u| self.state.is_active(u) && self.state.color(u) == 1)?;
        let passed = self
            .graph
            .neighbors(v)
            .iter()
            .copied()
            .take_while(|&u| u < w)
            .filter(|&u| self.state.is_active(u))
            .collect();
        Some((w, passed))
    }

    fn find_conflict_cyclic(
        &mut self,
        v: usize,
        rng: &mut RandomSource,
    ) -> Option<(usize, Vec<usize>)> {
        let nbrs = self.graph.neighbors(v);
        if nbrs.is_empty() {
            return None;
        }
        let start = rng.uniform_int(nbrs.len());
        let mut passed = Vec::new();
        for i in 0..nbrs.len() {
            let u = nbrs[(start + i) % nbrs.len()];
            if self.state.is_active(u) && self.state.color(u) == 1 {
                self.conflicts += 1;
                self.examined_before_hit += i as u64;
                return Some((u, passed));
            }
            if self.state.is_active(u) {
                passed.push(u);
            }
        }
        None
    }
}

impl Recycler for HardcoreSampler<'_> {
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
        let site = match &self.forest {
            Some(forest) => forest.next(),
            None => self.state.lowest_pending(),
        };
        site.ok_or(Error::StepOnComplete)
    }

    fn step(&mut self, v: usize, rng: &mut RandomSource) -> Result<StepOutcome> {
        if self.is_complete() {
            return Err(Error::StepOnComplete);
        }
        if v >= self.site_count() || self.state.is_active(v) {
            return Err(Error::InvalidSite(v));
        }
        if let Some(forest) = &self.forest {
            if forest.next() != Some(v) {
                return Err(Error::InvalidSite(v));
            }
        }

        let u = rng.uniform();
        let conflict = if u <= self.accept_zero {
            None
        } else if self.forest.is_some() {
            self.find_conflict_cyclic(v, rng)
        } else {
            self.find_conflict_basic(v)
        };

        let Some((w, passed)) = conflict else {
            let color = if u <= self.accept_zero { 0 } else { 1 };
            self.state.activate(self.graph, v, color);
            if let Some(forest) = &mut self.forest {
                forest.activate_top();
            }
            return Ok(StepOutcome::accepted(v));
        };

        // Removal order doubles as the attachment order for the forest.
        let mut attachments: Vec<(usize, usize)> = Vec::new();
        attachments.push((w, v));
        for &p in &passed {
            attachments.push((p, v));
        }
        for &z in self.graph.neighbors(w) {
            if z != v && self.state.is_active(z) && !passed.contains(&z) {
                attachments.push((z, w));
            }
        }
        let mut removed: Vec<usize> = attachments.iter().map(|&(x, _)| x).collect();
        for &x in &removed {
            self.state.deactivate(self.graph, x);
        }
        // Everything removed was colored 0 except w.
        self.state.set_fixed_color(w, 0);
        if let Some(forest) = &mut self.forest {
            forest.attach(v, &attachments);
        }
        removed.sort_unstable();
        Ok(StepOutcome::rejected(v, removed))
    }

    fn sample(&self) -> Sample {
        Sample::Vertices(
            (0..self.state.len())
                .filter(|&v| self.state.is_active(v) && self.state.color(v) == 1)
                .collect(),
        )
    }

    fn reset(&mut self) {
        self.state.reset();
        if let Some(forest) = &mut self.forest {
            forest.reset();
        }
    }

    fn check_invariants(&self) -> core::result::Result<(), String> {
        self.state.check(self.graph, true)?;
        for v in 0..self.state.len() {
            let c = self.state.color(v);
            if !self.state.is_active(v) && c != 0 {
                return Err(format!("inactive vertex {v} has color {c}"));
            }
            if c == 1 {
                if let Some(&u) = self
                    .graph
                    .neighbors(v)
                    .iter()
                    .find(|&&u| self.state.color(u) == 1)
                {
                    return Err(format!("adjacent vertices {v} and {u} both occupied"));
                }
            }
        }
        if self.forest.is_some() {
            let n = self.state.len();
            let mut uf = UnionFind::new(n);
            for &(a, b) in self.graph.edges() {
                if !self.state.is_active(a) && !self.state.is_active(b) {
                    uf.union(a, b);
                }
            }
            let mut root_of_component = vec![NO_PARENT; n];
            for v in (0..n).filter(|&v| !self.state.is_active(v)) {
                let root = uf.find(v);
                let slot = &mut root_of_component[self.component[v]];
                if *slot == NO_PARENT {
                    *slot = root;
                } else if *slot != root {
                    return Err(format!(
                        "inactive vertices of the component of {v} are disconnected"
                    ));
                }
            }
        }
        Ok(())
    }
}
