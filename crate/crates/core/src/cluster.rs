//! Recycling for the random cluster model
//! `pi(A) ∝ p^|A| (1-p)^|E∖A| q^c(A)`, where `c(A)` counts the components of
//! `(V, A)` including isolated vertices.
//!
//! Sites are edges, visited in ascending index order (= lexicographic order
//! of their endpoints). An edge `(v, w)` with `v < w` proposes color 1 with
//! probability `p`. If `A_t` already joins `v` and `w` the proposal is kept;
//! otherwise color 0 is kept and color 1 survives with probability `1/q`. A
//! rejection removes every active edge touching `w`'s component in `A_t`
//! (internal edges included) and, with the tree trick, adds back a spanning
//! tree of that component plus `v`, each tree edge colored 1 with probability
//! `rho / (1 - p + rho)`, `rho = p / q`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::engine::{Recycler, Sample, StepOutcome};
use crate::error::{invalid, Error, Result};
use crate::graph::{spanning_tree, Edge, EdgeSubgraph, Graph, UnionFind};
use crate::rng::RandomSource;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RCParams {
    pub p: f64,
    pub q: f64,
    pub tree_trick: bool,
}

impl RCParams {
    pub fn new(p: f64, q: f64, tree_trick: bool) -> Result<Self> {
        let params = RCParams { p, q, tree_trick };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(invalid("p", format!("must lie in [0, 1], got {}", self.p)));
        }
        if !(self.q > 1.0 && self.q.is_finite()) {
            return Err(invalid(
                "q",
                format!("must be finite and > 1, got {}", self.q),
            ));
        }
        Ok(())
    }

    pub fn rho(&self) -> f64 {
        self.p / self.q
    }

    /// Probability that an added-back tree edge is colored 1.
    pub fn tree_edge_probability(&self) -> f64 {
        let rho = self.rho();
        if self.p == 1.0 {
            // 1 - p + rho = rho; every tree edge is present
            return 1.0;
        }
        rho / (1.0 - self.p + rho)
    }
}

/// Largest `p` with guaranteed `O(|E|)` expected steps at maximum degree
/// `delta`: the smaller root of `(1-1/q)(Δ-1) p^2 - (Δ-1/q) p + 1` with the
/// tree trick, `1 / (Δ - 1/q)` without.
pub fn rc_threshold(delta: usize, q: f64, tree_trick: bool) -> Result<f64> {
    if delta < 2 {
        return Err(invalid("delta", format!("must be at least 2, got {delta}")));
    }
    if !(q > 1.0 && q.is_finite()) {
        return Err(invalid("q", format!("must be finite and > 1, got {q}")));
    }
    let d = delta as f64;
    let b = d - 1.0 / q;
    if !tree_trick {
        return Ok(1.0 / b);
    }
    let a = (1.0 - 1.0 / q) * (d - 1.0);
    let disc = b * b - 4.0 * a;
    if disc < 0.0 {
        return Err(Error::InvariantViolation(format!(
            "negative discriminant {disc} for delta={delta}, q={q}"
        )));
    }
    Ok((b - libm::sqrt(disc)) / (2.0 * a))
}

/// `alpha = (Δ-2)(1-p+rho)/(1-p)`, the component weight in the potential.
pub fn rc_alpha(delta: usize, params: &RCParams) -> Result<f64> {
    if params.p >= 1.0 {
        return Err(invalid("p", "alpha is undefined at p = 1"));
    }
    let d = delta as f64;
    Ok((d - 2.0) * (1.0 - params.p + params.rho()) / (1.0 - params.p))
}

/// Lower bound on the expected one-step change of the potential:
/// `(1-p) + p (1/q - alpha)`.
pub fn rc_drift_bound(delta: usize, params: &RCParams) -> Result<f64> {
    let alpha = rc_alpha(delta, params)?;
    let p = params.p;
    Ok((1.0 - p) + p * (1.0 / params.q - alpha))
}

/// Colors each component of `(V, edges)` with an independent uniform color
/// in `1..=q`, in order of each component's smallest vertex.
pub fn rc_to_potts(
    graph: &Graph,
    edges: &[Edge],
    q: f64,
    rng: &mut RandomSource,
) -> Result<Vec<i32>> {
    if !(q >= 2.0 && libm::trunc(q) == q && q <= i32::MAX as f64) {
        return Err(invalid(
            "q",
            format!("coupling needs an integer q >= 2, got {q}"),
        ));
    }
    let n = graph.vertex_count();
    let mut uf = UnionFind::new(n);
    for &(u, v) in edges {
        if graph.edge_index(u, v).is_none() {
            return Err(invalid(
                "edges",
                format!("({u}, {v}) is not an edge of the graph"),
            ));
        }
        uf.union(u, v);
    }
    let mut root_color = vec![0i32; n];
    let mut colors = vec![0i32; n];
    for v in 0..n {
        let r = uf.find(v);
        if root_color[r] == 0 {
            root_color[r] = rng.uniform_int(q as usize) as i32 + 1;
        }
        colors[v] = root_color[r];
    }
    Ok(colors)
}

#[derive(Debug, Clone)]
pub struct RcSampler<'g> {
    graph: &'g Graph,
    params: RCParams,
    active: Vec<bool>,
    active_count: usize,
    pending: BTreeSet<usize>,
    // edges colored 1 (always a subset of the active edges)
    ones: EdgeSubgraph<'g>,
    last_tree: Vec<usize>,
    last_component: usize,
}

impl<'g> RcSampler<'g> {
    pub fn new(graph: &'g Graph, params: RCParams) -> Result<Self> {
        params.validate()?;
        let m = graph.edge_count();
        let mut s = RcSampler {
            graph,
            params,
            active: vec![false; m],
            active_count: 0,
            pending: (0..m).collect(),
            ones: EdgeSubgraph::empty(graph),
            last_tree: Vec::new(),
            last_component: 0,
        };
        s.reset();
        Ok(s)
    }

    pub fn params(&self) -> RCParams {
        self.params
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn ones(&self) -> &EdgeSubgraph<'g> {
        &self.ones
    }

    /// Components of `(V, A_t)`, isolated vertices included.
    pub fn components(&self) -> usize {
        self.ones.count_components()
    }

    /// `|E_t| - alpha * c(A_t)`.
    pub fn potential(&self, alpha: f64) -> f64 {
        self.active_count as f64 - alpha * self.components() as f64
    }

    /// Edges added back by the most recent rejection (empty without the
    /// tree trick or after an acceptance), ascending.
    pub fn last_tree(&self) -> &[usize] {
        &self.last_tree
    }

    /// Vertex count of the component removed by the most recent rejection.
    pub fn last_component_size(&self) -> usize {
        self.last_component
    }

    fn activate(&mut self, e: usize, one: bool) {
        self.active[e] = true;
        self.active_count += 1;
        self.pending.remove(&e);
        if one {
            self.ones.insert(e);
        }
    }

    fn deactivate(&mut self, e: usize) {
        self.active[e] = false;
        self.active_count -= 1;
        self.pending.insert(e);
        self.ones.remove(e);
    }
}

impl Recycler for RcSampler<'_> {
    fn site_count(&self) -> usize {
        self.active.len()
    }

    fn active_count(&self) -> usize {
        self.active_count
    }

    fn is_active(&self, site: usize) -> bool {
        self.active[site]
    }

    fn choose_site(&self, _rng: &mut RandomSource) -> Result<usize> {
        self.pending.first().copied().ok_or(Error::StepOnComplete)
    }

    fn step(&mut self, e: usize, rng: &mut RandomSource) -> Result<StepOutcome> {
        if self.is_complete() {
            return Err(Error::StepOnComplete);
        }
        if e >= self.site_count() || self.active[e] {
            return Err(Error::InvalidSite(e));
        }
        self.last_tree.clear();
        self.last_component = 0;
        let (v, w) = self.graph.edge(e);
        let one = rng.bernoulli(self.params.p);
        if !one || self.ones.connected_in(v, w) || rng.bernoulli(1.0 / self.params.q) {
            self.activate(e, one);
            return Ok(StepOutcome::accepted(e));
        }

        let (component, internal) = self.ones.component_of(w);
        let mut in_component = vec![false; self.graph.vertex_count()];
        for &x in &component {
            in_component[x] = true;
        }
        let mut removed: Vec<usize> = component
            .iter()
            .flat_map(|&x| self.graph.incident(x).iter().map(|&(_, f)| f))
            .filter(|&f| self.active[f])
            .collect();
        removed.sort_unstable();
        removed.dedup();
        let delta = self.graph.max_degree();
        if removed.len() > component.len() * delta.saturating_sub(1) + 1 {
            return Err(Error::InvariantViolation(format!(
                "rejection removed {} edges around a component of {} vertices",
                removed.len(),
                component.len()
            )));
        }
        for &f in &removed {
            self.deactivate(f);
        }
        self.last_component = component.len();

        if self.params.tree_trick {
            let internal: Vec<Edge> = internal.iter().map(|&f| self.graph.edge(f)).collect();
            let tree = spanning_tree(&component, &internal, (v, w), v)?;
            let mut tree: Vec<usize> = tree
                .iter()
                .map(|&(a, b)| self.graph.edge_index(a, b).ok_or(Error::Disconnected))
                .collect::<Result<_>>()?;
            tree.sort_unstable();
            let keep = self.params.tree_edge_probability();
            for &f in &tree {
                let one = rng.bernoulli(keep);
                self.activate(f, one);
            }
            self.last_tree = tree;
        }
        Ok(StepOutcome::rejected(e, removed))
    }

    fn sample(&self) -> Sample {
        Sample::Edges(
            self.ones
                .edge_indices()
                .map(|f| self.graph.edge(f))
                .collect(),
        )
    }

    /// At `p = 0` the only configuration is the empty edge set, so the
    /// sampler starts complete.
    fn reset(&mut self) {
        let m = self.active.len();
        let done = self.params.p == 0.0;
        self.active.fill(done);
        self.active_count = if done { m } else { 0 };
        self.pending = if done {
            BTreeSet::new()
        } else {
            (0..m).collect()
        };
        self.ones = EdgeSubgraph::empty(self.graph);
        self.last_tree.clear();
        self.last_component = 0;
    }

    fn check_invariants(&self) -> core::result::Result<(), String> {
        let mut count = 0;
        for e in 0..self.active.len() {
            if self.active[e] {
                count += 1;
                if self.pending.contains(&e) {
                    return Err(format!("active edge {e} listed as pending"));
                }
            } else {
                if self.ones.contains(e) {
                    return Err(format!("inactive edge {e} colored 1"));
                }
                if !self.pending.contains(&e) {
                    return Err(format!("inactive edge {e} missing from pending set"));
                }
            }
        }
        if count != self.active_count {
            return Err(format!(
                "active count {count}, cached {}",
                self.active_count
            ));
        }
        Ok(())
    }
}
