//! Model selection shared by the CLI, the benchmark harness and the
//! acceptance suite.

use recycler_core::oracle::{
    enumerate_colorings, enumerate_hardcore, enumerate_rc, enumerate_spin,
};
use recycler_core::{
    drift_bound, ising_drift_bound, ising_threshold, rc_threshold, threshold_basic,
    threshold_improved, ColoringParams, ColoringSampler, ExactDistribution, Graph, HardcoreParams,
    HardcoreSampler, RCParams, RcSampler, Recycler, RejectionScope, Result, SpinKind, SpinParams,
    SpinSampler, Variant,
};

pub type BoxedSampler<'g> = Box<dyn Recycler + Send + 'g>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    Hardcore(HardcoreParams),
    Spin(SpinParams),
    Rc(RCParams),
    Coloring(ColoringParams),
}

impl ModelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Hardcore(_) => "hardcore",
            ModelSpec::Spin(p) => match p.kind {
                SpinKind::Ising => "ising",
                SpinKind::Potts { .. } => "potts",
            },
            ModelSpec::Rc(_) => "rc",
            ModelSpec::Coloring(_) => "coloring",
        }
    }

    /// Parameter summary for CSV rows, e.g. `lambda=0.5;variant=basic`.
    pub fn params_label(&self) -> String {
        match self {
            ModelSpec::Hardcore(p) => {
                format!("lambda={};variant={}", p.lambda, variant_name(p.variant))
            }
            ModelSpec::Spin(p) => {
                let mut s = format!("beta={};j={}", p.beta, p.j);
                if let SpinKind::Potts { q } = p.kind {
                    s.push_str(&format!(";q={q}"));
                }
                s.push_str(&format!(";scope={}", scope_name(p.scope)));
                s
            }
            ModelSpec::Rc(p) => format!("p={};q={};tree_trick={}", p.p, p.q, p.tree_trick),
            ModelSpec::Coloring(p) => format!("k={};policy={}", p.k, scope_name(p.policy)),
        }
    }

    /// Fresh sampler over `graph`; fails on invalid parameters.
    pub fn build<'g>(&self, graph: &'g Graph) -> Result<BoxedSampler<'g>> {
        Ok(match *self {
            ModelSpec::Hardcore(p) => Box::new(HardcoreSampler::new(graph, p)?),
            ModelSpec::Spin(p) => Box::new(SpinSampler::new(graph, p)?),
            ModelSpec::Rc(p) => Box::new(RcSampler::new(graph, p)?),
            ModelSpec::Coloring(p) => Box::new(ColoringSampler::new(graph, p)?),
        })
    }

    pub fn exact(&self, graph: &Graph) -> Result<ExactDistribution> {
        match *self {
            ModelSpec::Hardcore(p) => enumerate_hardcore(graph, p.lambda),
            ModelSpec::Spin(p) => enumerate_spin(graph, p.beta, p.j, p.kind),
            ModelSpec::Rc(p) => enumerate_rc(graph, p.p, p.q),
            ModelSpec::Coloring(p) => enumerate_colorings(graph, p.k),
        }
    }

    /// Number of sites a run must fill: edges for rc, vertices otherwise.
    pub fn site_count(&self, graph: &Graph) -> usize {
        match self {
            ModelSpec::Rc(_) => graph.edge_count(),
            _ => graph.vertex_count(),
        }
    }

    /// Lower bound on the expected growth of the active set per step, when
    /// the model has one and it is positive. Drives the tail-bound table.
    pub fn drift_gamma(&self, graph: &Graph) -> Option<f64> {
        let delta = graph.max_degree();
        let gamma = match self {
            ModelSpec::Hardcore(p) if p.variant == Variant::Basic => drift_bound(delta, p.lambda),
            ModelSpec::Spin(p) if p.kind == SpinKind::Ising => ising_drift_bound(delta, p.beta),
            _ => return None,
        };
        (gamma > 0.0).then_some(gamma)
    }

    /// A warning when the parameters lie outside the proven linear-time
    /// regime for `graph`'s maximum degree.
    pub fn regime_warning(&self, graph: &Graph) -> Option<String> {
        let delta = graph.max_degree();
        let (value, limit, what) = match self {
            ModelSpec::Hardcore(p) => {
                let limit = match p.variant {
                    Variant::Basic => threshold_basic(delta).ok()?,
                    Variant::Improved => threshold_improved(delta).ok()?,
                };
                (p.lambda, limit, "lambda")
            }
            ModelSpec::Spin(p) if p.kind == SpinKind::Ising => {
                (p.beta, ising_threshold(delta).ok()?, "beta")
            }
            ModelSpec::Rc(p) => (p.p, rc_threshold(delta, p.q, p.tree_trick).ok()?, "p"),
            _ => return None,
        };
        (value >= limit).then(|| {
            format!("{what}={value} is not below the linear-time threshold {limit:.6} for max degree {delta}")
        })
    }
}

pub fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Basic => "basic",
        Variant::Improved => "improved",
    }
}

pub fn scope_name(s: RejectionScope) -> &'static str {
    match s {
        RejectionScope::Neighbors => "neighbors",
        RejectionScope::Neighbors2 => "neighbors2",
        RejectionScope::Restart => "restart",
    }
}
