//! Independent replications of one sampler configuration.
//!
//! Replication `i` of an experiment with base seed `s` draws from
//! `RandomSource::for_run(s, i)`, so any single replication can be rerun in
//! isolation. Results always come back in replication order.

use std::time::Instant;

use rayon::prelude::*;
use recycler_core::{run, Graph, RandomSource, Result, RunOutcome};

use crate::model::ModelSpec;

#[derive(Debug, Clone)]
pub struct Replication {
    pub index: u64,
    pub outcome: RunOutcome,
    /// Wall time of the run in nanoseconds; 0 when timing is off.
    pub wall_ns: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub seed: u64,
    pub runs: u64,
    pub cap: Option<u64>,
    pub timing: bool,
}

/// Runs `config.runs` replications of `spec` on `graph`. Uses rayon's
/// current thread pool; wrap the call in `ThreadPool::install` to bound it.
pub fn replicate(spec: &ModelSpec, graph: &Graph, config: RunConfig) -> Result<Vec<Replication>> {
    spec.build(graph)?;
    (0..config.runs)
        .into_par_iter()
        .map_init(
            || spec.build(graph).expect("parameters validated above"),
            |sampler, index| {
                let mut rng = RandomSource::for_run(config.seed, index);
                let start = config.timing.then(Instant::now);
                let outcome = run(sampler.as_mut(), &mut rng, config.cap)?;
                let wall_ns = start.map_or(0, |s| s.elapsed().as_nanos() as u64);
                Ok(Replication {
                    index,
                    outcome,
                    wall_ns,
                })
            },
        )
        .collect()
}

/// Runs `f` on a pool with `threads` workers (all cores when `None`).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}
