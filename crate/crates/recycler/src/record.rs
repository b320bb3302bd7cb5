use serde::Serialize;

use recycler_core::Sample;

use crate::runner::Replication;

/// One completed run, written as a JSON line by `recycler sample`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub model: &'static str,
    pub index: u64,
    /// Base seed of the experiment.
    pub seed: u64,
    /// Generator stream of this run; equal to `index`.
    pub stream: u64,
    pub iterations: u64,
    pub wall_ns: u64,
    /// Always true: interrupted runs are counted, never written.
    pub completed: bool,
    pub sample: Sample,
}

impl RunRecord {
    /// `None` for interrupted runs, which never produce a record.
    pub fn from_replication(model: &'static str, seed: u64, rep: &Replication) -> Option<Self> {
        Some(RunRecord {
            model,
            index: rep.index,
            seed,
            stream: rep.index,
            iterations: rep.outcome.iterations,
            wall_ns: rep.wall_ns,
            completed: rep.outcome.completed,
            sample: rep.outcome.sample.clone()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub requested: u64,
    pub completed: u64,
    pub interrupted: u64,
}
