//! The generic recycling protocol: a sampler grows an active site set one
//! site at a time, and on rejection removes exactly the sites whose colors the
//! rejection revealed. Whenever the active set covers every site, the
//! configuration is an exact draw from the target law.
//!
//! Models implement [`Recycler`]; [`run`] and [`run_with`] drive the Repeat
//! loop and count iterations.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// A completed configuration in its canonical per-model encoding.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(untagged))]
pub enum Sample {
    /// Sorted vertices colored 1 (independent sets).
    Vertices(Vec<usize>),
    /// One color per vertex: -1/+1 for Ising, 1..=q for Potts and colorings.
    Colors(Vec<i32>),
    /// Sorted edges colored 1 (random cluster).
    Edges(Vec<(usize, usize)>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum OutcomeKind {
    Accepted,
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOutcome {
    pub kind: OutcomeKind,
    pub added_site: usize,
    /// Previously active sites removed by a rejection; empty on acceptance.
    pub removed_sites: Vec<usize>,
}

impl StepOutcome {
    pub fn accepted(site: usize) -> Self {
        StepOutcome {
            kind: OutcomeKind::Accepted,
            added_site: site,
            removed_sites: Vec::new(),
        }
    }

    pub fn rejected(site: usize, removed_sites: Vec<usize>) -> Self {
        StepOutcome {
            kind: OutcomeKind::Rejected,
            added_site: site,
            removed_sites,
        }
    }

    pub fn is_accepted(&self) -> bool {
        self.kind == OutcomeKind::Accepted
    }
}

/// Contract every model sampler fulfils.
///
/// A fresh sampler (or one after [`Recycler::reset`]) has an empty active
/// set, unless the target law is a single point known in advance. `choose_site` may depend on the active set and the fixed colors
/// outside it, never on the random colors inside it.
pub trait Recycler {
    /// Number of sites (vertices or edges) the sample is built over.
    fn site_count(&self) -> usize;

    fn active_count(&self) -> usize;

    fn is_active(&self, site: usize) -> bool;

    fn is_complete(&self) -> bool {
        self.active_count() == self.site_count()
    }

    fn choose_site(&self, rng: &mut RandomSource) -> Result<usize>;

    /// One Repeat iteration attempting to add `site`.
    fn step(&mut self, site: usize, rng: &mut RandomSource) -> Result<StepOutcome>;

    /// Current configuration in canonical encoding. Only meaningful as a
    /// draw from the target once the state is complete.
    fn sample(&self) -> Sample;

    /// Back to the initial state (empty active set, rest colors everywhere).
    fn reset(&mut self);

    /// Checks the model's state invariants.
    fn check_invariants(&self) -> core::result::Result<(), String>;
}

impl<R: Recycler + ?Sized> Recycler for &mut R {
    fn site_count(&self) -> usize {
        (**self).site_count()
    }
    fn active_count(&self) -> usize {
        (**self).active_count()
    }
    fn is_active(&self, site: usize) -> bool {
        (**self).is_active(site)
    }
    fn is_complete(&self) -> bool {
        (**self).is_complete()
    }
    fn choose_site(&self, rng: &mut RandomSource) -> Result<usize> {
        (**self).choose_site(rng)
    }
    fn step(&mut self, site: usize, rng: &mut RandomSource) -> Result<StepOutcome> {
        (**self).step(site, rng)
    }
    fn sample(&self) -> Sample {
        (**self).sample()
    }
    fn reset(&mut self) {
        (**self).reset()
    }
    fn check_invariants(&self) -> core::result::Result<(), String> {
        (**self).check_invariants()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    /// `None` when the run hit its iteration cap.
    pub sample: Option<Sample>,
    pub iterations: u64,
    pub completed: bool,
}

/// One record per Repeat iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TraceRecord {
    pub t: u64,
    pub active: usize,
    pub kind: OutcomeKind,
}

/// Runs `sampler` from its initial state until complete or until `cap`
/// iterations have been spent. Interrupted runs return no sample.
pub fn run<S: Recycler + ?Sized>(
    sampler: &mut S,
    rng: &mut RandomSource,
    cap: Option<u64>,
) -> Result<RunOutcome> {
    run_with(sampler, rng, cap, |_, _, _| {})
}

/// Like [`run`], calling `observe` after every iteration with the trace
/// record, the step outcome and the sampler's new state.
pub fn run_with<S, F>(
    sampler: &mut S,
    rng: &mut RandomSource,
    cap: Option<u64>,
    mut observe: F,
) -> Result<RunOutcome>
where
    S: Recycler + ?Sized,
    F: FnMut(&TraceRecord, &StepOutcome, &S),
{
    if cap == Some(0) {
        return Err(crate::error::invalid("iteration_cap", "must be at least 1"));
    }
    sampler.reset();
    let mut t = 0u64;
    while !sampler.is_complete() {
        if cap.is_some_and(|c| t >= c) {
            return Ok(RunOutcome {
                sample: None,
                iterations: t,
                completed: false,
            });
        }
        let site = sampler.choose_site(rng)?;
        let outcome = sampler.step(site, rng)?;
        t += 1;
        let record = TraceRecord {
            t,
            active: sampler.active_count(),
            kind: outcome.kind,
        };
        observe(&record, &outcome, sampler);
    }
    Ok(RunOutcome {
        sample: Some(sampler.sample()),
        iterations: t,
        completed: true,
    })
}

/// Runs to completion (or cap) and returns the per-iteration trace.
pub fn record_trace<S: Recycler + ?Sized>(
    sampler: &mut S,
    rng: &mut RandomSource,
    cap: Option<u64>,
) -> Result<(RunOutcome, Vec<TraceRecord>)> {
    let mut trace = Vec::new();
    let outcome = run_with(sampler, rng, cap, |r, _, _| trace.push(*r))?;
    Ok((outcome, trace))
}

// Slack for rounding when a model computes rho and its maximum separately.
const RATIO_SLACK: f64 = 1e-12;

/// Acceptance probability `rho / m`, where `m` is the maximum of `rho` over
/// all configurations compatible with the current fixed part.
///
/// A `rho` above `m` means the model's maximum is wrong and is reported as an
/// invariant violation rather than silently clamped.
pub fn heat_bath_acceptance(rho: f64, m: f64) -> Result<f64> {
    if !(rho > 0.0 && m > 0.0) || !rho.is_finite() || !m.is_finite() {
        return Err(Error::InvariantViolation(alloc::format!(
            "acceptance needs 0 < rho <= m, got rho={rho}, m={m}"
        )));
    }
    if rho > m * (1.0 + RATIO_SLACK) {
        return Err(Error::InvariantViolation(alloc::format!(
            "rho={rho} exceeds its maximum m={m}"
        )));
    }
    Ok((rho / m).min(1.0))
}

/// Likelihood ratio for a step colored by an arbitrary proposal:
/// `target_next / (proposal * target_current)`.
///
/// The proposal must put positive mass on every color the target allows; a
/// zero proposal probability is an error.
pub fn proposal_ratio(target_next: f64, proposal: f64, target_current: f64) -> Result<f64> {
    if proposal <= 0.0 {
        return Err(Error::ZeroProposal);
    }
    if target_current <= 0.0 {
        return Err(Error::InvariantViolation(
            "current configuration has zero target weight".into(),
        ));
    }
    Ok(target_next / (proposal * target_current))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acceptance_arithmetic() {
        assert_eq!(heat_bath_acceptance(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(heat_bath_acceptance(0.5, 2.0).unwrap(), 0.25);
        // hard-core conflict: rho proportional to 1, maximum 1 + lambda
        let lambda = 1.0;
        assert_eq!(heat_bath_acceptance(1.0, 1.0 + lambda).unwrap(), 0.5);
        assert!(matches!(
            heat_bath_acceptance(2.0, 1.0),
            Err(Error::InvariantViolation(_))
        ));
        assert!(heat_bath_acceptance(0.0, 1.0).is_err());
    }

    #[test]
    fn proposal_ratio_guards_support() {
        assert_eq!(proposal_ratio(0.5, 0.5, 1.0).unwrap(), 1.0);
        assert_eq!(proposal_ratio(0.5, 0.0, 1.0), Err(Error::ZeroProposal));
    }
}
