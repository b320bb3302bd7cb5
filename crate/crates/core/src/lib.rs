//! Randomness Recycler perfect samplers for Gibbs distributions on graphs.
//!
//! Each sampler builds a configuration one site at a time. The sites already
//! placed are always distributed exactly according to the target law
//! conditioned on the values fixed outside them, so a completed run is an
//! exact draw, and the number of steps it took is independent of the result.
//!
//! Models: the hard-core gas ([`hardcore`]), Ising and Potts ([`spin`]), the
//! random cluster model ([`cluster`]) and uniform proper colorings
//! ([`coloring`]). [`oracle`] enumerates the exact laws on small graphs.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cluster;
pub mod coloring;
pub mod engine;
pub mod error;
pub mod graph;
pub mod hardcore;
pub mod oracle;
pub mod rng;
pub mod spin;
pub mod state;

pub use cluster::{rc_alpha, rc_drift_bound, rc_threshold, rc_to_potts, RCParams, RcSampler};
pub use coloring::{coloring_regime_note, ColoringParams, ColoringSampler, Regime, RegimeNote};
pub use engine::{
    heat_bath_acceptance, proposal_ratio, record_trace, run, run_with, OutcomeKind, Recycler,
    RunOutcome, Sample, StepOutcome, TraceRecord,
};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeSubgraph, Family, Graph, UnionFind};
pub use hardcore::{
    drift_bound, lambda_for_drift, threshold_basic, threshold_improved, HardcoreParams,
    HardcoreSampler, Variant,
};
pub use oracle::ExactDistribution;
pub use rng::RandomSource;
pub use spin::{ising_drift_bound, ising_threshold, SpinKind, SpinParams, SpinSampler};
pub use state::RejectionScope;
