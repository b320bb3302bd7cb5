//! Command-line front end, statistics and file formats for the samplers in
//! `recycler-core`.

pub mod bench;
pub mod cli;
pub mod model;
pub mod record;
pub mod runner;
pub mod stats;
