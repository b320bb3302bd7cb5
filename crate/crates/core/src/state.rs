//! Vertex-site state shared by the vertex-colored samplers.
//!
//! Sites outside the active set carry a *fixed* color. Color 0 is the rest
//! value and interacts with nothing. A removed vertex keeps its last color
//! for as long as it still has an active neighbor, because that color is part
//! of what the remaining active sites are conditioned on; once it has no
//! active neighbor it is returned to 0.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Which previously active sites a rejection at `v` removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum RejectionScope {
    /// Active neighbors of `v`.
    #[default]
    Neighbors,
    /// Active vertices within distance 2 of `v`.
    Neighbors2,
    /// The whole active set.
    Restart,
}

#[derive(Debug, Clone)]
pub struct VertexState {
    active: Vec<bool>,
    colors: Vec<i32>,
    active_degree: Vec<u32>,
    pending: BTreeSet<usize>,
    active_count: usize,
}

impl VertexState {
    pub fn new(n: usize) -> Self {
        VertexState {
            active: vec![false; n],
            colors: vec![0; n],
            active_degree: vec![0; n],
            pending: (0..n).collect(),
            active_count: 0,
        }
    }

    pub fn reset(&mut self) {
        let n = self.active.len();
        self.active.fill(false);
        self.colors.fill(0);
        self.active_degree.fill(0);
        self.pending = (0..n).collect();
        self.active_count = 0;
    }

    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn active_count(&self) -> usize {
        self.active_count
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active[v]
    }

    pub fn color(&self, v: usize) -> i32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[i32] {
        &self.colors
    }

    /// Number of active neighbors of `v`.
    pub fn active_degree(&self, v: usize) -> u32 {
        self.active_degree[v]
    }

    pub fn lowest_pending(&self) -> Option<usize> {
        self.pending.first().copied()
    }

    pub fn activate(&mut self, graph: &Graph, v: usize, color: i32) {
        debug_assert!(!self.active[v]);
        self.active[v] = true;
        self.colors[v] = color;
        self.pending.remove(&v);
        self.active_count += 1;
        for &u in graph.neighbors(v) {
            self.active_degree[u] += 1;
        }
    }

    /// Removes `v` from the active set, keeping its color as a fixed value.
    pub fn deactivate(&mut self, graph: &Graph, v: usize) {
        debug_assert!(self.active[v]);
        self.active[v] = false;
        self.pending.insert(v);
        self.active_count -= 1;
        for &u in graph.neighbors(v) {
            self.active_degree[u] -= 1;
        }
    }

    pub fn set_fixed_color(&mut self, v: usize, color: i32) {
        debug_assert!(!self.active[v]);
        self.colors[v] = color;
    }

    /// Inactive vertices among `candidates` with no active neighbor go back
    /// to color 0.
    pub fn release_unanchored(&mut self, candidates: impl IntoIterator<Item = usize>) {
        for u in candidates {
            if !self.active[u] && self.active_degree[u] == 0 {
                self.colors[u] = 0;
            }
        }
    }

    /// Active sites removed by a rejection at `v` under `scope`, ascending.
    pub fn rejection_set(&self, graph: &Graph, v: usize, scope: RejectionScope) -> Vec<usize> {
        let mut set: Vec<usize> = match scope {
            RejectionScope::Neighbors => graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| self.active[u])
                .collect(),
            RejectionScope::Neighbors2 => {
                let mut out = Vec::new();
                for &u in graph.neighbors(v) {
                    if self.active[u] {
                        out.push(u);
                    }
                    for &w in graph.neighbors(u) {
                        if w != v && self.active[w] {
                            out.push(w);
                        }
                    }
                }
                out
            }
            RejectionScope::Restart => (0..self.len()).filter(|&u| self.active[u]).collect(),
        };
        set.sort_unstable();
        set.dedup();
        set
    }

    /// Deactivates `removed` (keeping their colors), then clears the colors
    /// of every affected vertex that is no longer adjacent to the active set.
    pub fn remove_sites(&mut self, graph: &Graph, v: usize, removed: &[usize]) {
        for &u in removed {
            self.deactivate(graph, u);
        }
        if self.active_count == 0 {
            self.colors.fill(0);
            return;
        }
        self.release_unanchored(core::iter::once(v));
        for &u in removed {
            self.release_unanchored(core::iter::once(u));
            for &w in graph.neighbors(u) {
                self.release_unanchored(core::iter::once(w));
            }
        }
    }

    /// Checks bookkeeping consistency and the fixed-color rule. Models where
    /// an active site may legitimately hold color 0 pass `zero_is_a_color`.
    pub fn check(&self, graph: &Graph, zero_is_a_color: bool) -> core::result::Result<(), String> {
        let mut count = 0;
        for v in 0..self.len() {
            let deg = graph
                .neighbors(v)
                .iter()
                .filter(|&&u| self.active[u])
                .count() as u32;
            if deg != self.active_degree[v] {
                return Err(format!(
                    "active degree of {v} is {deg}, cached {}",
                    self.active_degree[v]
                ));
            }
            if self.active[v] {
                count += 1;
                if !zero_is_a_color && self.colors[v] == 0 {
                    return Err(format!("active vertex {v} has rest color"));
                }
                if self.pending.contains(&v) {
                    return Err(format!("active vertex {v} listed as pending"));
                }
            } else {
                if !self.pending.contains(&v) {
                    return Err(format!("inactive vertex {v} missing from pending set"));
                }
                if self.colors[v] != 0 && deg == 0 {
                    return Err(format!(
                        "inactive vertex {v} keeps color without an active neighbor"
                    ));
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
