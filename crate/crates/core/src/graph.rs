//! Immutable simple graphs with a fixed vertex numbering, plus the
//! connectivity utilities the random cluster sampler relies on.
//!
//! Vertices are `0..n`. Edges are stored once as `(u, v)` with `u < v`, sorted
//! lexicographically; the position of an edge in that order is its *edge
//! index*, which is also the site index used by edge-based samplers.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
    // (neighbor, edge index), sorted by neighbor
    incident: Vec<Vec<(usize, usize)>>,
    max_degree: usize,
}

/// Standard graph families used by tests, the oracle and benchmarks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Grid2d(usize, usize),
    Complete(usize),
}

impl Graph {
    /// Builds a graph on `n` vertices. Rejects self-loops, duplicates (in
    /// either orientation) and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }

        let mut adjacency = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        for (idx, &(u, v)) in normalized.iter().enumerate() {
            adjacency[u].push(v);
            adjacency[v].push(u);
            incident[u].push((v, idx));
            incident[v].push((u, idx));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        for list in &mut incident {
            list.sort_unstable();
        }
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Graph {
            n,
            edges: normalized,
            adjacency,
            incident,
            max_degree,
        })
    }

    /// Parses a plain-text edge list: one `u v` pair per line, `#` comments,
    /// and an optional `n <count>` header. Without the header the vertex
    /// count is one more than the largest index mentioned.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_error = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let number = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| parse_error(format!("expected a vertex number, found `{s}`")))
            };
            match fields.as_slice() {
                ["n", count] => {
                    if declared.is_some() || !edges.is_empty() {
                        return Err(parse_error("the `n` header must come first".into()));
                    }
                    declared = Some(number(count)?);
                }
                [u, v] => edges.push((number(u)?, number(v)?)),
                _ => return Err(parse_error(format!("expected `u v`, found `{line}`"))),
            }
        }
        let n =
            declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
        Graph::new(n, edges)
    }

    pub fn family(family: Family) -> Result<Self> {
        match family {
            Family::Path(n) => {
                if n == 0 {
                    return Err(Error::InvalidSize {
                        family: "path",
                        min: 1,
                    });
                }
                Graph::new(n, (1..n).map(|i| (i - 1, i)))
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(Error::InvalidSize {
                        family: "cycle",
                        min: 3,
                    });
                }
                Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Family::Grid2d(rows, cols) => {
                if rows == 0 || cols == 0 {
                    return Err(Error::InvalidSize {
                        family: "grid2d",
                        min: 1,
                    });
                }
                let id = |r: usize, c: usize| r * cols + c;
                let mut edges = Vec::new();
                for r in 0..rows {
                    for c in 0..cols {
                        if c + 1 < cols {
                            edges.push((id(r, c), id(r, c + 1)));
                        }
                        if r + 1 < rows {
                            edges.push((id(r, c), id(r + 1, c)));
                        }
                    }
                }
                Graph::new(rows * cols, edges)
            }
            Family::Complete(n) => {
                if n == 0 {
                    return Err(Error::InvalidSize {
                        family: "complete",
                        min: 1,
                    });
                }
                Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// `(neighbor, edge index)` pairs incident to `v`, ascending by neighbor.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let list = self.incident.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|pos| list[pos].1)
    }
}

/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

/// A subset of a parent graph's edges, e.g. the edges colored 1 in a random
/// cluster configuration.
#[derive(Debug, Clone)]
pub struct EdgeSubgraph<'g> {
    graph: &'g Graph,
    member: Vec<bool>,
    len: usize,
}

impl<'g> EdgeSubgraph<'g> {
    pub fn empty(graph: &'g Graph) -> Self {
        EdgeSubgraph {
            graph,
            member: vec![false; graph.edge_count()],
            len: 0,
        }
    }

    /// Subgraph containing the given edges (by endpoints). Edges absent from
    /// the parent graph are an error.
    pub fn from_edges(graph: &'g Graph, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut sub = Self::empty(graph);
        for (u, v) in edges {
            let idx = graph
                .edge_index(u, v)
                .ok_or(Error::InvalidSite(usize::MAX))?;
            sub.insert(idx);
        }
        Ok(sub)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.member[edge]
    }

    pub fn insert(&mut self, edge: usize) -> bool {
        let fresh = !self.member[edge];
        if fresh {
            self.member[edge] = true;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, edge: usize) -> bool {
        let present = self.member[edge];
        if present {
            self.member[edge] = false;
            self.len -= 1;
        }
        present
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn edge_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.member
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    /// `(neighbor, edge index)` pairs of member edges at `v`.
    pub fn member_incident(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.graph
            .incident(v)
            .iter()
            .copied()
            .filter(move |&(_, e)| self.member[e])
    }

    /// Whether `v` and `w` are joined by member edges. Grows a search from
    /// each end in lockstep, so the cost is bounded by the smaller of the two
    /// components.
    pub fn connected_in(&self, v: usize, w: usize) -> bool {
        if v == w {
            return true;
        }
        let n = self.graph.vertex_count();
        // 0 = unseen, 1 = reached from v, 2 = reached from w
        let mut mark = vec![0u8; n];
        let mut fronts = [VecDeque::from([v]), VecDeque::from([w])];
        mark[v] = 1;
        mark[w] = 2;
        loop {
            for side in 0..2 {
                let tag = side as u8 + 1;
                let Some(x) = fronts[side].pop_front() else {
                    return false;
                };
                for (y, _) in self.member_incident(x) {
                    match mark[y] {
                        0 => {
                            mark[y] = tag;
                            fronts[side].push_back(y);
                        }
                        t if t != tag => return true,
                        _ => {}
                    }
                }
            }
        }
    }

    /// Vertices reachable from `w` through member edges (ascending), and the
    /// member edges among them (ascending edge index).
    pub fn component_of(&self, w: usize) -> (Vec<usize>, Vec<usize>) {
        let mut seen = vec![false; self.graph.vertex_count()];
        let mut vertices = vec![w];
        let mut edges = Vec::new();
        seen[w] = true;
        let mut head = 0;
        while head < vertices.len() {
            let x = vertices[head];
            head += 1;
            for (y, e) in self.member_incident(x) {
                if x < y {
                    edges.push(e);
                }
                if !seen[y] {
                    seen[y] = true;
                    vertices.push(y);
                }
            }
        }
        vertices.sort_unstable();
        edges.sort_unstable();
        (vertices, edges)
    }

    /// Number of connected components of `(V, members)`, isolated vertices included.
    pub fn count_components(&self) -> usize {
        let mut uf = UnionFind::new(self.graph.vertex_count());
        for e in self.edge_indices() {
            let (u, v) = self.graph.edge(e);
            uf.union(u, v);
        }
        uf.set_count()
    }
}

/// Spanning tree of `component ∪ {v}` using `component_edges` plus the
/// bridge edge. Breadth-first from `v`, visiting neighbors in ascending
/// order, so the result is a deterministic function of the inputs.
///
/// Returns `component.len()` edges as `(u, w)` pairs with `u < w`.
pub fn spanning_tree(
    component: &[usize],
    component_edges: &[Edge],
    bridge: Edge,
    v: usize,
) -> Result<Vec<Edge>> {
    let mut vertices: Vec<usize> = component.to_vec();
    vertices.push(v);
    vertices.sort_unstable();
    vertices.dedup();
    let local = |x: usize| vertices.binary_search(&x).ok();

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for &(a, b) in component_edges.iter().chain(core::iter::once(&bridge)) {
        let (Some(ia), Some(ib)) = (local(a), local(b)) else {
            return Err(Error::Disconnected);
        };
        adj[ia].push(ib);
        adj[ib].push(ia);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }

    let root = local(v).ok_or(Error::Disconnected)?;
    let mut seen = vec![false; vertices.len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut tree = Vec::with_capacity(vertices.len().saturating_sub(1));
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                let (a, b) = (vertices[x], vertices[y]);
                tree.push((a.min(b), a.max(b)));
                queue.push_back(y);
            }
        }
    }
    if tree.len() + 1 != vertices.len() {
        return Err(Error::Disconnected);
    }
    Ok(tree)
}
