//! Graphs on `[n]` with an explicit edge-instance list.
//!
//! Vertices are `0..n` internally and `1..=n` in every text format. Each edge
//! instance is stored as a sorted pair `(u, v)` with `u < v`; a multigraph
//! keeps repeated pairs as separate instances because cycle counting needs
//! instance identity.

mod io;
mod models;

pub use io::{format_colouring, parse_colouring, read_graph, write_graph};
pub use models::{
    floyd_sample, is_simple_event, sample_bichromatic_multigraph, sample_gnm_multigraph,
    sample_gnm_simple, sample_planted_pair, sample_planted_pair_with_cap, PlantedPair,
    DEFAULT_REJECTION_CAP,
};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub type Edge = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    simple: bool,
}

/// Number of unordered vertex pairs, `C(n, 2)`.
pub const fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Colex index of the pair `u < v`: `v(v-1)/2 + u`.
pub const fn pair_index(u: u32, v: u32) -> u64 {
    let (u, v) = if u < v {
        (u as u64, v as u64)
    } else {
        (v as u64, u as u64)
    };
    v * (v - 1) / 2 + u
}

/// Inverse of [`pair_index`]: the triangular bijection `[C(n,2)] -> pairs`.
pub fn pair_from_index(e: u64) -> Edge {
    // v is the largest integer with v(v-1)/2 <= e.
    let mut v = ((1.0 + (1.0 + 8.0 * e as f64).sqrt()) / 2.0) as u64;
    while v * (v - 1) / 2 > e {
        v -= 1;
    }
    while (v + 1) * v / 2 <= e {
        v += 1;
    }
    let u = e - v * (v - 1) / 2;
    (u as u32, v as u32)
}

fn sorted(u: u32, v: u32) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph from 0-based pairs. With `simple` set, repeated pairs are
    /// rejected.
    pub fn new(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
        simple: bool,
    ) -> Result<Self> {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(invalid(format!(
                    "edge ({u}, {v}) has an endpoint outside [0, {n})"
                )));
            }
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            edges.push(sorted(u as u32, v as u32));
        }
        let g = Self { n, edges, simple };
        if simple && !g.has_distinct_edges() {
            return Err(invalid("graph flagged simple has a repeated edge"));
        }
        Ok(g)
    }

    pub(crate) fn from_edges_unchecked(n: usize, edges: Vec<Edge>, simple: bool) -> Self {
        Self { n, edges, simple }
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            simple: true,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(pair_count(n) as usize);
        for v in 1..n as u32 {
            for u in 0..v {
                edges.push((u, v));
            }
        }
        Self {
            n,
            edges,
            simple: true,
        }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs three vertices");
        let edges = (0..n as u32)
            .map(|i| sorted(i, (i + 1) % n as u32))
            .collect();
        Self {
            n,
            edges,
            simple: true,
        }
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n as u32).map(|i| (i - 1, i)).collect();
        Self {
            n,
            edges,
            simple: true,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The simple/multi flag carried by the graph (not a property check).
    pub fn is_flagged_simple(&self) -> bool {
        self.simple
    }

    pub fn has_distinct_edges(&self) -> bool {
        let mut seen: Vec<u64> = self.edges.iter().map(|&(u, v)| pair_index(u, v)).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Distinct pairs with their instance multiplicities, sorted by pair.
    pub fn support(&self) -> Vec<(Edge, usize)> {
        let mut pairs = self.edges.clone();
        pairs.sort_unstable();
        let mut out: Vec<(Edge, usize)> = Vec::new();
        for e in pairs {
            match out.last_mut() {
                Some((last, mult)) if *last == e => *mult += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }

    /// The underlying simple graph.
    pub fn simple_support(&self) -> Graph {
        let edges = self.support().into_iter().map(|(e, _)| e).collect();
        Graph {
            n: self.n,
            edges,
            simple: true,
        }
    }

    /// Sorted neighbour lists of the underlying simple graph.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for ((u, v), _) in self.support() {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut comp = vec![s];
            label[s] = id;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &w in &adj[v] {
                    let w = w as usize;
                    if label[w] == usize::MAX {
                        label[w] = id;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n as u32;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph {
            n: self.n + other.n,
            edges,
            simple: self.simple && other.simple,
        }
    }

    /// Subgraph induced on `vertices` (relabelled `0..len` in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![u32::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i as u32;
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| {
                let (a, b) = (pos[u as usize], pos[v as usize]);
                (a != u32::MAX && b != u32::MAX).then(|| sorted(a, b))
            })
            .collect();
        Graph {
            n: vertices.len(),
            edges,
            simple: self.simple,
        }
    }
}
