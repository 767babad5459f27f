//! Short cycle censuses.
//!
//! Cycles in a multigraph are counted with edge-instance multiplicity: a
//! cycle on `l >= 3` distinct vertices is weighted by the product of the
//! multiplicities of its `l` pairs, and a 2-cycle is an unordered pair of
//! parallel edge instances, so a pair of multiplicity `t` contributes
//! `C(t, 2)`. Under this convention the expected number of `l`-cycles of the
//! with-replacement model tends to `d^l / (2l)`.

use serde::{Deserialize, Serialize};

use crate::colouring::Colouring;
use crate::error::{invalid, Result};
use crate::graph::Graph;

/// `(C_2, …, C_L)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleCensus {
    counts: Vec<u64>,
}

impl CycleCensus {
    pub fn max_len(&self) -> usize {
        self.counts.len() + 1
    }

    /// `C_l`; zero outside `2..=L`.
    pub fn get(&self, l: usize) -> u64 {
        if l < 2 {
            return 0;
        }
        self.counts.get(l - 2).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// Weighted neighbour lists of the support graph, restricted to the pairs
/// with multiplicity recorded alongside.
fn weighted_adjacency(g: &Graph) -> Vec<Vec<(usize, u64)>> {
    let mut adj = vec![Vec::new(); g.n()];
    for ((u, v), mult) in g.support() {
        adj[u as usize].push((v as usize, mult as u64));
        adj[v as usize].push((u as usize, mult as u64));
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

pub fn cycle_census(g: &Graph, max_len: usize) -> Result<CycleCensus> {
    if max_len < 2 {
        return Err(invalid(format!(
            "cycle length bound must be >= 2, got {max_len}"
        )));
    }
    let mut counts = vec![0u64; max_len - 1];
    for (_, mult) in g.support() {
        let t = mult as u64;
        counts[0] += t * (t - 1) / 2;
    }
    if max_len >= 3 {
        let adj = weighted_adjacency(g);
        let mut on_path = vec![false; g.n()];
        let mut path = Vec::with_capacity(max_len);
        for root in 0..g.n() {
            on_path[root] = true;
            path.push(root);
            extend(
                &adj,
                root,
                1,
                max_len,
                &mut on_path,
                &mut path,
                &mut |p, w| counts[p.len() - 2] += w,
            );
            path.pop();
            on_path[root] = false;
        }
    }
    Ok(CycleCensus { counts })
}

/// Depth-first extension of a path that starts at `root` (its smallest
/// vertex). A closing edge is counted only when the second vertex is smaller
/// than the last, so each undirected cycle is seen once.
fn extend(
    adj: &[Vec<(usize, u64)>],
    root: usize,
    weight: u64,
    max_len: usize,
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    on_cycle: &mut impl FnMut(&[usize], u64),
) {
    let last = *path.last().unwrap();
    for &(w, mult) in &adj[last] {
        if w < root {
            continue;
        }
        if w == root {
            let l = path.len();
            if l >= 3 && path[1] < last {
                on_cycle(path, weight * mult);
            }
            continue;
        }
        if on_path[w] || path.len() == max_len {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        extend(adj, root, weight * mult, max_len, on_path, path, on_cycle);
        path.pop();
        on_path[w] = false;
    }
}

/// Number of cycles of length `2..=L` through each vertex, with the same
/// multiplicity convention as [`cycle_census`].
pub fn cycle_vertex_load(g: &Graph, max_len: usize) -> Result<Vec<u64>> {
    if max_len < 2 {
        return Err(invalid(format!(
            "cycle length bound must be >= 2, got {max_len}"
        )));
    }
    let mut load = vec![0u64; g.n()];
    for ((u, v), mult) in g.support() {
        let t = mult as u64;
        load[u as usize] += t * (t - 1) / 2;
        load[v as usize] += t * (t - 1) / 2;
    }
    if max_len >= 3 {
        let adj = weighted_adjacency(g);
        let mut on_path = vec![false; g.n()];
        let mut path = Vec::with_capacity(max_len);
        for root in 0..g.n() {
            on_path[root] = true;
            path.push(root);
            extend(
                &adj,
                root,
                1,
                max_len,
                &mut on_path,
                &mut path,
                &mut |p, w| {
                    for &x in p {
                        load[x] += w;
                    }
                },
            );
            path.pop();
            on_path[root] = false;
        }
    }
    Ok(load)
}

/// Whether two distinct cycles of length at most `L` share a vertex.
pub fn has_intersecting_cycles(g: &Graph, max_len: usize) -> Result<bool> {
    Ok(cycle_vertex_load(g, max_len)?.iter().any(|&x| x >= 2))
}

/// Rooted, directed cycles `D_l` (each undirected `l`-cycle gives `2l`),
/// enumerated independently of [`cycle_census`] as closed vertex sequences
/// with distinct entries, weighted by edge multiplicities. For `l = 2` the
/// two directions of a parallel pair use distinct instances in order.
pub fn directed_rooted_counts(g: &Graph, max_len: usize) -> Result<Vec<u64>> {
    if max_len < 2 {
        return Err(invalid(format!(
            "cycle length bound must be >= 2, got {max_len}"
        )));
    }
    let adj = weighted_adjacency(g);
    let mut counts = vec![0u64; max_len - 1];
    fn walk(
        adj: &[Vec<(usize, u64)>],
        start: usize,
        weight: u64,
        max_len: usize,
        seen: &mut [bool],
        path: &mut Vec<usize>,
        counts: &mut [u64],
    ) {
        let last = *path.last().unwrap();
        for &(w, mult) in &adj[last] {
            if w == start && path.len() >= 3 {
                counts[path.len() - 2] += weight * mult;
            } else if !seen[w] && path.len() < max_len {
                seen[w] = true;
                path.push(w);
                walk(adj, start, weight * mult, max_len, seen, path, counts);
                path.pop();
                seen[w] = false;
            }
        }
    }
    let mut seen = vec![false; g.n()];
    for s in 0..g.n() {
        seen[s] = true;
        let mut path = vec![s];
        walk(&adj, s, 1, max_len, &mut seen, &mut path, &mut counts);
        seen[s] = false;
        for &(_, mult) in &adj[s] {
            // Ordered pairs of distinct instances leaving s.
            counts[0] += mult * (mult - 1);
        }
    }
    Ok(counts)
}

/// Components that are a simple triangle: three vertices joined by exactly
/// three distinct edges (a doubled edge disqualifies the component).
pub fn count_isolated_triangles(g: &Graph) -> usize {
    let mut edges_in = vec![0usize; g.n()];
    let comps = g.components();
    let mut comp_of = vec![0usize; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    for &(u, _) in g.edges() {
        edges_in[comp_of[u as usize]] += 1;
    }
    comps
        .iter()
        .enumerate()
        .filter(|(i, c)| c.len() == 3 && edges_in[*i] == 3 && g.induced(c).has_distinct_edges())
        .count()
}

/// Colour sequence along a rooted directed cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleType(pub Vec<u32>);

impl CycleType {
    /// Type of the vertex sequence `cycle` under `c`.
    pub fn of(cycle: &[usize], c: &Colouring) -> Self {
        Self(cycle.iter().map(|&v| c.as_slice()[v]).collect())
    }

    /// Consecutive colours differ, cyclically.
    pub fn is_proper(&self) -> bool {
        let l = self.0.len();
        (0..l).all(|i| self.0[i] != self.0[(i + 1) % l])
    }
}

/// Number of cyclically proper colour sequences of length `l`,
/// `T_l = (k-1)^l + (-1)^l (k-1)`.
pub fn type_count(k: u64, l: u32) -> i128 {
    let km1 = k as i128 - 1;
    let sign = if l % 2 == 0 { 1 } else { -1 };
    km1.pow(l) + sign * km1
}
