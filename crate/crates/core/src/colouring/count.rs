//! Exact colouring counts.
//!
//! Components are counted independently and multiplied. Inside a component
//! the vertices are processed along an order chosen to keep the *frontier*
//! (processed vertices that still have unprocessed neighbours) small; the
//! table holds, for every colouring of the frontier, the number of proper
//! partial colourings extending it, optionally refined by the class-size
//! profile of the processed vertices. This is backtracking with the branches
//! that agree on the frontier merged, so its cost is `k^width` per vertex
//! rather than exponential in the component size.

use num_bigint::BigUint;

use super::profile::{dense_len, ProfilePoly};
use super::{balanced_profiles, BalanceParams};
use crate::error::{LabError, Result};
use crate::graph::Graph;
use crate::scalar::Tally;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountLimits {
    /// Largest connected component accepted.
    pub max_component: usize,
    /// Largest DP table (frontier states × profile cells) accepted; this is
    /// the edge-density guard, since dense components have wide frontiers.
    pub max_table: usize,
}

impl Default for CountLimits {
    fn default() -> Self {
        Self {
            max_component: 40,
            max_table: 1 << 24,
        }
    }
}

impl CountLimits {
    pub fn unbounded_components() -> Self {
        Self {
            max_component: usize::MAX,
            ..Self::default()
        }
    }
}

/// One vertex insertion.
#[derive(Debug, Clone)]
struct Step {
    vertex: usize,
    /// Frontier positions holding neighbours of `vertex`.
    back: Vec<usize>,
    /// Old frontier positions that survive, in order.
    keep: Vec<usize>,
    /// Whether `vertex` joins the new frontier (at the end).
    enters: bool,
}

#[derive(Debug, Clone)]
struct Plan {
    steps: Vec<Step>,
    max_width: usize,
}

/// Greedy frontier-minimising order from a fixed start vertex.
fn greedy_order(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let c = adj.len();
    let mut done = vec![false; c];
    let mut open_nbrs: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut touched = vec![0usize; c];
    let mut order = Vec::with_capacity(c);
    let mut next = Some(start);
    while let Some(v) = next {
        done[v] = true;
        order.push(v);
        for &w in &adj[v] {
            open_nbrs[w] -= 1;
            touched[w] += 1;
        }
        // Candidate cost: growth of the frontier if it is inserted next.
        next = (0..c).filter(|&w| !done[w]).min_by_key(|&w| {
            let closes = adj[w]
                .iter()
                .filter(|&&u| done[u] && open_nbrs[u] == 1)
                .count();
            let stays = usize::from(open_nbrs[w] > 0);
            let growth = stays as isize - closes as isize;
            (usize::from(touched[w] == 0), growth, open_nbrs[w], w)
        });
    }
    order
}

/// Post-order of a depth-first spanning tree, larger subtrees first; on
/// trees the frontier then holds at most one finished root per level.
fn postorder(adj: &[Vec<usize>], root: usize) -> Vec<usize> {
    let c = adj.len();
    let mut parent = vec![usize::MAX; c];
    let mut seen = vec![false; c];
    let mut pre = Vec::with_capacity(c);
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        pre.push(v);
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; c];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); c];
    for &v in pre.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
            children[parent[v]].push(v);
        }
    }
    for ch in &mut children {
        ch.sort_by_key(|&w| (std::cmp::Reverse(size[w]), w));
    }
    let mut order = Vec::with_capacity(c);
    let mut stack = vec![(root, 0usize)];
    while let Some((v, i)) = stack.pop() {
        if i < children[v].len() {
            stack.push((v, i + 1));
            stack.push((children[v][i], 0));
        } else {
            order.push(v);
        }
    }
    order
}

fn build_plan(adj: &[Vec<usize>], order: &[usize]) -> Plan {
    let c = adj.len();
    let mut remaining: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut frontier: Vec<usize> = Vec::new();
    let mut steps = Vec::with_capacity(c);
    let mut max_width = 0;
    for &v in order {
        let back: Vec<usize> = frontier
            .iter()
            .enumerate()
            .filter(|(_, &u)| adj[v].contains(&u))
            .map(|(i, _)| i)
            .collect();
        for &w in &adj[v] {
            remaining[w] -= 1;
        }
        remaining[v] = adj[v].len() - back.len();
        let keep: Vec<usize> = frontier
            .iter()
            .enumerate()
            .filter(|(_, &u)| remaining[u] > 0)
            .map(|(i, _)| i)
            .collect();
        let enters = remaining[v] > 0;
        let mut next: Vec<usize> = keep.iter().map(|&i| frontier[i]).collect();
        if enters {
            next.push(v);
        }
        max_width = max_width.max(next.len());
        steps.push(Step {
            vertex: v,
            back,
            keep,
            enters,
        });
        frontier = next;
    }
    Plan { steps, max_width }
}

fn plan_component(adj: &[Vec<usize>]) -> Plan {
    let c = adj.len();
    let mut starts: Vec<usize> = (0..c).collect();
    starts.sort_by_key(|&v| (adj[v].len(), v));
    starts.truncate(24);
    let mut best: Option<Plan> = None;
    for s in starts {
        for order in [greedy_order(adj, s), postorder(adj, s)] {
            let plan = build_plan(adj, &order);
            if best.as_ref().is_none_or(|b| plan.max_width < b.max_width) {
                best = Some(plan);
            }
        }
        if best.as_ref().is_some_and(|b| b.max_width <= 1) {
            break;
        }
    }
    best.unwrap_or(Plan {
        steps: Vec::new(),
        max_width: 0,
    })
}

fn checked_pow(k: usize, w: usize) -> Option<usize> {
    k.checked_pow(w as u32)
}

/// Runs the frontier DP on one component. `lists[v]` is a bitmask of allowed
/// colours; with `profile` set the result is a dense profile polynomial of
/// degree `c`, otherwise a single total.
fn run_dp<T: Tally>(
    adj: &[Vec<usize>],
    k: usize,
    lists: &[u64],
    profile: bool,
    limits: &CountLimits,
) -> Result<Vec<T>> {
    let c = adj.len();
    let plan = plan_component(adj);
    let cells = if profile { dense_len(k, c) } else { 1 };
    let widest = checked_pow(k, plan.max_width).and_then(|s| s.checked_mul(cells));
    if widest.is_none_or(|t| t > limits.max_table) {
        return Err(LabError::ResourceLimit(format!(
            "component of {c} vertices needs frontier width {} ({k}^{} states x {cells} cells)",
            plan.max_width, plan.max_width
        )));
    }
    let base = c + 1;
    let offsets: Vec<usize> = (0..k)
        .map(|j| {
            if profile && j + 1 < k {
                base.pow(j as u32)
            } else {
                0
            }
        })
        .collect();

    let mut width = 0usize;
    let mut table: Vec<T> = vec![T::zero(); cells];
    table[0] = T::one();
    let mut digits = Vec::new();
    for step in &plan.steps {
        let new_width = step.keep.len() + usize::from(step.enters);
        let new_states = k.pow(new_width as u32);
        let mut next: Vec<T> = vec![T::zero(); new_states * cells];
        let old_states = k.pow(width as u32);
        let allowed = lists[step.vertex];
        for s in 0..old_states {
            let row = &table[s * cells..(s + 1) * cells];
            if row.iter().all(|x| x.is_zero()) {
                continue;
            }
            digits.clear();
            let mut rest = s;
            for _ in 0..width {
                digits.push(rest % k);
                rest /= k;
            }
            let mut kept = 0usize;
            let mut stride = 1usize;
            for &i in &step.keep {
                kept += digits[i] * stride;
                stride *= k;
            }
            for j in 0..k {
                if allowed & (1u64 << j) == 0 || step.back.iter().any(|&i| digits[i] == j) {
                    continue;
                }
                let target = if step.enters { kept + j * stride } else { kept };
                let dst = &mut next[target * cells..(target + 1) * cells];
                let off = offsets[j];
                for (p, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        dst[p + off].add_assign_ref(x);
                    }
                }
            }
        }
        table = next;
        width = new_width;
    }
    debug_assert_eq!(width, 0);
    Ok(table)
}

fn local_adjacency(adj: &[Vec<u32>], comp: &[usize]) -> Vec<Vec<usize>> {
    let mut pos = std::collections::HashMap::with_capacity(comp.len());
    for (i, &v) in comp.iter().enumerate() {
        pos.insert(v, i);
    }
    comp.iter()
        .map(|&v| adj[v].iter().map(|&w| pos[&(w as usize)]).collect())
        .collect()
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 || k > 64 {
        return Err(LabError::InvalidParameter(format!(
            "k must lie in 1..=64, got {k}"
        )));
    }
    Ok(())
}

fn check_component(size: usize, limits: &CountLimits) -> Result<()> {
    if size > limits.max_component {
        return Err(LabError::ResourceLimit(format!(
            "component of {size} vertices exceeds the cap of {}",
            limits.max_component
        )));
    }
    Ok(())
}

/// Exact number of proper `k`-colourings (`Z_k`), as a big integer.
pub fn count_colourings(g: &Graph, k: usize) -> Result<BigUint> {
    count_colourings_with(g, k, &CountLimits::default())
}

pub fn count_colourings_with<T: Tally>(g: &Graph, k: usize, limits: &CountLimits) -> Result<T> {
    check_k(k)?;
    let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    count_colourings_listed(g, k, &vec![all; g.n()], limits)
}

/// Count with per-vertex colour lists (bitmasks over `0..k`).
pub fn count_colourings_listed<T: Tally>(
    g: &Graph,
    k: usize,
    lists: &[u64],
    limits: &CountLimits,
) -> Result<T> {
    check_k(k)?;
    if lists.len() != g.n() {
        return Err(LabError::LengthMismatch {
            expected: g.n(),
            found: lists.len(),
        });
    }
    let adj = g.adjacency();
    let mut total = T::one();
    for comp in g.components() {
        let factor = if comp.len() == 1 {
            T::from_u64(lists[comp[0]].count_ones() as u64)
        } else {
            check_component(comp.len(), limits)?;
            let local = local_adjacency(&adj, &comp);
            let sub_lists: Vec<u64> = comp.iter().map(|&v| lists[v]).collect();
            run_dp::<T>(&local, k, &sub_lists, false, limits)?.swap_remove(0)
        };
        if factor.is_zero() {
            return Ok(T::zero());
        }
        total = total.mul_ref(&factor);
    }
    Ok(total)
}

/// Profile polynomial of one connected vertex set.
pub(crate) fn component_profile<T: Tally>(
    adj: &[Vec<u32>],
    comp: &[usize],
    k: usize,
    limits: &CountLimits,
) -> Result<ProfilePoly<T>> {
    check_component(comp.len(), limits)?;
    let local = local_adjacency(adj, comp);
    let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let coeffs = run_dp::<T>(&local, k, &vec![all; comp.len()], true, limits)?;
    Ok(ProfilePoly::from_dense(k, comp.len(), coeffs))
}

/// Number of proper colourings of `g` per colour-class-size profile.
pub fn profile_polynomial<T: Tally>(
    g: &Graph,
    k: usize,
    limits: &CountLimits,
) -> Result<ProfilePoly<T>> {
    check_k(k)?;
    let adj = g.adjacency();
    let mut acc = ProfilePoly::one(k);
    for comp in g.components() {
        acc = acc.mul(&component_profile(&adj, &comp, k, limits)?);
    }
    Ok(acc)
}

/// Exact number of `(ω, n)`-balanced proper colourings (`Z_{k,ω}`).
pub fn count_balanced_colourings(g: &Graph, k: usize, params: &BalanceParams) -> Result<BigUint> {
    count_balanced_colourings_with(g, k, params, &CountLimits::default())
}

pub fn count_balanced_colourings_with<T: Tally>(
    g: &Graph,
    k: usize,
    params: &BalanceParams,
    limits: &CountLimits,
) -> Result<T> {
    let poly = profile_polynomial::<T>(g, k, limits)?;
    let mut total = T::zero();
    for profile in balanced_profiles(g.n(), k, params.omega()) {
        total.add_assign_ref(&poly.coeff(&profile));
    }
    Ok(total)
}
