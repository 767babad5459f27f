//! Balanced colouring counts for many graphs on the same vertex count.

use std::collections::HashMap;

use super::count::{component_profile, CountLimits};
use super::{balanced_profiles, BalanceParams};
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::scalar::Tally;

/// Counts `Z_{k,ω}(G)` for graphs on a fixed `n`.
///
/// Isolated vertices are not expanded into the profile polynomial. The
/// remaining components are multiplied as usual, and each of their profiles
/// `a` is paired with the number of ways the isolated vertices complete it to
/// a balanced profile, `Σ_{τ ≥ a balanced} multinomial(n - s; τ - a)`, which is
/// cached across calls.
#[derive(Debug)]
pub struct BalancedCounter<T> {
    n: usize,
    k: usize,
    limits: CountLimits,
    profiles: Vec<Vec<usize>>,
    binom: Vec<Vec<T>>,
    kernel: HashMap<(usize, Vec<usize>), T>,
}

impl<T: Tally> BalancedCounter<T> {
    pub fn new(n: usize, k: usize, params: &BalanceParams, limits: CountLimits) -> Result<Self> {
        if k == 0 || k > 64 {
            return Err(invalid(format!("k must lie in 1..=64, got {k}")));
        }
        let mut binom: Vec<Vec<T>> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut row = vec![T::one(); i + 1];
            for j in 1..i {
                let mut x = binom[i - 1][j - 1].clone();
                x.add_assign_ref(&binom[i - 1][j]);
                row[j] = x;
            }
            binom.push(row);
        }
        Ok(Self {
            n,
            k,
            limits,
            profiles: balanced_profiles(n, k, params.omega()),
            binom,
            kernel: HashMap::new(),
        })
    }

    pub fn balanced_profiles(&self) -> &[Vec<usize>] {
        &self.profiles
    }

    fn kernel(&mut self, s: usize, a: &[usize]) -> T {
        if let Some(v) = self.kernel.get(&(s, a.to_vec())) {
            return v.clone();
        }
        let free = self.n - s;
        let mut total = T::zero();
        for tau in &self.profiles {
            if tau.iter().zip(a).any(|(t, x)| t < x) {
                continue;
            }
            let mut rest = free;
            let mut term = T::one();
            for (t, x) in tau.iter().zip(a) {
                let b = t - x;
                term = term.mul_ref(&self.binom[rest][b]);
                rest -= b;
            }
            total.add_assign_ref(&term);
        }
        self.kernel.insert((s, a.to_vec()), total.clone());
        total
    }

    pub fn count(&mut self, g: &Graph) -> Result<T> {
        if g.n() != self.n {
            return Err(invalid(format!(
                "counter built for n = {}, graph has n = {}",
                self.n,
                g.n()
            )));
        }
        let adj = g.adjacency();
        let mut poly = super::ProfilePoly::<T>::one(self.k);
        let mut s = 0;
        for comp in g.components() {
            if comp.len() > 1 {
                s += comp.len();
                poly = poly.mul(&component_profile(&adj, &comp, self.k, &self.limits)?);
            }
        }
        let mut total = T::zero();
        for (a, c) in poly.terms() {
            let kern = self.kernel(s, &a);
            total.add_assign_ref(&c.mul_ref(&kern));
        }
        Ok(total)
    }
}
