//! Colourings, colour densities, balancedness, exact counters and the exact
//! uniform colouring sampler.

mod balanced;
mod count;
mod profile;
mod sample;

pub use balanced::BalancedCounter;
pub use count::{
    count_balanced_colourings, count_balanced_colourings_with, count_colourings,
    count_colourings_listed, count_colourings_with, profile_polynomial, CountLimits,
};
pub use profile::ProfilePoly;
pub use sample::{sample_rc_pair, sample_rc_pair_with, sample_uniform_colouring, RcOptions};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, LabError, Result};
use crate::graph::{pair_count, Graph};

/// A map `[n] -> [k]` (colours stored 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Colouring {
    k: usize,
    assignment: Vec<u32>,
}

impl Colouring {
    pub fn new(k: usize, assignment: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = assignment.iter().find(|&&c| c as usize >= k) {
            return Err(invalid(format!("colour {bad} outside [0, {k})")));
        }
        Ok(Self { k, assignment })
    }

    /// Decodes the `index`-th map in lexicographic order of `[k]^n`
    /// (vertex 0 is the most significant digit).
    pub fn from_index(k: usize, n: usize, mut index: u64) -> Self {
        let mut assignment = vec![0u32; n];
        for slot in assignment.iter_mut().rev() {
            *slot = (index % k as u64) as u32;
            index /= k as u64;
        }
        Self { k, assignment }
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.assignment
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &c in &self.assignment {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Number of monochromatic pairs of `K_n`: `Σ_i C(|σ⁻¹(i)|, 2)`.
    pub fn forb(&self) -> u64 {
        self.class_sizes().iter().map(|&s| pair_count(s)).sum()
    }

    pub fn density(&self) -> ColourDensity {
        ColourDensity {
            n: self.n(),
            sizes: self.class_sizes(),
        }
    }
}

/// `Forb(σ)` as a free function.
pub fn forb(c: &Colouring) -> u64 {
    c.forb()
}

/// True iff no edge instance is monochromatic.
pub fn is_proper(g: &Graph, c: &Colouring) -> Result<bool> {
    if c.n() != g.n() {
        return Err(LabError::LengthMismatch {
            expected: g.n(),
            found: c.n(),
        });
    }
    let s = c.as_slice();
    Ok(g.edges()
        .iter()
        .all(|&(u, v)| s[u as usize] != s[v as usize]))
}

/// Colour density `ρ(σ)`, held as integer class sizes over `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColourDensity {
    n: usize,
    sizes: Vec<usize>,
}

impl ColourDensity {
    pub fn from_sizes(sizes: Vec<usize>) -> Result<Self> {
        let n: usize = sizes.iter().sum();
        if n == 0 || sizes.is_empty() {
            return Err(invalid("a colour density needs n >= 1 and k >= 1"));
        }
        Ok(Self { n, sizes })
    }

    /// Barycentre `ρ* = (1/k, …, 1/k)`; requires `k | n`.
    pub fn barycentre(n: usize, k: usize) -> Result<Self> {
        if k == 0 || n % k != 0 {
            return Err(invalid(format!(
                "barycentre needs k | n (n = {n}, k = {k})"
            )));
        }
        Self::from_sizes(vec![n / k; k])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn rho(&self) -> Vec<f64> {
        self.sizes
            .iter()
            .map(|&s| s as f64 / self.n as f64)
            .collect()
    }

    pub fn rho_exact(&self) -> Vec<BigRational> {
        self.sizes
            .iter()
            .map(|&s| BigRational::new(BigInt::from(s), BigInt::from(self.n)))
            .collect()
    }
}

/// Finite stand-in for the growth parameter `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BalanceParams {
    omega: f64,
}

impl BalanceParams {
    pub fn new(omega: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(invalid(format!(
                "omega must be a positive finite number, got {omega}"
            )));
        }
        Ok(Self { omega })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
}

/// `|n_i/n - 1/k| <= ω⁻¹ n^{-1/2}` for every class, evaluated as
/// `|k n_i - n| ω √n <= k n` with a relative slack of 1e-12 so that exact
/// ties count as balanced.
pub fn sizes_balanced(sizes: &[usize], n: usize, omega: f64) -> bool {
    let k = sizes.len() as f64;
    let nf = n as f64;
    let rhs = k * nf * (1.0 + 1e-12);
    let scale = omega * nf.sqrt();
    sizes
        .iter()
        .all(|&s| (k * s as f64 - nf).abs() * scale <= rhs)
}

pub fn is_balanced(rho: &ColourDensity, params: &BalanceParams) -> bool {
    sizes_balanced(&rho.sizes, rho.n, params.omega)
}

/// All compositions of `n` into `k` nonnegative parts, lexicographic.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=rest {
            cur.push(x);
            rec(rest - x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Class-size profiles in `C_k(n)` that are `(ω, n)`-balanced.
pub fn balanced_profiles(n: usize, k: usize, omega: f64) -> Vec<Vec<usize>> {
    // Each part is confined to a window around n/k; enumerate that box only.
    let half = n as f64 / (omega * (n as f64).sqrt()) * (1.0 + 1e-12);
    let centre = n as f64 / k as f64;
    let lo = (centre - half).ceil().max(0.0) as usize;
    let hi = ((centre + half).floor() as usize).min(n);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(
        rest: usize,
        slots: usize,
        lo: usize,
        hi: usize,
        n: usize,
        omega: f64,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slots == 1 {
            if rest >= lo && rest <= hi {
                cur.push(rest);
                if sizes_balanced(cur, n, omega) {
                    out.push(cur.clone());
                }
                cur.pop();
            }
            return;
        }
        for x in lo..=hi.min(rest) {
            cur.push(x);
            rec(rest - x, slots - 1, lo, hi, n, omega, cur, out);
            cur.pop();
        }
    }
    if k > 0 && lo <= hi {
        rec(n, k, lo, hi, n, omega, &mut cur, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(k: usize, v: &[u32]) -> Colouring {
        Colouring::new(k, v.iter().map(|x| x - 1).collect()).unwrap()
    }

    #[test]
    fn proper_examples() {
        let tri = Graph::complete(3);
        assert!(is_proper(&tri, &col(3, &[1, 2, 3])).unwrap());
        assert!(!is_proper(&tri, &col(3, &[1, 1, 2])).unwrap());
        assert!(is_proper(&Graph::path(3), &col(2, &[1, 2, 1])).unwrap());
        assert!(matches!(
            is_proper(&tri, &col(3, &[1, 2])),
            Err(LabError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn forb_examples() {
        assert_eq!(col(2, &[1, 1, 2, 2]).forb(), 2);
        assert_eq!(col(1, &[1, 1, 1]).forb(), 3);
        // Direct pair enumeration.
        let c = col(3, &[1, 2, 3, 1, 2]);
        let s = c.as_slice();
        let mut mono = 0;
        for v in 0..5 {
            for u in 0..v {
                if s[u] == s[v] {
                    mono += 1;
                }
            }
        }
        assert_eq!(mono, 2);
        assert_eq!(c.forb(), mono);
    }

    #[test]
    fn balance_examples() {
        let half = col(2, &[1, 1, 2, 2]).density();
        assert_eq!(half.rho(), vec![0.5, 0.5]);
        for omega in [0.1, 1.0, 1e6] {
            assert!(is_balanced(&half, &BalanceParams::new(omega).unwrap()));
        }
        let skew = col(2, &[1, 1, 1, 2]).density();
        assert!(is_balanced(&skew, &BalanceParams::new(1.0).unwrap()));
        assert!(!is_balanced(&skew, &BalanceParams::new(3.0).unwrap()));
        let even = ColourDensity::from_sizes(vec![3, 3, 3]).unwrap();
        assert_eq!(even, ColourDensity::barycentre(9, 3).unwrap());
        assert!(is_balanced(&even, &BalanceParams::new(1e9).unwrap()));
        assert!(BalanceParams::new(0.0).is_err());
    }

    #[test]
    fn balanced_profile_sets() {
        // Equality counts: |0 - 1/2| = 1/2 is within the window.
        assert_eq!(
            balanced_profiles(4, 2, 1.0),
            vec![vec![0, 4], vec![1, 3], vec![2, 2], vec![3, 1], vec![4, 0]]
        );
        assert_eq!(
            balanced_profiles(4, 2, 1.01),
            vec![vec![1, 3], vec![2, 2], vec![3, 1]]
        );
        assert_eq!(balanced_profiles(9, 3, 100.0), vec![vec![3, 3, 3]]);
        // Matches a filter over all compositions.
        for (n, k, w) in [(10, 3, 0.7), (12, 4, 1.3), (7, 2, 2.0)] {
            let all: Vec<_> = compositions(n, k)
                .into_iter()
                .filter(|s| sizes_balanced(s, n, w))
                .collect();
            assert_eq!(balanced_profiles(n, k, w), all);
        }
    }

    #[test]
    fn forb_complements_bichromatic() {
        let c = col(3, &[1, 2, 3, 1, 2, 2, 3]);
        let s = c.as_slice();
        let mut bi = 0u64;
        for v in 0..7 {
            for u in 0..v {
                if s[u] != s[v] {
                    bi += 1;
                }
            }
        }
        assert_eq!(c.forb() + bi, pair_count(7));
    }

    #[test]
    fn index_decoding_is_lexicographic() {
        assert_eq!(Colouring::from_index(3, 3, 0).as_slice(), &[0, 0, 0]);
        assert_eq!(Colouring::from_index(3, 3, 5).as_slice(), &[0, 1, 2]);
        assert_eq!(Colouring::from_index(2, 2, 3).as_slice(), &[1, 1]);
    }
}
