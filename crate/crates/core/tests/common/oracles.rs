//! Independent reference implementations shared by test suites.
#![allow(dead_code)]

use std::collections::HashMap;

use colourlab_core::graph::Graph;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Chromatic polynomial coefficients (index = power of k) by
/// deletion–contraction on simple graphs stored as adjacency bitmasks.
pub fn chromatic_polynomial(g: &Graph) -> Vec<i128> {
    let n = g.n();
    let mut adj = vec![0u32; n];
    for &(u, v) in g.edges() {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }
    let mut memo = HashMap::new();
    dc(adj, &mut memo)
}

fn dc(adj: Vec<u32>, memo: &mut HashMap<Vec<u32>, Vec<i128>>) -> Vec<i128> {
    if let Some(p) = memo.get(&adj) {
        return p.clone();
    }
    let n = adj.len();
    let edge = (0..n).find_map(|u| {
        let higher = adj[u] & !((1u32 << (u + 1)) - 1);
        (higher != 0).then(|| (u, higher.trailing_zeros() as usize))
    });
    let result = match edge {
        None => {
            let mut p = vec![0i128; n + 1];
            p[n] = 1;
            p
        }
        Some((u, v)) => {
            let mut del = adj.clone();
            del[u] &= !(1 << v);
            del[v] &= !(1 << u);
            // Contract v into u, then drop v and relabel.
            let mut con = del.clone();
            let merged = con[u] | con[v];
            con[u] = merged & !(1 << u) & !(1 << v);
            for w in 0..n {
                if merged & (1 << w) != 0 && w != u && w != v {
                    con[w] |= 1 << u;
                }
            }
            let con: Vec<u32> = (0..n)
                .filter(|&w| w != v)
                .map(|w| {
                    let row = con[w] & !(1 << v);
                    let low = row & ((1u32 << v) - 1);
                    let high = (row >> (v + 1)) << v;
                    low | high
                })
                .collect();
            let a = dc(del, memo);
            let b = dc(con, memo);
            let mut p = a;
            for (i, c) in b.iter().enumerate() {
                p[i] -= c;
            }
            p
        }
    };
    memo.insert(adj, result.clone());
    result
}

pub fn eval_poly(p: &[i128], k: i128) -> i128 {
    p.iter().rev().fold(0, |acc, &c| acc * k + c)
}

/// Proper colourings by enumerating `[k]^n`.
pub fn brute_count(g: &Graph, k: usize) -> u64 {
    let n = g.n();
    let mut colours = vec![0usize; n];
    let mut count = 0;
    loop {
        if g.edges()
            .iter()
            .all(|&(u, v)| colours[u as usize] != colours[v as usize])
        {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            colours[i] += 1;
            if colours[i] < k {
                break;
            }
            colours[i] = 0;
            i += 1;
        }
    }
}

/// Cycle counts from every closed sequence of distinct vertices, divided by
/// the `2l` rotations and reflections; parallel pairs counted as `C(t,2)`.
pub fn naive_cycles(g: &Graph, max_len: usize) -> Vec<u64> {
    let n = g.n();
    let mut mult = vec![vec![0u64; n]; n];
    for &(u, v) in g.edges() {
        mult[u as usize][v as usize] += 1;
        mult[v as usize][u as usize] += 1;
    }
    let mut out = vec![0u64; max_len - 1];
    for u in 0..n {
        for v in u + 1..n {
            out[0] += mult[u][v] * mult[u][v].saturating_sub(1) / 2;
        }
    }
    for l in 3..=max_len {
        let mut total = 0u64;
        let mut seq = vec![0usize; l];
        fn rec(i: usize, seq: &mut [usize], n: usize, mult: &[Vec<u64>], total: &mut u64) {
            let l = seq.len();
            if i == l {
                let mut w = 1;
                for j in 0..l {
                    w *= mult[seq[j]][seq[(j + 1) % l]];
                }
                *total += w;
                return;
            }
            for v in 0..n {
                if !seq[..i].contains(&v) {
                    seq[i] = v;
                    rec(i + 1, seq, n, mult, total);
                }
            }
        }
        rec(0, &mut seq, n, &mult, &mut total);
        assert_eq!(total % (2 * l as u64), 0);
        out[l - 2] = total / (2 * l as u64);
    }
    out
}

/// `(E[Z_k], E[Z_k²])` over all `N^m` equally likely edge sequences.
pub fn exhaustive_moments(n: usize, m: usize, k: usize) -> (BigRational, BigRational) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let big_n = pairs.len();
    let mut sum_z = BigUint::from(0u32);
    let mut sum_z2 = BigUint::from(0u32);
    let sequences = big_n.pow(m as u32);
    for mut idx in 0..sequences {
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            edges.push(pairs[idx % big_n]);
            idx /= big_n;
        }
        let g = Graph::new(n, edges, false).unwrap();
        let z = BigUint::from(brute_count(&g, k));
        sum_z2 += &z * &z;
        sum_z += z;
    }
    let denom = BigInt::from(sequences);
    (
        BigRational::new(BigInt::from(sum_z), denom.clone()),
        BigRational::new(BigInt::from(sum_z2), denom),
    )
}

/// Pearson chi-square p-value of observed counts against probabilities.
pub fn chi_square_p(observed: &[u64], probs: &[f64]) -> f64 {
    let total: u64 = observed.iter().sum();
    let stat: f64 = observed
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            let e = p * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let dof = (observed.len() - 1) as f64;
    1.0 - ChiSquared::new(dof).unwrap().cdf(stat)
}
