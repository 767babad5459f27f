//! Exhaustive experiments on tiny instances: the random colouring and planted
//! distributions, and cluster sizes.

use std::collections::{BTreeMap, HashMap};

use colourlab_core::colouring::{is_proper, sizes_balanced, Colouring};
use colourlab_core::graph::{pair_count, pair_from_index, sample_gnm_simple, Graph};
use colourlab_core::overlap::{classify_stability, overlap_of};
use colourlab_core::{LabError, RandomSource, Rational, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::record::{Check, ExperimentRecord, Params};

/// Largest number of `(graph, map)` pairs enumerated.
pub const ENUM_CAP: u128 = 50_000_000;
/// Tolerance between the closed-form planted law and its two-step construction.
pub const CONSTRUCTION_TOL: f64 = 1e-12;
/// Number of random events checked against the first-moment identity.
pub const DEFAULT_EVENTS: usize = 20;

fn binom(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn rat(num: u128, den: u128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// All `m`-element subsets of the set bits of `mask`, as masks.
fn subsets_of(mask: u64, m: usize) -> Vec<u64> {
    let bits: Vec<u32> = (0..64).filter(|b| mask >> b & 1 == 1).collect();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..m).collect();
    if m > bits.len() {
        return out;
    }
    loop {
        out.push(idx.iter().fold(0u64, |acc, &i| acc | 1 << bits[i]));
        let mut i = m;
        while i > 0 && idx[i - 1] == bits.len() - m + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Pairs (as pair-index bits) that are monochromatic under each map.
fn mono_masks(n: usize, k: usize) -> Vec<u64> {
    let total = (k as u64).pow(n as u32);
    let pairs = pair_count(n);
    (0..total)
        .map(|i| {
            let c = Colouring::from_index(k, n, i);
            let s = c.as_slice();
            (0..pairs).fold(0u64, |acc, e| {
                let (u, v) = pair_from_index(e);
                if s[u as usize] == s[v as usize] {
                    acc | 1 << e
                } else {
                    acc
                }
            })
        })
        .collect()
}

/// Exact comparison of the random colouring model and the planted model on
/// simple graphs with `n` vertices and `m` edges.
pub fn exp_contiguity_enum(n: usize, m: usize, k: usize, events: usize, seed: u64) -> Result<ExperimentRecord> {
    let pairs = pair_count(n);
    if pairs > 63 || k < 2 || m as u64 > pairs {
        return Err(LabError::InvalidParameter(format!("need C(n,2) <= 63, k >= 2, m <= C(n,2) (n = {n})")));
    }
    let n_graphs = binom(pairs, m as u64);
    let n_maps = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if n_graphs.saturating_mul(n_maps) > ENUM_CAP {
        return Err(LabError::ResourceLimit(format!(
            "{n_graphs} graphs x {n_maps} maps exceeds {ENUM_CAP}"
        )));
    }
    let mut rec = ExperimentRecord::new(
        "contiguity_enum",
        Params { n: Some(n), m: Some(m), k: Some(k), seed: Some(seed), ..Params::default() },
    );
    let full = (1u64 << pairs) - 1;
    let graphs = subsets_of(full, m);
    let mono = mono_masks(n, k);
    let forb: Vec<u64> = mono.iter().map(|x| x.count_ones() as u64).collect();
    let z: Vec<u128> = graphs.iter().map(|&g| mono.iter().filter(|&&s| g & s == 0).count() as u128).collect();
    let colourable = z.iter().filter(|&&x| x > 0).count() as u128;
    let admissible = forb.iter().filter(|&&f| pairs - f >= m as u64).count() as u128;
    if colourable == 0 {
        return Err(LabError::Infeasible("no k-colourable graph".into()));
    }

    // Pair probabilities, keyed by (graph position, map index).
    let mut tv = Rational::zero();
    let mut max_lr: Option<Rational> = None;
    let mut min_lr: Option<Rational> = None;
    let mut support_ok = true;
    let mut sum_rc = Rational::zero();
    let mut sum_pl = Rational::zero();
    let mut closed: HashMap<(usize, usize), f64> = HashMap::new();
    let mut equal = true;
    for (gi, &g) in graphs.iter().enumerate() {
        for (si, &s) in mono.iter().enumerate() {
            if g & s != 0 {
                continue;
            }
            let rc = rat(1, colourable * z[gi]);
            let free = binom(pairs - forb[si], m as u64);
            if free == 0 {
                support_ok = false;
                continue;
            }
            let pl = rat(1, admissible * free);
            closed.insert((gi, si), to_f64(&pl));
            let lr = &rc / &pl;
            if max_lr.as_ref().is_none_or(|x| &lr > x) {
                max_lr = Some(lr.clone());
            }
            if min_lr.as_ref().is_none_or(|x| &lr < x) {
                min_lr = Some(lr.clone());
            }
            equal &= rc == pl;
            tv += (&rc - &pl).abs();
            sum_rc += rc;
            sum_pl += pl;
        }
    }
    tv /= Rational::from_integer(BigInt::from(2));

    // Planted law generated step by step: a uniform admissible map, then a
    // uniform m-subset of its bichromatic pairs.
    let position: HashMap<u64, usize> = graphs.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut built: HashMap<(usize, usize), f64> = HashMap::new();
    for (si, &s) in mono.iter().enumerate() {
        if pairs - forb[si] < m as u64 {
            continue;
        }
        let choices = subsets_of(full & !s, m);
        let p = 1.0 / admissible as f64 / choices.len() as f64;
        for g in choices {
            *built.entry((position[&g], si)).or_insert(0.0) += p;
        }
    }
    let mut construction_err: f64 = 0.0;
    for (key, &p) in &built {
        construction_err = construction_err.max((p - closed.get(key).copied().unwrap_or(0.0)).abs());
    }
    for (key, &p) in &closed {
        construction_err = construction_err.max((p - built.get(key).copied().unwrap_or(0.0)).abs());
    }

    // E[Z 1_A] = Σ_σ P[G(n,m,σ) ∈ A] P[σ proper] for random events A.
    let mut rng = RandomSource::new(seed, 0).rng();
    let all = rat(n_graphs, 1);
    let mut identity_ok = true;
    for _ in 0..events {
        let in_a: Vec<bool> = (0..graphs.len()).map(|_| rng.random_bool(0.5)).collect();
        let lhs = graphs
            .iter()
            .enumerate()
            .filter(|(i, _)| in_a[*i])
            .fold(Rational::zero(), |acc, (i, _)| acc + rat(z[i], 1))
            / &all;
        let mut rhs = Rational::zero();
        for (si, &s) in mono.iter().enumerate() {
            let free = binom(pairs - forb[si], m as u64);
            if free == 0 {
                continue;
            }
            let hits = graphs.iter().enumerate().filter(|(i, &g)| in_a[*i] && g & s == 0).count() as u128;
            let p_event = rat(hits, free);
            let p_proper = rat(free, 1) / &all;
            rhs += p_event * p_proper;
        }
        identity_ok &= lhs == rhs;
    }

    rec.stat("graphs", n_graphs.to_string());
    rec.stat("colourable_graphs", colourable.to_string());
    rec.stat("admissible_maps", admissible.to_string());
    rec.stat_f64("tv_distance", to_f64(&tv));
    rec.stat("tv_distance_exact", tv.to_string());
    let max_lr = max_lr.unwrap_or_else(Rational::one);
    let min_lr = min_lr.unwrap_or_else(Rational::one);
    rec.stat_f64("max_likelihood_ratio", to_f64(&max_lr));
    rec.stat_f64("min_likelihood_ratio", to_f64(&min_lr));
    rec.stat("max_likelihood_ratio_exact", max_lr.to_string());
    rec.stat("distributions_equal", equal);
    // The asymptotic display 1/(k^n C(N - Forb, m)) differs from the exact law
    // by the constant factor admissible / k^n.
    rec.stat_f64("display_over_exact", admissible as f64 / n_maps as f64);
    rec.check(Check::holds("rc_sums_to_one", sum_rc.is_one()));
    rec.check(Check::holds("pl_sums_to_one", sum_pl.is_one()));
    rec.check(Check::at_most("pl_construction_max_error", construction_err, CONSTRUCTION_TOL));
    rec.check(Check::holds("rc_support_within_pl", support_ok));
    rec.check(Check::holds("first_moment_identity", identity_ok));
    rec.stat("events", events);
    Ok(rec)
}

/// Sizes of clusters `{τ balanced : ρ(σ,τ) is k-stable}` over balanced
/// colourings `σ` of sampled simple graphs.
pub fn exp_cluster_tiny(n: usize, m: usize, k: usize, omega: f64, trials: u64, seed: u64) -> Result<ExperimentRecord> {
    let maps = (k as u64).checked_pow(n as u32).filter(|&x| x <= 1 << 20).ok_or_else(|| {
        LabError::ResourceLimit(format!("k^n = {k}^{n} maps exceeds 2^20"))
    })?;
    let mut rec = ExperimentRecord::new(
        "cluster_tiny",
        Params {
            n: Some(n),
            m: Some(m),
            k: Some(k),
            omega: Some(omega),
            trials: Some(trials),
            seed: Some(seed),
            ..Params::default()
        },
    );
    let src = RandomSource::new(seed, 0);
    let mut histogram: BTreeMap<usize, u64> = BTreeMap::new();
    let mut balanced_counts = Vec::new();
    let mut symmetric = true;
    for t in 0..trials {
        let g = sample_gnm_simple(n, m, src.derive(t))?;
        let sizes = cluster_sizes(&g, k, omega, maps, &mut symmetric)?;
        balanced_counts.push(sizes.len() as u64);
        for s in sizes {
            *histogram.entry(s).or_insert(0) += 1;
        }
    }
    let total: u64 = histogram.values().sum();
    let mean = histogram.iter().map(|(&s, &c)| s as f64 * c as f64).sum::<f64>() / total.max(1) as f64;
    rec.stat(
        "cluster_size_histogram",
        serde_json::Value::Object(histogram.iter().map(|(s, c)| (s.to_string(), (*c).into())).collect()),
    );
    rec.stat("balanced_colourings_per_graph", balanced_counts);
    rec.stat_f64("mean_cluster_size", mean);
    rec.check(Check::holds("stability_relation_symmetric", symmetric));
    Ok(rec)
}

fn cluster_sizes(g: &Graph, k: usize, omega: f64, maps: u64, symmetric: &mut bool) -> Result<Vec<usize>> {
    let n = g.n();
    let mut good = Vec::new();
    for i in 0..maps {
        let c = Colouring::from_index(k, n, i);
        if sizes_balanced(&c.class_sizes(), n, omega) && is_proper(g, &c)? {
            good.push(c);
        }
    }
    let stable = |a: &Colouring, b: &Colouring| -> Result<bool> {
        Ok(classify_stability(&overlap_of(a, b)?.to_matrix::<f64>()).s == k)
    };
    let mut sizes = Vec::with_capacity(good.len());
    for a in &good {
        let mut size = 0;
        for b in &good {
            let ab = stable(a, b)?;
            *symmetric &= ab == stable(b, a)?;
            size += ab as usize;
        }
        sizes.push(size);
    }
    Ok(sizes)
}
