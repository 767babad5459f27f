mod common;

use colourlab_core::colouring::Colouring;
use colourlab_core::graph::{
    is_simple_event, pair_count, pair_index, read_graph, sample_gnm_multigraph, sample_gnm_simple,
    sample_planted_pair, write_graph, Graph,
};
use colourlab_core::RandomSource;
use proptest::prelude::*;

use common::oracles::chi_square_p;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn multigraph_invariants(n in 2usize..40, m in 0usize..80, seed in any::<u64>(), stream in any::<u64>()) {
        let src = RandomSource::new(seed, stream);
        let g = sample_gnm_multigraph(n, m, src).unwrap();
        prop_assert_eq!(g.m(), m);
        prop_assert!(g.edges().iter().all(|&(u, v)| u < v && (v as usize) < n));
        prop_assert_eq!(g, sample_gnm_multigraph(n, m, src).unwrap());
    }

    #[test]
    fn simple_invariants(n in 1usize..30, frac in 0.0f64..=1.0, seed in any::<u64>()) {
        let m = (frac * pair_count(n) as f64) as usize;
        let g = sample_gnm_simple(n, m, RandomSource::from_seed(seed)).unwrap();
        prop_assert_eq!(g.m(), m);
        prop_assert!(is_simple_event(&g));
        prop_assert!(g.edges().iter().all(|&(u, v)| u < v && (v as usize) < n));
        prop_assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn planted_invariants(n in 2usize..25, k in 2usize..5, frac in 0.0f64..0.5, seed in any::<u64>()) {
        let m = (frac * pair_count(n) as f64) as usize;
        let p = sample_planted_pair(n, m, k, RandomSource::from_seed(seed)).unwrap();
        let s = p.colouring.as_slice();
        prop_assert_eq!(p.graph.m(), m);
        prop_assert!(is_simple_event(&p.graph));
        prop_assert!(p.graph.edges().iter().all(|&(u, v)| s[u as usize] != s[v as usize]));
        prop_assert!(p.colouring.forb() <= pair_count(n) - m as u64);
    }
}

#[test]
fn single_draw_frequency() {
    let (n, m, trials) = (100, 100, 100_000u64);
    let target = pair_index(0, 1);
    let mut hits = 0u64;
    for t in 0..trials {
        let g = sample_gnm_multigraph(n, m, RandomSource::new(1, t)).unwrap();
        hits += g
            .edges()
            .iter()
            .filter(|&&(u, v)| pair_index(u, v) == target)
            .count() as u64;
    }
    let draws = (trials * m as u64) as f64;
    let p = 1.0 / 4950.0;
    let se = (p * (1.0 - p) / draws).sqrt();
    assert!(
        (hits as f64 / draws - p).abs() < 3.0 * se,
        "{hits} hits over {draws} draws"
    );
}

#[test]
fn simple_edge_uniformity() {
    let mut counts = [0u64; 6];
    for t in 0..100_000 {
        let g = sample_gnm_simple(4, 1, RandomSource::new(2, t)).unwrap();
        let (u, v) = g.edges()[0];
        counts[pair_index(u, v) as usize] += 1;
    }
    let p: f64 = 1.0 / 6.0;
    let se = (p * (1.0 - p) / 100_000.0).sqrt();
    for c in counts {
        assert!((c as f64 / 1e5 - p).abs() < 3.5 * se);
    }
}

#[test]
fn simple_event_probability() {
    let (n, m, trials) = (50usize, 25usize, 10_000u64);
    let big_n = pair_count(n) as f64;
    let exact: f64 = (0..m).map(|j| 1.0 - j as f64 / big_n).product();
    let hits = (0..trials)
        .filter(|&t| {
            is_simple_event(&sample_gnm_multigraph(n, m, RandomSource::new(3, t)).unwrap())
        })
        .count() as f64;
    let se = (exact * (1.0 - exact) / trials as f64).sqrt();
    assert!((hits / trials as f64 - exact).abs() < 3.0 * se);
    assert!(is_simple_event(&Graph::complete(3)));
    assert!(!is_simple_event(
        &Graph::new(2, [(0, 1), (0, 1)], false).unwrap()
    ));
}

/// Planted colourings are uniform over the admissible maps.
#[test]
fn planted_colouring_uniformity() {
    let (n, m, k) = (6usize, 6usize, 3usize);
    let limit = pair_count(n) - m as u64;
    let admissible: Vec<Vec<u32>> = (0..(k as u64).pow(n as u32))
        .map(|i| Colouring::from_index(k, n, i))
        .filter(|c| c.forb() <= limit)
        .map(|c| c.as_slice().to_vec())
        .collect();
    let trials = 200_000u64;
    let mut counts = vec![0u64; admissible.len()];
    // Given σ the edge set is a uniform m-subset of the bichromatic pairs,
    // so the first bichromatic pair is present with probability m / |pairs|.
    let (mut hit, mut mean, mut var) = (0.0f64, 0.0f64, 0.0f64);
    for t in 0..trials {
        let p = sample_planted_pair(n, m, k, RandomSource::new(4, t)).unwrap();
        let s = p.colouring.as_slice();
        let idx = admissible.binary_search(&s.to_vec()).expect("admissible");
        counts[idx] += 1;
        let first = (1..n as u32)
            .flat_map(|v| (0..v).map(move |u| (u, v)))
            .find(|&(u, v)| s[u as usize] != s[v as usize])
            .unwrap();
        let q = m as f64 / (pair_count(n) - p.colouring.forb()) as f64;
        mean += q;
        var += q * (1.0 - q);
        hit += f64::from(u8::from(p.graph.edges().contains(&first)));
    }
    assert!(
        chi_square_p(
            &counts,
            &vec![1.0 / admissible.len() as f64; admissible.len()]
        ) > 1e-3
    );
    assert!((hit - mean).abs() < 3.5 * var.sqrt(), "{hit} vs {mean}");
}

#[test]
fn errors() {
    assert!(sample_gnm_multigraph(1, 0, RandomSource::from_seed(0)).is_err());
    assert!(sample_gnm_simple(4, 7, RandomSource::from_seed(0)).is_err());
    assert!(read_graph("2 1 simple\n1 3\n").is_err());
}
