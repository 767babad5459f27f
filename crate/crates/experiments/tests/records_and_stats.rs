use colourlab_core::RandomSource;
use colourlab_experiments::record::{fmt9, round9};
use colourlab_experiments::stats::{chi_square_gof, ks_distance, quantile, sorted, summarize};
use colourlab_experiments::{run_experiment, ExperimentConfig, WSampler};
use proptest::prelude::*;

fn ecdf(xs: &[f64], t: f64) -> f64 {
    xs.iter().filter(|&&x| x <= t).count() as f64 / xs.len() as f64
}

proptest! {
    #[test]
    fn nine_digit_rounding(x in -1e30f64..1e30) {
        let r = round9(x);
        prop_assert_eq!(round9(r), r);
        if x != 0.0 {
            prop_assert!((r / x - 1.0).abs() <= 5.000001e-9);
        }
        prop_assert_eq!(fmt9(x).parse::<f64>().unwrap(), r);
    }

    #[test]
    fn ks_matches_brute_force(
        a in prop::collection::vec(-5i32..5, 1..30),
        b in prop::collection::vec(-5i32..5, 1..30),
    ) {
        let a: Vec<f64> = a.into_iter().map(f64::from).collect();
        let b: Vec<f64> = b.into_iter().map(f64::from).collect();
        let brute = a
            .iter()
            .chain(&b)
            .map(|&t| (ecdf(&a, t) - ecdf(&b, t)).abs())
            .fold(0.0, f64::max);
        prop_assert!((ks_distance(&a, &b) - brute).abs() < 1e-12);
        prop_assert_eq!(ks_distance(&a, &b), ks_distance(&b, &a));
    }

    #[test]
    fn summary_matches_two_pass(xs in prop::collection::vec(-1e3f64..1e3, 2..200)) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        let s = summarize(&xs);
        prop_assert!((s.mean - mean).abs() <= 1e-9 * (1.0 + mean.abs()));
        prop_assert!((s.var - var).abs() <= 1e-7 * (1.0 + var));
        prop_assert!((s.se - (var / n).sqrt()).abs() <= 1e-7 * (1.0 + s.se));
    }

    #[test]
    fn quantiles_are_monotone(xs in prop::collection::vec(-1e3f64..1e3, 1..100), p in 0.0f64..1.0, q in 0.0f64..1.0) {
        let s = sorted(&xs);
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        prop_assert!(quantile(&s, lo) <= quantile(&s, hi));
        prop_assert_eq!(quantile(&s, 0.0), s[0]);
        prop_assert_eq!(quantile(&s, 1.0), s[s.len() - 1]);
    }

    #[test]
    fn w_is_nonnegative(seed in any::<u64>(), k in 2usize..6) {
        let d = 0.5 * ((k - 1) * (k - 1)) as f64;
        let sampler = WSampler::new(d, k, 1e-6).unwrap();
        let mut rng = RandomSource::new(seed, 0).rng();
        for _ in 0..50 {
            let w = sampler.sample(&mut rng).value;
            prop_assert!(w >= 0.0 && w.is_finite());
        }
    }
}

#[test]
fn chi_square_statistic_by_hand() {
    let observed = [30u64, 50, 20];
    let probs = [0.25, 0.5, 0.25];
    let t = chi_square_gof(&observed, &probs);
    // (30-25)²/25 + 0 + (20-25)²/25 = 2, two degrees of freedom: p = e^{-1}.
    assert!((t.statistic - 2.0).abs() < 1e-12);
    assert_eq!(t.dof, 2);
    assert!((t.p_value - (-1.0f64).exp()).abs() < 1e-12);

    let t = chi_square_gof(&[25, 50, 25], &probs);
    assert_eq!(t.statistic, 0.0);
    assert!((t.p_value - 1.0).abs() < 1e-12);
}

#[test]
fn sparse_cells_are_pooled() {
    // Expected counts 90, 4, 3, 2, 1: the last four pool into one cell of 10.
    let t = chi_square_gof(&[90, 4, 3, 2, 1], &[0.9, 0.04, 0.03, 0.02, 0.01]);
    assert_eq!(t.cells, 2);
    assert_eq!(t.dof, 1);
    assert!(t.statistic.abs() < 1e-12);
}

#[test]
fn w_has_unit_mean() {
    let sampler = WSampler::new(1.0, 3, 1e-6).unwrap();
    let mut rng = RandomSource::new(77, 0).rng();
    let w: Vec<f64> = (0..200_000).map(|_| sampler.sample(&mut rng).value).collect();
    let s = summarize(&w);
    assert!((s.mean - 1.0).abs() < 4.0 * s.se, "mean {} se {}", s.mean, s.se);
}

#[test]
fn csv_has_one_row_per_check() {
    let mut c = ExperimentConfig::new("contiguity_enum", 5);
    c.n = Some(4);
    c.m = Some(3);
    let rec = run_experiment(&c).unwrap();
    let rows = rec.csv_rows();
    assert_eq!(rows.len(), rec.checks.len());
    assert!(rows.iter().all(|r| r.split(',').count() == 6));
    let line: serde_json::Value = serde_json::from_str(&rec.to_json_line()).unwrap();
    assert_eq!(line["params"]["m"], 3);
    assert_eq!(line["verdict"], if rec.passed() { "pass" } else { "fail" });
}
