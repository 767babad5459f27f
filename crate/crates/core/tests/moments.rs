mod common;

use colourlab_core::colouring::{compositions, ColourDensity};
use colourlab_core::moments::{
    alpha, b_const, conditioned_ratio, d_const, delta, f_overlap, first_moment_exact_in,
    first_moment_total_in, g_density, lambda, second_moment_total_in, ssc_closed_form, ssc_series,
    ModelParams,
};
use colourlab_core::{RandomSource, Rational};
use proptest::prelude::*;
use rand::Rng;

use common::oracles::exhaustive_moments;

/// Unit vector orthogonal to the all-ones vector.
fn zero_sum_direction<R: Rng>(len: usize, rng: &mut R) -> Vec<f64> {
    let mut v: Vec<f64> = (0..len).map(|_| rng.random::<f64>() - 0.5).collect();
    let mean = v.iter().sum::<f64>() / len as f64;
    v.iter_mut().for_each(|x| *x -= mean);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

/// Unit `k × k` direction with zero row and column sums.
fn doubly_zero_sum_direction<R: Rng>(k: usize, rng: &mut R) -> Vec<f64> {
    let mut v: Vec<f64> = (0..k * k).map(|_| rng.random::<f64>() - 0.5).collect();
    let rows: Vec<f64> = (0..k)
        .map(|i| v[i * k..(i + 1) * k].iter().sum::<f64>() / k as f64)
        .collect();
    let cols: Vec<f64> = (0..k)
        .map(|j| (0..k).map(|i| v[i * k + j]).sum::<f64>() / k as f64)
        .collect();
    let all = v.iter().sum::<f64>() / (k * k) as f64;
    for i in 0..k {
        for j in 0..k {
            v[i * k + j] += all - rows[i] - cols[j];
        }
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

fn second_difference(f: impl Fn(f64) -> f64, h: f64) -> f64 {
    (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) / (12.0 * h * h)
}

#[test]
fn exact_moments_match_exhaustive_model() {
    for n in 2..=4usize {
        for m in 0..=4usize {
            for k in 2..=3usize {
                let params = ModelParams::from_m(n, m, k).unwrap();
                let (ez, ez2) = exhaustive_moments(n, m, k);
                let first: Rational = first_moment_total_in(&params);
                let second: Rational = second_moment_total_in(&params);
                assert_eq!(first, ez, "first moment at n={n} m={m} k={k}");
                assert_eq!(second, ez2, "second moment at n={n} m={m} k={k}");
            }
        }
    }
}

#[test]
fn first_moment_sum_over_densities_equals_per_density_sum() {
    let params = ModelParams::from_m(5, 3, 3).unwrap();
    let per: Rational = compositions(5, 3)
        .into_iter()
        .map(|s| {
            first_moment_exact_in::<Rational>(&params, &ColourDensity::from_sizes(s).unwrap())
                .unwrap()
        })
        .fold(Rational::from_integer(0.into()), |a, b| a + b);
    assert_eq!(per, first_moment_total_in::<Rational>(&params));
}

#[test]
fn series_matches_closed_form_on_grid() {
    for k in 3..=8usize {
        let bound = ((k - 1) * (k - 1)) as f64;
        for step in 1..=19 {
            let d = 0.95 * bound * step as f64 / 19.0;
            let s = ssc_series(d, k, 1e-12).unwrap();
            assert!((s.partial_sum - s.closed_form).abs() < 1e-10, "k={k} d={d}");
            assert_eq!(s.closed_form, ssc_closed_form(d, k).unwrap());
        }
    }
}

#[test]
fn curvature_constants() {
    let mut rng = RandomSource::from_seed(17).rng();
    for k in 3..=6usize {
        for d in [0.5, 1.0, 2.0, 3.5] {
            let star = vec![1.0 / k as f64; k];
            for _ in 0..5 {
                let v = zero_sum_direction(k, &mut rng);
                let curve = |t: f64| {
                    let p: Vec<f64> = star.iter().zip(&v).map(|(a, b)| a + t * b).collect();
                    g_density(&p, d).unwrap()
                };
                let second = second_difference(curve, 1e-3);
                assert!(
                    (second + b_const(d, k)).abs() < 1e-4,
                    "g: k={k} d={d} got {second}"
                );
            }
            if d < ((k - 1) * (k - 1)) as f64 {
                let bar = vec![1.0 / (k * k) as f64; k * k];
                for _ in 0..5 {
                    let v = doubly_zero_sum_direction(k, &mut rng);
                    let curve = |t: f64| {
                        let p: Vec<f64> = bar.iter().zip(&v).map(|(a, b)| a + t * b).collect();
                        f_overlap(&p, d, k).unwrap()
                    };
                    let second = second_difference(curve, 1e-3);
                    assert!(
                        (second + d_const(d, k)).abs() < 1e-4,
                        "f: k={k} d={d} got {second}"
                    );
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn barycentre_identities(d in 0.0f64..10.0, k in 2usize..12) {
        let star = vec![1.0 / k as f64; k];
        prop_assert!((g_density(&star, d).unwrap() - alpha(d, k)).abs() < 1e-12);
        let bar = vec![1.0 / (k * k) as f64; k * k];
        prop_assert!((f_overlap(&bar, d, k).unwrap() - 2.0 * alpha(d, k)).abs() < 1e-12);
    }

    #[test]
    fn zero_census_ratio(d in 0.0f64..4.0, k in 3usize..9, len in 0usize..10) {
        let lhs = conditioned_ratio(&vec![0; len], d, k);
        let rhs = (-(0..len).map(|i| delta::<f64>(i as u32 + 2, k) * lambda::<f64>(i as u32 + 2, d)).sum::<f64>()).exp();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
    }
}
