use colourlab_core::colouring::Colouring;
use colourlab_core::overlap::{
    achlioptas_naor_gap, ascend_from, det_check, gaussian_lattice_sum, hessian_h, j_matrix,
    maximize_f, overlap_of, sample_balanced_overlap, Domain, MaximizeOptions,
};
use colourlab_core::{Overlap, RandomSource};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #[test]
    fn marginals_are_densities(a in prop::collection::vec(0u32..4, 1..40), seed in any::<u64>()) {
        let mut rng = RandomSource::from_seed(seed).rng();
        let b: Vec<u32> = a.iter().map(|_| rng.random_range(0..4)).collect();
        let (a, b) = (Colouring::new(4, a).unwrap(), Colouring::new(4, b).unwrap());
        let o = overlap_of(&a, &b).unwrap();
        prop_assert_eq!(o.row_sums(), a.class_sizes());
        prop_assert_eq!(o.col_sums(), b.class_sizes());
    }
}

#[test]
fn quadratic_form_identity() {
    let mut rng = RandomSource::from_seed(8).rng();
    for k in 2..=6usize {
        let h = hessian_h(k).unwrap();
        let m = k - 1;
        for _ in 0..1000 {
            let free: Vec<f64> = (0..m * m)
                .map(|_| rng.random::<f64>() * 2.0 - 1.0)
                .collect();
            let mut eps = vec![0.0; k * k];
            for i in 0..m {
                for j in 0..m {
                    eps[i * k + j] = free[i * m + j];
                }
            }
            for i in 0..m {
                eps[i * k + m] = -(0..m).map(|j| eps[i * k + j]).sum::<f64>();
            }
            for j in 0..k {
                eps[m * k + j] = -(0..m).map(|i| eps[i * k + j]).sum::<f64>();
            }
            let x = DVector::from_vec(free);
            let form = (x.transpose() * &h * &x)[(0, 0)];
            let norm: f64 = eps.iter().map(|e| e * e).sum();
            assert!((form - norm).abs() < 1e-12 * norm.max(1.0), "k={k}");
        }
    }
}

#[test]
fn determinant_and_definiteness() {
    for k in 2..=6 {
        let (det, expected) = det_check(k).unwrap();
        assert!(
            (det / expected - 1.0).abs() < 1e-9,
            "k={k}: {det} vs {expected}"
        );
    }
    for k in 2..=8 {
        let eig = hessian_h(k).unwrap().symmetric_eigenvalues();
        assert!(eig.iter().all(|&e| e > 0.0), "k={k}");
    }
}

#[test]
fn lattice_sum_examples() {
    // k = 2 matrix case: a single free entry with H = [4].
    let s = gaussian_lattice_sum(&hessian_h(2).unwrap(), 10_000, 4.0, 8.0).unwrap();
    let rhs = (std::f64::consts::TAU * 1e4).sqrt() / 2.0 / 2.0;
    assert!((s.asymptotic - rhs).abs() < 1e-9 * rhs);
    assert!((s.ratio() - 1.0).abs() < 0.005);
    let s = gaussian_lattice_sum(&hessian_h(3).unwrap(), 100, 4.5, 8.0).unwrap();
    let rhs = (std::f64::consts::TAU * 100.0).powi(2) / 4.5f64.powi(2) / 9.0;
    assert!((s.asymptotic - rhs).abs() < 1e-9 * rhs);
    assert!((s.ratio() - 1.0).abs() < 0.05);
    // Vector case with J and B = 6, d = 2.
    let s = gaussian_lattice_sum(&j_matrix(3), 1000, 6.0, 8.0).unwrap();
    let rhs = std::f64::consts::TAU * 1000.0 * 3f64.powf(-1.5) / 2.0;
    assert!((s.asymptotic - rhs).abs() < 1e-9 * rhs);
    assert!((s.ratio() - 1.0).abs() < 0.02);
    assert!(gaussian_lattice_sum(&DMatrix::<f64>::zeros(2, 2), 10, 1.0, 8.0).is_err());
}

#[test]
fn gap_nonnegative_below_the_bound() {
    for k in 3..=6usize {
        let km1 = (k - 1) as f64;
        let d = 0.99 * 2.0 * km1 * km1.ln();
        let mut rng = RandomSource::new(9, k as u64).rng();
        for i in 0..20_000 {
            let shape = if i % 2 == 0 { 1.0 } else { 0.2 };
            let rho = sample_balanced_overlap(k, shape, &mut rng);
            assert!(achlioptas_naor_gap(&rho, d).unwrap() >= -1e-12);
        }
    }
}

#[test]
fn maximiser_at_subcritical_degree() {
    let r = maximize_f(2.0, 3, Domain::Full, &MaximizeOptions::default()).unwrap();
    assert!(r.argmax.iter().all(|&x| (x - 1.0 / 9.0).abs() < 1e-4));
    assert!((r.value - r.barycentre_value).abs() < 1e-6);
    assert!(r.converged);
    let b = maximize_f(
        5.3,
        3,
        Domain::Balanced,
        &MaximizeOptions {
            starts: 16,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(b.value >= b.barycentre_value - 1e-9);
}

#[test]
fn permutation_invariance() {
    let mut rng = RandomSource::from_seed(10).rng();
    let opts = MaximizeOptions::default();
    let perm = [2usize, 0, 1];
    for domain in [Domain::Full, Domain::Balanced] {
        for d in [2.0, 4.0] {
            let start = sample_balanced_overlap(3, 0.5, &mut rng);
            let a = ascend_from(start.as_slice(), d, 3, domain, &opts);
            let permuted = Overlap::new(3, start.as_slice().to_vec())
                .unwrap()
                .permuted(&perm);
            let b = ascend_from(permuted.as_slice(), d, 3, domain, &opts);
            assert!((a.value - b.value).abs() < 1e-9, "{domain:?} d={d}");
        }
    }
}
