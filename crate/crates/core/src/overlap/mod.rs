//! The overlap landscape: overlap matrices, maximisation of the second moment
//! exponent, stability predicates, the constrained Hessian and lattice
//! Gaussian sums.

mod gauss;
mod landscape;
mod matrix;
mod stability;

pub use gauss::{det_check, gaussian_lattice_sum, hessian_h, j_matrix, LatticeSum};
pub use landscape::{
    ascend_from, maximize_f, sample_balanced_overlap, Domain, LocalMax, MaximizeOptions,
    MaximizeReport,
};
pub use matrix::{overlap_of, OverlapCounts, OverlapMatrix};
pub use stability::{
    achlioptas_naor_gap, an_constant, classify_stability, classify_stability_with_kappa, kappa,
    StabilityClass,
};
