//! Exact and statistical machinery for k-colourings of sparse random graphs.
//!
//! The crate is organised by subsystem:
//!
//! * [`graph`]: graphs, the edge-list text format and the three random graph
//!   models (multigraph with replacement, uniform simple graph, planted pair).
//! * [`colouring`]: proper-colouring predicates, exact counters (total and
//!   per colour-class profile) and the exact uniform colouring sampler.
//! * [`cycles`]: short cycle censuses with edge-instance multiplicity.
//! * [`moments`]: closed forms and exact finite-n first/second moments.
//! * [`overlap`]: overlap matrices, the landscape function optimiser, the
//!   stability predicates, the constrained Hessian and lattice Gaussian sums.
//!
//! Numerical formulas are generic over [`Real`] (`f32`/`f64`); exact counts are
//! generic over [`Tally`] and exact moments over any field implementing the
//! `num-traits` arithmetic traits, with [`Rational`] as the exact instance.

pub mod colouring;
pub mod cycles;
pub mod error;
pub mod graph;
pub mod moments;
pub mod overlap;
pub mod rng;
pub mod scalar;

pub use error::{LabError, Result};
pub use rng::RandomSource;
pub use scalar::{Field, Real, Tally};

/// Exact big-integer counts (numbers of colourings).
pub type BigCount = num_bigint::BigUint;
/// Exact rational arithmetic used for the tiny-n cross-validation mode.
pub type Rational = num_rational::BigRational;
/// Double-precision overlap matrix.
pub type Overlap = overlap::OverlapMatrix<f64>;
/// Profile generating polynomial with exact big-integer coefficients.
pub type BigProfile = colouring::ProfilePoly<BigCount>;
