//! Scalar abstractions shared across the crate.

use std::fmt::Debug;
use std::ops::{Add, Mul};

use num_traits::{Float, FloatConst, FromPrimitive, One, Zero};

/// Floating point type for closed-form evaluations (`f32` or `f64`).
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    /// Converts a literal; panics only for values outside the type's range.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal out of range")
    }

    fn from_usize_lossy(x: usize) -> Self {
        Self::from_usize(x).expect("integer out of range")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Commutative semiring used to accumulate exact colouring counts.
///
/// `u128` is exact whenever the total number of assignments `k^n` fits,
/// `BigUint` is always exact, and `f64` gives a fast approximate tally.
pub trait Tally:
    Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> + Debug + Send + Sync
{
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    /// Natural logarithm of the value, `-inf` for zero.
    fn ln(&self) -> f64;
    fn from_u64(x: u64) -> Self;
}

impl Tally for u128 {
    fn add_assign_ref(&mut self, other: &Self) {
        *self += *other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn ln(&self) -> f64 {
        (*self as f64).ln()
    }
    fn from_u64(x: u64) -> Self {
        x as u128
    }
}

impl Tally for f64 {
    fn add_assign_ref(&mut self, other: &Self) {
        *self += *other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn ln(&self) -> f64 {
        f64::ln(*self)
    }
    fn from_u64(x: u64) -> Self {
        x as f64
    }
}

impl Tally for num_bigint::BigUint {
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn ln(&self) -> f64 {
        ln_biguint(self)
    }
    fn from_u64(x: u64) -> Self {
        num_bigint::BigUint::from(x)
    }
}

/// Field used for exact (or reference floating) moment evaluation.
pub trait Field: Clone + num_traits::Num + Debug {
    fn from_biguint(x: &num_bigint::BigUint) -> Self;

    fn ratio(num: u64, den: u64) -> Self {
        Self::from_biguint(&num.into()) / Self::from_biguint(&den.into())
    }

    fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl Field for num_rational::BigRational {
    fn from_biguint(x: &num_bigint::BigUint) -> Self {
        num_rational::BigRational::from_integer(num_bigint::BigInt::from(x.clone()))
    }
}

impl Field for f64 {
    fn from_biguint(x: &num_bigint::BigUint) -> Self {
        num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::INFINITY)
    }
}

/// Natural logarithm of a big integer without overflow.
pub fn ln_biguint(x: &num_bigint::BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        let f: f64 = num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::INFINITY);
        return f.ln();
    }
    let shift = bits - 64;
    let top: f64 = num_traits::ToPrimitive::to_f64(&(x >> shift)).unwrap_or(0.0);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// True when `k^n` fits in a `u128`, so every intermediate count does too.
pub fn fits_u128(k: usize, n: usize) -> bool {
    if k <= 1 {
        return true;
    }
    (n as f64) * (k as f64).log2() < 126.0
}

/// Logarithm of a rational value computed from numerator and denominator.
pub fn ln_rational(x: &num_rational::BigRational) -> f64 {
    use num_traits::Signed;
    if x.is_zero() || x.is_negative() {
        return f64::NEG_INFINITY;
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    ln_biguint(num) - ln_biguint(den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn big_log_matches_float_log() {
        let x = BigUint::from(3u32).pow(2000);
        let expected = 2000.0 * 3f64.ln();
        assert!((ln_biguint(&x) - expected).abs() < 1e-9 * expected);
        assert_eq!(ln_biguint(&BigUint::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn u128_guard() {
        assert!(fits_u128(3, 60));
        assert!(!fits_u128(3, 120));
    }
}
