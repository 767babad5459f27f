//! First-moment threshold and the condensation display.

use super::first::alpha;
use crate::error::{invalid, Result};

/// Root of `α(d,k) = 0` in `d`, by bisection on a bracket, to `1e-12`.
pub fn first_moment_threshold(k: usize) -> Result<f64> {
    if k < 3 {
        return Err(invalid(format!("threshold needs k >= 3, got {k}")));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while alpha(hi, k) > 0.0 {
        hi *= 2.0;
    }
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if alpha(mid, k) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `((2k-1) ln k - 2 ln 2, (2k-1) ln k - 1)`.
pub fn cond_bound_display(k: usize) -> (f64, f64) {
    let base = (2 * k - 1) as f64 * (k as f64).ln();
    (base - 2.0 * 2f64.ln(), base - 1.0)
}
