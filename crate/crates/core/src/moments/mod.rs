//! Closed forms and exact finite-n moments.
//!
//! Exact moments are returned in log space (`ln E[…]`) since `k^n (1-1/k)^m`
//! overflows quickly; the `_in` variants evaluate the same identities in any
//! [`Field`](crate::Field), e.g. exact rationals for tiny `n`.

mod first;
mod second;
mod ssc;
mod thresholds;

pub use first::{
    alpha, b_const, balanced_ratio_asymptotic, balanced_ratio_exact, c_n, entropy,
    enumerate_balanced_densities, first_moment_balanced_ln, first_moment_density_asymptotic_ln,
    first_moment_exact_in, first_moment_exact_ln, first_moment_total_asymptotic_ln,
    first_moment_total_in, first_moment_total_ln, first_moment_total_simple_ln, g_density,
    ln_multinomial, multinomial, ModelParams,
};
pub use second::{
    big_c_n, d_const, f_overlap, second_moment_balanced_asymptotic_ln, second_moment_exact_in,
    second_moment_exact_ln, second_moment_total_in,
};
pub use ssc::{
    conditioned_ratio, delta, lambda, mu, ssc_closed_form, ssc_series, SeriesCheck, SscConstants,
};
pub use thresholds::{cond_bound_display, first_moment_threshold};

/// `ln Σ exp(x_i)` accumulated in one pass.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogSum {
    max: f64,
    scaled: f64,
}

impl LogSum {
    pub(crate) fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            scaled: 0.0,
        }
    }

    pub(crate) fn push(&mut self, x: f64) {
        if x == f64::NEG_INFINITY {
            return;
        }
        if x > self.max {
            self.scaled = self.scaled * (self.max - x).exp() + 1.0;
            self.max = x;
        } else {
            self.scaled += (x - self.max).exp();
        }
    }

    pub(crate) fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.scaled.ln()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::LogSum;

    #[test]
    fn log_sum_matches_direct() {
        let xs = [0.5, -3.0, 2.0, f64::NEG_INFINITY, 1.0];
        let mut acc = LogSum::new();
        for x in xs {
            acc.push(x);
        }
        let direct: f64 = xs.iter().map(|x| x.exp()).sum::<f64>().ln();
        assert!((acc.value() - direct).abs() < 1e-14);
        assert_eq!(LogSum::new().value(), f64::NEG_INFINITY);
    }
}
