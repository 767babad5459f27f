//! Sample statistics and goodness-of-fit tests.

use statrs::distribution::{ChiSquared, ContinuousCDF};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    /// Unbiased sample variance.
    pub var: f64,
    /// Standard error of the mean.
    pub se: f64,
}

pub fn summarize(xs: &[f64]) -> Summary {
    let count = xs.len();
    if count == 0 {
        return Summary { count, mean: f64::NAN, var: f64::NAN, se: f64::NAN };
    }
    let mean = pairwise_sum(xs) / count as f64;
    let var = if count > 1 {
        xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (count - 1) as f64
    } else {
        0.0
    };
    Summary { count, mean, var, se: (var / count as f64).sqrt() }
}

/// Pairwise summation, deterministic for a given input order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Pearson correlation; `NaN` when either sample is constant.
pub fn correlation(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let mx = summarize(x).mean;
    let my = summarize(y).mean;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Quantile of sorted data with linear interpolation between order statistics.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let h = (sorted.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn sorted(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// Cells left after pooling.
    pub cells: usize,
}

/// Pearson chi-square goodness of fit. Cells with expected count below 5 are
/// pooled into one cell; if that cell is still below 5 it absorbs the
/// smallest remaining cells.
pub fn chi_square_gof(observed: &[u64], probs: &[f64]) -> ChiSquareTest {
    assert_eq!(observed.len(), probs.len());
    let total: u64 = observed.iter().sum();
    let mut cells: Vec<(f64, f64)> =
        observed.iter().zip(probs).map(|(&o, &p)| (p * total as f64, o as f64)).collect();
    cells.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut pooled = (0.0, 0.0);
    let mut rest = Vec::new();
    for c in cells {
        if c.0 < 5.0 || (pooled.0 > 0.0 && pooled.0 < 5.0) {
            pooled.0 += c.0;
            pooled.1 += c.1;
        } else {
            rest.push(c);
        }
    }
    if pooled.0 > 0.0 {
        rest.push(pooled);
    }
    let statistic: f64 = rest.iter().map(|&(e, o)| (o - e) * (o - e) / e).sum();
    let dof = rest.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64).map(|c| c.sf(statistic)).unwrap_or(f64::NAN)
    };
    ChiSquareTest { statistic, dof, p_value, cells: rest.len() }
}

/// Two-sample Kolmogorov–Smirnov distance `sup |F_a - F_b|`.
pub fn ks_distance(a: &[f64], b: &[f64]) -> f64 {
    let a = sorted(a);
    let b = sorted(b);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut best: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = if a[i] <= b[j] { a[i] } else { b[j] };
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        best = best.max((i as f64 / na - j as f64 / nb).abs());
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
}

/// Ordinary least squares `y ≈ intercept + slope x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> LinearFit {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = summarize(x).mean;
    let my = summarize(y).mean;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    LinearFit { slope, intercept, slope_se: (rss / (n - 2.0) / sxx).sqrt() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_and_quantiles() {
        let s = summarize(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.var - 5.0 / 3.0).abs() < 1e-15);
        let v = sorted(&[4.0, 1.0, 3.0, 2.0]);
        assert_eq!(quantile(&v, 0.5), 2.5);
        assert_eq!(quantile(&v, 0.25), 1.75);
        assert_eq!(quantile(&v, 1.0), 4.0);
    }

    #[test]
    fn correlation_and_fit() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, 3.0, 5.0, 7.0];
        assert!((correlation(&x, &y) - 1.0).abs() < 1e-15);
        let f = linear_fit(&x, &y);
        assert!((f.slope - 2.0).abs() < 1e-14 && (f.intercept - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ks_examples() {
        assert_eq!(ks_distance(&[1.0, 2.0], &[1.0, 2.0]), 0.0);
        assert_eq!(ks_distance(&[0.0, 0.0], &[1.0, 1.0]), 1.0);
        assert_eq!(ks_distance(&[1.0, 2.0, 3.0, 4.0], &[2.5]), 0.5);
    }

    #[test]
    fn chi_square_pooling() {
        // Perfect fit.
        let t = chi_square_gof(&[50, 30, 20], &[0.5, 0.3, 0.2]);
        assert_eq!(t.statistic, 0.0);
        assert_eq!(t.dof, 2);
        assert!((t.p_value - 1.0).abs() < 1e-12);
        // The two tiny cells merge with each other and then with the smallest big one.
        let t = chi_square_gof(&[90, 6, 2, 2], &[0.9, 0.06, 0.02, 0.02]);
        assert_eq!(t.cells, 2);
        // 2 dof survival at the 5.991 critical value.
        let c = ChiSquared::new(2.0).unwrap();
        assert!((c.sf(5.991464547) - 0.05).abs() < 1e-9);
    }
}
