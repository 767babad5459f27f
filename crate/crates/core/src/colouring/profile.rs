//! Generating polynomials over colour-class-size profiles.

use crate::scalar::Tally;

/// Homogeneous polynomial `Σ c_a x_0^{a_0} ⋯ x_{k-1}^{a_{k-1}}` of fixed
/// degree, stored densely over `(a_0, …, a_{k-2})`; the last exponent is
/// implied by the degree.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePoly<T> {
    k: usize,
    degree: usize,
    coeffs: Vec<T>,
}

impl<T: Tally> ProfilePoly<T> {
    /// The constant polynomial 1 (degree 0).
    pub fn one(k: usize) -> Self {
        Self {
            k,
            degree: 0,
            coeffs: vec![T::one()],
        }
    }

    pub(crate) fn from_dense(k: usize, degree: usize, coeffs: Vec<T>) -> Self {
        debug_assert_eq!(coeffs.len(), dense_len(k, degree));
        Self { k, degree, coeffs }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn index(&self, profile: &[usize]) -> Option<usize> {
        if profile.len() != self.k || profile.iter().sum::<usize>() != self.degree {
            return None;
        }
        let base = self.degree + 1;
        let mut idx = 0;
        let mut stride = 1;
        for &a in &profile[..self.k.saturating_sub(1)] {
            idx += a * stride;
            stride *= base;
        }
        Some(idx)
    }

    /// Coefficient of the given full profile (zero if absent).
    pub fn coeff(&self, profile: &[usize]) -> T {
        self.index(profile)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_else(T::zero)
    }

    /// Nonzero terms as `(profile, coefficient)`.
    pub fn terms(&self) -> Vec<(Vec<usize>, &T)> {
        let base = self.degree + 1;
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut rest = i;
            let mut profile = Vec::with_capacity(self.k);
            let mut used = 0;
            for _ in 0..self.k.saturating_sub(1) {
                let a = rest % base;
                rest /= base;
                used += a;
                profile.push(a);
            }
            if self.k > 0 {
                profile.push(self.degree - used);
            }
            out.push((profile, c));
        }
        out
    }

    /// Sum of all coefficients (the total number of colourings).
    pub fn total(&self) -> T {
        let mut acc = T::zero();
        for c in &self.coeffs {
            acc.add_assign_ref(c);
        }
        acc
    }

    /// Offsets of the nonzero terms re-expressed in base `base`.
    fn offsets_in(&self, base: usize) -> Vec<(usize, &T)> {
        let own = self.degree + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mut rest = i;
                let mut idx = 0;
                let mut stride = 1;
                for _ in 0..self.k.saturating_sub(1) {
                    idx += (rest % own) * stride;
                    rest /= own;
                    stride *= base;
                }
                (idx, c)
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k, "profile polynomials over different k");
        let degree = self.degree + other.degree;
        let base = degree + 1;
        let mut coeffs = vec![T::zero(); dense_len(self.k, degree)];
        let a = self.offsets_in(base);
        let b = other.offsets_in(base);
        for (ia, ca) in &a {
            for (ib, cb) in &b {
                coeffs[ia + ib].add_assign_ref(&ca.mul_ref(cb));
            }
        }
        Self {
            k: self.k,
            degree,
            coeffs,
        }
    }
}

pub(crate) fn dense_len(k: usize, degree: usize) -> usize {
    (degree + 1).pow(k.saturating_sub(1) as u32)
}
