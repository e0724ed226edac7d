//! Sturm-sequence bisection for symmetric tridiagonal matrices.

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix stored as diagonal and sub-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
    off_sq: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Parameter(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal",
                diag.len(),
                off.len()
            )));
        }
        let off_sq = off.iter().map(|e| e * e).collect();
        Ok(Self { diag, off, off_sq })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of `T - xI = LDLᵀ`).
    pub fn count_below(&self, x: f64) -> usize {
        const PIVOT_GUARD: f64 = 1e-300;
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let q_safe = if q.abs() < PIVOT_GUARD {
                PIVOT_GUARD.copysign(q)
            } else {
                q
            };
            q = (self.diag[i] - x) - self.off_sq[i - 1] / q_safe;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection.
    ///
    /// Returns the midpoint and half-width of the final bracket.
    pub fn eigenvalue(&self, k: usize, abs_tol: f64) -> Result<(f64, f64)> {
        if k >= self.len() {
            return Err(Error::Parameter(format!(
                "eigenvalue index {k} out of range for order {}",
                self.len()
            )));
        }
        let (lo0, hi0) = self.gershgorin();
        let pad = 1e-12 * (lo0.abs() + hi0.abs()) + f64::MIN_POSITIVE;
        let (mut lo, mut hi) = (lo0 - pad, hi0 + pad);
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 2.0 * abs_tol || mid <= lo || mid >= hi {
                return Ok((mid, 0.5 * (hi - lo)));
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::Convergence(format!(
            "bisection for eigenvalue {k} did not collapse (bracket [{lo}, {hi}])"
        )))
    }

    /// The `k` smallest eigenvalues, ascending, each with its bracket half-width.
    pub fn lowest(&self, k: usize, abs_tol: f64) -> Result<Vec<(f64, f64)>> {
        (0..k).map(|i| self.eigenvalue(i, abs_tol)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn second_difference_matrix_has_known_spectrum() {
        // tridiag(-1, 2, -1) of order n: 2 - 2cos(kπ/(n+1))
        let n = 50;
        let t = SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap();
        let got = t.lowest(n, 1e-14).unwrap();
        for (k, (v, hw)) in got.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * PI / (n + 1) as f64).cos();
            assert_abs_diff_eq!(*v, exact, epsilon = 1e-12);
            assert!(*hw <= 1e-13);
        }
    }

    #[test]
    fn count_is_monotone() {
        let t = SymTridiagonal::new(vec![1.0, 3.0, -2.0, 0.5], vec![0.3, -1.1, 0.7]).unwrap();
        let (lo, hi) = t.gershgorin();
        assert_eq!(t.count_below(lo - 1.0), 0);
        assert_eq!(t.count_below(hi + 1.0), 4);
        let mut prev = 0;
        for i in 0..=400 {
            let x = lo + (hi - lo) * i as f64 / 400.0;
            let c = t.count_below(x);
            assert!(c >= prev);
            prev = c;
        }
    }

    #[test]
    fn two_by_two_closed_form() {
        let t = SymTridiagonal::new(vec![1.0, 4.0], vec![2.0]).unwrap();
        let disc = (9.0f64 / 4.0 + 4.0).sqrt();
        let ev = t.lowest(2, 1e-14).unwrap();
        assert_abs_diff_eq!(ev[0].0, 2.5 - disc, epsilon = 1e-12);
        assert_abs_diff_eq!(ev[1].0, 2.5 + disc, epsilon = 1e-12);
    }

    #[test]
    fn shape_and_index_errors() {
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(SymTridiagonal::new(vec![], vec![]).is_err());
        let t = SymTridiagonal::new(vec![1.0], vec![]).unwrap();
        assert!(t.eigenvalue(1, 1e-12).is_err());
        assert_abs_diff_eq!(t.eigenvalue(0, 1e-14).unwrap().0, 1.0, epsilon = 1e-13);
    }
}
