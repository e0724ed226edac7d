//! Real-argument special functions used by the closed-form solution.
//!
//! Everything here is a pure function of its arguments. Polynomials are
//! evaluated by their three-term recurrences rather than by expanded
//! coefficients, which keeps degree ~50 evaluations free of cancellation.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Stopping rule for the Kummer series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 500,
        }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || max_terms == 0 {
            return Err(Error::Parameter(format!(
                "series control needs rel_tol > 0 and max_terms >= 1 (got {rel_tol}, {max_terms})"
            )));
        }
        Ok(Self { rel_tol, max_terms })
    }
}

const POLE_TOL: f64 = 1e-12;

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// True when `z` sits on a pole of the gamma function (0, -1, -2, ...).
pub fn is_gamma_pole(z: f64) -> bool {
    z <= POLE_TOL && (z - z.round()).abs() <= POLE_TOL
}

/// Gamma function for real arguments.
///
/// Lanczos for `z >= 1/2`, reflection `Γ(z)Γ(1-z) = π / sin(πz)` below.
pub fn gamma_fn(z: f64) -> Result<f64> {
    if is_gamma_pole(z) {
        return Err(Error::Pole(z));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: f64) -> f64 {
    if z < 0.5 {
        PI / ((PI * z).sin() * gamma_unchecked(1.0 - z))
    } else {
        let x = z - 1.0;
        let mut acc = LANCZOS_COEF[0];
        for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        // t^(x+0.5) e^-t split in two to delay overflow for large z.
        let half = t.powf(0.5 * (x + 0.5));
        (2.0 * PI).sqrt() * half * (half * (-t).exp()) * acc
    }
}

/// n! as a float.
pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Kummer's confluent hypergeometric function M(a, b, y) by direct summation.
///
/// Terms follow `t_{j+1} = t_j (a+j) y / ((b+j)(j+1))`. The sum stops once a
/// term falls below `rel_tol * |sum|` while the terms are shrinking; for
/// `a = -n` the series terminates exactly after the `y^n` term.
pub fn kummer_m(a: f64, b: f64, y: f64, ctl: SeriesControl) -> Result<f64> {
    if is_gamma_pole(b) {
        return Err(Error::Parameter(format!(
            "M(a, b, y) undefined for b = {b} (pole of Γ(b))"
        )));
    }
    if !(y >= 0.0) {
        return Err(Error::Parameter(format!("kummer_m requires y >= 0, got {y}")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..ctl.max_terms {
        let jf = j as f64;
        let ratio = (a + jf) * y / ((b + jf) * (jf + 1.0));
        term *= ratio;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() <= ctl.rel_tol * sum.abs() && ratio.abs() < 1.0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        a,
        b,
        y,
        terms: ctl.max_terms,
    })
}

/// Dominant large-`y` term of M(a, b, y) on the positive real axis:
/// `Γ(b)/Γ(a) e^y y^(a-b)`.
///
/// Only the exponentially growing branch is returned; the algebraically
/// decaying companion (whose phase depends on a branch convention) is
/// dropped. The neglected relative correction is `(1-a)(b-a)/y + O(y^-2)`.
pub fn kummer_m_asymptotic(a: f64, b: f64, y: f64) -> Result<f64> {
    if y < 30.0 {
        return Err(Error::Parameter(format!(
            "asymptotic form is only offered for y >= 30, got {y}"
        )));
    }
    if is_gamma_pole(a) {
        return Err(Error::Parameter(format!(
            "a = {a} is a pole of Γ(a); M is a polynomial there"
        )));
    }
    if is_gamma_pole(b) {
        return Err(Error::Parameter(format!("b = {b} is a pole of Γ(b)")));
    }
    let ratio = gamma_unchecked(b) / gamma_unchecked(a);
    Ok(ratio * (y + (a - b) * y.ln()).exp())
}

/// Generalized Laguerre polynomial `L_n^(a)(y)` by upward recurrence.
pub fn laguerre(n: usize, a: f64, y: f64) -> f64 {
    assert!(a > -1.0, "laguerre requires a > -1, got {a}");
    laguerre_any(n, a, y)
}

fn laguerre_any(n: usize, a: f64, y: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - y;
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + a - y) * cur - (jf + a) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dy L_n^(a)(y) = -L_{n-1}^(a+1)(y)`.
pub fn laguerre_derivative(n: usize, a: f64, y: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        -laguerre_any(n - 1, a + 1.0, y)
    }
}

/// Physicists' Hermite polynomial `H_n(xi)`.
pub fn hermite(n: usize, xi: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * xi;
    for j in 1..n {
        let next = 2.0 * xi * cur - 2.0 * j as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}
