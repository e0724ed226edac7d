//! Numerical integration: adaptive tanh-sinh quadrature, generalized
//! Gauss-Laguerre rules, Cauchy principal values, and the integrals built
//! on them (overlaps, the derivative connection residual at the origin).
//!
//! Tanh-sinh never samples the endpoints and converges for integrable
//! power-law endpoint singularities, which is the situation at `x = 0`
//! for eigenfunctions with `β < 0`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{factorial, gamma_fn, laguerre, laguerre_derivative};
use crate::spectrum::{Domain, EigenState, Parity};
use crate::tridiag::SymTridiagonal;

/// Upper cutoff for eigenfunction integrals in natural units. Beyond it
/// every integrand carries a factor below `e^{-144}`.
pub const X_MAX: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadControl {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: usize,
}

impl Default for QuadControl {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_depth: 40,
        }
    }
}

impl QuadControl {
    pub fn new(abs_tol: f64, rel_tol: f64, max_depth: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || !(rel_tol > 0.0) {
            return Err(Error::Parameter(format!(
                "quadrature tolerances must be positive (abs {abs_tol}, rel {rel_tol})"
            )));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_depth,
        })
    }

    pub fn tight() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-13,
            max_depth: 40,
        }
    }
}

// Tanh-sinh: abscissae t_k = k h for |t| <= T_MAX, h halved per level.
// At T_MAX the distance to the endpoint is ~e^{-1000} (underflows to 0,
// and such nodes are dropped), so endpoint singularities as strong as
// x^{-0.9} lose nothing to truncation when the endpoint is 0.
const T_MAX: f64 = 6.5;
const MAX_LEVEL: usize = 8;

struct TanhSinh {
    value: f64,
    error: f64,
}

fn tanh_sinh<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> TanhSinh {
    let half = 0.5 * (b - a);
    // Contribution of the pair (+t, -t); distances to the endpoints are
    // formed directly so nodes never round onto a or b.
    let pair = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        let w = half * FRAC_PI_2 * t.cosh() / (cu * cu);
        if w == 0.0 {
            return 0.0;
        }
        let d = half * 2.0 / (1.0 + (2.0 * u).exp());
        let mut s = 0.0;
        for x in [b - d, a + d] {
            if x > a && x < b {
                let fx = f(x);
                if fx.is_finite() {
                    s += fx;
                }
            }
        }
        w * s
    };
    let centre = {
        let fx = f(0.5 * (a + b));
        if fx.is_finite() {
            fx * half * FRAC_PI_2
        } else {
            0.0
        }
    };

    let mut h = 1.0;
    let mut sum = centre;
    let mut k = 1;
    while k as f64 * h <= T_MAX {
        sum += pair(k as f64 * h);
        k += 1;
    }
    let mut value = sum * h;
    let mut error = f64::INFINITY;
    for _ in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= T_MAX {
            sum += pair(k as f64 * h);
            k += 2;
        }
        let next = sum * h;
        error = (next - value).abs();
        value = next;
        if error <= tol {
            break;
        }
    }
    TanhSinh { value, error }
}

fn adaptive_finite<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    ctl: &QuadControl,
    abs_tol: f64,
    depth: usize,
) -> Result<f64> {
    let whole = tanh_sinh(f, a, b, abs_tol);
    if whole.error <= abs_tol.max(ctl.rel_tol * whole.value.abs()) {
        return Ok(whole.value);
    }
    if depth >= ctl.max_depth {
        return Err(Error::DepthExceeded {
            a,
            b,
            depth: ctl.max_depth,
        });
    }
    let mid = 0.5 * (a + b);
    let left = adaptive_finite(f, a, mid, ctl, 0.5 * abs_tol, depth + 1)?;
    let right = adaptive_finite(f, mid, b, ctl, 0.5 * abs_tol, depth + 1)?;
    Ok(left + right)
}

/// `∫_a^b f(x) dx` within `max(abs_tol, rel_tol·|I|)`.
///
/// Endpoint singularities are allowed as long as they are integrable. An
/// infinite limit is folded onto a finite interval with `x = a + t/(1-t)`
/// (or `x = t/(1-t²)` when both are infinite).
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, ctl: QuadControl) -> Result<f64> {
    if a.is_nan() || b.is_nan() {
        return Err(Error::Parameter("integration limits must not be NaN".into()));
    }
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate_adaptive(f, b, a, ctl).map(|v| -v);
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => adaptive_finite(&f, a, b, &ctl, ctl.abs_tol, 0),
        (true, false) => {
            let g = |t: f64| {
                let s = 1.0 - t;
                f(a + t / s) / (s * s)
            };
            adaptive_finite(&g, 0.0, 1.0, &ctl, ctl.abs_tol, 0)
        }
        (false, true) => {
            let g = |t: f64| {
                let s = 1.0 - t;
                f(b - t / s) / (s * s)
            };
            adaptive_finite(&g, 0.0, 1.0, &ctl, ctl.abs_tol, 0)
        }
        (false, false) => {
            let g = |t: f64| {
                let s = 1.0 - t * t;
                f(t / s) * (1.0 + t * t) / (s * s)
            };
            adaptive_finite(&g, -1.0, 1.0, &ctl, ctl.abs_tol, 0)
        }
    }
}

/// Generalized Gauss-Laguerre rule: `∫_0^∞ y^a e^{-y} p(y) dy = Σ w_i p(y_i)`
/// exactly for polynomials `p` of degree `< 2·order`.
///
/// Nodes are eigenvalues of the Jacobi matrix (Sturm bisection, one Newton
/// polish); weights use `w_i = Γ(N+a+1) y_i / (N! (N+1)² L_{N+1}^(a)(y_i)²)`.
pub fn gauss_laguerre(order: usize, a: f64) -> Result<Vec<(f64, f64)>> {
    if order == 0 || !(a > -1.0) {
        return Err(Error::Parameter(format!(
            "Gauss-Laguerre needs order >= 1 and a > -1 (got {order}, {a})"
        )));
    }
    let diag = (0..order).map(|k| 2.0 * k as f64 + a + 1.0).collect();
    let off = (1..order)
        .map(|k| {
            let k = k as f64;
            (k * (k + a)).sqrt()
        })
        .collect();
    let jacobi = SymTridiagonal::new(diag, off)?;
    let scale = gamma_fn(order as f64 + a + 1.0)? / factorial(order);
    let n1 = (order + 1) as f64;
    (0..order)
        .map(|k| {
            let (mut y, _) = jacobi.eigenvalue(k, 1e-15 * (1.0 + 4.0 * order as f64))?;
            let d = laguerre_derivative(order, a, y);
            if d != 0.0 {
                y -= laguerre(order, a, y) / d;
            }
            let l_next = laguerre(order + 1, a, y);
            Ok((y, scale * y / (n1 * n1 * l_next * l_next)))
        })
        .collect()
}

/// Local integrability of `|x|^p` at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Integrability {
    Integrable,
    NonIntegrable,
}

pub fn integrability_class(p: f64) -> Integrability {
    if p > -1.0 {
        Integrability::Integrable
    } else {
        Integrability::NonIntegrable
    }
}

const PV_MAX_HALVINGS: usize = 80;
// Halvings before the divergence test starts; until δ is small against the
// interval the increments follow the shape of f, not its singularity.
const PV_WARMUP: usize = 8;

/// Cauchy principal value `lim_{δ→0} [∫_a^{c-δ} + ∫_{c+δ}^b] f`.
///
/// The symmetric part is folded into `g(t) = f(c+t) + f(c-t)` on `(0, h]`,
/// `h = min(c-a, b-c)`, and the partial integrals `∫_{δ_k}^h g` are
/// followed along `δ_k = 2^{-k} h/2`. Aitken's Δ² removes the geometric
/// tail left by power-law behaviour; three successive estimates within
/// `abs_tol` count as converged. Increments that stop shrinking mean the
/// even part of `f` is not integrable at `c` and yield
/// [`Error::PvDivergent`].
pub fn cauchy_pv<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, c: f64, ctl: QuadControl) -> Result<f64> {
    if !(a < c && c < b) {
        return Err(Error::Parameter(format!(
            "principal value needs a < c < b (got {a}, {c}, {b})"
        )));
    }
    let h = (c - a).min(b - c);
    let inner = QuadControl {
        abs_tol: 0.1 * ctl.abs_tol,
        ..ctl
    };
    let outer = if c - a > h {
        integrate_adaptive(&f, a, c - h, inner)?
    } else if b - c > h {
        integrate_adaptive(&f, c + h, b, inner)?
    } else {
        0.0
    };
    let g = |t: f64| f(c + t) + f(c - t);

    let mut delta = 0.5 * h;
    let mut partial = vec![integrate_adaptive(g, delta, h, inner)?];
    let mut estimates: Vec<f64> = Vec::new();
    let mut stalled = 0;
    for step in 0..PV_MAX_HALVINGS {
        let next_delta = 0.5 * delta;
        let inc = integrate_adaptive(g, next_delta, delta, inner)?;
        delta = next_delta;
        let last = *partial.last().unwrap();
        partial.push(last + inc);

        let m = partial.len();
        let prev_inc = if m >= 3 { partial[m - 2] - partial[m - 3] } else { f64::NAN };
        if step >= PV_WARMUP && inc.abs() > ctl.abs_tol && prev_inc.is_finite() && inc.abs() >= prev_inc.abs() * (1.0 - 1e-9) {
            stalled += 1;
            if stalled >= 4 {
                return Err(Error::PvDivergent { c });
            }
        } else {
            stalled = 0;
        }

        let est = if m >= 3 {
            let d1 = partial[m - 1] - partial[m - 2];
            let d0 = partial[m - 2] - partial[m - 3];
            let denom = d1 - d0;
            if d1.abs() <= f64::EPSILON * partial[m - 1].abs() || denom == 0.0 {
                partial[m - 1]
            } else {
                partial[m - 1] - d1 * d1 / denom
            }
        } else {
            partial[m - 1]
        };
        estimates.push(est);
        let k = estimates.len();
        if k >= 3 && step >= PV_WARMUP && stalled == 0 {
            let w = &estimates[k - 3..];
            let spread = w.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - w.iter().cloned().fold(f64::INFINITY, f64::min);
            if spread < ctl.abs_tol {
                return Ok(outer + est);
            }
        }
    }
    Err(Error::PvDivergent { c })
}

/// `∫ ψ₁ ψ₂` over the shared domain, truncated at [`X_MAX`].
///
/// On the whole line the integral is folded onto `x > 0` using
/// `ψ(-x) = p ψ(x)`, so opposite parities cancel node by node.
pub fn overlap(s1: &EigenState, s2: &EigenState, ctl: QuadControl) -> Result<f64> {
    if s1.domain != s2.domain {
        return Err(Error::DomainMismatch(format!(
            "{:?} vs {:?}",
            s1.domain, s2.domain
        )));
    }
    if s1.alpha != s2.alpha {
        return Err(Error::DomainMismatch(format!(
            "alpha {} vs {}",
            s1.alpha, s2.alpha
        )));
    }
    match s1.domain {
        Domain::HalfLine => integrate_adaptive(|x| s1.psi(x) * s2.psi(x), 0.0, X_MAX, ctl),
        Domain::FullLine => integrate_adaptive(
            |x| s1.psi(x) * s2.psi(x) + s1.psi(-x) * s2.psi(-x),
            0.0,
            X_MAX,
            ctl,
        ),
    }
}

/// `r(ε) = [ψ'(ε) - ψ'(-ε)] - α ∫_{-ε}^{ε} ψ/x² dx` for a whole-line state.
///
/// Odd states take the integral as a principal value; even states need
/// `β > 0` for it to exist at all. At `α = 0` the integral term is absent.
pub fn connection_residual(state: &EigenState, eps: f64) -> Result<f64> {
    if state.domain != Domain::FullLine {
        return Err(Error::DomainMismatch(
            "connection residual is defined for whole-line states".into(),
        ));
    }
    if !(eps > 0.0) {
        return Err(Error::Parameter(format!("eps must be positive, got {eps}")));
    }
    let jump = state.dpsi(eps) - state.dpsi(-eps);
    if state.alpha == 0.0 {
        return Ok(jump);
    }
    let ctl = QuadControl::tight();
    let integral = match state.parity {
        Parity::Odd => cauchy_pv(|x| state.psi(x) / (x * x), -eps, eps, 0.0, ctl)?,
        Parity::Even => {
            // ψ/x² ~ x^{β-1} at the origin
            let exponent = state.beta - 1.0;
            if integrability_class(exponent) == Integrability::NonIntegrable {
                return Err(Error::NonIntegrable { exponent });
            }
            2.0 * integrate_adaptive(|x| state.psi(x) / (x * x), 0.0, eps, ctl)?
        }
        Parity::None => unreachable!("whole-line states carry a parity"),
    };
    Ok(jump - state.alpha * integral)
}
