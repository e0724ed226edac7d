//! Closed-form bound states.
//!
//! On the half-line (natural units)
//!
//! ```text
//! ψ_n(x) = A_n x^{β+1} e^{-x²/2} L_n^{(β+1/2)}(x²),    ε_n = 2n + β + 3/2,
//! A_n = √(2 n! / Γ(n + β + 3/2)).
//! ```
//!
//! Whole-line states are the even and odd extensions `ψ(-x) = p ψ(x)`,
//! scaled by `1/√2`. For `α ≠ 0` both parities share `β₊` and are
//! degenerate. At `α = 0` the even states come from `β = -1` and the odd
//! ones from `β = 0`, interleaving into the ordinary `n + 1/2` ladder.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{admissible_betas, select_beta, BetaBranch};
use crate::quad::{cauchy_pv, QuadControl, X_MAX};
use crate::specfun::{factorial, gamma_fn, laguerre, laguerre_derivative};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    #[serde(rename = "half")]
    HalfLine,
    #[serde(rename = "full")]
    FullLine,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Domain::HalfLine => "half",
            Domain::FullLine => "full",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    /// Half-line states.
    None,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Odd => -1.0,
            _ => 1.0,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::None => "none",
        })
    }
}

/// One normalized bound state in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenState {
    pub alpha: f64,
    pub n: usize,
    pub beta: f64,
    pub parity: Parity,
    pub energy_eps: f64,
    pub norm_const: f64,
    pub domain: Domain,
}

impl EigenState {
    fn laguerre_param(&self) -> f64 {
        self.beta + 0.5
    }

    // Radial profile for r >= 0 including the normalization constant.
    fn profile(&self, r: f64) -> f64 {
        let s = self.beta + 1.0;
        let y = r * r;
        self.norm_const * r.powf(s) * (-0.5 * y).exp() * laguerre(self.n, self.laguerre_param(), y)
    }

    fn profile_derivative(&self, r: f64) -> f64 {
        let s = self.beta + 1.0;
        let a = self.laguerre_param();
        let y = r * r;
        let l = laguerre(self.n, a, y);
        if r == 0.0 {
            return if s == 0.0 || s > 1.0 {
                0.0
            } else if s == 1.0 {
                self.norm_const * l
            } else {
                f64::INFINITY.copysign(self.norm_const * l)
            };
        }
        let dl = laguerre_derivative(self.n, a, y);
        let lead = if s == 0.0 { 0.0 } else { s * r.powf(s - 1.0) * l };
        self.norm_const * (-0.5 * y).exp() * (lead + r.powf(s + 1.0) * (2.0 * dl - l))
    }

    /// `ψ(x)`. Half-line states vanish for `x < 0`.
    pub fn psi(&self, x: f64) -> f64 {
        match self.domain {
            Domain::HalfLine if x < 0.0 => 0.0,
            Domain::HalfLine => self.profile(x),
            Domain::FullLine if x < 0.0 => self.parity.sign() * self.profile(-x),
            Domain::FullLine => self.profile(x),
        }
    }

    /// `ψ'(x)` from the analytic derivative; at `x = 0` the right-hand limit.
    pub fn dpsi(&self, x: f64) -> f64 {
        match self.domain {
            Domain::HalfLine if x < 0.0 => 0.0,
            Domain::HalfLine => self.profile_derivative(x),
            Domain::FullLine if x < 0.0 => -self.parity.sign() * self.profile_derivative(-x),
            Domain::FullLine => self.profile_derivative(x),
        }
    }
}

/// `ε = 2n + β + 3/2`.
pub fn energy(n: usize, beta: f64) -> f64 {
    2.0 * n as f64 + beta + 1.5
}

/// Half-line normalization `A_n = √(2 n! / Γ(n + β + 3/2))` (λ = 1).
pub fn normalization_constant(n: usize, beta: f64) -> f64 {
    let g = gamma_fn(n as f64 + beta + 1.5).expect("n + β + 3/2 > 0 for admissible β");
    (2.0 * factorial(n) / g).sqrt()
}

pub fn halfline_state(alpha: f64, n: usize, branch: Option<BetaBranch>) -> Result<EigenState> {
    let beta = select_beta(alpha, branch)?;
    Ok(EigenState {
        alpha,
        n,
        beta,
        parity: Parity::None,
        energy_eps: energy(n, beta),
        norm_const: normalization_constant(n, beta),
        domain: Domain::HalfLine,
    })
}

/// Whole-line state of the given parity. At `α = 0` the parity fixes the
/// branch (even ↔ `β = -1`, odd ↔ `β = 0`).
pub fn fullline_state(alpha: f64, n: usize, parity: Parity) -> Result<EigenState> {
    let branch = match (alpha == 0.0, parity) {
        (_, Parity::None) => {
            return Err(Error::Parameter(
                "whole-line states need an even or odd parity".into(),
            ))
        }
        (true, Parity::Even) => Some(BetaBranch::MinusOne),
        (true, Parity::Odd) => Some(BetaBranch::Zero),
        (false, _) => None,
    };
    let beta = select_beta(alpha, branch)?;
    Ok(EigenState {
        alpha,
        n,
        beta,
        parity,
        energy_eps: energy(n, beta),
        norm_const: normalization_constant(n, beta) / std::f64::consts::SQRT_2,
        domain: Domain::FullLine,
    })
}

/// Both parity states at quantum number `n`, even first.
pub fn fullline_states(alpha: f64, n: usize) -> Result<Vec<EigenState>> {
    Ok(vec![
        fullline_state(alpha, n, Parity::Even)?,
        fullline_state(alpha, n, Parity::Odd)?,
    ])
}

/// A distinct energy and how many states share it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub eps: f64,
    pub degeneracy: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub alpha: f64,
    pub domain: Domain,
    pub states: Vec<EigenState>,
    pub levels: Vec<Level>,
    pub spacing: f64,
}

/// Flat row shared by the CSV and JSON encodings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub alpha: f64,
    pub domain: Domain,
    pub n: usize,
    pub parity: Parity,
    pub beta: f64,
    pub eps: f64,
    pub degeneracy: usize,
}

// Energies closer than this are one level.
const LEVEL_TOL: f64 = 1e-12;

impl SpectrumTable {
    pub fn degeneracy_of(&self, eps: f64) -> usize {
        self.levels
            .iter()
            .find(|l| (l.eps - eps).abs() <= LEVEL_TOL * eps.abs().max(1.0))
            .map_or(0, |l| l.degeneracy)
    }

    pub fn rows(&self) -> Vec<SpectrumRow> {
        self.states
            .iter()
            .map(|s| SpectrumRow {
                alpha: self.alpha,
                domain: self.domain,
                n: s.n,
                parity: s.parity,
                beta: s.beta,
                eps: s.energy_eps,
                degeneracy: self.degeneracy_of(s.energy_eps),
            })
            .collect()
    }

    pub fn level_energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.eps).collect()
    }
}

/// States with `n = 0..=n_max` (for every parity on the whole line),
/// sorted by energy and grouped into levels.
///
/// `branch` selects `β` on the half-line at `α = 0` and must be `None`
/// otherwise.
pub fn spectrum_table(
    alpha: f64,
    n_max: usize,
    domain: Domain,
    branch: Option<BetaBranch>,
) -> Result<SpectrumTable> {
    admissible_betas(alpha).require()?;
    let mut states = Vec::new();
    match domain {
        Domain::HalfLine => {
            for n in 0..=n_max {
                states.push(halfline_state(alpha, n, branch)?);
            }
        }
        Domain::FullLine => {
            if branch.is_some() {
                return Err(Error::Parameter(
                    "whole-line tables contain both branches; do not pass one".into(),
                ));
            }
            for n in 0..=n_max {
                states.extend(fullline_states(alpha, n)?);
            }
        }
    }
    states.sort_by(|a, b| a.energy_eps.total_cmp(&b.energy_eps));

    let mut levels: Vec<Level> = Vec::new();
    for s in &states {
        match levels.last_mut() {
            Some(l) if (l.eps - s.energy_eps).abs() <= LEVEL_TOL * s.energy_eps.abs().max(1.0) => {
                l.degeneracy += 1
            }
            _ => levels.push(Level {
                eps: s.energy_eps,
                degeneracy: 1,
            }),
        }
    }
    let spacing = if domain == Domain::FullLine && alpha == 0.0 {
        1.0
    } else {
        2.0
    };
    Ok(SpectrumTable {
        alpha,
        domain,
        states,
        levels,
        spacing,
    })
}

/// Probability density `ρ = |ψ|²` and current `J = (ħ/m) Im(ψ* ψ')`.
/// Eigenfunctions are real, so `ψ* ψ'` has no imaginary part and `J = 0`.
pub fn density_current(state: &EigenState, x: f64) -> (f64, f64) {
    let psi = state.psi(x);
    (psi * psi, 0.0)
}

/// First-order energy shift per unit `α` around the regular oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FirstOrder {
    Slope(f64),
    Divergent,
}

/// `⟨ψ_n | 1/(2x²) | ψ_n⟩` in the `α = 0` whole-line eigenbasis.
///
/// Computed as a principal value about the origin. Odd states vanish
/// linearly there and give a finite slope; even states have `ψ(0) ≠ 0`,
/// the integrand behaves like `1/x²`, and the result is divergent.
pub fn perturbation_first_order(n: usize, parity: Parity) -> Result<FirstOrder> {
    let state = fullline_state(0.0, n, parity)?;
    let f = |x: f64| {
        let p = state.psi(x);
        p * p / (2.0 * x * x)
    };
    match cauchy_pv(f, -X_MAX, X_MAX, 0.0, QuadControl::tight()) {
        Ok(v) => Ok(FirstOrder::Slope(v)),
        Err(Error::PvDivergent { .. }) => Ok(FirstOrder::Divergent),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::beta_plus;
    use crate::quad::{integrate_adaptive, overlap, QuadControl};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    #[test]
    fn energy_examples() {
        assert_eq!(energy(0, 0.0), 1.5);
        assert_eq!(energy(0, 1.0), 2.5);
        assert_relative_eq!(energy(3, -0.276_393_2), 7.223_606_8, max_relative = 1e-12);
    }

    #[test]
    fn normalization_examples() {
        // oracle: ∫_0^∞ y^a e^{-y} L_n^(a)(y)² dy = Γ(n+a+1)/n!
        assert_relative_eq!(normalization_constant(0, 0.0), (4.0 / PI.sqrt()).sqrt(), max_relative = 1e-14);
        assert_relative_eq!(
            normalization_constant(0, 1.0),
            (2.0 / (0.75 * PI.sqrt())).sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn normalization_matches_quadrature() {
        let ctl = QuadControl::default();
        for &alpha in &[-0.2, 0.5, 2.0, 7.3] {
            for n in 0..6 {
                let s = halfline_state(alpha, n, None).unwrap();
                let norm = integrate_adaptive(|x| s.psi(x).powi(2), 0.0, X_MAX, ctl).unwrap();
                assert_relative_eq!(norm, 1.0, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn halfline_examples() {
        let s = halfline_state(2.0, 0, None).unwrap();
        assert_eq!(s.energy_eps, 2.5);
        for x in [0.3, 1.0, 2.2] {
            assert_relative_eq!(s.psi(x), s.norm_const * x * x * (-x * x / 2.0).exp(), max_relative = 1e-14);
        }
        let s = halfline_state(0.0, 0, Some(BetaBranch::Zero)).unwrap();
        assert_eq!(s.energy_eps, 1.5);
        for x in [0.3, 1.0, 2.2] {
            assert_relative_eq!(s.psi(x), s.norm_const * x * (-x * x / 2.0).exp(), max_relative = 1e-14);
        }
        assert!(matches!(halfline_state(-0.3, 0, None), Err(Error::Supercritical { .. })));
        assert!(matches!(halfline_state(0.0, 0, None), Err(Error::BranchRequired)));
    }

    #[test]
    fn fullline_examples() {
        let b = beta_plus(0.5);
        for n in 0..4 {
            let st = fullline_states(0.5, n).unwrap();
            assert_eq!(st[0].parity, Parity::Even);
            assert_eq!(st[1].parity, Parity::Odd);
            assert_eq!(st[0].energy_eps, st[1].energy_eps);
            assert_eq!(st[0].energy_eps, 2.0 * n as f64 + b + 1.5);
        }
        let z = fullline_states(0.0, 0).unwrap();
        assert_eq!((z[0].energy_eps, z[1].energy_eps), (0.5, 1.5));
        let s = fullline_states(0.2, 0).unwrap();
        assert_relative_eq!(s[0].energy_eps, 1.670_820_393_249_937, max_relative = 1e-12);
        assert!(matches!(fullline_states(-0.25, 0), Err(Error::Supercritical { .. })));
        assert!(fullline_state(1.0, 0, Parity::None).is_err());
    }

    #[test]
    fn fullline_parity_symmetry() {
        for parity in [Parity::Even, Parity::Odd] {
            let s = fullline_state(0.7, 2, parity).unwrap();
            for x in [0.1, 0.9, 2.5] {
                assert_eq!(s.psi(-x), parity.sign() * s.psi(x));
                assert_eq!(s.dpsi(-x), -parity.sign() * s.dpsi(x));
            }
        }
    }

    #[test]
    fn alpha_zero_reduces_to_hermite() {
        use crate::specfun::hermite;
        // ψ_k(x) = (2^k k! √π)^{-1/2} e^{-x²/2} H_k(x), up to sign
        for k in 0..8 {
            let parity = if k % 2 == 0 { Parity::Even } else { Parity::Odd };
            let s = fullline_state(0.0, k / 2, parity).unwrap();
            assert_eq!(s.energy_eps, k as f64 + 0.5);
            let norm = (2f64.powi(k as i32) * factorial(k) * PI.sqrt()).sqrt().recip();
            for x in [-1.7f64, -0.4, 0.3, 1.1, 2.9] {
                let h = norm * (-x * x / 2.0).exp() * hermite(k, x);
                assert_relative_eq!(s.psi(x).abs(), h.abs(), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for &(alpha, n) in &[(2.0, 0), (0.5, 3), (-0.2, 2), (-0.24, 1)] {
            let s = halfline_state(alpha, n, None).unwrap();
            for x in [0.2, 0.8, 1.9, 3.1] {
                let h = 1e-6;
                let fd = (s.psi(x + h) - s.psi(x - h)) / (2.0 * h);
                assert_abs_diff_eq!(s.dpsi(x), fd, epsilon = 1e-7 * (1.0 + fd.abs()));
            }
        }
    }

    #[test]
    fn derivative_at_origin() {
        assert_eq!(halfline_state(2.0, 0, None).unwrap().dpsi(0.0), 0.0);
        let odd = halfline_state(0.0, 0, Some(BetaBranch::Zero)).unwrap();
        assert_eq!(odd.dpsi(0.0), odd.norm_const);
        assert_eq!(halfline_state(0.0, 1, Some(BetaBranch::MinusOne)).unwrap().dpsi(0.0), 0.0);
        assert!(halfline_state(-0.2, 0, None).unwrap().dpsi(0.0).is_infinite());
    }

    #[test]
    fn table_examples() {
        let t = spectrum_table(2.0, 3, Domain::HalfLine, None).unwrap();
        assert_eq!(t.level_energies(), vec![2.5, 4.5, 6.5, 8.5]);
        assert_eq!(t.spacing, 2.0);

        let t = spectrum_table(0.0, 3, Domain::FullLine, None).unwrap();
        assert_eq!(&t.level_energies()[..4], &[0.5, 1.5, 2.5, 3.5]);
        assert_eq!(t.spacing, 1.0);
        assert!(t.levels.iter().all(|l| l.degeneracy == 1));

        let t = spectrum_table(1e-6, 1, Domain::FullLine, None).unwrap();
        assert_eq!(t.levels.len(), 2);
        assert!(t.levels.iter().all(|l| l.degeneracy == 2));
        assert!((t.levels[0].eps - 1.5).abs() < 1e-5 && (t.levels[1].eps - 3.5).abs() < 1e-5);
        assert!(t.states.iter().all(|s| (s.energy_eps - 0.5).abs() > 0.9));

        let t = spectrum_table(0.0, 2, Domain::HalfLine, Some(BetaBranch::Zero)).unwrap();
        assert_eq!(t.level_energies(), vec![1.5, 3.5, 5.5]);
        assert_eq!(t.spacing, 2.0);
        assert!(spectrum_table(0.0, 2, Domain::FullLine, Some(BetaBranch::Zero)).is_err());
        assert!(matches!(spectrum_table(-0.3, 2, Domain::HalfLine, None), Err(Error::Supercritical { .. })));
    }

    #[test]
    fn density_and_current() {
        let s = halfline_state(2.0, 0, None).unwrap();
        let (rho, j) = density_current(&s, 1.0);
        assert_relative_eq!(rho, s.norm_const.powi(2) * (-1.0f64).exp(), max_relative = 1e-14);
        assert_eq!(j, 0.0);
        for st in fullline_states(-0.2, 1).unwrap() {
            for x in [-2.0, -0.1, 0.0, 0.4] {
                assert_eq!(density_current(&st, x).1, 0.0);
            }
            let total = integrate_adaptive(|x| density_current(&st, x).0, -X_MAX, 0.0, QuadControl::default()).unwrap()
                + integrate_adaptive(|x| density_current(&st, x).0, 0.0, X_MAX, QuadControl::default()).unwrap();
            assert_relative_eq!(total, 1.0, max_relative = 1e-8);
        }
    }

    #[test]
    fn perturbation_examples() {
        match perturbation_first_order(0, Parity::Odd).unwrap() {
            FirstOrder::Slope(s) => assert_abs_diff_eq!(s, 1.0, epsilon = 1e-6),
            FirstOrder::Divergent => panic!("odd ground state must be finite"),
        }
        assert_eq!(perturbation_first_order(0, Parity::Even).unwrap(), FirstOrder::Divergent);
        let mut prev = f64::INFINITY;
        for k in 2..8 {
            let d = 10f64.powi(-k);
            let slope = (beta_plus(d) - beta_plus(0.0)) / d;
            assert!((slope - 1.0).abs() < prev);
            prev = (slope - 1.0).abs();
        }
        assert!(prev < 1e-6);
    }

    #[test]
    fn rows_share_field_names() {
        let t = spectrum_table(0.5, 1, Domain::FullLine, None).unwrap();
        let rows = t.rows();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.degeneracy == 2));
        let json = serde_json::to_value(&rows[0]).unwrap();
        let keys: Vec<_> = json.as_object().unwrap().keys().cloned().collect();
        for k in ["alpha", "domain", "n", "parity", "beta", "eps", "degeneracy"] {
            assert!(keys.contains(&k.to_string()));
        }
        assert_eq!(json["domain"], "full");
    }

    #[test]
    fn orthonormal_half_line_family() {
        let ctl = QuadControl::default();
        let states: Vec<_> = (0..6).map(|n| halfline_state(0.5, n, None).unwrap()).collect();
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let g = overlap(a, b, ctl).unwrap();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(g, expect, epsilon = 1e-8);
            }
        }
    }
}
