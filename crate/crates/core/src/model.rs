//! Physical parameters, near-origin (indicial) analysis and the
//! admissibility rule for the exponent `β` of the leading power `x^(β+1)`.
//!
//! Internally everything runs in natural units `ħ = m = ω = 1`, where
//! `λ = mω/ħ = 1`, `ξ = √λ x` and energies are `ε = E/(ħω)`.
//! [`OscillatorSpec`] only rescales at the boundaries.
//!
//! Square integrability alone would tolerate `Re β > -3/2`. The stricter
//! requirement `Re β > -1/2` (or `β = -1` when `α = 0`) keeps the kinetic
//! and potential energy operators Hermitian, and is the only rule
//! implemented. At `α = -1/4` the double root `β = -1/2` gives the
//! logarithmic pair `√x, √x ln x`; it fails the strict bound and is treated
//! as supercritical.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrability_class, Integrability};

/// Critical coupling: bound states exist only for `alpha > ALPHA_CRITICAL`.
pub const ALPHA_CRITICAL: f64 = -0.25;

/// Tolerance used when matching a caller-supplied exponent to an admissible one.
pub const BETA_MATCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorSpec {
    pub mass: f64,
    pub omega: f64,
    pub hbar: f64,
    pub alpha: f64,
}

impl OscillatorSpec {
    pub fn new(mass: f64, omega: f64, hbar: f64, alpha: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("omega", omega), ("hbar", hbar)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Parameter(format!("{name} must be positive, got {v}")));
            }
        }
        if !alpha.is_finite() {
            return Err(Error::Parameter(format!("alpha must be finite, got {alpha}")));
        }
        Ok(Self {
            mass,
            omega,
            hbar,
            alpha,
        })
    }

    /// `ħ = m = ω = 1`.
    pub fn natural(alpha: f64) -> Self {
        Self {
            mass: 1.0,
            omega: 1.0,
            hbar: 1.0,
            alpha,
        }
    }

    /// `λ = mω/ħ`, inverse squared oscillator length.
    pub fn lambda(&self) -> f64 {
        self.mass * self.omega / self.hbar
    }

    /// `k² = 2mE/ħ²`.
    pub fn k_squared(&self, energy: f64) -> f64 {
        2.0 * self.mass * energy / (self.hbar * self.hbar)
    }

    pub fn energy_scale(&self) -> f64 {
        self.hbar * self.omega
    }

    pub fn energy_from_eps(&self, eps: f64) -> f64 {
        eps * self.energy_scale()
    }

    pub fn eps_from_energy(&self, energy: f64) -> f64 {
        energy / self.energy_scale()
    }

    /// Physical coordinate for the dimensionless `ξ = √λ x`.
    pub fn x_from_xi(&self, xi: f64) -> f64 {
        xi / self.lambda().sqrt()
    }

    pub fn xi_from_x(&self, x: f64) -> f64 {
        x * self.lambda().sqrt()
    }

    pub fn is_natural(&self) -> bool {
        self.mass == 1.0 && self.omega == 1.0 && self.hbar == 1.0
    }
}

/// Roots of the indicial equation `β(β+1) = α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum IndicialRoots {
    Real { plus: f64, minus: f64 },
    /// `α < -1/4`: `β = -1/2 ± i·imag`.
    Complex { real: f64, imag: f64 },
}

impl IndicialRoots {
    pub fn is_complex(&self) -> bool {
        matches!(self, IndicialRoots::Complex { .. })
    }

    pub fn plus(&self) -> Option<f64> {
        match *self {
            IndicialRoots::Real { plus, .. } => Some(plus),
            IndicialRoots::Complex { .. } => None,
        }
    }

    pub fn minus(&self) -> Option<f64> {
        match *self {
            IndicialRoots::Real { minus, .. } => Some(minus),
            IndicialRoots::Complex { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaSolution {
    pub alpha: f64,
    pub roots: IndicialRoots,
    /// Exponents that survive the hermiticity rule, ascending.
    pub admissible: Vec<f64>,
    pub supercritical: bool,
}

impl BetaSolution {
    /// Errors with [`Error::Supercritical`] when no admissible exponent exists.
    pub fn require(self) -> Result<Self> {
        if self.supercritical {
            Err(Error::Supercritical { alpha: self.alpha })
        } else {
            Ok(self)
        }
    }

    pub fn contains(&self, beta: f64) -> bool {
        self.admissible
            .iter()
            .any(|&b| (b - beta).abs() <= BETA_MATCH_TOL)
    }
}

/// Which exponent to use at `α = 0`, where both `β = -1` and `β = 0` are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BetaBranch {
    /// `β = -1`: `ψ(0) ≠ 0`, even Hermite states.
    MinusOne,
    /// `β = 0`: `ψ(0) = 0`, odd Hermite states.
    Zero,
}

impl BetaBranch {
    pub fn beta(self) -> f64 {
        match self {
            BetaBranch::MinusOne => -1.0,
            BetaBranch::Zero => 0.0,
        }
    }
}

/// `β₊ = -1/2 + √(1/4 + α)` written without the cancellation near `α = 0`.
pub fn beta_plus(alpha: f64) -> f64 {
    alpha / (0.5 + (0.25 + alpha).sqrt())
}

pub fn indicial_roots(alpha: f64) -> IndicialRoots {
    let disc = 0.25 + alpha;
    if disc < 0.0 {
        IndicialRoots::Complex {
            real: -0.5,
            imag: (-disc).sqrt(),
        }
    } else {
        let plus = beta_plus(alpha);
        IndicialRoots::Real {
            plus,
            minus: -1.0 - plus,
        }
    }
}

/// Applies the hermiticity rule: keep `β = -1` or `β > -1/2`.
pub fn admissible_betas(alpha: f64) -> BetaSolution {
    let roots = indicial_roots(alpha);
    let supercritical = alpha <= ALPHA_CRITICAL;
    let admissible = if supercritical {
        Vec::new()
    } else if alpha == 0.0 {
        vec![-1.0, 0.0]
    } else {
        // The boundary term of ⟨φ|Hψ⟩ - ⟨Hφ|ψ⟩ goes like x^{2β}; a root is kept
        // only when that power is integrable at the origin.
        let plus = beta_plus(alpha);
        [plus, -1.0 - plus]
            .into_iter()
            .filter(|&b| integrability_class(2.0 * b) == Integrability::Integrable)
            .collect()
    };
    BetaSolution {
        alpha,
        roots,
        admissible,
        supercritical,
    }
}

/// Resolves the exponent used for a bound-state family.
///
/// `α ≠ 0` takes `β₊` and rejects an explicit branch; `α = 0` requires one.
pub fn select_beta(alpha: f64, branch: Option<BetaBranch>) -> Result<f64> {
    let sol = admissible_betas(alpha).require()?;
    match (alpha == 0.0, branch) {
        (true, Some(b)) => Ok(b.beta()),
        (true, None) => Err(Error::BranchRequired),
        (false, None) => Ok(sol.admissible[0]),
        (false, Some(_)) => Err(Error::Parameter(format!(
            "a beta branch only applies at alpha = 0 (got alpha = {alpha})"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OriginValue {
    Zero,
    FiniteNonzero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OriginSlope {
    Zero,
    FiniteNonzero,
    Infinite,
}

/// Behaviour of `ψ` and `ψ'` as `x → 0⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryClass {
    pub psi_at_origin: OriginValue,
    pub dpsi_at_origin: OriginSlope,
}

pub fn classify_boundary(alpha: f64, beta: f64) -> Result<BoundaryClass> {
    if !admissible_betas(alpha).contains(beta) {
        return Err(Error::Inadmissible { alpha, beta });
    }
    let class = if alpha == 0.0 {
        if beta < -0.5 {
            // β = -1: ψ ~ const, ψ' ~ x
            BoundaryClass {
                psi_at_origin: OriginValue::FiniteNonzero,
                dpsi_at_origin: OriginSlope::Zero,
            }
        } else {
            BoundaryClass {
                psi_at_origin: OriginValue::Zero,
                dpsi_at_origin: OriginSlope::FiniteNonzero,
            }
        }
    } else if alpha > 0.0 {
        BoundaryClass {
            psi_at_origin: OriginValue::Zero,
            dpsi_at_origin: OriginSlope::Zero,
        }
    } else {
        BoundaryClass {
            psi_at_origin: OriginValue::Zero,
            dpsi_at_origin: OriginSlope::Infinite,
        }
    };
    Ok(class)
}

/// `V(x) = ½mω²x² + ħ²α/(2mx²)`.
pub fn potential_value(spec: &OscillatorSpec, x: f64) -> Result<f64> {
    let harmonic = 0.5 * spec.mass * spec.omega * spec.omega * x * x;
    if spec.alpha == 0.0 {
        return Ok(harmonic);
    }
    if x == 0.0 {
        return Err(Error::SingularPoint { alpha: spec.alpha });
    }
    Ok(harmonic + spec.hbar * spec.hbar * spec.alpha / (2.0 * spec.mass * x * x))
}

/// Effective coupling for the radial problem with orbital quantum number `l`.
pub fn map_radial(alpha: f64, l: u32) -> f64 {
    let l = l as f64;
    alpha + l * (l + 1.0)
}
