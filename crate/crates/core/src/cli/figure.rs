//! Data behind the four figures, in long format.

use clap::Args;

use crate::error::{Error, Result};
use crate::model::{potential_value, BetaBranch, OscillatorSpec};
use crate::spectrum::{energy, fullline_state, halfline_state, Parity};

use super::{linspace, scale_energy, scale_length, Cell, OutputArgs, Table};

/// Couplings of the ground-state profiles in figure 3.
pub const FIGURE3_ALPHAS: [f64; 4] = [-0.249, -0.2, 0.2, 3.0];

const FIGURE1_ALPHAS: [f64; 3] = [-0.2, 0.0, 0.2];

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    /// Figure number, 1 to 4.
    pub id: u8,
    /// Lower end of the coupling sweep (figures 2 and 4).
    #[arg(long, default_value_t = -0.249, allow_hyphen_values = true)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 0.25, allow_hyphen_values = true)]
    pub alpha_max: f64,
    #[arg(long, default_value_t = 200)]
    pub alpha_points: usize,
    /// Highest quantum number drawn in figures 2 and 4.
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    /// Outer end of the coordinate range (figures 1 and 3).
    #[arg(long)]
    pub xi_max: Option<f64>,
    #[arg(long)]
    pub xi_points: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl FigureArgs {
    pub fn new(id: u8) -> Self {
        Self {
            id,
            alpha_min: -0.249,
            alpha_max: 0.25,
            alpha_points: 200,
            n_max: 4,
            xi_max: None,
            xi_points: None,
            output: OutputArgs::default(),
        }
    }
}

/// The coupling sweep for figures 2 and 4. Every point must be above the
/// critical coupling.
pub fn alpha_grid(args: &FigureArgs) -> Result<Vec<f64>> {
    if !(args.alpha_min < args.alpha_max) || args.alpha_points < 2 {
        return Err(Error::Parameter(format!(
            "need alpha_min < alpha_max and at least 2 points (got {}, {}, {})",
            args.alpha_min, args.alpha_max, args.alpha_points
        )));
    }
    Ok(linspace(args.alpha_min, args.alpha_max, args.alpha_points))
}

pub fn cmd_figure(args: &FigureArgs) -> Result<Table> {
    // units only rescale columns; the coupling is irrelevant to the scale
    let spec = args.output.spec(1.0)?;
    match args.id {
        1 => figure1(args, &spec),
        2 => figure2(args, &spec),
        3 => figure3(args, &spec),
        4 => figure4(args, &spec),
        id => Err(Error::Parameter(format!("figure id must be 1, 2, 3 or 4 (got {id})"))),
    }
}

// V/ħω against ξ for three couplings; the origin is skipped when α ≠ 0.
fn figure1(args: &FigureArgs, spec: &OscillatorSpec) -> Result<Table> {
    let xi_max = args.xi_max.unwrap_or(3.0);
    let points = args.xi_points.unwrap_or(301);
    let mut t = Table::new(&["alpha", "x", "v"]);
    for alpha in FIGURE1_ALPHAS {
        let natural = OscillatorSpec::natural(alpha);
        for x in linspace(0.0, xi_max, points) {
            if x == 0.0 && alpha != 0.0 {
                continue;
            }
            t.push(vec![alpha.into(), x.into(), potential_value(&natural, x)?.into()]);
        }
    }
    scale_length(&mut t, spec, "x", "x_phys");
    scale_energy(&mut t, spec, "v", "v_phys");
    Ok(t)
}

fn curve_row(alpha: f64, n: usize, parity: Parity, eps: f64, kind: &str) -> Vec<Cell> {
    vec![kind.into(), alpha.into(), n.into(), parity.to_string().into(), eps.into()]
}

// Half-line ε_n(α) curves plus the Dirichlet (odd) oscillator at α = 0.
fn figure2(args: &FigureArgs, spec: &OscillatorSpec) -> Result<Table> {
    let mut t = Table::new(&["kind", "alpha", "n", "parity", "eps"]);
    for alpha in alpha_grid(args)? {
        let branch = (alpha == 0.0).then_some(BetaBranch::Zero);
        for n in 0..=args.n_max {
            let s = halfline_state(alpha, n, branch)?;
            t.push(curve_row(alpha, n, Parity::None, s.energy_eps, "curve"));
        }
    }
    for n in 0..=args.n_max {
        t.push(curve_row(0.0, n, Parity::Odd, energy(n, 0.0), "marker"));
    }
    scale_energy(&mut t, spec, "eps", "energy");
    Ok(t)
}

// Normalized half-line ground states.
fn figure3(args: &FigureArgs, spec: &OscillatorSpec) -> Result<Table> {
    let xi_max = args.xi_max.unwrap_or(4.0);
    let points = args.xi_points.unwrap_or(401);
    let mut t = Table::new(&["alpha", "xi", "psi", "rho"]);
    for alpha in FIGURE3_ALPHAS {
        let s = halfline_state(alpha, 0, None)?;
        for xi in linspace(0.0, xi_max, points) {
            let psi = s.psi(xi);
            t.push(vec![alpha.into(), xi.into(), psi.into(), (psi * psi).into()]);
        }
    }
    scale_length(&mut t, spec, "xi", "x");
    Ok(t)
}

// Whole-line curves (both parities, degenerate for α ≠ 0) plus the regular
// oscillator at α = 0: odd and even markers interleaving into n + 1/2.
fn figure4(args: &FigureArgs, spec: &OscillatorSpec) -> Result<Table> {
    let mut t = Table::new(&["kind", "alpha", "n", "parity", "eps"]);
    for alpha in alpha_grid(args)? {
        if alpha == 0.0 {
            continue;
        }
        for n in 0..=args.n_max {
            for parity in [Parity::Even, Parity::Odd] {
                let s = fullline_state(alpha, n, parity)?;
                t.push(curve_row(alpha, n, parity, s.energy_eps, "curve"));
            }
        }
    }
    let mut markers = Vec::new();
    for n in 0..=args.n_max {
        for parity in [Parity::Even, Parity::Odd] {
            markers.push(fullline_state(0.0, n, parity)?);
        }
    }
    markers.sort_by(|a, b| a.energy_eps.total_cmp(&b.energy_eps));
    for s in markers {
        t.push(curve_row(0.0, s.n, s.parity, s.energy_eps, "marker"));
    }
    scale_energy(&mut t, spec, "eps", "energy");
    Ok(t)
}
