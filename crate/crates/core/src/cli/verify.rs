//! Verification suites: each check compares a computed value with its
//! expected value under a tolerance.

use std::io::{self, Write};
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{admissible_betas, beta_plus, BetaBranch, ALPHA_CRITICAL};
use crate::oracle::{fd_eigen, fd_spectrum, shoot_eigen, shoot_spectrum, GridSpec};
use crate::quad::{integrability_class, overlap, Integrability, QuadControl};
use crate::spectrum::{
    fullline_state, halfline_state, perturbation_first_order, spectrum_table, Domain, EigenState, FirstOrder,
    Parity,
};

use super::{Cell, Format, OutputArgs, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Hermiticity,
    Orthonormality,
    Oracle,
    Degeneracy,
    Perturbation,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Hermiticity,
        Suite::Orthonormality,
        Suite::Oracle,
        Suite::Degeneracy,
        Suite::Perturbation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Hermiticity => "hermiticity",
            Suite::Orthonormality => "orthonormality",
            Suite::Oracle => "oracle",
            Suite::Degeneracy => "degeneracy",
            Suite::Perturbation => "perturbation",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Restrict the oracle, orthonormality and degeneracy suites to one coupling.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Override the main tolerance of each suite.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl VerifyArgs {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            alpha: None,
            tol: None,
            output: OutputArgs::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    /// Measured quantity; `NaN` (JSON `null`) when the outcome is categorical.
    pub value: f64,
    pub expected: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<String>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub elapsed_seconds: f64,
}

impl VerifyReport {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&["suite", "name", "value", "expected", "tol", "pass", "detail"]);
        for c in &self.checks {
            t.push(vec![
                c.suite.as_str().into(),
                c.name.as_str().into(),
                c.value.into(),
                c.expected.into(),
                c.tol.into(),
                c.pass.into(),
                Cell::Text(c.detail.clone().unwrap_or_default()),
            ]);
        }
        t
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.table().write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
        }
    }
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn close(&mut self, name: String, value: f64, expected: f64, tol: f64) {
        let pass = (value - expected).abs() <= tol;
        self.push(name, value, expected, tol, pass, None);
    }

    fn below(&mut self, name: String, value: f64, tol: f64) {
        self.push(name, value, 0.0, tol, value <= tol, None);
    }

    fn flag(&mut self, name: String, pass: bool, detail: String) {
        self.push(name, f64::NAN, f64::NAN, 0.0, pass, Some(detail));
    }

    fn error(&mut self, name: String, e: &Error) {
        self.flag(name, false, e.to_string());
    }

    fn push(&mut self, name: String, value: f64, expected: f64, tol: f64, pass: bool, detail: Option<String>) {
        self.checks.push(Check {
            suite: self.suite.name().to_string(),
            name,
            value,
            expected,
            tol,
            pass,
            detail,
        });
    }
}

/// Runs the selected suites. Failed checks are reported, not returned as errors.
pub fn cmd_verify(args: &VerifyArgs) -> Result<VerifyReport> {
    if let Some(tol) = args.tol {
        if !(tol >= 0.0) {
            return Err(Error::Parameter(format!("--tol must be non-negative, got {tol}")));
        }
    }
    if let Some(alpha) = args.alpha {
        admissible_betas(alpha).require()?;
    }
    let start = Instant::now();
    let suites: Vec<Suite> = match args.suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut checks = Vec::new();
    for &suite in &suites {
        let mut rec = Recorder {
            suite,
            checks: Vec::new(),
        };
        match suite {
            Suite::Hermiticity => hermiticity(&mut rec),
            Suite::Orthonormality => orthonormality(&mut rec, args),
            Suite::Oracle => oracle(&mut rec, args),
            Suite::Degeneracy => degeneracy(&mut rec, args),
            Suite::Perturbation => perturbation(&mut rec, args),
            Suite::All => unreachable!(),
        }
        checks.extend(rec.checks);
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        suites: suites.iter().map(|s| s.name().to_string()).collect(),
        checks,
        pass,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

fn couplings(args: &VerifyArgs, defaults: &[f64]) -> Vec<f64> {
    args.alpha.map_or_else(|| defaults.to_vec(), |a| vec![a])
}

fn hermiticity(rec: &mut Recorder) {
    // β₋ must be excluded through the integrability of x^{2β}, on both
    // sides of α = 0.
    let grid: Vec<f64> = (1..=20)
        .map(|k| ALPHA_CRITICAL * k as f64 / 21.0)
        .chain((1..=20).map(|k| 0.75 * k as f64 / 21.0))
        .collect();
    let mut bad = Vec::new();
    for &alpha in &grid {
        let sol = admissible_betas(alpha);
        let plus = beta_plus(alpha);
        let minus = -1.0 - plus;
        let ok = sol.admissible == [plus]
            && integrability_class(2.0 * minus) == Integrability::NonIntegrable
            && integrability_class(2.0 * plus) == Integrability::Integrable;
        if !ok {
            bad.push(alpha);
        }
    }
    rec.flag(
        "beta_minus rejected on (-1/4, 0) and (0, 3/4)".into(),
        bad.is_empty(),
        format!("{} couplings, failures {bad:?}", grid.len()),
    );
    let zero = admissible_betas(0.0);
    rec.flag(
        "alpha = 0 keeps both exponents".into(),
        zero.admissible == [-1.0, 0.0],
        format!("{:?}", zero.admissible),
    );

    for alpha in [ALPHA_CRITICAL, -0.3, -1.0] {
        let entry_points: [(&str, bool); 5] = [
            ("admissible_betas", admissible_betas(alpha).require().is_err()),
            ("spectrum_table", supercritical(spectrum_table(alpha, 1, Domain::HalfLine, None))),
            ("halfline_state", supercritical(halfline_state(alpha, 0, None))),
            ("fd_eigen", supercritical(fd_eigen(alpha, GridSpec::default(), 1))),
            ("shoot_eigen", supercritical(shoot_eigen(alpha, 0))),
        ];
        let failing: Vec<&str> = entry_points.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
        rec.flag(
            format!("alpha = {alpha} is supercritical everywhere"),
            failing.is_empty(),
            format!("not rejected by {failing:?}"),
        );
    }

    // The boundary term ψψ' vanishes at the origin like x^{2β+1}; with β₋
    // the exponent would be negative.
    for alpha in [-0.249, -0.2, 0.5, 2.0] {
        let name = format!("boundary term decay exponent alpha = {alpha}");
        match halfline_state(alpha, 0, None) {
            Ok(s) => {
                let w = |x: f64| (s.psi(x) * s.dpsi(x)).abs();
                let (x1, x2) = (1e-10, 1e-8);
                let slope = (w(x2) / w(x1)).ln() / (x2 / x1).ln();
                rec.close(name, slope, 2.0 * s.beta + 1.0, 1e-6);
            }
            Err(e) => rec.error(name, &e),
        }
    }
}

fn supercritical<T>(r: Result<T>) -> bool {
    matches!(r, Err(Error::Supercritical { .. }))
}

fn first_states(alpha: f64, domain: Domain, count: usize) -> Result<Vec<EigenState>> {
    match domain {
        Domain::HalfLine => {
            let branch = (alpha == 0.0).then_some(BetaBranch::Zero);
            (0..count).map(|n| halfline_state(alpha, n, branch)).collect()
        }
        Domain::FullLine => {
            let mut states = Vec::new();
            for n in 0..count {
                states.push(fullline_state(alpha, n, Parity::Even)?);
                states.push(fullline_state(alpha, n, Parity::Odd)?);
            }
            states.sort_by(|a, b| a.energy_eps.total_cmp(&b.energy_eps));
            states.truncate(count);
            Ok(states)
        }
    }
}

fn orthonormality(rec: &mut Recorder, args: &VerifyArgs) {
    let tol = args.tol.unwrap_or(1e-8);
    let ctl = QuadControl::tight();
    for alpha in couplings(args, &[-0.2, 0.0, 0.5, 2.0]) {
        for domain in [Domain::HalfLine, Domain::FullLine] {
            let label = format!("alpha = {alpha} {domain}");
            let states = match first_states(alpha, domain, 6) {
                Ok(s) => s,
                Err(e) => {
                    rec.error(format!("gram {label}"), &e);
                    continue;
                }
            };
            let mut gram_err: f64 = 0.0;
            let mut norm_err: f64 = 0.0;
            let mut failure = None;
            for i in 0..states.len() {
                for j in 0..=i {
                    match overlap(&states[i], &states[j], ctl) {
                        Ok(g) => {
                            let want = if i == j { 1.0 } else { 0.0 };
                            gram_err = gram_err.max((g - want).abs());
                            if i == j {
                                // constant fixed by quadrature: A / √⟨ψ|ψ⟩
                                norm_err = norm_err.max((1.0 / g.sqrt() - 1.0).abs());
                            }
                        }
                        Err(e) => failure = Some(e),
                    }
                }
            }
            match failure {
                Some(e) => rec.error(format!("gram {label}"), &e),
                None => {
                    rec.below(format!("gram {label}"), gram_err, tol);
                    rec.below(format!("normalization constant {label}"), norm_err, tol);
                }
            }
        }
    }
}

const FD_TOL: f64 = 5e-3;
const SPACING_TOL: f64 = 1e-3;

fn oracle(rec: &mut Recorder, args: &VerifyArgs) {
    let tol = args.tol.unwrap_or(1e-4);
    let levels = 5;
    for alpha in couplings(args, &[-0.24, -0.1, 0.5, 2.0]) {
        let branch = (alpha == 0.0).then_some(BetaBranch::Zero);
        let exact: Vec<f64> = match spectrum_table(alpha, levels - 1, Domain::HalfLine, branch) {
            Ok(t) => t.level_energies(),
            Err(e) => {
                rec.error(format!("closed form alpha = {alpha}"), &e);
                continue;
            }
        };
        let rel = |got: &[f64]| {
            got.iter()
                .zip(&exact)
                .map(|(g, e)| ((g - e) / e).abs())
                .fold(0.0, f64::max)
        };
        match shoot_spectrum(alpha, branch, levels) {
            Ok(r) => {
                rec.below(format!("shooting alpha = {alpha}"), rel(&r.eigenvalues), tol);
                let spacing = r
                    .eigenvalues
                    .windows(2)
                    .map(|w| (w[1] - w[0] - 2.0).abs())
                    .fold(0.0, f64::max);
                rec.below(format!("shooting spacing alpha = {alpha}"), spacing, SPACING_TOL);
            }
            Err(e) => rec.error(format!("shooting alpha = {alpha}"), &e),
        }
        match fd_spectrum(alpha, levels) {
            Ok(r) => rec.below(format!("finite difference alpha = {alpha}"), rel(&r.eigenvalues), FD_TOL),
            Err(e) => rec.error(format!("finite difference alpha = {alpha}"), &e),
        }
    }
}

fn degeneracy(rec: &mut Recorder, args: &VerifyArgs) {
    let tol = args.tol.unwrap_or(0.0);
    let n_max = 9;
    for alpha in couplings(args, &[0.2, 0.5, 2.0]) {
        if alpha == 0.0 {
            continue;
        }
        let mut diff: f64 = 0.0;
        for n in 0..=n_max {
            match (fullline_state(alpha, n, Parity::Even), fullline_state(alpha, n, Parity::Odd)) {
                (Ok(e), Ok(o)) => diff = diff.max((e.energy_eps - o.energy_eps).abs()),
                (Err(e), _) | (_, Err(e)) => {
                    rec.error(format!("even/odd alpha = {alpha}"), &e);
                    return;
                }
            }
        }
        rec.below(format!("even/odd energy difference alpha = {alpha}"), diff, tol);
        match spectrum_table(alpha, n_max, Domain::FullLine, None) {
            Ok(t) => {
                let doubly = t.levels.iter().all(|l| l.degeneracy == 2);
                rec.flag(format!("all levels doubly degenerate alpha = {alpha}"), doubly, format!("{} levels", t.levels.len()));
                rec.close(format!("whole-line spacing alpha = {alpha}"), t.spacing, 2.0, 0.0);
            }
            Err(e) => rec.error(format!("whole-line table alpha = {alpha}"), &e),
        }
    }
    match spectrum_table(0.0, n_max, Domain::FullLine, None) {
        Ok(t) => {
            let simple = t.levels.iter().all(|l| l.degeneracy == 1);
            rec.flag("alpha = 0 levels simple".into(), simple, format!("{} levels", t.levels.len()));
            let ladder_err = t
                .level_energies()
                .iter()
                .take(10)
                .enumerate()
                .map(|(k, e)| (e - (k as f64 + 0.5)).abs())
                .fold(0.0, f64::max);
            rec.close("alpha = 0 levels are n + 1/2 for n <= 9".into(), ladder_err, 0.0, 0.0);
            rec.close("alpha = 0 whole-line spacing".into(), t.spacing, 1.0, 0.0);
        }
        Err(e) => rec.error("alpha = 0 whole-line table".into(), &e),
    }
}

fn perturbation(rec: &mut Recorder, args: &VerifyArgs) {
    let tol = args.tol.unwrap_or(1e-6);
    for n in 0..4 {
        let name = format!("odd n = {n} first-order slope");
        match perturbation_first_order(n, Parity::Odd) {
            Ok(FirstOrder::Slope(s)) => rec.close(name, s, 1.0, tol),
            Ok(FirstOrder::Divergent) => rec.flag(name, false, "divergent".into()),
            Err(e) => rec.error(name, &e),
        }
    }
    for n in 0..3 {
        let name = format!("even n = {n} first-order term");
        match perturbation_first_order(n, Parity::Even) {
            Ok(FirstOrder::Divergent) => rec.flag(name, true, "divergent".into()),
            Ok(FirstOrder::Slope(s)) => rec.flag(name, false, format!("finite slope {s}")),
            Err(e) => rec.error(name, &e),
        }
    }
    let h = 1e-5;
    let slope = (beta_plus(h) - beta_plus(-h)) / (2.0 * h);
    rec.close("d eps_0 / d alpha at alpha = 0".into(), slope, 1.0, tol);
}
