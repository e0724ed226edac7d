//! Command implementations behind the `singosc` binary.
//!
//! Every command builds its output in memory ([`Table`] or
//! [`VerifyReport`]) and [`run`] serializes it, so the same functions serve
//! the binary, the examples and the tests.
//!
//! Exit codes: 0 success, 1 usage error or failed verification,
//! 2 supercritical coupling.

mod figure;
mod table;
mod verify;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::model::{map_radial, BetaBranch, OscillatorSpec};
use crate::spectrum::{fullline_state, halfline_state, spectrum_table, Domain, Parity, SpectrumTable};

pub use figure::{alpha_grid, cmd_figure, FigureArgs, FIGURE3_ALPHAS};
pub use table::{format_float, Cell, Table};
pub use verify::{cmd_verify, Check, Suite, VerifyArgs, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_SUPERCRITICAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "singosc", version, about = "Bound states of the singular harmonic oscillator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy table for a coupling on the half-line or the whole line.
    Spectrum(SpectrumArgs),
    /// Sampled eigenfunction and density.
    Wavefunction(WavefunctionArgs),
    /// Data behind the figures (1 to 4).
    Figure(FigureArgs),
    /// Run verification suites against the numerical oracles.
    Verify(VerifyArgs),
    /// Radial spectrum for orbital quantum number l.
    Radial(RadialArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Half,
    Full,
}

impl From<DomainArg> for Domain {
    fn from(d: DomainArg) -> Self {
        match d {
            DomainArg::Half => Domain::HalfLine,
            DomainArg::Full => Domain::FullLine,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Minus1,
    Zero,
}

impl From<BranchArg> for BetaBranch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Minus1 => BetaBranch::MinusOne,
            BranchArg::Zero => BetaBranch::Zero,
        }
    }
}

/// Output format, destination and unit scaling.
#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Particle mass; with --omega and --hbar only rescales the output.
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
}

impl Default for OutputArgs {
    fn default() -> Self {
        Self {
            format: Format::Csv,
            out: None,
            mass: 1.0,
            omega: 1.0,
            hbar: 1.0,
        }
    }
}

impl OutputArgs {
    pub fn spec(&self, alpha: f64) -> Result<OscillatorSpec> {
        OscillatorSpec::new(self.mass, self.omega, self.hbar, alpha)
    }
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Largest quantum number n (per parity on the whole line).
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "half")]
    pub domain: DomainArg,
    /// Exponent branch; only meaningful on the half-line at alpha = 0.
    #[arg(long, value_enum)]
    pub beta_branch: Option<BranchArg>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "half")]
    pub domain: DomainArg,
    /// Required on the whole line.
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    #[arg(long, value_enum)]
    pub beta_branch: Option<BranchArg>,
    /// Defaults to 0 on the half-line and -xi_max on the whole line.
    #[arg(long, allow_hyphen_values = true)]
    pub xi_min: Option<f64>,
    #[arg(long, default_value_t = 5.0)]
    pub xi_max: f64,
    #[arg(long, default_value_t = 201)]
    pub xi_points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RadialArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long)]
    pub l: u32,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    /// Branch used when alpha + l(l+1) = 0; defaults to zero (u(0) = 0).
    #[arg(long, value_enum)]
    pub beta_branch: Option<BranchArg>,
    #[command(flatten)]
    pub output: OutputArgs,
}

// Spectrum rows after `prefix`; the prefix replaces the alpha column when it has one.
fn spectrum_columns(table: &SpectrumTable, prefix: &[(&str, Cell)]) -> Table {
    let with_alpha = prefix.is_empty();
    let mut cols: Vec<&str> = prefix.iter().map(|(c, _)| *c).collect();
    if with_alpha {
        cols.push("alpha");
    }
    cols.extend(["domain", "n", "parity", "beta", "eps", "degeneracy"]);
    let mut out = Table::new(&cols);
    for r in table.rows() {
        let mut row: Vec<Cell> = prefix.iter().map(|(_, v)| v.clone()).collect();
        if with_alpha {
            row.push(r.alpha.into());
        }
        row.extend([
            r.domain.to_string().into(),
            r.n.into(),
            r.parity.to_string().into(),
            r.beta.into(),
            r.eps.into(),
            r.degeneracy.into(),
        ]);
        out.push(row);
    }
    out
}

fn scale_energy(table: &mut Table, spec: &OscillatorSpec, column: &str, name: &str) {
    if !spec.is_natural() {
        table.append_scaled(column, name, spec.energy_scale());
    }
}

fn scale_length(table: &mut Table, spec: &OscillatorSpec, column: &str, name: &str) {
    if !spec.is_natural() {
        table.append_scaled(column, name, 1.0 / spec.lambda().sqrt());
    }
}

/// Columns `alpha, domain, n, parity, beta, eps, degeneracy`, plus
/// `energy = ε ħω` when physical units are given.
pub fn cmd_spectrum(args: &SpectrumArgs) -> Result<Table> {
    let spec = args.output.spec(args.alpha)?;
    let domain = Domain::from(args.domain);
    let branch = args.beta_branch.map(BetaBranch::from);
    if domain == Domain::HalfLine && args.alpha == 0.0 && branch.is_none() {
        return Err(Error::Parameter(
            "alpha = 0 on the half-line needs --beta-branch minus1 or zero".into(),
        ));
    }
    let table = spectrum_table(args.alpha, args.n_max, domain, branch)?;
    let mut out = spectrum_columns(&table, &[]);
    scale_energy(&mut out, &spec, "eps", "energy");
    Ok(out)
}

/// Columns `xi, psi, rho`, plus `x` when physical units are given.
pub fn cmd_wavefunction(args: &WavefunctionArgs) -> Result<Table> {
    let spec = args.output.spec(args.alpha)?;
    let branch = args.beta_branch.map(BetaBranch::from);
    let state = match (Domain::from(args.domain), args.parity) {
        (Domain::HalfLine, None) => halfline_state(args.alpha, args.n, branch)?,
        (Domain::HalfLine, Some(_)) => {
            return Err(Error::Parameter("--parity applies to --domain full only".into()))
        }
        (Domain::FullLine, None) => {
            return Err(Error::Parameter("--domain full needs --parity even or odd".into()))
        }
        (Domain::FullLine, Some(p)) => {
            if branch.is_some() {
                return Err(Error::Parameter(
                    "on the whole line the parity selects the branch; drop --beta-branch".into(),
                ));
            }
            fullline_state(args.alpha, args.n, p.into())?
        }
    };
    let xi_min = args.xi_min.unwrap_or(match state.domain {
        Domain::HalfLine => 0.0,
        Domain::FullLine => -args.xi_max,
    });
    if !(xi_min < args.xi_max) || args.xi_points < 2 {
        return Err(Error::Parameter(format!(
            "need xi_min < xi_max and at least 2 points (got {xi_min}, {}, {})",
            args.xi_max, args.xi_points
        )));
    }
    let mut out = Table::new(&["xi", "psi", "rho"]);
    for xi in linspace(xi_min, args.xi_max, args.xi_points) {
        let psi = state.psi(xi);
        out.push(vec![xi.into(), psi.into(), (psi * psi).into()]);
    }
    scale_length(&mut out, &spec, "xi", "x");
    Ok(out)
}

/// The spectrum for `α_eff = α + l(l+1)` on the half-line, labelled with
/// `l` and `alpha_eff`; the `alpha` column keeps the input coupling.
pub fn cmd_radial(args: &RadialArgs) -> Result<Table> {
    let alpha_eff = map_radial(args.alpha, args.l);
    let spec = args.output.spec(alpha_eff)?;
    let branch = if alpha_eff == 0.0 {
        Some(args.beta_branch.map_or(BetaBranch::Zero, BetaBranch::from))
    } else {
        args.beta_branch.map(BetaBranch::from)
    };
    let table = spectrum_table(alpha_eff, args.n_max, Domain::HalfLine, branch)?;
    let mut out = spectrum_columns(
        &table,
        &[("alpha", args.alpha.into()), ("l", args.l.into()), ("alpha_eff", alpha_eff.into())],
    );
    scale_energy(&mut out, &spec, "eps", "energy");
    Ok(out)
}

/// `n` evenly spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let step = (b - a) / (n - 1) as f64;
            let mut v: Vec<f64> = (0..n).map(|i| a + step * i as f64).collect();
            v[n - 1] = b;
            v
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Supercritical { .. } => EXIT_SUPERCRITICAL,
        _ => EXIT_FAILURE,
    }
}

fn emit<F>(output: &OutputArgs, stdout: &mut dyn Write, write: F) -> std::io::Result<()>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    match &output.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            write(&mut f)?;
            f.flush()
        }
        None => write(stdout),
    }
}

fn write_table(table: &Table, format: Format, w: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Csv => table.write_csv(w),
        Format::Json => table.write_json(w),
    }
}

/// Executes a parsed command and returns the exit code.
pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (output, result) = match &cli.command {
        Command::Spectrum(a) => (&a.output, cmd_spectrum(a).map(Outcome::Table)),
        Command::Wavefunction(a) => (&a.output, cmd_wavefunction(a).map(Outcome::Table)),
        Command::Figure(a) => (&a.output, cmd_figure(a).map(Outcome::Table)),
        Command::Radial(a) => (&a.output, cmd_radial(a).map(Outcome::Table)),
        Command::Verify(a) => (&a.output, cmd_verify(a).map(Outcome::Report)),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let (written, code) = match &outcome {
        Outcome::Table(t) => (emit(output, stdout, |w| write_table(t, output.format, w)), EXIT_OK),
        Outcome::Report(r) => {
            let code = if r.pass { EXIT_OK } else { EXIT_FAILURE };
            (emit(output, stdout, |w| r.write(output.format, w)), code)
        }
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_FAILURE;
    }
    if let Outcome::Report(r) = &outcome {
        if !r.pass {
            let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            let _ = writeln!(stderr, "verification failed: {}", failed.join(", "));
        }
    }
    code
}

enum Outcome {
    Table(Table),
    Report(VerifyReport),
}

/// Parses `args` (program name first) and executes. Malformed flags exit 1;
/// `--help` and `--version` exit 0.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, stdout, stderr),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_FAILURE
                }
            }
        }
    }
}
