//! Closed-form energies against the shooting and finite-difference solvers.
//!
//! cargo run --release --example oracle_crosscheck

use singular_oscillator::oracle::{compare, fd_eigen, fd_spectrum, shoot_spectrum, GridSpec};
use singular_oscillator::spectrum::{spectrum_table, Domain};

fn main() -> singular_oscillator::Result<()> {
    for alpha in [-0.24, -0.1, 0.5, 2.0] {
        let table = spectrum_table(alpha, 4, Domain::HalfLine, None)?;
        let shot = compare(&table, &shoot_spectrum(alpha, None, 5)?, 1e-4)?;
        let fd = compare(&table, &fd_spectrum(alpha, 5)?, 5e-3)?;
        println!(
            "alpha = {alpha:>5}: shooting max rel error {:.2e} ({}), finite differences {:.2e} ({})",
            shot.max_error,
            if shot.pass { "pass" } else { "FAIL" },
            fd.max_error,
            if fd.pass { "pass" } else { "FAIL" },
        );
    }

    // A Dirichlet solver only sees the odd half of the α = 0 whole-line spectrum.
    let full0 = spectrum_table(0.0, 2, Domain::FullLine, None)?;
    let fd = fd_eigen(0.0, GridSpec::default().with_x_min(1e-6), 3)?;
    let report = compare(&full0, &fd, 1e-3)?;
    println!("alpha = 0 whole line: max rel error {:.2e}", report.max_error);
    if let Some(note) = report.note {
        println!("    {note}");
    }
    Ok(())
}
