//! Closed-form half-line levels for a few couplings, with the exponent
//! that fixes each ladder.
//!
//! cargo run --example halfline_spectrum

use singular_oscillator::model::{admissible_betas, classify_boundary};
use singular_oscillator::spectrum::{spectrum_table, Domain};
use singular_oscillator::BetaBranch;

fn main() -> singular_oscillator::Result<()> {
    for alpha in [-0.24, -0.1, 0.5, 2.0] {
        let beta = admissible_betas(alpha).require()?.admissible[0];
        let boundary = classify_boundary(alpha, beta)?;
        let table = spectrum_table(alpha, 4, Domain::HalfLine, None)?;
        let eps: Vec<String> = table.level_energies().iter().map(|e| format!("{e:.6}")).collect();
        println!("alpha = {alpha:>5}  beta = {beta:+.6}  {boundary:?}");
        println!("    eps = {}", eps.join(", "));
    }

    // α = 0 admits two exponents; each gives its own ladder
    for branch in [BetaBranch::MinusOne, BetaBranch::Zero] {
        let t = spectrum_table(0.0, 3, Domain::HalfLine, Some(branch))?;
        println!("alpha = 0, beta = {:+}: {:?}", branch.beta(), t.level_energies());
    }

    match admissible_betas(-0.25).require() {
        Err(e) => println!("alpha = -0.25: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
