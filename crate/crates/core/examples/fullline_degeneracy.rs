//! Whole-line levels: doubly degenerate for α ≠ 0, simple and spaced by 1
//! at α = 0 where the even states come from the other exponent.
//!
//! cargo run --example fullline_degeneracy

use singular_oscillator::spectrum::{spectrum_table, Domain};

fn main() -> singular_oscillator::Result<()> {
    for alpha in [0.5, 0.0] {
        let t = spectrum_table(alpha, 3, Domain::FullLine, None)?;
        println!("alpha = {alpha}: spacing {}", t.spacing);
        for row in t.rows() {
            println!(
                "    n = {}  {:<4}  beta = {:+.6}  eps = {:.6}  degeneracy {}",
                row.n, row.parity, row.beta, row.eps, row.degeneracy
            );
        }
    }
    Ok(())
}
