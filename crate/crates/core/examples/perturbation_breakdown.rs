//! First-order perturbation theory in α around the regular oscillator:
//! finite for odd states, divergent for even ones.
//!
//! cargo run --example perturbation_breakdown

use singular_oscillator::model::beta_plus;
use singular_oscillator::spectrum::{perturbation_first_order, Parity};

fn main() -> singular_oscillator::Result<()> {
    for n in 0..3 {
        for parity in [Parity::Odd, Parity::Even] {
            println!("n = {n} {parity:<4}: {:?}", perturbation_first_order(n, parity)?);
        }
    }
    let h = 1e-6;
    println!("d eps/d alpha at 0 from the exact exponent: {:.9}", (beta_plus(h) - beta_plus(-h)) / (2.0 * h));
    // the even ground state jumps from 1/2 to 3/2 + O(α) as soon as α ≠ 0
    for alpha in [1e-2, 1e-4, 1e-6] {
        println!("alpha = {alpha:.0e}: eps_0 = {:.9}", 1.5 + beta_plus(alpha));
    }
    Ok(())
}
