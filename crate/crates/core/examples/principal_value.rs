//! Principal values and the connection condition across the origin.
//!
//! cargo run --example principal_value

use singular_oscillator::quad::{cauchy_pv, connection_residual, QuadControl};
use singular_oscillator::spectrum::{fullline_state, Parity};

fn main() -> singular_oscillator::Result<()> {
    let ctl = QuadControl::default();
    println!("PV int_-1^1 dx/x  = {:+.3e}", cauchy_pv(|x| 1.0 / x, -1.0, 1.0, 0.0, ctl)?);
    println!("PV int_-2^1 dx/x  = {:+.12} (-ln 2 = {:+.12})", cauchy_pv(|x| 1.0 / x, -2.0, 1.0, 0.0, ctl)?, -(2f64.ln()));
    match cauchy_pv(|x| 1.0 / (x * x), -1.0, 1.0, 0.0, ctl) {
        Err(e) => println!("PV int_-1^1 dx/x^2: {e}"),
        Ok(v) => println!("unexpected finite value {v}"),
    }

    // odd states satisfy the jump condition at any ε; even states need β > 0
    for (alpha, parity) in [(0.5, Parity::Odd), (2.0, Parity::Even), (-0.2, Parity::Even)] {
        let s = fullline_state(alpha, 1, parity)?;
        for eps in [1e-1, 1e-2, 1e-3] {
            match connection_residual(&s, eps) {
                Ok(r) => println!("alpha = {alpha:>4} {parity:<4} eps = {eps:.0e}: residual {r:+.3e}"),
                Err(e) => println!("alpha = {alpha:>4} {parity:<4} eps = {eps:.0e}: {e}"),
            }
        }
    }
    Ok(())
}
