//! Gamma, Kummer M and the Laguerre/Hermite link used by the eigenfunctions.
//!
//! cargo run --example special_functions

use singular_oscillator::specfun::{gamma_fn, hermite, kummer_m, kummer_m_asymptotic, laguerre, SeriesControl};

fn main() -> singular_oscillator::Result<()> {
    println!("Gamma(1/2)^2 = {:.15} (pi = {:.15})", gamma_fn(0.5)?.powi(2), std::f64::consts::PI);
    println!("Gamma(-1/2)  = {:.15}", gamma_fn(-0.5)?);

    // H_{2n}(ξ) = (-1)^n 2^{2n} n! L_n^{(-1/2)}(ξ²)
    let xi: f64 = 0.7;
    for n in 0..4usize {
        let lhs = hermite(2 * n, xi);
        let rhs = (-1f64).powi(n as i32) * 4f64.powi(n as i32) * (1..=n).product::<usize>() as f64 * laguerre(n, -0.5, xi * xi);
        println!("H_{} = {lhs:+.10e}   via Laguerre {rhs:+.10e}", 2 * n);
    }

    // M(a, b, y) grows like Γ(b)/Γ(a) e^y y^{a-b}; the correction is O(1/y)
    let (a, b) = (0.3, 1.2);
    for y in [10.0, 20.0, 40.0] {
        let series = kummer_m(a, b, y, SeriesControl::default())?;
        let lead = kummer_m_asymptotic(a, b, y.max(30.0))?;
        if y >= 30.0 {
            println!("y = {y}: series/leading term = {:.6}", series / lead);
        } else {
            println!("y = {y}: series = {series:.6e}");
        }
    }
    Ok(())
}
