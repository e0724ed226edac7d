//! Ground states near the origin: the steep rise for α < 0, the flat
//! start for α > 0, and the even α = 0 state that does not vanish at all.
//!
//! cargo run --example wavefunction_profile

use singular_oscillator::spectrum::{fullline_state, halfline_state, Parity};

fn main() -> singular_oscillator::Result<()> {
    let xs = [0.0, 1e-4, 1e-2, 0.5, 1.0, 2.0, 3.0];
    println!("{:>10} {}", "xi", xs.map(|x| format!("{x:>10}")).join(""));
    for alpha in [-0.249, -0.2, 0.2, 3.0] {
        let s = halfline_state(alpha, 0, None)?;
        let row: String = xs.iter().map(|&x| format!("{:>10.5}", s.psi(x))).collect();
        println!("{:>10} {row}", format!("a={alpha}"));
    }
    let even = fullline_state(0.0, 0, Parity::Even)?;
    let row: String = xs.iter().map(|&x| format!("{:>10.5}", even.psi(x))).collect();
    println!("{:>10} {row}", "a=0 even");

    // the density peak moves out as the coupling grows
    for alpha in [-0.249, -0.2, 0.2, 3.0] {
        let s = halfline_state(alpha, 0, None)?;
        let peak = (1..4000)
            .map(|i| i as f64 * 1e-3)
            .max_by(|a, b| s.psi(*a).abs().total_cmp(&s.psi(*b).abs()))
            .unwrap();
        println!("alpha = {alpha:>6}: |psi| peaks at xi = {peak:.3} (exact {:.3})", (s.beta + 1.0).sqrt());
    }
    Ok(())
}
