//! Three-dimensional radial levels through α → α + l(l+1).
//!
//! cargo run --example radial_mapping

use singular_oscillator::model::map_radial;
use singular_oscillator::spectrum::{spectrum_table, Domain};
use singular_oscillator::BetaBranch;

fn main() -> singular_oscillator::Result<()> {
    for alpha in [0.0, -0.2] {
        for l in 0..4 {
            let eff = map_radial(alpha, l);
            let branch = (eff == 0.0).then_some(BetaBranch::Zero);
            let t = spectrum_table(eff, 2, Domain::HalfLine, branch)?;
            println!("alpha = {alpha:>4} l = {l}: alpha_eff = {eff:<4} eps = {:?}", t.level_energies());
        }
    }
    Ok(())
}
