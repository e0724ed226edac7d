//! Writes the data for figures 1 to 4 as CSV files.
//!
//! cargo run --example figures -- [output-dir]

use std::fs::File;
use std::path::PathBuf;

use singular_oscillator::cli::{cmd_figure, FigureArgs};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map_or_else(|| PathBuf::from("figures"), PathBuf::from);
    std::fs::create_dir_all(&dir)?;
    for id in 1..=4 {
        let table = cmd_figure(&FigureArgs::new(id))?;
        let path = dir.join(format!("figure{id}.csv"));
        table.write_csv(File::create(&path)?)?;
        println!("{} ({} rows)", path.display(), table.rows.len());
    }
    Ok(())
}
