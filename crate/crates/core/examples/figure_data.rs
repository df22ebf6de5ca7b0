//! Writes the surface data of figure 4 into a directory.

use tumour_bvp::cli::figure::{figure, DEFAULT_GRID};
use tumour_bvp::solutions::R_MIN_FRACTION;

fn main() -> tumour_bvp::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "fig4-data".into());
    let outcome = figure(4, DEFAULT_GRID, R_MIN_FRACTION, std::path::Path::new(&out))?;
    print!("{}", outcome.text);
    println!("written to {out}");
    Ok(())
}
