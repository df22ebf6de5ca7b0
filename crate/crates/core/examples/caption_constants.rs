//! Derived constants of the figure parameter sets.

use tumour_bvp::solutions::{regular_c3, stationary_constants};

fn main() -> tumour_bvp::Result<()> {
    for (c3, c4, d0) in [(5.0, 2.0, 2.0), (1.0, -2.5, 8.0)] {
        let k = stationary_constants(c3, c4, 2.0, 4.0, d0)?;
        println!(
            "c3={c3:<4} c4={c4:<5} d0={d0}: delta = {:.4}, E = {:.6}, c1 = {:.6}, sigma0 = {}, s0 = {}",
            k.delta, k.e, k.c1, k.sigma0, k.s0
        );
    }
    // the Gaussian parameters of the first two figures sit on the regular branch
    println!("regular c3 for (c1=1, n=3, sigma0=-3, lambda=4): {}", regular_c3(1.0, 3.0, -3.0, 4.0)?);
    Ok(())
}
