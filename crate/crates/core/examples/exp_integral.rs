//! The integral of e^{-a z²}/z by its series and by quadrature.

use tumour_bvp::numerics::{exp_over_z_integral, exp_over_z_integral_quad};

fn main() -> tumour_bvp::Result<()> {
    for (a, r, delta) in [(1.0, 1.0, 2.0), (0.125, 0.01, 1.0), (-0.25, 0.5, 3.0), (4.0, 2.0, 0.1)] {
        let series = exp_over_z_integral(a, r, delta)?;
        let quad = exp_over_z_integral_quad(a, r, delta)?;
        println!("a={a:<6} r={r:<5} delta={delta:<4} {series:+.16e}  diff {:.1e}", (series - quad).abs());
    }
    Ok(())
}
