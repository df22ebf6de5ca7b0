//! Reduced radial profiles of a family, their residuals in the radial
//! system, and the lift back to the plane.

use tumour_bvp::field::Field;
use tumour_bvp::reduction::{default_radii, lift_profiles, reduced_bc_residual, reduced_ode_residual, reduced_profiles_of};
use tumour_bvp::solutions::{PowerMoving, SolutionFamily};

fn main() -> tumour_bvp::Result<()> {
    let sol = SolutionFamily::PowerMoving(PowerMoving::new(1.0, 1.0, 1.0, 3.0, 4.0)?);
    let profiles = reduced_profiles_of(&sol);
    println!("gamma = {}", profiles.gamma()?);

    let report = reduced_ode_residual(&profiles, &default_radii(profiles.delta, 64))?;
    for e in &report.equations {
        println!("{:<17} {:.2e}", e.name, e.linf);
    }
    for v in reduced_bc_residual(&profiles)?.general {
        println!("bc {:<14} {:.2e}", v.name, v.value);
    }

    let lifted = lift_profiles(profiles.clone())?;
    let (t, x, y) = (2.0, 0.3, -0.2);
    let (a, b) = (lifted.value(t, x, y)?, sol.value(t, x, y)?);
    println!("lift at (t, x, y) = ({t}, {x}, {y}): alpha {:.3e} u1 {:.3e} p {:.3e}", a.alpha - b.alpha, a.u1 - b.u1, a.p - b.p);

    let perturbed = reduced_ode_residual(&profiles.with_lambda_factor(1.001), &default_radii(profiles.delta, 64))?;
    println!("Lambda * 1.001: mass residual {:.2e}", perturbed.get("mass").map_or(0.0, |e| e.linf));
    Ok(())
}
