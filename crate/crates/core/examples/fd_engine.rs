//! Finite-difference engine: agreement with the analytic jets and its
//! observed convergence order.

use tumour_bvp::field::Field;
use tumour_bvp::numerics::{fd_derivative, richardson_order};
use tumour_bvp::residuals::{cross_engine_check, governing_residual, Engine, SampleSet};
use tumour_bvp::solutions::{boundary_of, SolutionFamily, StationaryFront};

fn main() -> tumour_bvp::Result<()> {
    let sol = SolutionFamily::Stationary(StationaryFront::new(5.0, 2.0, 2.0, 4.0, 2.0)?);
    let boundary = boundary_of(&sol);
    let pts = SampleSet { n_r: 16, n_theta: 8, ..Default::default() }.points(&boundary);
    println!("AD vs FD disagreement: {:.2e}", cross_engine_check(&sol, &boundary, &pts, 1e-4)?);

    // momentum terms reach ~1e7 near r_min = 0.01 delta, so h must be well below r_min
    for scheme in [2u8, 4] {
        for rel in [1e-4, 1e-5, 1e-6] {
            let h = rel * boundary.delta;
            let fd = governing_residual(&sol, &sol.triplet(), &sol.phys(), &pts, Engine::Fd { scheme, h })?;
            println!("scheme {scheme}, h = {h:.1e}: governing residual {:.2e}", fd.max_linf());
        }
    }

    // d alpha / dx at one point, with the step halved four times
    let (t, y, x) = (1.0, 0.1, 0.3);
    let exact = sol.jet(t, x, y)?.alpha.x;
    for scheme in [2u8, 4] {
        let errors: Vec<f64> = (0..5)
            .map(|k| {
                let h = 0.05 / 2f64.powi(k);
                let d = fd_derivative(|x| sol.value(t, x, y).map(|v| v.alpha).unwrap_or(f64::NAN), x, 1, scheme, h)?;
                Ok((d - exact).abs())
            })
            .collect::<tumour_bvp::Result<_>>()?;
        println!("scheme {scheme}: observed order {:.3}", richardson_order(&errors)?);
    }
    Ok(())
}
