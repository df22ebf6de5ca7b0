//! Pressure recovered from the concentration profile by quadrature.

use tumour_bvp::field::Field;
use tumour_bvp::model::PowerSum;
use tumour_bvp::reduction::{pressure_from_lambda, LambdaProfile, PressureQuadrature, ReducedSource};
use tumour_bvp::residuals::log_radii;
use tumour_bvp::solutions::{SolutionFamily, StationaryFront};

fn main() -> tumour_bvp::Result<()> {
    let st = StationaryFront::new(5.0, 2.0, 2.0, 4.0, 2.0)?;
    let g = st.inner;
    let law = PowerSum::monomial(g.s0, g.n);
    let profile = LambdaProfile::Exponential { c1: g.c1, c2: 0.0, d0: g.d0, lambda: g.lambda };
    let q = PressureQuadrature::new(g.d0, g.c3, g.c4, g.delta);
    let radii = log_radii(0.02 * g.delta, g.delta, 8);
    let p = pressure_from_lambda(&profile, ReducedSource::Scale { law: &law, n: g.n }, &q, &radii)?;
    let sol = SolutionFamily::Stationary(st);
    for (r, v) in radii.iter().zip(p) {
        let exact = sol.value(1.0, *r, 0.0)?.p;
        println!("r = {r:.4}: quadrature {v:+.12}  closed form {exact:+.12}");
    }
    Ok(())
}
