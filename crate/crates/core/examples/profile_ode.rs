//! Integrating the profile ODE and comparing with the closed forms.

use tumour_bvp::model::{linked_s0, PhysConstants, PowerLawParams};
use tumour_bvp::numerics::OdeSpec;
use tumour_bvp::reduction::{integrate_profile_ode, ProfileOdeProblem};

fn main() -> tumour_bvp::Result<()> {
    // degenerate case m = -1: Gaussian profile c1 e^{-r²/(4 d0)}
    let phys = PhysConstants { lambda: 4.0 };
    let (c1, d0) = (1.3, 2.0);
    let params = PowerLawParams { d0, s0: linked_s0(2.0, -0.7, &phys)?, sigma0: -0.7, m: -1.0, n: 2.0 };
    let problem = ProfileOdeProblem {
        params,
        phys,
        beta: 0.0,
        r0: 0.1,
        r1: 2.0,
        lambda0: c1 * (-0.01f64 / (4.0 * d0)).exp(),
        slope0: None,
    };
    let tr = integrate_profile_ode(&problem, &OdeSpec::default())?;
    println!("form {:?}", tr.form);
    for r in [0.5, 1.0, 1.5, 2.0] {
        let exact = c1 * (-r * r / (4.0 * d0)).exp();
        println!("r = {r}: {:.12} vs {exact:.12}", tr.lambda(r).unwrap_or(f64::NAN));
    }

    // power regime: Λ = c1 r^{2/(1+m)} with d0 = (1+m)/(4(1+λ)c1^{1+m})
    let (c1, m, lambda) = (0.8, 1.0, 2.0);
    let phys = PhysConstants { lambda };
    let d0 = (1.0 + m) / (4.0 * (1.0 + lambda) * c1 * c1);
    let params = PowerLawParams { d0, s0: linked_s0(3.0, 0.5, &phys)?, sigma0: 0.5, m, n: 3.0 };
    let problem = ProfileOdeProblem { params, phys, beta: 0.0, r0: 1.0, r1: 3.0, lambda0: c1, slope0: None };
    let tr = integrate_profile_ode(&problem, &OdeSpec::default())?;
    println!("form {:?}: Lambda(3) = {:.12} vs {}", tr.form, tr.lambda(3.0).unwrap_or(f64::NAN), 3.0 * c1);
    Ok(())
}
