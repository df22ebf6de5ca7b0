//! Residuals along symmetry orbits of the Fig 3/4 stationary solution and
//! of the steady solution.

use tumour_bvp::residuals::{Engine, SampleSet};
use tumour_bvp::solutions::{boundary_of, SolutionFamily, StationaryFront, SteadyState};
use tumour_bvp::symmetry::{boundary_invariance, orbit_check, GroupElement, TimeFunction};

fn main() -> tumour_bvp::Result<()> {
    let stationary = SolutionFamily::Stationary(StationaryFront::new(5.0, 2.0, 2.0, 4.0, 2.0)?);
    let steady = SolutionFamily::Steady(SteadyState::new(1.5, 1.0, 1.2, 1.0, 2.0, 4.0, 1.0)?);
    let samples = SampleSet { n_r: 12, n_theta: 8, ..Default::default() };

    let elements = [
        GroupElement::Rotation { f: TimeFunction::sin(), eps: 1.0 },
        GroupElement::PressureShift { f: TimeFunction::Polynomial { coeffs: vec![1.0, -2.0, 0.5] }, eps: 0.5 },
        GroupElement::Scale { eps: -0.5, m: -1.0, n: 2.0 },
    ];
    let pts = samples.points(&boundary_of(&stationary));
    for e in &elements {
        let c = orbit_check(e, stationary, &stationary.triplet(), &stationary.phys(), &pts, Engine::Analytic)?;
        let inv = boundary_invariance(e, &boundary_of(&stationary), 1.0);
        println!("{:<15} eps={:<5} ratio {:.3}  front invariance {inv:.1e}  {}", c.element, c.eps, c.ratio, c.passed);
    }

    let pts = SampleSet { times: vec![1.0], ..samples }.points(&boundary_of(&steady));
    let shift = GroupElement::TimeTranslation { eps: 1.0 };
    let c = orbit_check(&shift, steady, &steady.triplet(), &steady.phys(), &pts, Engine::Analytic)?;
    println!("time translation on the steady solution: ratio {:.3}", c.ratio);

    // the scaling needs power laws; the steady family has a two-term source
    let err = GroupElement::Scale { eps: 0.5, m: -1.0, n: 2.0 }.check_applicable(&steady.triplet());
    println!("scale on the steady laws: {err:?}");
    Ok(())
}
