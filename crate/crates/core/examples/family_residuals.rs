//! Governing and boundary residuals of every closed-form family.

use tumour_bvp::residuals::{boundary_residual, governing_residual, Engine, SampleSet};
use tumour_bvp::solutions::{
    boundary_of, GaussianDecay, LogMoving, PowerMoving, SolutionFamily, StationaryFront, SteadyState,
};

fn main() -> tumour_bvp::Result<()> {
    let families = [
        SolutionFamily::Gaussian(GaussianDecay::new(1.0, 0.5, 5.0, 3.0, 0.75, 4.0, -3.0, 1.0)?),
        SolutionFamily::Stationary(StationaryFront::new(5.0, 2.0, 2.0, 4.0, 2.0)?),
        SolutionFamily::PowerMoving(PowerMoving::new(1.0, 1.0, 1.0, 3.0, 4.0)?),
        SolutionFamily::LogMoving(LogMoving::new(2.0, 1.0, -1.0, 1.0)?),
        SolutionFamily::Steady(SteadyState::new(1.5, 1.0, 1.2, 1.0, 2.0, 4.0, 1.0)?),
    ];
    for sol in &families {
        let boundary = boundary_of(sol);
        let samples = if sol.is_time_dependent() { SampleSet::default() } else { SampleSet::with_times(vec![1.0]) };
        let gov = governing_residual(sol, &sol.triplet(), &sol.phys(), &samples.points(&boundary), Engine::Analytic)?;
        print!("{:<13} governing {:.2e}", sol.id(), gov.max_linf());
        if sol.solves_boundary_problem() {
            let bc = boundary_residual(sol, &boundary, &sol.phys(), 1.0, 64, Engine::Analytic)?;
            print!("  boundary {:.2e}", bc.max_linf());
        }
        println!();
        for e in &gov.equations {
            println!("    {:<11} linf {:.2e}  l2 {:.2e}", e.name, e.linf, e.l2);
        }
    }
    Ok(())
}
