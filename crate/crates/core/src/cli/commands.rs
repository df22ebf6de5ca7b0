//! The `validate`, `verify` and `orbit` subcommands.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::config::RunConfig;
use super::{write_json, Outcome};
use crate::error::{Error, Result};
use crate::model::{scale_exponents, validate_power_law, PowerLawDiagnostics};
use crate::reduction::{
    default_radii, reduced_bc_residual, reduced_ode_residual, reduced_profiles_of, steady_residual, ReducedBoundary,
};
use crate::residuals::{boundary_residual, governing_residual, Engine, ResidualReport};
use crate::solutions::{boundary_of, Ansatz, Regularity, SolutionFamily};
use crate::symmetry::{orbit_check, GroupElement, OrbitCheck, TimeFunction};

#[derive(Debug, Clone, Serialize)]
struct ValidateReport {
    passed: bool,
    solution: SolutionFamily,
    delta: f64,
    gamma: Option<f64>,
    kappa: f64,
    regularity: Regularity,
    power_law: Option<PowerLawDiagnostics>,
}

/// Builds the family, derives its constants and checks its restrictions.
pub fn validate(cfg: &RunConfig, out: &Path) -> Result<Outcome> {
    let sol = cfg.family()?.build()?;
    let boundary = boundary_of(&sol);
    let gamma = match sol.ansatz() {
        Ansatz::Scale { m, n } => Some(scale_exponents(m, n)?.gamma),
        Ansatz::Steady => None,
    };
    let power_law = sol.triplet().power_law().map(|p| validate_power_law(&p, &sol.phys()));
    let passed = power_law.as_ref().map_or(true, |d| d.flags.is_empty());
    let report = ValidateReport {
        passed,
        solution: sol,
        delta: boundary.delta,
        gamma,
        kappa: boundary.kappa,
        regularity: sol.regularity(),
        power_law,
    };
    write_json(out, "validate.json", &report)?;

    let mut text = String::new();
    let _ = writeln!(text, "family      {}", sol.id());
    let _ = writeln!(text, "delta       {:.6}", boundary.delta);
    if let Some(g) = gamma {
        let _ = writeln!(text, "gamma       {g:.6}");
    }
    let _ = writeln!(text, "kappa       {:.6}", boundary.kappa);
    for (name, value) in derived_constants(&sol) {
        let _ = writeln!(text, "{name:<11} {value:.9e}");
    }
    let _ = writeln!(text, "regularity  {}", report.regularity.note);
    if let Some(d) = &report.power_law {
        for flag in &d.flags {
            let _ = writeln!(text, "FAIL        {flag}");
        }
    }
    let _ = writeln!(text, "{}", if passed { "PASS" } else { "FAIL" });
    Ok(Outcome { passed, text })
}

fn derived_constants(sol: &SolutionFamily) -> Vec<(&'static str, f64)> {
    match sol {
        SolutionFamily::Gaussian(f) => vec![("s0", f.s0), ("regular_c3", f.regular_c3())],
        SolutionFamily::Stationary(f) => vec![
            ("E", f.derived.e),
            ("c1", f.derived.c1),
            ("sigma0", f.derived.sigma0),
            ("s0", f.derived.s0),
        ],
        SolutionFamily::PowerMoving(f) => moving(&f.derived),
        SolutionFamily::LogMoving(f) => moving(&f.derived),
        SolutionFamily::Steady(f) => vec![("c4", f.derived.c4), ("k1", f.derived.k1), ("k2", f.derived.k2)],
    }
}

fn moving(k: &crate::solutions::MovingConstants) -> Vec<(&'static str, f64)> {
    vec![("d0", k.d0), ("s0", k.s0), ("sigma0", k.sigma0), ("c2", k.c2), ("c3", k.c3)]
}

#[derive(Debug, Clone, Serialize)]
struct Check<T> {
    threshold: f64,
    passed: bool,
    report: T,
}

fn check<T>(report: T, value: f64, threshold: f64) -> Check<T> {
    Check { threshold, passed: value <= threshold, report }
}

#[derive(Debug, Clone, Serialize)]
struct ReducedReport {
    governing: ResidualReport,
    boundary: Option<ReducedBoundary>,
}

#[derive(Debug, Clone, Serialize)]
struct VerifyReport {
    passed: bool,
    family: String,
    engine: Engine,
    error: Option<String>,
    governing: Option<Check<ResidualReport>>,
    /// One report per sample time; `None` for families that do not claim
    /// to satisfy the boundary conditions.
    boundary: Option<Check<Vec<ResidualReport>>>,
    reduced: Option<Check<ReducedReport>>,
    orbits: Vec<Check<OrbitCheck>>,
}

/// Rotation and pressure shift by `eps = 1`: both hold for every family.
pub fn default_orbit_elements() -> Vec<GroupElement> {
    vec![
        GroupElement::Rotation { f: TimeFunction::constant(1.0), eps: 1.0 },
        GroupElement::PressureShift { f: TimeFunction::constant(1.0), eps: 1.0 },
    ]
}

/// Governing, boundary, reduced and orbit residuals of the configured
/// family. The report is written even when a step fails.
pub fn verify(cfg: &RunConfig, out: &Path, tol_scale: f64) -> Result<Outcome> {
    let family = cfg.family()?;
    let mut report = VerifyReport {
        passed: false,
        family: String::new(),
        engine: Engine::Analytic,
        error: None,
        governing: None,
        boundary: None,
        reduced: None,
        orbits: vec![],
    };
    let result = run_verify(cfg, family, tol_scale, &mut report);
    if let Err(e) = &result {
        report.error = Some(e.to_string());
    }
    write_json(out, "verify_report.json", &report)?;
    result?;
    Ok(Outcome { passed: report.passed, text: verify_text(&report) })
}

fn run_verify(
    cfg: &RunConfig,
    family: &super::config::FamilyConfig,
    tol_scale: f64,
    report: &mut VerifyReport,
) -> Result<()> {
    let sol = family.build()?;
    report.family = sol.id().into();
    let triplet = cfg.overrides.triplet(&sol)?;
    let phys = sol.phys();
    let boundary = boundary_of(&sol);
    let engine = cfg.engine.engine(boundary.delta);
    report.engine = engine;
    let tol = cfg.tolerances;

    let points = cfg.samples.annulus(&sol).points(&boundary);
    let gov = governing_residual(&sol, &triplet, &phys, &points, engine)?;
    let gov_max = gov.max_linf();
    report.governing = Some(check(gov, gov_max, tol.governing_for(&sol) * tol_scale));

    if sol.solves_boundary_problem() {
        let reports = cfg
            .samples
            .times_for(&sol)
            .into_iter()
            .map(|t| boundary_residual(&sol, &boundary, &phys, t, cfg.samples.boundary_points, engine))
            .collect::<Result<Vec<_>>>()?;
        let worst = reports.iter().map(ResidualReport::max_linf).fold(0.0, f64::max);
        report.boundary = Some(check(reports, worst, tol.boundary * tol_scale));
    }

    let mut profiles = reduced_profiles_of(&sol);
    profiles.triplet = triplet.clone();
    let radii = default_radii(profiles.delta, cfg.samples.reduced_points);
    let reduced = match sol.ansatz() {
        Ansatz::Steady => {
            let s = steady_residual(&profiles, &radii)?;
            ReducedReport { governing: s.governing, boundary: Some(s.boundary) }
        }
        Ansatz::Scale { .. } => ReducedReport {
            governing: reduced_ode_residual(&profiles, &radii)?,
            boundary: if sol.solves_boundary_problem() { Some(reduced_bc_residual(&profiles)?) } else { None },
        },
    };
    // the boundary values are O(1) quantities that should vanish, so they
    // share the boundary threshold
    let gov_ok = reduced.governing.max_linf() <= tol.reduced * tol_scale;
    let bc_ok = reduced.boundary.as_ref().map_or(true, |b| b.general_max() <= tol.boundary * tol_scale);
    report.reduced = Some(Check {
        threshold: tol.reduced * tol_scale,
        passed: gov_ok && bc_ok,
        report: reduced,
    });

    let elements = cfg.orbit.as_ref().map_or_else(default_orbit_elements, |o| o.expanded());
    let orbit_points = cfg.samples.orbit_annulus(&sol).points(&boundary);
    for elem in &elements {
        let c = orbit_check(elem, sol, &triplet, &phys, &orbit_points, engine)?;
        let passed = c.passed && c.ratio <= tol.orbit_growth;
        report.orbits.push(Check { threshold: tol.orbit_growth, passed, report: c });
    }

    report.passed = report.governing.as_ref().is_some_and(|c| c.passed)
        && report.boundary.as_ref().map_or(true, |c| c.passed)
        && report.reduced.as_ref().is_some_and(|c| c.passed)
        && report.orbits.iter().all(|c| c.passed);
    Ok(())
}

fn mark(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn verify_text(r: &VerifyReport) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "family      {} ({})", r.family, r.engine);
    if let Some(c) = &r.governing {
        let _ = writeln!(text, "governing   {:.3e} <= {:.1e}  {}", c.report.max_linf(), c.threshold, mark(c.passed));
    }
    match &r.boundary {
        Some(c) => {
            let worst = c.report.iter().map(ResidualReport::max_linf).fold(0.0, f64::max);
            let _ = writeln!(text, "boundary    {worst:.3e} <= {:.1e}  {}", c.threshold, mark(c.passed));
        }
        None => {
            let _ = writeln!(text, "boundary    not claimed by this family");
        }
    }
    if let Some(c) = &r.reduced {
        let _ = writeln!(text, "reduced     {:.3e} <= {:.1e}  {}", c.report.governing.max_linf(), c.threshold, mark(c.passed));
    }
    for c in &r.orbits {
        let _ = writeln!(
            text,
            "orbit       {} eps={} ratio {:.3}  {}",
            c.report.element,
            c.report.eps,
            c.report.ratio,
            mark(c.passed)
        );
    }
    let _ = writeln!(text, "{}", if r.passed { "PASS" } else { "FAIL" });
    text
}

#[derive(Debug, Clone, Serialize)]
struct OrbitReport {
    passed: bool,
    family: String,
    checks: Vec<Check<OrbitCheck>>,
}

/// Orbit checks for the elements listed in the config.
pub fn orbit(cfg: &RunConfig, out: &Path) -> Result<Outcome> {
    let sol = cfg.family()?.build()?;
    let spec = cfg
        .orbit
        .as_ref()
        .ok_or_else(|| Error::Config("the config has no [orbit] section".into()))?;
    let elements = spec.expanded();
    if elements.is_empty() {
        return Err(Error::Config("[orbit] lists no elements".into()));
    }
    let triplet = cfg.overrides.triplet(&sol)?;
    for elem in &elements {
        elem.check_applicable(&triplet)?;
    }
    let phys = sol.phys();
    let boundary = boundary_of(&sol);
    let engine = cfg.engine.engine(boundary.delta);
    let points = cfg.samples.orbit_annulus(&sol).points(&boundary);
    let growth = cfg.tolerances.orbit_growth;
    let checks = elements
        .iter()
        .map(|e| {
            let c = orbit_check(e, sol, &triplet, &phys, &points, engine)?;
            Ok(Check { threshold: growth, passed: c.passed && c.ratio <= growth, report: c })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = checks.iter().all(|c| c.passed);
    let report = OrbitReport { passed, family: sol.id().into(), checks };
    write_json(out, "orbit_report.json", &report)?;

    let mut text = String::new();
    for c in &report.checks {
        let _ = writeln!(
            text,
            "{:<17} eps={:<5} base {:.3e}  orbit {:.3e}  ratio {:.3}  {}",
            c.report.element,
            c.report.eps,
            c.report.base_linf,
            c.report.weighted_linf,
            c.report.ratio,
            mark(c.passed)
        );
    }
    let _ = writeln!(text, "{}", if passed { "PASS" } else { "FAIL" });
    Ok(Outcome { passed, text })
}
