//! Surface data for the five published figures.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::{write_json, Outcome};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::model::FieldValue;
use crate::solutions::{boundary_of, GaussianDecay, SolutionFamily, StationaryFront, R_MIN_FRACTION};

pub const DEFAULT_GRID: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Alpha,
    U1,
    U2,
    P,
}

impl Component {
    fn name(self) -> &'static str {
        match self {
            Component::Alpha => "alpha",
            Component::U1 => "u1",
            Component::U2 => "u2",
            Component::P => "p",
        }
    }

    fn pick(self, v: &FieldValue) -> f64 {
        match self {
            Component::Alpha => v.alpha,
            Component::U1 => v.u1,
            Component::U2 => v.u2,
            Component::P => v.p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Panel {
    pub component: Component,
    pub t: f64,
}

/// Parameter set and panels of one figure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureSpec {
    pub id: u8,
    pub solution: SolutionFamily,
    pub panels: Vec<Panel>,
}

fn fig12() -> Result<SolutionFamily> {
    Ok(SolutionFamily::Gaussian(GaussianDecay::new(1.0, 0.5, 5.0, 3.0, 0.75, 4.0, -3.0, 1.0)?))
}

fn fig34() -> Result<SolutionFamily> {
    Ok(SolutionFamily::Stationary(StationaryFront::new(5.0, 2.0, 2.0, 4.0, 2.0)?))
}

fn fig5() -> Result<SolutionFamily> {
    Ok(SolutionFamily::Stationary(StationaryFront::new(1.0, -2.5, 2.0, 4.0, 8.0)?))
}

/// The parameter set of figure `id`; unknown ids are a config error.
pub fn figure_spec(id: u8) -> Result<FigureSpec> {
    let panel = |component, t| Panel { component, t };
    let (solution, panels) = match id {
        1 => (fig12()?, vec![panel(Component::U1, 2.0), panel(Component::U2, 2.0)]),
        2 => (fig12()?, vec![panel(Component::Alpha, 2.0), panel(Component::P, 2.0)]),
        3 => (fig34()?, vec![panel(Component::U1, 1.0), panel(Component::U2, 1.0)]),
        4 => (fig34()?, vec![panel(Component::Alpha, 1.0), panel(Component::P, 1.0)]),
        5 => (fig5()?, vec![panel(Component::Alpha, 1.0), panel(Component::Alpha, 10.0)]),
        _ => return Err(Error::Config(format!("unknown figure {id}, expected 1 to 5"))),
    };
    Ok(FigureSpec { id, solution, panels })
}

/// Values on an `n × n` grid over `[-R, R]²`, `R` the front radius,
/// row-major with `x` fastest. `None` marks cells outside the annulus
/// `r_min_fraction · R ≤ r ≤ R`.
#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    pub radius: f64,
    pub r_min: f64,
    pub cells: Vec<(f64, f64, Option<f64>)>,
}

pub fn sample_surface(
    field: &dyn Field,
    radius: f64,
    panel: Panel,
    grid: usize,
    r_min_fraction: f64,
) -> Result<Surface> {
    if grid < 2 {
        return Err(Error::Config(format!("grid must be at least 2, got {grid}")));
    }
    let r_min = r_min_fraction * radius;
    let coord = |i: usize| -radius + 2.0 * radius * i as f64 / (grid - 1) as f64;
    let mut cells = Vec::with_capacity(grid * grid);
    for j in 0..grid {
        let y = coord(j);
        for i in 0..grid {
            let x = coord(i);
            let r = x.hypot(y);
            let value = if r > radius || r < r_min {
                None
            } else {
                Some(panel.component.pick(&field.value(panel.t, x, y)?)).filter(|v| v.is_finite())
            };
            cells.push((x, y, value));
        }
    }
    Ok(Surface { radius, r_min, cells })
}

/// CSV with header `x,y,value`; masked cells have an empty value field.
pub fn surface_csv(surface: &Surface) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["x", "y", "value"]).map_err(err)?;
    for &(x, y, v) in &surface.cells {
        let v = v.map(|v| v.to_string()).unwrap_or_default();
        w.write_record([x.to_string(), y.to_string(), v]).map_err(err)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

#[derive(Debug, Clone, Serialize)]
struct PanelMeta {
    file: String,
    component: Component,
    t: f64,
    radius: f64,
    r_min: f64,
    masked: usize,
    min: f64,
    max: f64,
}

#[derive(Debug, Clone, Serialize)]
struct FigureMeta {
    figure: u8,
    solution: SolutionFamily,
    grid: usize,
    r_min_fraction: f64,
    mask: &'static str,
    panels: Vec<PanelMeta>,
}

fn file_name(id: u8, panel: &Panel) -> String {
    format!("fig{id}_{}_t{}.csv", panel.component.name(), panel.t)
}

fn gnuplot_script(id: u8, panels: &[PanelMeta]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set xlabel 'x'");
    let _ = writeln!(s, "set ylabel 'y'");
    let _ = writeln!(s, "set multiplot layout 1,{}", panels.len());
    for p in panels {
        let _ = writeln!(s, "set title '{} at t = {}'", p.component.name(), p.t);
        let _ = writeln!(s, "splot '{}' every ::1 using 1:2:3 with points pt 7 ps 0.3 palette notitle", p.file);
    }
    let _ = writeln!(s, "unset multiplot");
    let _ = writeln!(s, "# figure {id}");
    s
}

/// Writes one CSV per panel, a metadata file and a gnuplot script.
pub fn figure(id: u8, grid: usize, r_min_fraction: f64, out: &Path) -> Result<Outcome> {
    let spec = figure_spec(id)?;
    if !(r_min_fraction > 0.0 && r_min_fraction < 1.0) {
        return Err(Error::Config(format!("r_min_fraction must lie in (0, 1), got {r_min_fraction}")));
    }
    std::fs::create_dir_all(out)?;
    let boundary = boundary_of(&spec.solution);
    let mut metas = Vec::new();
    let mut text = String::new();
    for panel in &spec.panels {
        let surface = sample_surface(&spec.solution, boundary.radius(panel.t), *panel, grid, r_min_fraction)?;
        let file = file_name(id, panel);
        std::fs::write(out.join(&file), surface_csv(&surface)?)?;
        let values: Vec<f64> = surface.cells.iter().filter_map(|c| c.2).collect();
        let meta = PanelMeta {
            file: file.clone(),
            component: panel.component,
            t: panel.t,
            radius: surface.radius,
            r_min: surface.r_min,
            masked: surface.cells.len() - values.len(),
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        };
        let _ = writeln!(text, "{file}  {} cells, {} masked, range [{:.6}, {:.6}]", surface.cells.len(), meta.masked, meta.min, meta.max);
        metas.push(meta);
    }
    std::fs::write(out.join(format!("fig{id}.gp")), gnuplot_script(id, &metas))?;
    let meta = FigureMeta {
        figure: id,
        solution: spec.solution,
        grid,
        r_min_fraction,
        mask: "cells with r > front radius or r < r_min_fraction * front radius are empty",
        panels: metas,
    };
    write_json(out, &format!("fig{id}_meta.json"), &meta)?;
    Ok(Outcome { passed: true, text })
}

pub fn default_r_min_fraction() -> f64 {
    R_MIN_FRACTION
}
