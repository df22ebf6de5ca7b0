//! Run configuration, read from a TOML file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ConstitutiveTriplet, PowerSum};
use crate::residuals::{Engine, SampleSet};
use crate::solutions::{
    GaussianDecay, LogMoving, PowerMoving, SolutionFamily, StationaryFront, SteadyState, R_MIN_FRACTION,
};
use crate::symmetry::GroupElement;

/// Everything one run needs. Unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub family: Option<FamilyConfig>,
    #[serde(default)]
    pub samples: SamplesConfig,
    #[serde(default)]
    pub engine: EngineConfig,
    #[serde(default)]
    pub tolerances: ToleranceConfig,
    #[serde(default)]
    pub overrides: OverrideConfig,
    pub orbit: Option<OrbitConfig>,
    pub figure: Option<FigureConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Free parameters of one solution family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilyConfig {
    Gaussian { c1: f64, c3: f64, c4: f64, n: f64, d0: f64, lambda: f64, sigma0: f64, delta: f64 },
    Stationary { c3: f64, c4: f64, n: f64, lambda: f64, d0: f64 },
    MovingPower { c1: f64, delta: f64, m: f64, n: f64, lambda: f64 },
    MovingLog { c1: f64, delta: f64, n: f64, lambda: f64 },
    /// Proliferation `k1 α^m - k2 α^n` with `k1, k2` derived from `c3`.
    Steady { c1: f64, c3: f64, delta: f64, m: f64, n: f64, lambda: f64, d0: f64 },
}

impl FamilyConfig {
    pub fn build(&self) -> Result<SolutionFamily> {
        Ok(match *self {
            FamilyConfig::Gaussian { c1, c3, c4, n, d0, lambda, sigma0, delta } => {
                SolutionFamily::Gaussian(GaussianDecay::new(c1, c3, c4, n, d0, lambda, sigma0, delta)?)
            }
            FamilyConfig::Stationary { c3, c4, n, lambda, d0 } => {
                SolutionFamily::Stationary(StationaryFront::new(c3, c4, n, lambda, d0)?)
            }
            FamilyConfig::MovingPower { c1, delta, m, n, lambda } => {
                SolutionFamily::PowerMoving(PowerMoving::new(c1, delta, m, n, lambda)?)
            }
            FamilyConfig::MovingLog { c1, delta, n, lambda } => {
                SolutionFamily::LogMoving(LogMoving::new(c1, delta, n, lambda)?)
            }
            FamilyConfig::Steady { c1, c3, delta, m, n, lambda, d0 } => {
                SolutionFamily::Steady(SteadyState::new(c1, c3, delta, m, n, lambda, d0)?)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplesConfig {
    /// Defaults to `[0.5, 1, 2]`, or `[1]` for the steady family.
    pub times: Option<Vec<f64>>,
    pub n_r: usize,
    pub n_theta: usize,
    pub r_min_fraction: f64,
    /// Points on the front for the boundary residual.
    pub boundary_points: usize,
    /// Radii for the reduced residuals.
    pub reduced_points: usize,
    /// Coarser annulus used for orbit checks.
    pub orbit_n_r: usize,
    pub orbit_n_theta: usize,
}

impl Default for SamplesConfig {
    fn default() -> Self {
        SamplesConfig {
            times: None,
            n_r: 64,
            n_theta: 32,
            r_min_fraction: R_MIN_FRACTION,
            boundary_points: 64,
            reduced_points: 64,
            orbit_n_r: 16,
            orbit_n_theta: 8,
        }
    }
}

impl SamplesConfig {
    pub fn times_for(&self, sol: &SolutionFamily) -> Vec<f64> {
        match &self.times {
            Some(t) => t.clone(),
            None if sol.is_time_dependent() => vec![0.5, 1.0, 2.0],
            None => vec![1.0],
        }
    }

    pub fn annulus(&self, sol: &SolutionFamily) -> SampleSet {
        SampleSet {
            times: self.times_for(sol),
            r_min_fraction: self.r_min_fraction,
            n_r: self.n_r,
            n_theta: self.n_theta,
        }
    }

    pub fn orbit_annulus(&self, sol: &SolutionFamily) -> SampleSet {
        SampleSet { n_r: self.orbit_n_r, n_theta: self.orbit_n_theta, ..self.annulus(sol) }
    }

    fn validate(&self) -> Result<()> {
        if self.n_r == 0 || self.n_theta == 0 || self.boundary_points == 0 || self.reduced_points == 0 {
            return Err(Error::Config("sample counts must be positive".into()));
        }
        if !(self.r_min_fraction > 0.0 && self.r_min_fraction < 1.0) {
            return Err(Error::Config(format!("r_min_fraction must lie in (0, 1), got {}", self.r_min_fraction)));
        }
        if let Some(t) = &self.times {
            if t.is_empty() || t.iter().any(|&t| !(t > 0.0)) {
                return Err(Error::Config("sample times must be positive and non-empty".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    Analytic,
    Fd,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    pub kind: EngineKind,
    /// Truncation order of the finite-difference engine, 2 or 4.
    pub scheme: u8,
    /// Finite-difference step as a fraction of the front radius at `t = 1`.
    pub h_rel: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { kind: EngineKind::Analytic, scheme: 4, h_rel: 1e-4 }
    }
}

impl EngineConfig {
    pub fn engine(&self, delta: f64) -> Engine {
        match self.kind {
            EngineKind::Analytic => Engine::Analytic,
            EngineKind::Fd => Engine::Fd { scheme: self.scheme, h: self.h_rel * delta },
        }
    }
}

/// Pass thresholds. `governing` defaults to `1e-9` for the stationary and
/// steady families and `1e-8` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceConfig {
    pub governing: Option<f64>,
    pub boundary: f64,
    pub reduced: f64,
    pub orbit_growth: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig { governing: None, boundary: 1e-10, reduced: 1e-9, orbit_growth: 10.0 }
    }
}

impl ToleranceConfig {
    pub fn governing_for(&self, sol: &SolutionFamily) -> f64 {
        self.governing.unwrap_or(match sol {
            SolutionFamily::Stationary(_) | SolutionFamily::Steady(_) => 1e-9,
            _ => 1e-8,
        })
    }
}

/// Deliberate departures from the closed form's own laws.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideConfig {
    /// Added to the proliferation scale `s0` of a power-law triplet.
    #[serde(default)]
    pub s0_shift: f64,
    /// Re-expresses power laws as general laws, which hides their scaling.
    #[serde(default)]
    pub general_laws: bool,
}

impl OverrideConfig {
    /// The family's constitutive laws after the overrides.
    pub fn triplet(&self, sol: &SolutionFamily) -> Result<ConstitutiveTriplet> {
        let base = sol.triplet();
        if self.s0_shift == 0.0 && !self.general_laws {
            return Ok(base);
        }
        let Some(mut p) = base.power_law() else {
            return Err(Error::Config(format!("overrides need power-law laws, the {} family has general ones", sol.id())));
        };
        p.s0 += self.s0_shift;
        Ok(if self.general_laws {
            ConstitutiveTriplet::general(
                PowerSum::monomial(p.s0, p.n),
                PowerSum::monomial(p.d0, p.m),
                PowerSum::monomial(p.sigma0, p.n - 1.0),
            )
        } else {
            ConstitutiveTriplet::PowerLaw(p)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitConfig {
    pub elements: Vec<GroupElement>,
    /// Replaces each element's own `eps` with every listed value.
    pub eps: Option<Vec<f64>>,
}

impl OrbitConfig {
    pub fn expanded(&self) -> Vec<GroupElement> {
        match &self.eps {
            None => self.elements.clone(),
            Some(list) => self
                .elements
                .iter()
                .flat_map(|e| list.iter().map(move |&v| e.with_eps(v)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FigureConfig {
    pub id: Option<u8>,
    pub grid: Option<usize>,
    pub r_min_fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.samples.validate()?;
        if !(cfg.engine.h_rel > 0.0) || !matches!(cfg.engine.scheme, 2 | 4) {
            return Err(Error::Config("engine needs h_rel > 0 and scheme 2 or 4".into()));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn family(&self) -> Result<&FamilyConfig> {
        self.family
            .as_ref()
            .ok_or_else(|| Error::Config("the config has no [family] section".into()))
    }
}
