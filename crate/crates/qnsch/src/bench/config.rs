//! JSON run configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{BcSet, GridSpec};
use crate::multigrid::MgConfig;
use crate::physics::{FluidPair, NondimGroups};
use crate::scheme::{GravityPlacement, SchemeKind, SchemeParams};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scheme: SchemeKind,
    pub grid: GridConfig,
    pub time: TimeConfig,
    pub physics: PhysicsConfig,
    pub bc: BcSet,
    pub scenario: Scenario,
    #[serde(default)]
    pub multigrid: MgConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub guards: Guards,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub m1: usize,
    pub m2: usize,
    #[serde(default = "one")]
    pub lx: f64,
    #[serde(default = "one")]
    pub ly: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "one_usize")]
    pub report_every: usize,
}

fn one_usize() -> usize {
    1
}

/// Nondimensional groups plus the fluid pair. `mach`, `pe` and `eps_m`
/// default to the asymptotic scalings `epsilon`, `1/epsilon`, `epsilon`;
/// `eta` defaults to the density-derived value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicsConfig {
    pub re: f64,
    pub we: f64,
    pub fr: f64,
    pub epsilon: f64,
    #[serde(default)]
    pub mach: Option<f64>,
    #[serde(default)]
    pub pe: Option<f64>,
    #[serde(default)]
    pub eta: Option<f64>,
    #[serde(default)]
    pub eps_m: Option<f64>,
    pub rho1: f64,
    pub rho2: f64,
    pub mu1: f64,
    pub mu2: f64,
    #[serde(default)]
    pub gravity_placement: GravityPlacement,
}

impl PhysicsConfig {
    pub fn fluids(&self) -> Result<FluidPair> {
        FluidPair::new(self.rho1, self.rho2, self.mu1, self.mu2)
    }

    pub fn groups(&self) -> Result<NondimGroups> {
        let fl = self.fluids()?;
        let eps = self.epsilon;
        NondimGroups::new(
            self.re,
            self.we,
            self.fr,
            self.mach.unwrap_or(eps),
            self.pe.unwrap_or(1.0 / eps),
            eps,
            &fl,
            self.eta,
            self.eps_m.unwrap_or(eps),
        )
    }
}

/// Initial condition family and its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Scenario {
    Capillary {
        #[serde(default = "default_amplitude")]
        amplitude: f64,
    },
    Droplet {
        #[serde(default = "default_radius")]
        radius: f64,
        #[serde(default = "default_center")]
        center: [f64; 2],
    },
    RayleighTaylor {
        #[serde(default = "default_rt_amplitude")]
        amplitude: f64,
    },
    /// `mean + amplitude (cos 2πx + cos 2πy)`.
    Convergence {
        #[serde(default)]
        mean: f64,
        #[serde(default = "default_one")]
        amplitude: f64,
    },
    /// Uniform phase at rest.
    Custom {
        phase: f64,
    },
}

fn default_one() -> f64 {
    1.0
}
fn default_amplitude() -> f64 {
    0.01
}
fn default_radius() -> f64 {
    0.25
}
fn default_center() -> [f64; 2] {
    [0.5, 0.5]
}
fn default_rt_amplitude() -> f64 {
    0.1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub directory: PathBuf,
    pub csv_name: String,
    pub snapshot_times: Vec<f64>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { directory: PathBuf::from("out"), csv_name: "timeseries.csv".into(), snapshot_times: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GuardMode {
    Off,
    #[default]
    Warn,
    Fail,
}

/// Per-step invariant checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Guards {
    pub mass: GuardMode,
    /// Relative per-step tolerance on the binary-fluid mass.
    pub mass_tol: f64,
    pub energy: GuardMode,
    /// Energy slack in units of `solver tol * |E_h|`.
    pub energy_slack: f64,
}

impl Default for Guards {
    fn default() -> Self {
        Self { mass: GuardMode::Warn, mass_tol: 1e-8, energy: GuardMode::Warn, energy_slack: 10.0 }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let cfg: Self =
            serde_json::from_str(&text).map_err(|source| Error::Json { path: path.to_path_buf(), source })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn grid_spec(&self) -> Result<GridSpec> {
        GridSpec::new(self.grid.m1, self.grid.m2, self.grid.lx, self.grid.ly).map_err(as_config)
    }

    pub fn scheme_params(&self) -> Result<SchemeParams> {
        let mut p =
            SchemeParams::new(self.physics.groups()?, self.physics.fluids()?, self.time.dt, self.scheme, self.bc)?;
        p.gravity = self.physics.gravity_placement;
        Ok(p)
    }

    /// Number of time steps; `t_end / dt` must be an integer to within rounding.
    pub fn steps(&self) -> Result<usize> {
        steps_for(self.time.t_end, self.time.dt)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid_spec()?;
        self.scheme_params()?;
        self.multigrid.validate().map_err(as_config)?;
        self.steps()?;
        if self.time.report_every == 0 {
            return Err(Error::Config("report_every must be at least 1".into()));
        }
        for &t in &self.output.snapshot_times {
            if !(0.0..=self.time.t_end).contains(&t) {
                return Err(Error::Config(format!("snapshot time {t} outside [0, t_end]")));
            }
            steps_for(t, self.time.dt)?;
        }
        if !(self.guards.mass_tol > 0.0 && self.guards.energy_slack >= 0.0) {
            return Err(Error::Config("guard tolerances must be positive".into()));
        }
        if let Scenario::RayleighTaylor { .. } = self.scenario {
            if (self.grid.ly - 4.0 * self.grid.lx).abs() > 1e-12 * self.grid.ly {
                return Err(Error::Config(format!(
                    "rayleigh_taylor requires ly = 4 lx, got lx = {}, ly = {}",
                    self.grid.lx, self.grid.ly
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn steps_for(t: f64, dt: f64) -> Result<usize> {
    let n = t / dt;
    let r = n.round();
    if !(t >= 0.0) || (n - r).abs() > 1e-9 * r.max(1.0) {
        return Err(Error::Config(format!("time {t} is not a whole number of steps of {dt}")));
    }
    Ok(r as usize)
}

fn as_config(e: Error) -> Error {
    match e {
        Error::Domain(m) | Error::Usage(m) => Error::Config(m),
        other => other,
    }
}
