//! Initial conditions.

use std::f64::consts::PI;

use super::config::{RunConfig, Scenario};
use crate::error::{Error, Result};
use crate::grid::{CellField, GridSpec};
use crate::scheme::{SchemeKind, State};

/// Interface profile `½(1 - tanh(d / w))`.
fn profile(d: f64, w: f64) -> f64 {
    0.5 * (1.0 - (d / w).tanh())
}

/// Phase field of a scenario sampled at cell centres; ghosts are left zero.
pub fn initial_phase(scenario: &Scenario, g: GridSpec, epsilon: f64) -> CellField {
    let width = 2.0 * (2.0 * epsilon).sqrt();
    let mut c = CellField::zeros(g);
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            let (x, y) = (g.xc(i), g.yc(j));
            c[(i, j)] = match *scenario {
                Scenario::Capillary { amplitude } => {
                    profile(y - (0.5 - amplitude * (2.0 * PI * x).cos()), width)
                }
                Scenario::Droplet { radius, center } => {
                    let r = (x - center[0]).hypot(y - center[1]);
                    profile(r - radius, 2.0 * 2f64.sqrt() * epsilon)
                }
                Scenario::RayleighTaylor { amplitude } => {
                    profile(y - (2.0 + amplitude * (2.0 * PI * x).cos()), width)
                }
                Scenario::Convergence { mean, amplitude } => {
                    mean + amplitude * ((2.0 * PI * x).cos() + (2.0 * PI * y).cos())
                }
                Scenario::Custom { phase } => phase,
            };
        }
    }
    c
}

/// Fluid at rest with the scenario's phase field and zero chemical potential
/// and pressure.
pub fn init_scenario(cfg: &RunConfig) -> Result<State> {
    let g = cfg.grid_spec()?;
    let p = cfg.scheme_params()?;
    let mut s = State::zeros(g, cfg.scheme);
    s.c = initial_phase(&cfg.scenario, g, cfg.physics.epsilon);
    if let Some(c) = s.c.data.iter().find(|&&c| !p.fluids.admissible(c)) {
        return Err(Error::Config(format!(
            "initial phase value {c} lies outside the range where the mixture density is defined"
        )));
    }
    if cfg.scheme == SchemeKind::Projection {
        s.conform(SchemeKind::Projection);
    }
    s.fill_ghosts(&p);
    Ok(s)
}
