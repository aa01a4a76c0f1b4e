//! Primitive versus projection after a single step from the same data.

use super::config::RunConfig;
use super::converge::observed_rates;
use super::run::Simulation;
use crate::error::{Error, Result};
use crate::grid::inner::{cell_l2, weighted_velocity};
use crate::grid::CellField;
use crate::scheme::{SchemeKind, State};

/// Gap between the two schemes for each time step.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheck {
    pub dts: Vec<f64>,
    pub gaps: Vec<f64>,
    /// Observed orders, assuming each `dt` halves the previous one.
    pub orders: Vec<f64>,
}

fn one_step(cfg: &RunConfig, kind: SchemeKind, dt: f64) -> Result<State> {
    let mut c = cfg.clone();
    c.scheme = kind;
    c.time.dt = dt;
    c.time.t_end = dt;
    let mut sim = Simulation::new(&c)?;
    sim.advance()?;
    Ok(sim.state().clone())
}

/// `||c_a - c_b|| + ||u_a - u_b||` after one step of size `dt`.
pub fn scheme_gap(cfg: &RunConfig, dt: f64) -> Result<f64> {
    let a = one_step(cfg, SchemeKind::Primitive, dt)?;
    let b = one_step(cfg, SchemeKind::Projection, dt)?;
    let one = CellField::from_fn(*a.grid(), |_, _| 1.0);
    Ok(cell_l2(&a.c.sub(&b.c)) + weighted_velocity(&one, &a.u.sub(&b.u), &a.v.sub(&b.v))?)
}

/// Runs [`scheme_gap`] for every entry of `dts`; the density ratio must be one.
pub fn cross_check(cfg: &RunConfig, dts: &[f64]) -> Result<CrossCheck> {
    if cfg.physics.rho1 != cfg.physics.rho2 {
        return Err(Error::Config("the scheme cross-check needs matched densities".into()));
    }
    let gaps = dts.iter().map(|&dt| scheme_gap(cfg, dt)).collect::<Result<Vec<_>>>()?;
    Ok(CrossCheck { dts: dts.to_vec(), orders: observed_rates(&gaps), gaps })
}
