//! Discrete masses, energy, divergence and scenario observables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::inner::{cell_ip, weighted_gradient, weighted_velocity};
use crate::grid::ops::{a_y, d_x, d_y};
use crate::grid::CellField;
use crate::physics::{bulk_potential, density_of, FluidPair};
use crate::scheme::{SchemeParams, State};

/// Scenario observable attached to a report row.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Metric {
    /// Capillary amplitude or droplet rise velocity.
    Scalar(f64),
    /// Rayleigh-Taylor tips: top of the rising fluid, bottom of the falling one.
    Tips(f64, f64),
}

/// One row of the time series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    pub time: f64,
    pub mass_rho: f64,
    pub mass_rhoc: f64,
    pub energy: f64,
    pub energy_delta: f64,
    pub max_div: f64,
    pub cycles_used: usize,
    pub scenario_metric: Option<Metric>,
}

fn density_field(c: &CellField, fl: &FluidPair) -> Result<CellField> {
    let g = c.grid();
    let mut rho = CellField::zeros(*g);
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            rho[(i, j)] = density_of(c[(i, j)], fl)?;
        }
    }
    Ok(rho)
}

/// `E_h`: kinetic + gradient + bulk + gravitational potential energy.
pub fn discrete_energy(s: &State, p: &SchemeParams) -> Result<f64> {
    let g = s.grid();
    let gr = &p.groups;
    let h2 = g.h * g.h;
    let rho = density_field(&s.c, &p.fluids)?;
    let kin = 0.5 * weighted_velocity(&rho, &s.u, &s.v)?.powi(2);
    let grad = gr.epsilon * gr.eta / (2.0 * gr.we) * weighted_gradient(&rho, &s.c)?.powi(2);
    let mut bulk = 0.0;
    let mut pot = 0.0;
    for j in 1..=g.m2 {
        let y = g.yc(j);
        for i in 1..=g.m1 {
            let r = rho[(i, j)];
            bulk += r * bulk_potential(s.c[(i, j)]);
            pot += r * y;
        }
    }
    Ok(kin + grad + gr.eta * h2 / (gr.epsilon * gr.we) * bulk + h2 / gr.fr * pot)
}

/// `(h^2 (rho, 1), h^2 (rho c, 1))` over interior cells.
pub fn total_masses(s: &State, fl: &FluidPair) -> Result<(f64, f64)> {
    let g = s.grid();
    let h2 = g.h * g.h;
    let mut m = 0.0;
    let mut mc = 0.0;
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            let c = s.c[(i, j)];
            let r = density_of(c, fl)?;
            m += r;
            mc += r * c;
        }
    }
    Ok((h2 * m, h2 * mc))
}

/// `d_x u + d_y v` per cell.
pub fn divergence_field(s: &State) -> CellField {
    let mut div = d_x(&s.u);
    div.axpy(1.0, &d_y(&s.v));
    div
}

/// Largest `|d_x u + d_y v|` over interior cells.
pub fn max_divergence(s: &State) -> f64 {
    let g = *s.grid();
    let div = divergence_field(s);
    let mut m = 0.0f64;
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            m = m.max(div[(i, j)].abs());
        }
    }
    m
}

/// Largest `|d_x u + d_y v|` over interior cells with `c (1 - c) < band`,
/// i.e. away from the diffuse interface.
pub fn bulk_divergence(s: &State, band: f64) -> f64 {
    let g = *s.grid();
    let div = divergence_field(s);
    let mut m = 0.0f64;
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            let c = s.c[(i, j)];
            if c * (1.0 - c) < band {
                m = m.max(div[(i, j)].abs());
            }
        }
    }
    m
}

/// c-weighted mean vertical velocity.
pub fn rising_velocity(s: &State) -> Result<f64> {
    let vc = a_y(&s.v);
    let den = cell_ip(&s.c, &s.c.map(|_| 1.0));
    if den == 0.0 || !den.is_finite() {
        return Err(Error::Domain(format!("rising velocity needs (c,1) > 0, got {den}")));
    }
    Ok(cell_ip(&vc, &s.c) / den)
}

/// Heights `y` in column `i` where `c` crosses 1/2, interpolated linearly
/// between cell centres, bottom to top.
pub fn column_crossings(s: &State, i: usize) -> Vec<f64> {
    let g = s.grid();
    let mut out = Vec::new();
    for j in 1..g.m2 {
        let (a, b) = (s.c[(i, j)] - 0.5, s.c[(i, j + 1)] - 0.5);
        if a == 0.0 {
            out.push(g.yc(j));
        } else if a * b < 0.0 {
            out.push(g.yc(j) + a / (a - b) * g.h);
        }
    }
    if s.c[(i, g.m2)] == 0.5 {
        out.push(g.yc(g.m2));
    }
    out
}

/// Capillary amplitude `H = 1/2 - y*` at the column nearest `x = 0`, so
/// that the initial profile `y = 1/2 - H0 cos(2 pi x)` gives `H(0) = H0`.
pub fn capillary_amplitude(s: &State) -> Result<f64> {
    let ys = column_crossings(s, 1);
    ys.first()
        .map(|y| 0.5 - y)
        .ok_or_else(|| Error::Domain("no c = 1/2 crossing in column 1".into()))
}

/// Highest and lowest interface crossing over all columns.
pub fn rt_tips(s: &State) -> Result<(f64, f64)> {
    let g = s.grid();
    let mut top = f64::NEG_INFINITY;
    let mut bottom = f64::INFINITY;
    for i in 1..=g.m1 {
        let ys = column_crossings(s, i);
        if ys.is_empty() {
            return Err(Error::Domain(format!("no c = 1/2 crossing in column {i}")));
        }
        for y in ys {
            top = top.max(y);
            bottom = bottom.min(y);
        }
    }
    Ok((top, bottom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{BcSet, GridSpec};
    use crate::physics::NondimGroups;
    use crate::scheme::SchemeKind;

    fn params(fl: FluidPair) -> SchemeParams {
        let g = NondimGroups::new(1.0, 1.0, 2.0, 0.01, 100.0, 0.01, &fl, Some(0.5), 0.01).unwrap();
        SchemeParams::new(g, fl, 1e-3, SchemeKind::Primitive, BcSet::walls()).unwrap()
    }

    #[test]
    fn energy_of_pure_resting_fluid_is_potential_only() {
        let fl = FluidPair::new(1.0, 10.0, 1.0, 1.0).unwrap();
        let grid = GridSpec::new(8, 8, 1.0, 1.0).unwrap();
        let mut s = State::zeros(grid, SchemeKind::Primitive);
        s.c.fill(1.0);
        let p = params(fl);
        s.fill_ghosts(&p);
        let e = discrete_energy(&s, &p).unwrap();
        assert!((e - 0.5 / 2.0).abs() < 1e-15, "{e}");
    }

    #[test]
    fn energy_of_uniform_mixture() {
        let fl = FluidPair::new(1.0, 10.0, 1.0, 1.0).unwrap();
        let grid = GridSpec::new(8, 8, 1.0, 1.0).unwrap();
        let mut s = State::zeros(grid, SchemeKind::Primitive);
        s.c.fill(0.5);
        let p = params(fl);
        s.fill_ghosts(&p);
        let gr = p.groups;
        let h2 = grid.h * grid.h;
        let r = 10.0 / 5.5;
        let bulk = gr.eta * h2 / (gr.epsilon * gr.we) * r * 0.015625 * 64.0;
        let pot = r * 0.5 / gr.fr;
        let e = discrete_energy(&s, &p).unwrap();
        assert!((e - bulk - pot).abs() < 1e-13, "{e} vs {}", bulk + pot);
    }

    #[test]
    fn masses_of_split_domain() {
        let fl = FluidPair::new(1.0, 10.0, 1.0, 1.0).unwrap();
        let grid = GridSpec::new(8, 8, 1.0, 1.0).unwrap();
        let mut s = State::zeros(grid, SchemeKind::Primitive);
        for j in 1..=8 {
            for i in 1..=8 {
                s.c[(i, j)] = if j <= 4 { 1.0 } else { 0.0 };
            }
        }
        let (m, mc) = total_masses(&s, &fl).unwrap();
        assert!((m - 5.5).abs() < 1e-14);
        assert!((mc - 0.5).abs() < 1e-15);
    }
}
