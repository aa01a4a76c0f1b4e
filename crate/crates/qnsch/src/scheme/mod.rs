//! Fully discrete primitive and projection schemes: state containers,
//! special stencils and the nonlinear residuals.

mod local;
mod residual;
pub mod stencils;

pub use local::Frozen;
pub use residual::{residual, residual_primitive, residual_projection};
pub use stencils::{ch_advection_flux, half_time_fields, momentum_advection, surface_tension_force};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{BcSet, CellField, EwField, GridSpec, NsField};
use crate::physics::{FluidPair, NondimGroups};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Primitive,
    Projection,
}

impl std::str::FromStr for SchemeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "primitive" => Ok(Self::Primitive),
            "projection" => Ok(Self::Projection),
            _ => Err(Error::Config(format!("unknown scheme '{s}' (expected primitive or projection)"))),
        }
    }
}

/// Where the projection scheme applies gravity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GravityPlacement {
    /// In the predictor, weighted by the new density.
    #[default]
    Predictor,
    /// In the correction step, weighted by the new density.
    Correction,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams {
    pub groups: NondimGroups,
    pub fluids: FluidPair,
    pub dt: f64,
    pub kind: SchemeKind,
    pub bc: BcSet,
    #[serde(default)]
    pub gravity: GravityPlacement,
}

impl SchemeParams {
    pub fn new(groups: NondimGroups, fluids: FluidPair, dt: f64, kind: SchemeKind, bc: BcSet) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Config(format!("time step must be positive, got {dt}")));
        }
        bc.validate()?;
        Ok(Self { groups, fluids, dt, kind, bc, gravity: GravityPlacement::default() })
    }

    /// Boundary set for the end-of-step velocity `u^{n+1}`.
    pub fn velocity_bc(&self) -> BcSet {
        match self.kind {
            SchemeKind::Primitive => self.bc,
            SchemeKind::Projection => self.bc.normal_zero(),
        }
    }
}

/// Velocity pair on the staggered faces.
#[derive(Clone, Debug, PartialEq)]
pub struct Velocity {
    pub u: EwField,
    pub v: NsField,
}

impl Velocity {
    pub fn zeros(grid: GridSpec) -> Self {
        Self { u: EwField::zeros(grid), v: NsField::zeros(grid) }
    }

    pub fn fill_ghost(&mut self, bc: &BcSet) {
        self.u.fill_ghost(bc);
        self.v.fill_ghost(bc);
    }
}

/// Unknowns of one time level.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    pub c: CellField,
    /// `mu_bar = mu_c - alpha p_bar`.
    pub mu: CellField,
    pub p: CellField,
    pub u: EwField,
    pub v: NsField,
    /// Intermediate velocity of the projection scheme.
    pub tilde: Option<Velocity>,
    pub time: f64,
}

impl State {
    pub fn zeros(grid: GridSpec, kind: SchemeKind) -> Self {
        Self {
            c: CellField::zeros(grid),
            mu: CellField::zeros(grid),
            p: CellField::zeros(grid),
            u: EwField::zeros(grid),
            v: NsField::zeros(grid),
            tilde: (kind == SchemeKind::Projection).then(|| Velocity::zeros(grid)),
            time: 0.0,
        }
    }

    pub fn grid(&self) -> &GridSpec {
        self.c.grid()
    }

    pub fn fill_ghosts(&mut self, p: &SchemeParams) {
        let bc = p.bc;
        self.c.fill_ghost(&bc);
        self.mu.fill_ghost(&bc);
        self.p.fill_ghost(&bc);
        let vb = p.velocity_bc();
        self.u.fill_ghost(&vb);
        self.v.fill_ghost(&vb);
        if let Some(t) = self.tilde.as_mut() {
            t.fill_ghost(&bc);
        }
    }

    /// Make the intermediate velocity present (projection) or absent.
    pub fn conform(&mut self, kind: SchemeKind) {
        match kind {
            SchemeKind::Primitive => self.tilde = None,
            SchemeKind::Projection => {
                if self.tilde.is_none() {
                    self.tilde = Some(Velocity { u: self.u.clone(), v: self.v.clone() });
                }
            }
        }
    }

    /// Discrete mean of `p_bar` over interior cells.
    pub fn pressure_mean(&self) -> f64 {
        let g = self.grid();
        let mut s = 0.0;
        for j in 1..=g.m2 {
            for i in 1..=g.m1 {
                s += self.p[(i, j)];
            }
        }
        s / g.n_cells() as f64
    }

    pub fn is_finite(&self) -> bool {
        self.c.is_finite()
            && self.mu.is_finite()
            && self.p.is_finite()
            && self.u.is_finite()
            && self.v.is_finite()
            && self.tilde.as_ref().map_or(true, |t| t.u.is_finite() && t.v.is_finite())
    }
}

/// One field per discrete equation; zero entries outside the unknowns.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    /// x-momentum (primitive) or x-predictor (projection).
    pub mom_x: EwField,
    pub mom_y: NsField,
    pub mass: CellField,
    pub phase: CellField,
    pub chem: CellField,
    /// Velocity correction equations of the projection scheme.
    pub proj: Option<Velocity>,
}

impl Residual {
    pub fn zeros(grid: GridSpec, kind: SchemeKind) -> Self {
        Self {
            mom_x: EwField::zeros(grid),
            mom_y: NsField::zeros(grid),
            mass: CellField::zeros(grid),
            phase: CellField::zeros(grid),
            chem: CellField::zeros(grid),
            proj: (kind == SchemeKind::Projection).then(|| Velocity::zeros(grid)),
        }
    }

    /// Max-norms per equation, in the order momentum-x, momentum-y, mass,
    /// phase, chem, correction-x, correction-y.
    pub fn norms(&self, p: &SchemeParams) -> Vec<(&'static str, f64)> {
        let bc = p.bc;
        let mut out = vec![
            ("mom_x", self.mom_x.max_abs(&bc)),
            ("mom_y", self.mom_y.max_abs(&bc)),
            ("mass", self.mass.max_abs(&bc)),
            ("phase", self.phase.max_abs(&bc)),
            ("chem", self.chem.max_abs(&bc)),
        ];
        if let Some(pr) = &self.proj {
            let vb = p.velocity_bc();
            out.push(("proj_x", pr.u.max_abs(&vb)));
            out.push(("proj_y", pr.v.max_abs(&vb)));
        }
        out
    }

    /// Largest residual max-norm over all equations (NaN if any is NaN).
    pub fn max_norm(&self, p: &SchemeParams) -> f64 {
        let mut m = 0.0f64;
        for (_, v) in self.norms(p) {
            if v.is_nan() {
                return f64::NAN;
            }
            m = m.max(v);
        }
        m
    }
}
