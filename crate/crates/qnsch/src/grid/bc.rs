use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
        }
    }
}

/// Boundary rule for cell-centred scalars on one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellBc {
    Neumann,
    Periodic,
}

/// Boundary rule for the velocity on one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VelocityBc {
    NoSlip,
    NormalZero,
    Periodic,
}

/// Per-axis boundary conditions; index 0 is x, index 1 is y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BcSet {
    pub cell: [CellBc; 2],
    pub velocity: [VelocityBc; 2],
}

/// How a ghost entry is obtained along one direction of a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rule {
    /// Cell-type position, ghost = +interior mirror.
    Even,
    /// Cell-type position, ghost = -interior mirror.
    Odd,
    /// Cell-type position, wrap-around.
    Wrap,
    /// Face-type position with wall faces held at zero.
    Wall,
    /// Face-type position, wrap-around with period n.
    WrapFace,
}

impl BcSet {
    /// Neumann scalars and no-slip walls on all four sides.
    pub fn walls() -> Self {
        Self { cell: [CellBc::Neumann; 2], velocity: [VelocityBc::NoSlip; 2] }
    }

    /// Doubly periodic.
    pub fn periodic() -> Self {
        Self { cell: [CellBc::Periodic; 2], velocity: [VelocityBc::Periodic; 2] }
    }

    /// Periodic in x, walls at the bottom and top.
    pub fn channel() -> Self {
        Self {
            cell: [CellBc::Periodic, CellBc::Neumann],
            velocity: [VelocityBc::Periodic, VelocityBc::NoSlip],
        }
    }

    pub fn validate(&self) -> Result<()> {
        for a in 0..2 {
            let cp = self.cell[a] == CellBc::Periodic;
            let vp = self.velocity[a] == VelocityBc::Periodic;
            if cp != vp {
                return Err(Error::Config(format!(
                    "axis {a}: periodicity must apply to scalars and velocity jointly ({:?} vs {:?})",
                    self.cell[a], self.velocity[a]
                )));
            }
        }
        Ok(())
    }

    pub fn is_periodic(&self, axis: Axis) -> bool {
        self.cell[axis.index()] == CellBc::Periodic
    }

    /// Same set with no-slip walls relaxed to normal-zero walls.
    pub fn normal_zero(&self) -> Self {
        let mut out = *self;
        for v in out.velocity.iter_mut() {
            if *v == VelocityBc::NoSlip {
                *v = VelocityBc::NormalZero;
            }
        }
        out
    }

    pub(crate) fn cell_rule(&self, axis: Axis) -> Rule {
        match self.cell[axis.index()] {
            CellBc::Neumann => Rule::Even,
            CellBc::Periodic => Rule::Wrap,
        }
    }

    /// Rule for a velocity component along the axis it is normal to.
    pub(crate) fn normal_rule(&self, axis: Axis) -> Rule {
        match self.velocity[axis.index()] {
            VelocityBc::Periodic => Rule::WrapFace,
            _ => Rule::Wall,
        }
    }

    /// Rule for a velocity component along an axis tangential to it.
    pub(crate) fn tangential_rule(&self, axis: Axis) -> Rule {
        match self.velocity[axis.index()] {
            VelocityBc::NoSlip => Rule::Odd,
            VelocityBc::NormalZero => Rule::Even,
            VelocityBc::Periodic => Rule::Wrap,
        }
    }
}
