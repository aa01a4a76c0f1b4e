//! MAC staggered grid: field storage, ghost layers, difference/average
//! operators and the discrete inner products.

mod bc;
mod field;
pub mod inner;
pub mod ops;

pub use bc::{Axis, BcSet, CellBc, VelocityBc};
pub use field::{CellField, EwField, Images, NsField, VertexField};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform grid of `m1 x m2` square cells of size `h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub m1: usize,
    pub m2: usize,
    pub h: f64,
    pub lx: f64,
    pub ly: f64,
}

impl GridSpec {
    pub fn new(m1: usize, m2: usize, lx: f64, ly: f64) -> Result<Self> {
        if m1 < 2 || m2 < 2 {
            return Err(Error::Config(format!("grid needs at least 2x2 cells, got {m1}x{m2}")));
        }
        if !(lx > 0.0 && ly > 0.0 && lx.is_finite() && ly.is_finite()) {
            return Err(Error::Config(format!("domain extents must be positive, got {lx} x {ly}")));
        }
        let h = lx / m1 as f64;
        let hy = ly / m2 as f64;
        if ((h - hy) / h).abs() > 1e-12 {
            return Err(Error::Config(format!(
                "cells must be square: Lx/m1 = {h} but Ly/m2 = {hy}"
            )));
        }
        Ok(Self { m1, m2, h, lx, ly })
    }

    /// Grid with twice the spacing, if both counts are even and stay >= 4.
    pub fn coarsen(&self) -> Option<Self> {
        if self.m1 % 2 == 0 && self.m2 % 2 == 0 && self.m1 >= 8 && self.m2 >= 8 {
            Some(Self { m1: self.m1 / 2, m2: self.m2 / 2, h: 2.0 * self.h, lx: self.lx, ly: self.ly })
        } else {
            None
        }
    }

    /// Centre of cell column `i` (1-based; ghosts at 0 and m1+1).
    #[inline]
    pub fn xc(&self, i: usize) -> f64 {
        (i as f64 - 0.5) * self.h
    }

    #[inline]
    pub fn yc(&self, j: usize) -> f64 {
        (j as f64 - 0.5) * self.h
    }

    pub fn n_cells(&self) -> usize {
        self.m1 * self.m2
    }
}
