use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multigrid controls.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MgConfig {
    /// Upper bound on the number of levels; coarsening also stops once a
    /// further halving would leave fewer than 4 cells per direction.
    pub n_levels: usize,
    pub pre_smooths: usize,
    pub post_smooths: usize,
    pub coarse_sweeps: usize,
    /// Target for the largest residual max-norm.
    pub tol: f64,
    pub max_cycles: usize,
    pub newton_iters: usize,
    pub newton_tol: f64,
    /// Relaxation weight on the box corrections.
    pub box_relax: f64,
}

impl Default for MgConfig {
    fn default() -> Self {
        Self {
            n_levels: 16,
            pre_smooths: 2,
            post_smooths: 2,
            coarse_sweeps: 20,
            tol: 1e-7,
            max_cycles: 200,
            newton_iters: 5,
            newton_tol: 1e-10,
            box_relax: 1.0,
        }
    }
}

impl MgConfig {
    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("n_levels", self.n_levels),
            ("pre_smooths", self.pre_smooths),
            ("post_smooths", self.post_smooths),
            ("coarse_sweeps", self.coarse_sweeps),
            ("max_cycles", self.max_cycles),
            ("newton_iters", self.newton_iters),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(Error::Config(format!("multigrid {name} must be positive")));
            }
        }
        if !(self.tol > 0.0) || !(self.newton_tol > 0.0) {
            return Err(Error::Config("multigrid tolerances must be positive".into()));
        }
        if !(self.box_relax > 0.0 && self.box_relax <= 1.5) {
            return Err(Error::Config(format!("box_relax must lie in (0, 1.5], got {}", self.box_relax)));
        }
        Ok(())
    }
}
