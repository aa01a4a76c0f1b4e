//! FAS multigrid for the coupled nonlinear system of one time step.

mod config;
pub mod smoother;
pub mod transfer;

pub use config::MgConfig;
pub use smoother::{smooth_ch_cell, sweep, BoxCache, SmoothStats};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::scheme::{residual, Frozen, Residual, SchemeParams, State};

/// One level: frozen old-time data, FAS right-hand side, iterate and box
/// matrices.
#[derive(Clone, Debug)]
pub struct Level {
    pub fz: Frozen,
    pub rhs: Residual,
    pub state: State,
    pub boxes: BoxCache,
}

impl Level {
    pub fn new(fz: Frozen, mut state: State, p: &SchemeParams) -> Self {
        let boxes = BoxCache::new(&fz, p, &mut state);
        Self { rhs: Residual::zeros(fz.grid, p.kind), state, fz, boxes }
    }

    pub fn sweep(&mut self, p: &SchemeParams, cfg: &MgConfig) -> SmoothStats {
        sweep(&self.fz, p, cfg, &mut self.state, &self.rhs, &self.boxes)
    }
}

/// Level 0 is the finest grid.
#[derive(Clone, Debug)]
pub struct MgHierarchy {
    pub levels: Vec<Level>,
}

impl MgHierarchy {
    /// Restricts the old state to every level and starts the fine iterate
    /// from it.
    pub fn build(old: &State, p: &SchemeParams, cfg: &MgConfig) -> Result<Self> {
        let mut grids: Vec<GridSpec> = vec![*old.grid()];
        while grids.len() < cfg.n_levels {
            match grids.last().unwrap().coarsen() {
                Some(g) => grids.push(g),
                None => break,
            }
        }
        let fz0 = Frozen::new(old, p)?;
        let mut levels = Vec::with_capacity(grids.len());
        let mut start = fz0.old.clone();
        start.time = old.time + p.dt;
        levels.push(Level::new(fz0, start, p));
        for &g in &grids[1..] {
            let prev = &levels.last().unwrap().fz.old;
            let old_c = transfer::restrict_state(prev, g, p);
            let fz = Frozen::new(&old_c, p)?;
            levels.push(Level::new(fz, old_c, p));
        }
        Ok(Self { levels })
    }
}

impl Residual {
    /// `self += a * other` on every equation.
    pub fn axpy(&mut self, a: f64, other: &Residual) {
        self.mom_x.axpy(a, &other.mom_x);
        self.mom_y.axpy(a, &other.mom_y);
        self.mass.axpy(a, &other.mass);
        self.phase.axpy(a, &other.phase);
        self.chem.axpy(a, &other.chem);
        if let (Some(x), Some(y)) = (self.proj.as_mut(), other.proj.as_ref()) {
            x.u.axpy(a, &y.u);
            x.v.axpy(a, &y.v);
        }
    }
}

/// Residual of the FAS equations `N(x) - f` on a level.
pub fn level_defect(lv: &Level, p: &SchemeParams) -> Residual {
    let mut r = residual(&lv.fz, p, &lv.state);
    r.axpy(-1.0, &lv.rhs);
    r
}

/// One V-cycle starting at level `l`.
pub fn vcycle(levels: &mut [Level], p: &SchemeParams, cfg: &MgConfig) {
    let (fine, rest) = levels.split_first_mut().expect("non-empty hierarchy");
    if rest.is_empty() {
        for _ in 0..cfg.coarse_sweeps {
            fine.sweep(p, cfg);
        }
        return;
    }
    for _ in 0..cfg.pre_smooths {
        fine.sweep(p, cfg);
    }
    let defect = level_defect(fine, p);
    let coarse = &mut rest[0];
    let g = coarse.fz.grid;
    let x0 = transfer::restrict_state(&fine.state, g, p);
    let mut rhs = residual(&coarse.fz, p, &x0);
    rhs.axpy(-1.0, &transfer::restrict_residual(&defect, g));
    coarse.rhs = rhs;
    coarse.state = x0.clone();
    vcycle(rest, p, cfg);
    transfer::prolong_correction(&mut fine.state, &rest[0].state, &x0, p);
    for _ in 0..cfg.post_smooths {
        fine.sweep(p, cfg);
    }
}

/// Outcome of one time-step solve.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveStats {
    pub cycles: usize,
    /// Largest residual max-norm before the first and after every cycle.
    pub history: Vec<f64>,
    pub norms: Vec<(&'static str, f64)>,
}

impl SolveStats {
    /// Ratio of successive residual norms.
    pub fn reduction_factors(&self) -> Vec<f64> {
        self.history.windows(2).map(|w| w[1] / w[0]).collect()
    }
}

fn pin_pressure(s: &mut State, p: &SchemeParams) {
    let mean = s.pressure_mean();
    s.p.data.iter_mut().for_each(|x| *x -= mean);
    s.fill_ghosts(p);
}

/// Advance one step: FAS V-cycles from the old state until every residual
/// max-norm is at most `cfg.tol`.
pub fn solve_timestep(old: &State, p: &SchemeParams, cfg: &MgConfig) -> Result<(State, SolveStats)> {
    cfg.validate()?;
    let mut h = MgHierarchy::build(old, p, cfg)?;
    let norm = |lv: &Level| level_defect(lv, p).max_norm(p);
    let first = norm(&h.levels[0]);
    let mut history = vec![first];
    if !first.is_finite() {
        return Err(Error::Divergence { cycles: 0, residual: first });
    }
    let mut cycles = 0;
    let mut current = first;
    while current > cfg.tol {
        if cycles == cfg.max_cycles {
            return Err(Error::NonConvergence { cycles, residual: current, tol: cfg.tol });
        }
        vcycle(&mut h.levels, p, cfg);
        pin_pressure(&mut h.levels[0].state, p);
        cycles += 1;
        current = norm(&h.levels[0]);
        history.push(current);
        if !current.is_finite() || !h.levels[0].state.is_finite() || current > 1e10 * first.max(1.0) {
            return Err(Error::Divergence { cycles, residual: current });
        }
    }
    let lv = h.levels.swap_remove(0);
    let norms = level_defect(&lv, p).norms(p);
    Ok((lv.state, SolveStats { cycles, history, norms }))
}
