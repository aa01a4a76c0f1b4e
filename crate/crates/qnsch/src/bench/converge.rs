//! Cauchy convergence study: refine `m` by 2 and `dt` by 4 per level.

use super::config::RunConfig;
use super::run::Simulation;
use crate::error::{Error, Result};
use crate::grid::inner::cell_l2;
use crate::grid::CellField;
use crate::multigrid::transfer::prolong_cell;
use crate::scheme::SchemeParams;

/// One refinement level of the schedule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Level {
    pub m1: usize,
    pub m2: usize,
    pub dt: f64,
}

/// Difference between adjacent levels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairError {
    pub coarse: Level,
    pub fine: Level,
    pub error: f64,
    /// `log2(e_k / e_{k+1})`; absent for the last pair.
    pub rate: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub pairs: Vec<PairError>,
}

impl ConvergenceTable {
    pub fn errors(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.error).collect()
    }

    pub fn rates(&self) -> Vec<f64> {
        self.pairs.iter().filter_map(|p| p.rate).collect()
    }
}

impl std::fmt::Display for ConvergenceTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{:>12} {:>12} {:>14} {:>8}", "coarse", "fine", "error", "rate")?;
        for p in &self.pairs {
            let rate = p.rate.map(|r| format!("{r:.3}")).unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "{:>12} {:>12} {:>14.6e} {:>8}",
                format!("{}x{}", p.coarse.m1, p.coarse.m2),
                format!("{}x{}", p.fine.m1, p.fine.m2),
                p.error,
                rate
            )?;
        }
        Ok(())
    }
}

/// `log2(e_k / e_{k+1})` for successive errors.
pub fn observed_rates(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

/// Schedule derived from the base grid and time step.
pub fn schedule(base: &RunConfig, levels: usize) -> Vec<Level> {
    (0..levels)
        .map(|k| Level {
            m1: base.grid.m1 << k,
            m2: base.grid.m2 << k,
            dt: base.time.dt / 4f64.powi(k as i32),
        })
        .collect()
}

/// Runs one level to the common final time and returns its phase field and
/// parameters.
pub fn run_level(base: &RunConfig, level: Level) -> Result<(CellField, SchemeParams)> {
    let mut cfg = base.clone();
    cfg.grid.m1 = level.m1;
    cfg.grid.m2 = level.m2;
    cfg.time.dt = level.dt;
    let n = cfg.steps().map_err(|_| {
        Error::Config(format!("t_end {} is not reachable with dt {} at level {}", base.time.t_end, level.dt, level.m1))
    })?;
    let mut sim = Simulation::new(&cfg)?;
    for _ in 0..n {
        sim.advance()?;
    }
    Ok((sim.state().c.clone(), *sim.params()))
}

/// `||c_fine - P c_coarse||_2` with bilinear prolongation.
pub fn pair_error(coarse: &CellField, fine: &CellField, p: &SchemeParams) -> f64 {
    let mut cc = coarse.clone();
    cc.fill_ghost(&p.bc);
    let mut diff = prolong_cell(&cc, *fine.grid());
    diff.axpy(-1.0, fine);
    cell_l2(&diff)
}

/// Runs `levels` refinements of `base` and tabulates the Cauchy errors.
pub fn converge(base: &RunConfig, levels: usize) -> Result<ConvergenceTable> {
    if levels < 2 {
        return Err(Error::Config(format!("convergence needs at least 2 levels, got {levels}")));
    }
    let sched = schedule(base, levels);
    let mut fields = Vec::with_capacity(levels);
    for &lv in &sched {
        let t0 = std::time::Instant::now();
        fields.push(run_level(base, lv)?);
        log::info!("level {}x{} dt={} done in {:.1}s", lv.m1, lv.m2, lv.dt, t0.elapsed().as_secs_f64());
    }
    let errors: Vec<f64> = fields.windows(2).map(|w| pair_error(&w[0].0, &w[1].0, &w[1].1)).collect();
    let rates = observed_rates(&errors);
    let pairs = errors
        .iter()
        .enumerate()
        .map(|(k, &error)| PairError { coarse: sched[k], fine: sched[k + 1], error, rate: rates.get(k).copied() })
        .collect();
    Ok(ConvergenceTable { pairs })
}
