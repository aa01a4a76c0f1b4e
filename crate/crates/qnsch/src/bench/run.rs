//! Time loop with reporting, invariant guards and snapshots.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use super::config::{steps_for, GuardMode, RunConfig, Scenario};
use super::output::{write_snapshot, TimeseriesWriter};
use super::scenario::init_scenario;
use crate::diagnostics::{
    capillary_amplitude, discrete_energy, max_divergence, rising_velocity, rt_tips, total_masses, Metric, StepReport,
};
use crate::error::{Error, Result};
use crate::multigrid::{solve_timestep, SolveStats};
use crate::scheme::{SchemeParams, State};

/// Per-step record kept by [`Simulation`].
#[derive(Clone, Debug, PartialEq)]
pub struct StepOutcome {
    pub report: StepReport,
    pub stats: SolveStats,
    /// Relative changes of `(rho, 1)` and `(rho c, 1)` over the step.
    pub mass_change: f64,
    pub mass_rhoc_change: f64,
    pub seconds: f64,
}

/// A configured run advanced one step at a time.
pub struct Simulation {
    cfg: RunConfig,
    params: SchemeParams,
    state: State,
    step: usize,
    energy: f64,
    masses: (f64, f64),
}

impl Simulation {
    pub fn new(cfg: &RunConfig) -> Result<Self> {
        cfg.validate()?;
        Self::from_state(cfg, init_scenario(cfg)?)
    }

    /// Starts from an explicit state instead of the scenario.
    pub fn from_state(cfg: &RunConfig, mut state: State) -> Result<Self> {
        let params = cfg.scheme_params()?;
        state.conform(params.kind);
        state.fill_ghosts(&params);
        let energy = discrete_energy(&state, &params)?;
        let masses = total_masses(&state, &params.fluids)?;
        Ok(Self { cfg: cfg.clone(), params, state, step: 0, energy, masses })
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn config(&self) -> &RunConfig {
        &self.cfg
    }

    pub fn steps_taken(&self) -> usize {
        self.step
    }

    pub fn metric(&self) -> Option<Metric> {
        let s = &self.state;
        let m = match self.cfg.scenario {
            Scenario::Capillary { .. } => capillary_amplitude(s).map(Metric::Scalar),
            Scenario::Droplet { .. } => rising_velocity(s).map(Metric::Scalar),
            Scenario::RayleighTaylor { .. } => rt_tips(s).map(|(a, b)| Metric::Tips(a, b)),
            Scenario::Convergence { .. } | Scenario::Custom { .. } => return None,
        };
        match m {
            Ok(m) => Some(m),
            Err(e) => {
                log::warn!("t={}: scenario metric unavailable: {e}", s.time);
                None
            }
        }
    }

    /// Report row for the current state.
    pub fn report(&self, energy_delta: f64, cycles: usize) -> StepReport {
        StepReport {
            time: self.state.time,
            mass_rho: self.masses.0,
            mass_rhoc: self.masses.1,
            energy: self.energy,
            energy_delta,
            max_div: max_divergence(&self.state),
            cycles_used: cycles,
            scenario_metric: self.metric(),
        }
    }

    /// Solves one time step and applies the configured guards.
    pub fn advance(&mut self) -> Result<StepOutcome> {
        let t0 = Instant::now();
        let (mut next, stats) = solve_timestep(&self.state, &self.params, &self.cfg.multigrid)?;
        next.time = (self.step + 1) as f64 * self.params.dt;
        let energy = discrete_energy(&next, &self.params)?;
        let masses = total_masses(&next, &self.params.fluids)?;
        let mass_change = (masses.0 - self.masses.0) / self.masses.0;
        let mass_rhoc_change = (masses.1 - self.masses.1) / self.masses.1.abs().max(f64::MIN_POSITIVE);
        let delta = energy - self.energy;
        self.state = next;
        self.step += 1;
        self.energy = energy;
        self.masses = masses;
        let seconds = t0.elapsed().as_secs_f64();
        log::debug!("step {} t={} cycles={} wall={seconds:.3}s", self.step, self.state.time, stats.cycles);
        let g = self.cfg.guards;
        if mass_change.abs() > g.mass_tol {
            self.breach(g.mass, format!("relative mass change {mass_change:e} exceeds {:e}", g.mass_tol))?;
        }
        let slack = g.energy_slack * self.cfg.multigrid.tol * energy.abs();
        if delta > slack {
            self.breach(g.energy, format!("energy increased by {delta:e} (allowed {slack:e})"))?;
        }
        let report = self.report(delta, stats.cycles);
        Ok(StepOutcome { report, stats, mass_change, mass_rhoc_change, seconds })
    }

    fn breach(&self, mode: GuardMode, what: String) -> Result<()> {
        match mode {
            GuardMode::Off => Ok(()),
            GuardMode::Warn => {
                log::warn!("t={}: {what}", self.state.time);
                Ok(())
            }
            GuardMode::Fail => Err(Error::Invariant { time: self.state.time, what }),
        }
    }
}

/// Files and rows produced by [`run`].
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub reports: Vec<StepReport>,
    pub csv: PathBuf,
    pub snapshots: Vec<PathBuf>,
    pub final_state: State,
    pub max_cycles: usize,
    pub wall_seconds: f64,
}

/// Runs a configuration to `t_end`, writing the time series and snapshots
/// into `out` (or the configured directory).
pub fn run(cfg: &RunConfig, out: Option<&Path>) -> Result<RunSummary> {
    let dir = out.map(Path::to_path_buf).unwrap_or_else(|| cfg.output.directory.clone());
    std::fs::create_dir_all(&dir).map_err(|source| Error::Io { path: dir.clone(), source })?;
    let csv = dir.join(&cfg.output.csv_name);
    let snap_steps: BTreeSet<usize> =
        cfg.output.snapshot_times.iter().map(|&t| steps_for(t, cfg.time.dt)).collect::<Result<_>>()?;
    let n = cfg.steps()?;

    let t0 = Instant::now();
    let mut sim = Simulation::new(cfg)?;
    let mut writer = TimeseriesWriter::create(&csv)?;
    let mut reports = Vec::new();
    let mut snapshots = Vec::new();
    let snap = |sim: &Simulation, snapshots: &mut Vec<PathBuf>| -> Result<()> {
        if snap_steps.contains(&sim.steps_taken()) {
            let path = dir.join(format!("snapshot_{:06}.vtk", sim.steps_taken()));
            write_snapshot(sim.state(), &path)?;
            snapshots.push(path);
        }
        Ok(())
    };

    let first = sim.report(0.0, 0);
    writer.write(&first)?;
    reports.push(first);
    snap(&sim, &mut snapshots)?;
    let mut last_energy = sim.energy;
    let mut max_cycles = 0;
    for k in 1..=n {
        let o = sim.advance()?;
        max_cycles = max_cycles.max(o.stats.cycles);
        if k % cfg.time.report_every == 0 || k == n {
            let mut r = o.report;
            r.energy_delta = r.energy - last_energy;
            last_energy = r.energy;
            writer.write(&r)?;
            reports.push(r);
        }
        snap(&sim, &mut snapshots)?;
    }
    Ok(RunSummary {
        reports,
        csv,
        snapshots,
        final_state: sim.state,
        max_cycles,
        wall_seconds: t0.elapsed().as_secs_f64(),
    })
}
