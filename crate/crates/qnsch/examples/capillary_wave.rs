//! Damped capillary wave: interface amplitude, mass and energy per step.
//!
//! `cargo run --release --example capillary_wave -- [config] [steps] [scheme]`

use qnsch::bench::{RunConfig, Simulation};
use qnsch::diagnostics::Metric;

fn main() -> qnsch::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "configs/capillary_m64.json".into());
    let mut cfg = RunConfig::load(path.as_ref())?;
    let steps = match args.next() {
        Some(n) => n.parse().expect("steps must be an integer"),
        None => cfg.steps()?,
    };
    if let Some(s) = args.next() {
        cfg.scheme = s.parse().expect("scheme is primitive or projection");
    }
    let mut sim = Simulation::new(&cfg)?;
    println!("{:>8} {:>12} {:>14} {:>12} {:>6}", "t", "H", "energy", "dm/m", "cyc");
    for _ in 0..steps {
        let o = sim.advance()?;
        let h = match o.report.scenario_metric {
            Some(Metric::Scalar(h)) => h,
            _ => f64::NAN,
        };
        println!(
            "{:>8.4} {:>12.6e} {:>14.8e} {:>12.3e} {:>6}",
            o.report.time, h, o.report.energy, o.mass_change, o.stats.cycles
        );
    }
    Ok(())
}
