//! Residual history of the FAS V-cycles for one time step, split by
//! equation.
//!
//! `cargo run --release --example multigrid_history -- [config] [scheme]`

use qnsch::bench::{init_scenario, RunConfig};
use qnsch::multigrid::solve_timestep;

fn main() -> qnsch::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "configs/capillary_m64.json".into());
    let mut cfg = RunConfig::load(path.as_ref())?;
    if let Some(s) = args.next() {
        cfg.scheme = s.parse().expect("scheme is primitive or projection");
    }
    let old = init_scenario(&cfg)?;
    let p = cfg.scheme_params()?;
    let (_, stats) = solve_timestep(&old, &p, &cfg.multigrid)?;
    for (k, r) in stats.history.iter().enumerate() {
        let factor = if k == 0 { String::new() } else { format!("{:.3}", r / stats.history[k - 1]) };
        println!("cycle {k:>2}: {r:.3e} {factor}");
    }
    for (name, v) in &stats.norms {
        println!("{name:<8} {v:.3e}");
    }
    Ok(())
}
