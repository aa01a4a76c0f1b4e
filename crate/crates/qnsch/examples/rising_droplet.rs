//! Light droplet rising in a heavier fluid; reports the rise velocity and
//! how well the divergence is confined to the interface.
//!
//! `cargo run --release --example rising_droplet -- [config] [steps] [m1]`

use qnsch::bench::{RunConfig, Simulation};
use qnsch::diagnostics::{bulk_divergence, max_divergence, rising_velocity};

fn main() -> qnsch::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "configs/droplet.json".into());
    let mut cfg = RunConfig::load(path.as_ref())?;
    let steps: usize = args.next().map_or(20, |n| n.parse().expect("steps must be an integer"));
    if let Some(m) = args.next() {
        let m: usize = m.parse().expect("m1 must be an integer");
        cfg.grid.m2 = cfg.grid.m2 * m / cfg.grid.m1;
        cfg.grid.m1 = m;
    }
    let mut sim = Simulation::new(&cfg)?;
    for _ in 0..steps {
        let o = sim.advance()?;
        let s = sim.state();
        println!(
            "t={:.4} V_c={:+.6e} max|div|={:.3e} bulk|div|={:.3e} cycles={}",
            s.time,
            rising_velocity(s)?,
            max_divergence(s),
            bulk_divergence(s, 1e-4),
            o.stats.cycles
        );
    }
    Ok(())
}
