//! One step of each scheme from the same state: mass, component mass and
//! energy before and after.

use qnsch::bench::{RunConfig, Simulation};
use qnsch::scheme::SchemeKind;

fn main() -> qnsch::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "configs/capillary_m64.json".into());
    let base = RunConfig::load(path.as_ref())?;
    for kind in [SchemeKind::Primitive, SchemeKind::Projection] {
        let mut cfg = base.clone();
        cfg.scheme = kind;
        let mut sim = Simulation::new(&cfg)?;
        let e0 = sim.report(0.0, 0).energy;
        let o = sim.advance()?;
        println!(
            "{kind:?}: dm/m={:.2e} d(rho c)/(rho c)={:.2e} E {e0:.10e} -> {:.10e} ({} cycles)",
            o.mass_change, o.mass_rhoc_change, o.report.energy, o.stats.cycles
        );
    }
    Ok(())
}
