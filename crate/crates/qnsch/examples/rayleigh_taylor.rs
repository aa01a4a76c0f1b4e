//! Rayleigh-Taylor instability with the projection scheme; prints the
//! rising and falling interface tips.
//!
//! `cargo run --release --example rayleigh_taylor -- [config] [steps] [every]`

use qnsch::bench::{RunConfig, Simulation};
use qnsch::diagnostics::rt_tips;

fn main() -> qnsch::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "configs/rayleigh_taylor.json".into());
    let cfg = RunConfig::load(path.as_ref())?;
    let steps: usize = args.next().map_or(100, |n| n.parse().expect("steps must be an integer"));
    let every: usize = args.next().map_or(10, |n| n.parse().expect("every must be an integer"));
    let mut sim = Simulation::new(&cfg)?;
    for k in 1..=steps {
        sim.advance()?;
        if k % every == 0 {
            let (top, bottom) = rt_tips(sim.state())?;
            println!("t={:.4} top={top:.5} bottom={bottom:.5}", sim.state().time);
        }
    }
    Ok(())
}
