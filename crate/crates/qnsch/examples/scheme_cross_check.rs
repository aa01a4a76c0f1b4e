//! Primitive and projection schemes after one matched-density step.
//!
//! `cargo run --release --example scheme_cross_check -- [config] [m]`

use qnsch::bench::{cross_check, RunConfig};

fn main() -> qnsch::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "configs/convergence.json".into());
    let mut cfg = RunConfig::load(path.as_ref())?;
    if let Some(m) = args.next().and_then(|m| m.parse().ok()) {
        cfg.grid.m1 = m;
        cfg.grid.m2 = m;
    }
    let dts = [1e-2, 5e-3, 2.5e-3];
    let cc = cross_check(&cfg, &dts)?;
    for (dt, gap) in cc.dts.iter().zip(&cc.gaps) {
        println!("dt={dt:<8} gap={gap:.6e}");
    }
    println!("orders {:?}", cc.orders);
    Ok(())
}
