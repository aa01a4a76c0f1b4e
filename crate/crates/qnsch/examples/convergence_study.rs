//! Cauchy self-convergence with `m` doubled and `dt` quartered per level.
//!
//! `cargo run --release --example convergence_study -- [config] [levels] [scheme]`

use qnsch::bench::{converge, RunConfig};

fn main() -> qnsch::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "configs/convergence.json".into());
    let mut cfg = RunConfig::load(path.as_ref())?;
    let levels: usize = args.next().map_or(3, |n| n.parse().expect("levels must be an integer"));
    if let Some(s) = args.next() {
        cfg.scheme = s.parse().expect("scheme is primitive or projection");
    }
    print!("{}", converge(&cfg, levels)?);
    Ok(())
}
