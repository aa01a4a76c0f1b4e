//! Short run that writes the CSV time series and VTK snapshots, then reads
//! the series back.
//!
//! `cargo run --release --example snapshot_output -- [config] [out_dir]`

use std::path::PathBuf;

use qnsch::bench::{read_timeseries, run, RunConfig};

fn main() -> qnsch::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "configs/capillary_m64.json".into());
    let out = PathBuf::from(args.next().unwrap_or_else(|| "out/snapshot_example".into()));
    let mut cfg = RunConfig::load(path.as_ref())?;
    cfg.time.t_end = 10.0 * cfg.time.dt;
    cfg.time.report_every = 2;
    cfg.output.snapshot_times = vec![0.0, cfg.time.t_end];
    let summary = run(&cfg, Some(&out))?;
    for s in &summary.snapshots {
        println!("snapshot {}", s.display());
    }
    let rows = read_timeseries(&summary.csv)?;
    println!("{} rows in {}", rows.len(), summary.csv.display());
    for r in rows {
        println!("t={:.4} E={:.8e} cycles={}", r.time, r.energy, r.cycles_used);
    }
    Ok(())
}
