//! Time series CSV and legacy VTK snapshots.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::diagnostics::{divergence_field, Metric, StepReport};
use crate::error::{Error, Result};
use crate::grid::ops::{u_avg_y, v_avg_x};
use crate::grid::CellField;
use crate::scheme::State;

pub const CSV_HEADER: [&str; 8] =
    ["time", "mass_rho", "mass_rhoc", "energy", "energy_delta", "max_div", "cycles", "metric"];

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn metric_text(m: Option<Metric>) -> String {
    match m {
        None => String::new(),
        Some(Metric::Scalar(x)) => num(x),
        Some(Metric::Tips(a, b)) => format!("{};{}", num(a), num(b)),
    }
}

/// CSV fields of one report.
pub fn format_row(r: &StepReport) -> [String; 8] {
    [
        num(r.time),
        num(r.mass_rho),
        num(r.mass_rhoc),
        num(r.energy),
        num(r.energy_delta),
        num(r.max_div),
        r.cycles_used.to_string(),
        metric_text(r.scenario_metric),
    ]
}

/// Inverse of [`format_row`].
pub fn parse_row(rec: &csv::StringRecord) -> Result<StepReport> {
    let bad = |what: &str| Error::Config(format!("malformed time series row ({what}): {rec:?}"));
    if rec.len() != CSV_HEADER.len() {
        return Err(bad("column count"));
    }
    let f = |k: usize| rec[k].parse::<f64>().map_err(|_| bad(CSV_HEADER[k]));
    let metric = match &rec[7] {
        "" => None,
        s => match s.split_once(';') {
            Some((a, b)) => Some(Metric::Tips(
                a.parse().map_err(|_| bad("metric"))?,
                b.parse().map_err(|_| bad("metric"))?,
            )),
            None => Some(Metric::Scalar(s.parse().map_err(|_| bad("metric"))?)),
        },
    };
    Ok(StepReport {
        time: f(0)?,
        mass_rho: f(1)?,
        mass_rhoc: f(2)?,
        energy: f(3)?,
        energy_delta: f(4)?,
        max_div: f(5)?,
        cycles_used: rec[6].parse().map_err(|_| bad("cycles"))?,
        scenario_metric: metric,
    })
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Streaming writer; the header is written on creation.
pub struct TimeseriesWriter {
    inner: csv::Writer<File>,
    path: PathBuf,
}

impl TimeseriesWriter {
    pub fn create(path: &Path) -> Result<Self> {
        let file = create(path)?;
        let mut inner = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(file);
        inner.write_record(CSV_HEADER)?;
        Ok(Self { inner, path: path.to_path_buf() })
    }

    pub fn write(&mut self, r: &StepReport) -> Result<()> {
        self.inner.write_record(format_row(r))?;
        self.inner.flush().map_err(|source| Error::Io { path: self.path.clone(), source })
    }
}

pub fn write_timeseries<'a>(reports: impl IntoIterator<Item = &'a StepReport>, path: &Path) -> Result<()> {
    let mut w = TimeseriesWriter::create(path)?;
    for r in reports {
        w.write(r)?;
    }
    Ok(())
}

pub fn read_timeseries(path: &Path) -> Result<Vec<StepReport>> {
    let file = File::open(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let mut rd = csv::Reader::from_reader(file);
    let mut out = Vec::new();
    for rec in rd.records() {
        out.push(parse_row(&rec?)?);
    }
    Ok(out)
}

fn cell_scalars(w: &mut impl Write, name: &str, f: &CellField) -> std::io::Result<()> {
    let g = f.grid();
    writeln!(w, "SCALARS {name} double 1")?;
    writeln!(w, "LOOKUP_TABLE default")?;
    for j in 1..=g.m2 {
        for i in 1..=g.m1 {
            writeln!(w, "{}", num(f[(i, j)]))?;
        }
    }
    Ok(())
}

/// Legacy VTK structured-points snapshot: cell arrays `c`, `mu_bar`,
/// `p_bar`, `div_u` and the vertex-interpolated `velocity`. Ghosts must be
/// filled.
pub fn write_snapshot(s: &State, path: &Path) -> Result<()> {
    let io = |source| Error::Io { path: path.to_path_buf(), source };
    let mut w = BufWriter::new(create(path)?);
    let g = *s.grid();
    let body = |w: &mut BufWriter<File>| -> std::io::Result<()> {
        writeln!(w, "# vtk DataFile Version 3.0")?;
        writeln!(w, "qnsch snapshot t={}", num(s.time))?;
        writeln!(w, "ASCII")?;
        writeln!(w, "DATASET STRUCTURED_POINTS")?;
        writeln!(w, "DIMENSIONS {} {} 1", g.m1 + 1, g.m2 + 1)?;
        writeln!(w, "ORIGIN 0 0 0")?;
        writeln!(w, "SPACING {} {} 1", num(g.h), num(g.h))?;
        writeln!(w, "CELL_DATA {}", g.m1 * g.m2)?;
        cell_scalars(w, "c", &s.c)?;
        cell_scalars(w, "mu_bar", &s.mu)?;
        cell_scalars(w, "p_bar", &s.p)?;
        cell_scalars(w, "div_u", &divergence_field(s))?;
        let (uv, vv) = (u_avg_y(&s.u), v_avg_x(&s.v));
        writeln!(w, "POINT_DATA {}", (g.m1 + 1) * (g.m2 + 1))?;
        writeln!(w, "VECTORS velocity double")?;
        for b in 0..=g.m2 {
            for a in 0..=g.m1 {
                writeln!(w, "{} {} 0", num(uv[(a, b)]), num(vv[(a, b)]))?;
            }
        }
        w.flush()
    };
    body(&mut w).map_err(io)
}
