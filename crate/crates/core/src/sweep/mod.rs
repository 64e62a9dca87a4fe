//! Grid sweeps over `(p, θ)` and their CSV artifacts.

mod config;
mod record;

use std::fs::File;
use std::io::{BufWriter, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kinematics::ScatteringPoint;
use crate::report::{evaluate_point, PointSpec};

pub use config::{grid, parse_config, parse_config_file, parse_number, SweepConfig};
pub use record::{write_csv, ColumnSummary, GridRecord, Summary, COLUMNS};

/// Records in `(p index, θ index)` order plus their summary.
#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub records: Vec<GridRecord>,
    pub summary: Summary,
    pub p_count: usize,
    pub theta_count: usize,
}

impl SweepOutput {
    pub fn record(&self, ip: usize, itheta: usize) -> &GridRecord {
        &self.records[ip * self.theta_count + itheta]
    }
}

/// Spec for a single point under this config.
pub fn point_spec(cfg: &SweepConfig, p: f64, theta: f64) -> PointSpec {
    PointSpec {
        kind: cfg.process,
        input: cfg.initial,
        point: ScatteringPoint {
            p,
            theta,
            phi: cfg.phi.rem_euclid(2.0 * std::f64::consts::PI),
        },
        n: cfg.n,
        steps: cfg.fd_steps,
        consts: cfg.consts,
    }
}

/// Evaluates every grid point. Per-point failures land in the error flag;
/// only pool construction and I/O abort the sweep. When `cfg.out` is set the
/// CSV is written there and the summary next to it with a `.summary.txt`
/// suffix.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let ps = cfg.p_grid();
    let thetas = cfg.theta_grid();
    let points: Vec<(f64, f64)> = ps
        .iter()
        .flat_map(|&p| thetas.iter().map(move |&t| (p, t)))
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::config(format!("workers={:?}", cfg.workers), e.to_string()))?;
    let records: Vec<GridRecord> = pool.install(|| {
        points
            .par_iter()
            .map(|&(p, t)| GridRecord::from_report(&evaluate_point(&point_spec(cfg, p, t))))
            .collect()
    });
    let summary = Summary::of(&records);
    if let Some(path) = &cfg.out {
        let mut w = BufWriter::new(File::create(path)?);
        write_csv(&mut w, &records)?;
        w.flush()?;
        let mut name = path.as_os_str().to_owned();
        name.push(".summary.txt");
        std::fs::write(name, summary.to_string())?;
    }
    Ok(SweepOutput {
        records,
        summary,
        p_count: ps.len(),
        theta_count: thetas.len(),
    })
}
