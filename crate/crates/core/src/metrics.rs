//! Image quality (MSE, PSNR) and parallel performance metrics.
//!
//! Performance metrics follow the usual definitions: speedup `Ts / Tp`,
//! efficiency `speedup / P` and overhead `Tp - Ts / P`, where `P` is the
//! configured worker count.

use crate::error::{invalid, Result};
use crate::image::Image;

/// Mean squared difference of two equally sized images.
pub fn mse(a: &Image, b: &Image) -> Result<f64> {
    a.ensure_same_dims(b)?;
    let sum: f64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(sum / a.pixels().len() as f64)
}

/// Peak signal-to-noise ratio in dB with peak 1. Identical images give `+inf`.
pub fn psnr(a: &Image, b: &Image) -> Result<f64> {
    Ok(psnr_from_mse(mse(a, b)?))
}

pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (1.0 / mse).log10()
    }
}

/// Formats a PSNR value for reports; infinity is written as `inf`.
pub fn format_psnr(db: f64) -> String {
    if db.is_infinite() && db > 0.0 {
        "inf".to_string()
    } else {
        format!("{db:.4}")
    }
}

fn check_time(name: &str, t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid(format!("{name} must be a positive time, got {t}")));
    }
    Ok(())
}

fn check_processors(p: usize) -> Result<()> {
    if p < 1 {
        return Err(invalid("processor count must be >= 1"));
    }
    Ok(())
}

pub fn speedup(t_serial: f64, t_parallel: f64) -> Result<f64> {
    check_time("serial time", t_serial)?;
    check_time("parallel time", t_parallel)?;
    Ok(t_serial / t_parallel)
}

pub fn efficiency(speedup: f64, p: usize) -> Result<f64> {
    check_processors(p)?;
    Ok(speedup / p as f64)
}

/// Time spent beyond the ideal `t_serial / p` share. Negative when superlinear.
pub fn overhead(t_parallel: f64, t_serial: f64, p: usize) -> Result<f64> {
    check_time("serial time", t_serial)?;
    check_time("parallel time", t_parallel)?;
    check_processors(p)?;
    Ok(t_parallel - t_serial / p as f64)
}

/// One benchmark measurement with its derived metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct PerfRecord {
    pub image: String,
    pub rows: usize,
    pub cols: usize,
    pub smax: usize,
    pub partitions: usize,
    pub workers: usize,
    pub trial: usize,
    pub t_serial: f64,
    pub t_parallel: f64,
    pub speedup: f64,
    pub efficiency: f64,
    pub overhead: f64,
    pub psnr: Option<f64>,
}

impl PerfRecord {
    /// Builds a record, deriving speedup, efficiency and overhead with `P = workers`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        image: impl Into<String>,
        rows: usize,
        cols: usize,
        smax: usize,
        partitions: usize,
        workers: usize,
        trial: usize,
        t_serial: f64,
        t_parallel: f64,
        psnr: Option<f64>,
    ) -> Result<Self> {
        let sp = speedup(t_serial, t_parallel)?;
        Ok(Self {
            image: image.into(),
            rows,
            cols,
            smax,
            partitions,
            workers,
            trial,
            t_serial,
            t_parallel,
            speedup: sp,
            efficiency: efficiency(sp, workers)?,
            overhead: overhead(t_parallel, t_serial, workers)?,
            psnr,
        })
    }

    pub fn p(&self) -> usize {
        self.workers
    }
}
