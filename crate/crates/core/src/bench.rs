//! Benchmark harness: sweeps partition and worker counts over the hybrid
//! filter and reports speedup, efficiency and overhead.
//!
//! Each image is measured serially once per trial, then every
//! `(partitions, workers)` cell is measured per trial. Summaries aggregate
//! trials by median and images by mean, so one line per partition count
//! names the worker count with the lowest time.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{invalid, Result};
use crate::image::Image;
use crate::metrics::{efficiency, format_psnr, overhead, psnr, speedup, PerfRecord};
use crate::noise::{degrade, NoiseSpec};
use crate::parallel::{timed_run, FilterConfig};
use crate::pgm::load_pgm;
use crate::phantom::phantom;
use crate::pipeline::hybrid_denoise;

pub const CSV_HEADER: [&str; 13] = [
    "image",
    "rows",
    "cols",
    "smax",
    "partitions",
    "workers",
    "trial",
    "t_serial",
    "t_parallel",
    "speedup",
    "efficiency",
    "overhead",
    "psnr",
];

pub const DEFAULT_PARTITIONS: [usize; 3] = [2, 4, 8];
pub const DEFAULT_WORKERS: [usize; 6] = [2, 4, 6, 8, 10, 12];
pub const DEFAULT_TRIALS: usize = 3;

/// A benchmark input: a PGM file or a generated phantom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImageSource {
    File(PathBuf),
    Phantom { rows: usize, cols: usize, seed: u64 },
}

impl ImageSource {
    pub fn load(&self) -> Result<Image> {
        match self {
            Self::File(path) => load_pgm(path),
            Self::Phantom { rows, cols, seed } => phantom(*rows, *cols, *seed),
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ImageSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::File(path) => write!(f, "{}", path.display()),
            Self::Phantom { rows, cols, seed } => write!(f, "phantom:{rows}x{cols}:{seed}"),
        }
    }
}

/// Parses `phantom:<rows>x<cols>[:<seed>]`; anything else is a file path.
impl FromStr for ImageSource {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let Some(spec) = s.strip_prefix("phantom:") else {
            return Ok(Self::File(PathBuf::from(s)));
        };
        let bad = || format!("expected phantom:<rows>x<cols>[:<seed>], got {s:?}");
        let (dims, seed) = match spec.split_once(':') {
            Some((dims, seed)) => (dims, seed.parse().map_err(|_| bad())?),
            None => (spec, 0),
        };
        let (rows, cols) = dims.split_once('x').ok_or_else(bad)?;
        let rows: usize = rows.parse().map_err(|_| bad())?;
        let cols: usize = cols.parse().map_err(|_| bad())?;
        if rows == 0 || cols == 0 {
            return Err(bad());
        }
        Ok(Self::Phantom { rows, cols, seed })
    }
}

#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub inputs: Vec<ImageSource>,
    pub smax: usize,
    pub partitions: Vec<usize>,
    pub workers: Vec<usize>,
    pub trials: usize,
    pub noise: NoiseSpec,
    pub halo: bool,
}

impl Default for BenchPlan {
    fn default() -> Self {
        Self {
            inputs: vec![ImageSource::Phantom {
                rows: 512,
                cols: 512,
                seed: 0,
            }],
            smax: crate::adaptive_median::DEFAULT_SMAX,
            partitions: DEFAULT_PARTITIONS.to_vec(),
            workers: DEFAULT_WORKERS.to_vec(),
            trials: DEFAULT_TRIALS,
            noise: NoiseSpec::default(),
            halo: true,
        }
    }
}

impl BenchPlan {
    pub fn validate(&self) -> Result<()> {
        if self.inputs.is_empty() {
            return Err(invalid("benchmark plan has no inputs"));
        }
        if self.partitions.is_empty() || self.partitions.contains(&0) {
            return Err(invalid(
                "partitions must be a nonempty set of positive counts",
            ));
        }
        if self.workers.is_empty() || self.workers.contains(&0) {
            return Err(invalid("workers must be a nonempty set of positive counts"));
        }
        if self.trials < 1 {
            return Err(invalid("trials must be >= 1"));
        }
        self.noise.validate()?;
        FilterConfig::new(self.smax, 1, 1).validate()
    }
}

/// Runs `plan`, calling `progress` after each measured cell.
pub fn run_bench(
    plan: &BenchPlan,
    mut progress: impl FnMut(&PerfRecord),
) -> Result<Vec<PerfRecord>> {
    plan.validate()?;
    let mut records = Vec::new();
    for source in &plan.inputs {
        let clean = source.load()?;
        let noisy = degrade(&clean, &plan.noise)?;
        let (rows, cols) = clean.dimensions();
        if let Some(&p) = plan.partitions.iter().find(|&&p| p > rows) {
            return Err(invalid(format!(
                "{p} partitions exceed the {rows} rows of {source}"
            )));
        }
        let serial_config = FilterConfig {
            halo: plan.halo,
            ..FilterConfig::new(plan.smax, 1, 1)
        };
        for trial in 0..plan.trials {
            let (serial, t_serial) = timed_run(|| hybrid_denoise(&noisy, &serial_config, None));
            serial?;
            for &partitions in &plan.partitions {
                for &workers in &plan.workers {
                    let config = FilterConfig {
                        halo: plan.halo,
                        ..FilterConfig::new(plan.smax, partitions, workers)
                    };
                    let (out, t_parallel) = timed_run(|| hybrid_denoise(&noisy, &config, None));
                    let quality = psnr(&out?.image, &clean)?;
                    let record = PerfRecord::new(
                        source.name(),
                        rows,
                        cols,
                        plan.smax,
                        partitions,
                        workers,
                        trial,
                        t_serial,
                        t_parallel,
                        Some(quality),
                    )?;
                    progress(&record);
                    records.push(record);
                }
            }
        }
    }
    Ok(records)
}

/// Writes records as CSV with the fixed 13-column header.
pub fn write_csv<W: Write>(writer: W, records: &[PerfRecord]) -> Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(CSV_HEADER)?;
    for r in records {
        out.write_record([
            r.image.clone(),
            r.rows.to_string(),
            r.cols.to_string(),
            r.smax.to_string(),
            r.partitions.to_string(),
            r.workers.to_string(),
            r.trial.to_string(),
            r.t_serial.to_string(),
            r.t_parallel.to_string(),
            r.speedup.to_string(),
            r.efficiency.to_string(),
            r.overhead.to_string(),
            r.psnr.map(format_psnr).unwrap_or_default(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_csv_file(path: impl AsRef<Path>, records: &[PerfRecord]) -> Result<()> {
    write_csv(std::fs::File::create(path)?, records)
}

/// Metrics for one `(partitions, workers)` cell averaged over images.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSummary {
    pub workers: usize,
    pub t_serial: f64,
    pub t_parallel: f64,
    pub speedup: f64,
    pub efficiency: f64,
    pub overhead: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionSummary {
    pub partitions: usize,
    /// One entry per worker count, in ascending order.
    pub cells: Vec<CellSummary>,
}

impl PartitionSummary {
    /// Cell with the lowest average parallel time.
    pub fn best(&self) -> &CellSummary {
        self.cells
            .iter()
            .min_by(|a, b| a.t_parallel.total_cmp(&b.t_parallel))
            .expect("summaries are never empty")
    }

    /// Cell whose worker count equals the partition count, if measured.
    pub fn matched(&self) -> Option<&CellSummary> {
        self.cells.iter().find(|c| c.workers == self.partitions)
    }
}

impl fmt::Display for PartitionSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let best = self.best();
        write!(
            f,
            "partitions={} best_workers={} time={:.2} speedup={:.2} efficiency={:.2} overhead={:.2}",
            self.partitions, best.workers, best.t_parallel, best.speedup, best.efficiency, best.overhead
        )
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Aggregates records: median over trials per image, mean over images, and
/// metrics from the averaged times (average speedup is the ratio of
/// average serial time to average parallel time).
pub fn summarize(records: &[PerfRecord]) -> Result<Vec<PartitionSummary>> {
    // (partitions, workers) -> image -> (serial samples, parallel samples)
    type Samples = (Vec<f64>, Vec<f64>);
    let mut cells: BTreeMap<(usize, usize), BTreeMap<&str, Samples>> = BTreeMap::new();
    for r in records {
        let entry = cells
            .entry((r.partitions, r.workers))
            .or_default()
            .entry(r.image.as_str())
            .or_default();
        entry.0.push(r.t_serial);
        entry.1.push(r.t_parallel);
    }

    let mut summaries: Vec<PartitionSummary> = Vec::new();
    for ((partitions, workers), images) in cells {
        let (mut serial, mut parallel) = (Vec::new(), Vec::new());
        for (_, (mut s, mut p)) in images {
            serial.push(median(&mut s));
            parallel.push(median(&mut p));
        }
        let (t_serial, t_parallel) = (mean(&serial), mean(&parallel));
        let sp = speedup(t_serial, t_parallel)?;
        let cell = CellSummary {
            workers,
            t_serial,
            t_parallel,
            speedup: sp,
            efficiency: efficiency(sp, workers)?,
            overhead: overhead(t_parallel, t_serial, workers)?,
        };
        match summaries.last_mut() {
            Some(s) if s.partitions == partitions => s.cells.push(cell),
            _ => summaries.push(PartitionSummary {
                partitions,
                cells: vec![cell],
            }),
        }
    }
    Ok(summaries)
}

/// Published reference wall times (seconds) of the serial and parallel
/// hybrid filter on a quad-core Core i5 desktop: three image sizes, 2/4/8
/// partitions and 2-12 workers. Replaying them reproduces the reference
/// speedups independent of the local hardware.
pub mod table1 {
    pub const WORKERS: [usize; 6] = [2, 4, 6, 8, 10, 12];
    pub const PARTITIONS: [usize; 3] = [2, 4, 8];
    pub const SMAX: usize = 11;

    pub struct Row {
        pub rows: usize,
        pub cols: usize,
        pub serial: f64,
        /// Indexed by partition group, then worker count.
        pub parallel: [[f64; 6]; 3],
    }

    pub const ROWS: [Row; 3] = [
        Row {
            rows: 1900,
            cols: 2368,
            serial: 79.5,
            parallel: [
                [10.41, 10.87, 10.89, 10.37, 10.96, 11.11],
                [12.1, 11.99, 12.22, 12.29, 12.49, 12.23],
                [16.22, 15.84, 15.87, 16.62, 15.64, 16.2],
            ],
        },
        Row {
            rows: 3800,
            cols: 4736,
            serial: 272.42,
            parallel: [
                [44.67, 41.59, 36.14, 35.12, 42.86, 49.28],
                [41.37, 40.76, 40.62, 41.06, 41.35, 42.18],
                [54.88, 54.65, 56.63, 56.85, 54.69, 55.21],
            ],
        },
        Row {
            rows: 7600,
            cols: 9472,
            serial: 1742.5,
            parallel: [
                [640.34, 863.87, 856.24, 652.75, 914.24, 690.8],
                [768.0, 470.08, 480.03, 532.75, 490.92, 703.38],
                [847.9, 538.55, 769.91, 505.67, 656.4, 611.59],
            ],
        },
    ];
}

/// Records for the embedded timing fixture, one trial per cell.
pub fn fixture_records() -> Result<Vec<PerfRecord>> {
    let mut records = Vec::new();
    for row in &table1::ROWS {
        let name = format!("table1-{}x{}", row.rows, row.cols);
        for (g, &partitions) in table1::PARTITIONS.iter().enumerate() {
            for (w, &workers) in table1::WORKERS.iter().enumerate() {
                records.push(PerfRecord::new(
                    name.clone(),
                    row.rows,
                    row.cols,
                    table1::SMAX,
                    partitions,
                    workers,
                    0,
                    row.serial,
                    row.parallel[g][w],
                    None,
                )?);
            }
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sources() {
        assert_eq!(
            "phantom:64x32:5".parse::<ImageSource>().unwrap(),
            ImageSource::Phantom {
                rows: 64,
                cols: 32,
                seed: 5
            }
        );
        assert_eq!(
            "phantom:8x8".parse::<ImageSource>().unwrap(),
            ImageSource::Phantom {
                rows: 8,
                cols: 8,
                seed: 0
            }
        );
        assert!("phantom:8".parse::<ImageSource>().is_err());
        assert!("phantom:0x8".parse::<ImageSource>().is_err());
        assert_eq!(
            "scan.pgm".parse::<ImageSource>().unwrap(),
            ImageSource::File("scan.pgm".into())
        );
    }

    #[test]
    fn fixture_summary_matches_reported_metrics() {
        let summaries = summarize(&fixture_records().unwrap()).unwrap();
        let expected = [
            (2, 231.81, 3.01, 1.51),
            (4, 174.28, 4.01, 1.00),
            (8, 193.05, 3.62, 0.45),
        ];
        for (s, (p, time, sp, eff)) in summaries.iter().zip(expected) {
            assert_eq!(s.partitions, p);
            assert_eq!(s.best().workers, p);
            let m = s.matched().unwrap();
            assert!((m.t_serial - 698.14).abs() < 0.005);
            assert!((m.t_parallel - time).abs() < 0.005, "{}", m.t_parallel);
            assert!((m.speedup - sp).abs() < 0.02, "{}", m.speedup);
            assert!((m.efficiency - eff).abs() < 0.02, "{}", m.efficiency);
        }
    }

    #[test]
    fn csv_shape_and_inf() {
        let mut r =
            PerfRecord::new("a,b", 4, 4, 3, 2, 2, 0, 1.0, 0.5, Some(f64::INFINITY)).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &[r.clone()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert_eq!(lines[1], "\"a,b\",4,4,3,2,2,0,1,0.5,2,1,0,inf");

        r.psnr = None;
        let mut buf = Vec::new();
        write_csv(&mut buf, &[r]).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .lines()
            .nth(1)
            .unwrap()
            .ends_with(",0,"));
    }

    #[test]
    fn plan_validation() {
        assert!(BenchPlan::default().validate().is_ok());
        assert!(BenchPlan {
            trials: 0,
            ..BenchPlan::default()
        }
        .validate()
        .is_err());
        assert!(BenchPlan {
            workers: vec![],
            ..BenchPlan::default()
        }
        .validate()
        .is_err());
        assert!(BenchPlan {
            partitions: vec![0],
            ..BenchPlan::default()
        }
        .validate()
        .is_err());
        assert!(BenchPlan {
            inputs: vec![],
            ..BenchPlan::default()
        }
        .validate()
        .is_err());
        assert!(BenchPlan {
            smax: 6,
            ..BenchPlan::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn small_live_run() {
        let plan = BenchPlan {
            inputs: vec!["phantom:24x24:1".parse().unwrap()],
            smax: 5,
            partitions: vec![2, 4],
            workers: vec![1, 2],
            trials: 2,
            ..BenchPlan::default()
        };
        let mut seen = 0;
        let records = run_bench(&plan, |_| seen += 1).unwrap();
        assert_eq!(records.len(), 8);
        assert_eq!(seen, 8);
        // quality is independent of the decomposition
        assert!(records.windows(2).all(|w| w[0].psnr == w[1].psnr));
        let summaries = summarize(&records).unwrap();
        assert_eq!(summaries.len(), 2);
        assert_eq!(summaries[0].cells.len(), 2);
    }

    #[test]
    fn too_many_partitions_for_image() {
        let plan = BenchPlan {
            inputs: vec!["phantom:4x4".parse().unwrap()],
            partitions: vec![8],
            workers: vec![1],
            trials: 1,
            smax: 3,
            ..BenchPlan::default()
        };
        assert!(run_bench(&plan, |_| {}).is_err());
    }
}
