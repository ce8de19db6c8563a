//! Command-line front end: `degrade`, `denoise` and `bench`.
//!
//! Exit status is 0 on success, 1 for usage errors (bad flags or parameter
//! values) and 2 for runtime failures such as unreadable files.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::adaptive_median::validate_smax;
use crate::bench::{
    fixture_records, run_bench, summarize, write_csv_file, BenchPlan, ImageSource,
    DEFAULT_PARTITIONS, DEFAULT_TRIALS, DEFAULT_WORKERS,
};
use crate::error::Error;
use crate::metrics::{format_psnr, psnr};
use crate::noise::{degrade, NoiseSpec, DEFAULT_GAUSSIAN_VARIANCE, DEFAULT_SP_DENSITY};
use crate::parallel::{FilterConfig, VarianceSource};
use crate::pgm::{load_pgm, save_pgm};
use crate::pipeline::hybrid_denoise;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hybrid-denoise",
    version,
    about = "Hybrid adaptive-median / Wiener denoising"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Add Gaussian and salt & pepper noise to an image.
    Degrade(DegradeArgs),
    /// Run the hybrid filter on a noisy image.
    Denoise(DenoiseArgs),
    /// Sweep partition and worker counts and write a CSV report.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct NoiseArgs {
    #[arg(long, default_value_t = DEFAULT_GAUSSIAN_VARIANCE, value_parser = parse_variance)]
    gauss_var: f64,
    #[arg(long, default_value_t = DEFAULT_SP_DENSITY, value_parser = parse_density)]
    sp_density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl NoiseArgs {
    fn spec(&self) -> NoiseSpec {
        NoiseSpec {
            gaussian_mean: 0.0,
            gaussian_variance: self.gauss_var,
            sp_density: self.sp_density,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
struct DegradeArgs {
    /// Clean input: a PGM path or `phantom:<rows>x<cols>[:<seed>]`.
    #[arg(long = "in")]
    input: ImageSource,
    #[arg(long = "out")]
    output: PathBuf,
    #[command(flatten)]
    noise: NoiseArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Estimate {
    Robust,
    Reference,
}

#[derive(Debug, Args)]
struct DenoiseArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "out")]
    output: PathBuf,
    #[arg(long, default_value = "11", value_parser = parse_smax)]
    smax: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    parts: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    /// Split into bands without halo rows, filtering each band on its own.
    #[arg(long)]
    no_halo: bool,
    /// Contrast-stretch after the adaptive median stage too.
    #[arg(long)]
    stretch_after_each: bool,
    /// Clean image used for PSNR reporting (and variance in reference mode).
    #[arg(long)]
    reference: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Estimate::Robust)]
    estimate: Estimate,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Input image(s): PGM paths or `phantom:<rows>x<cols>[:<seed>]`.
    #[arg(long = "input", default_value = "phantom:512x512")]
    inputs: Vec<ImageSource>,
    #[arg(long, default_value = "11", value_parser = parse_smax)]
    smax: usize,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PARTITIONS)]
    partitions: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_WORKERS)]
    workers: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[command(flatten)]
    noise: NoiseArgs,
    #[arg(long)]
    no_halo: bool,
    /// CSV report path.
    #[arg(long = "out")]
    output: PathBuf,
    /// Replay embedded reference timings instead of measuring.
    #[arg(long, value_enum)]
    fixture: Option<Fixture>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Fixture {
    Table1,
}

fn parse_smax(s: &str) -> Result<usize, String> {
    let msg = || format!("SMAX must be an odd integer > 1, got {s:?}");
    let value: i64 = s.trim().parse().map_err(|_| msg())?;
    validate_smax(value).map_err(|_| msg())?;
    usize::try_from(value).map_err(|_| msg())
}

fn parse_density(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if !(0.0..=1.0).contains(&v) {
        return Err(format!("sp-density must be in [0, 1], got {v}"));
    }
    Ok(v)
}

fn parse_variance(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if !(v >= 0.0 && v.is_finite()) {
        return Err(format!("gauss-var must be >= 0, got {v}"));
    }
    Ok(v)
}

/// Parses `args` (including the program name) and runs the command,
/// writing reports to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Degrade(args) => cmd_degrade(&args, out),
        Command::Denoise(args) => cmd_denoise(&args, out),
        Command::Bench(args) => cmd_bench(&args, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidArgument(_) => EXIT_USAGE,
                _ => EXIT_RUNTIME,
            }
        }
    }
}

fn cmd_degrade(args: &DegradeArgs, out: &mut dyn Write) -> crate::Result<()> {
    let clean = args.input.load()?;
    let noisy = degrade(&clean, &args.noise.spec())?;
    save_pgm(&noisy, &args.output)?;
    writeln!(out, "psnr={}", format_psnr(psnr(&noisy, &clean)?))?;
    Ok(())
}

fn cmd_denoise(args: &DenoiseArgs, out: &mut dyn Write) -> crate::Result<()> {
    let noisy = load_pgm(&args.input)?;
    let reference = args.reference.as_ref().map(load_pgm).transpose()?;
    let config = FilterConfig {
        smax: args.smax,
        parts: args.parts as usize,
        workers: args.workers as usize,
        estimate_mode: match args.estimate {
            Estimate::Robust => VarianceSource::Robust,
            Estimate::Reference => VarianceSource::Reference,
        },
        halo: !args.no_halo,
        stretch_after_each: args.stretch_after_each,
    };
    let result = hybrid_denoise(&noisy, &config, reference.as_ref())?;
    save_pgm(&result.image, &args.output)?;
    let t = result.timings;
    writeln!(
        out,
        "t_adaptive={:.6} t_wiener={:.6} t_stretch={:.6}",
        t.adaptive, t.wiener, t.stretch
    )?;
    if let Some(reference) = &reference {
        writeln!(out, "psnr={}", format_psnr(psnr(&result.image, reference)?))?;
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> crate::Result<()> {
    let records = match args.fixture {
        Some(Fixture::Table1) => fixture_records()?,
        None => {
            let plan = BenchPlan {
                inputs: args.inputs.clone(),
                smax: args.smax,
                partitions: args.partitions.clone(),
                workers: args.workers.clone(),
                trials: args.trials,
                noise: args.noise.spec(),
                halo: !args.no_halo,
            };
            run_bench(&plan, |_| {})?
        }
    };
    write_csv_file(&args.output, &records)?;
    for summary in summarize(&records)? {
        write!(out, "{summary}")?;
        if let Some(m) = summary.matched() {
            write!(
                out,
                " | workers=partitions: time={:.2} speedup={:.2} efficiency={:.2}",
                m.t_parallel, m.speedup, m.efficiency
            )?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smax_parser() {
        assert_eq!(parse_smax("11"), Ok(11));
        for bad in ["4", "1", "-3", "3.5", "x"] {
            assert!(parse_smax(bad).unwrap_err().contains("odd integer > 1"));
        }
    }

    #[test]
    fn usage_errors_exit_one() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            [
                "hybrid-denoise",
                "denoise",
                "--in",
                "a",
                "--out",
                "b",
                "--smax",
                "4",
            ],
            &mut out,
            &mut err,
        );
        assert_eq!(code, EXIT_USAGE);
        assert!(String::from_utf8_lossy(&err).contains("odd integer > 1"));
    }

    #[test]
    fn help_exits_zero() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(
            run(["hybrid-denoise", "--help"], &mut out, &mut err),
            EXIT_OK
        );
        assert!(String::from_utf8_lossy(&out).contains("bench"));
    }

    #[test]
    fn missing_input_is_runtime_error() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            [
                "hybrid-denoise",
                "denoise",
                "--in",
                "/nonexistent/x.pgm",
                "--out",
                "/tmp/y.pgm",
            ],
            &mut out,
            &mut err,
        );
        assert_eq!(code, EXIT_RUNTIME);
    }
}
