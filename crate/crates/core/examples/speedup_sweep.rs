//! Measures the hybrid filter over a small partition/worker grid and
//! prints per-partition summaries plus the CSV report.
//!
//! cargo run --release --example speedup_sweep

use hybrid_denoise::bench::{run_bench, summarize, write_csv, BenchPlan};

fn main() -> hybrid_denoise::Result<()> {
    let plan = BenchPlan {
        inputs: vec!["phantom:384x384:1".parse().expect("valid source")],
        partitions: vec![2, 4],
        workers: vec![1, 2, 4],
        trials: 3,
        ..BenchPlan::default()
    };
    let records = run_bench(&plan, |r| {
        eprintln!(
            "trial {} parts={} workers={}: {:.3}s",
            r.trial, r.partitions, r.workers, r.t_parallel
        );
    })?;
    for summary in summarize(&records)? {
        println!("{summary}");
    }
    write_csv(std::io::stdout().lock(), &records)
}
