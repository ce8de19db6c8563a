//! Replays the embedded reference timing table through the speedup,
//! efficiency and overhead formulas.
//!
//! cargo run --example reference_timings

use hybrid_denoise::bench::{fixture_records, summarize, table1};
use hybrid_denoise::{efficiency, overhead, speedup};

fn main() -> hybrid_denoise::Result<()> {
    for row in &table1::ROWS {
        println!("{}x{}: serial {:.2}s", row.rows, row.cols, row.serial);
        for (g, parts) in table1::PARTITIONS.iter().enumerate() {
            let cells: Vec<String> = table1::WORKERS
                .iter()
                .zip(row.parallel[g])
                .map(|(&w, tp)| {
                    let sp = speedup(row.serial, tp).unwrap();
                    format!("w{w}: {sp:.2}x")
                })
                .collect();
            println!("  {parts} partitions: {}", cells.join("  "));
        }
    }

    println!();
    for s in summarize(&fixture_records()?)? {
        let m = s.matched().expect("fixture covers workers == partitions");
        println!(
            "{} partitions on {} workers: avg time {:.2}s speedup {:.2} efficiency {:.2} overhead {:.2}s",
            s.partitions,
            m.workers,
            m.t_parallel,
            m.speedup,
            efficiency(m.speedup, m.workers)?,
            overhead(m.t_parallel, m.t_serial, m.workers)?
        );
    }
    Ok(())
}
