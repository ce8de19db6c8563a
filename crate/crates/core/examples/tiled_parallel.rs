//! Splits an image into halo-padded bands, filters them on a worker pool,
//! and checks that the result matches the serial filter exactly. Also
//! shows the seams left by splitting without halo rows.
//!
//! cargo run --release --example tiled_parallel

use hybrid_denoise::{
    adaptive_median_parallel, adaptive_median_serial, degrade, phantom, split_bands, timed_run,
    FilterConfig, NoiseSpec,
};

fn main() -> hybrid_denoise::Result<()> {
    let clean = phantom(600, 400, 9)?;
    let noisy = degrade(
        &clean,
        &NoiseSpec {
            seed: 9,
            ..NoiseSpec::default()
        },
    )?;
    let smax = 11;

    for tile in split_bands(&noisy, 4, (smax - 1) / 2)? {
        println!(
            "band {}: owns rows {}..{}, halo {} above / {} below",
            tile.index,
            tile.core_start,
            tile.core_end(),
            tile.halo_above,
            tile.halo_below
        );
    }

    let (serial, t_serial) = timed_run(|| adaptive_median_serial(&noisy, smax));
    let serial = serial?;
    println!("serial: {t_serial:.3}s");
    for parts in [2, 4, 8] {
        for workers in [1, 2, 4, 8] {
            let config = FilterConfig::new(smax, parts, workers);
            let (out, t) = timed_run(|| adaptive_median_parallel(&noisy, &config));
            let same = out? == serial;
            println!("parts={parts} workers={workers}: {t:.3}s identical={same}");
        }
    }

    let literal = FilterConfig {
        halo: false,
        ..FilterConfig::new(smax, 8, 4)
    };
    let seams = adaptive_median_parallel(&noisy, &literal)?;
    let differing = seams
        .pixels()
        .iter()
        .zip(serial.pixels())
        .filter(|(a, b)| a != b)
        .count();
    println!("without halo: {differing} pixels differ from serial");
    Ok(())
}
