//! Degrades a synthetic phantom at a few noise levels and reports PSNR.
//!
//! cargo run --example degrade_and_measure

use hybrid_denoise::{degrade, phantom, psnr, NoiseSpec};

fn main() -> hybrid_denoise::Result<()> {
    let clean = phantom(256, 256, 1)?;
    println!("{:>10} {:>10} {:>10}", "variance", "density", "psnr_db");
    for (variance, density) in [
        (0.0, 0.0),
        (0.001, 0.0),
        (0.01, 0.0),
        (0.0, 0.05),
        (0.01, 0.05),
        (0.02, 0.1),
    ] {
        let spec = NoiseSpec {
            gaussian_variance: variance,
            sp_density: density,
            seed: 42,
            ..NoiseSpec::default()
        };
        let noisy = degrade(&clean, &spec)?;
        println!(
            "{variance:>10} {density:>10} {:>10.2}",
            psnr(&noisy, &clean)?
        );
    }
    Ok(())
}
