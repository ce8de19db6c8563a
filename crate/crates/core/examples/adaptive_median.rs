//! Removes salt & pepper noise with the adaptive median filter and shows
//! how the maximum window size affects the result.
//!
//! cargo run --example adaptive_median

use hybrid_denoise::adaptive_median::adaptive_median_masked;
use hybrid_denoise::noise::add_salt_pepper;
use hybrid_denoise::{adaptive_median_serial, phantom, psnr, window_stats};

fn main() -> hybrid_denoise::Result<()> {
    let clean = phantom(128, 128, 3)?;
    let noisy = add_salt_pepper(&clean, 0.3, 3)?;
    println!("noisy: {:.2} dB", psnr(&noisy, &clean)?);

    for smax in [3, 5, 7, 11] {
        let out = adaptive_median_serial(&noisy, smax)?;
        let (_, masks) = adaptive_median_masked(&noisy, smax)?;
        let finalized: Vec<usize> = masks
            .iter()
            .map(|m| m.iter().filter(|&&p| p).count())
            .collect();
        println!(
            "smax={smax:>2}: {:.2} dB, pixels finalized per window size {finalized:?}",
            psnr(&out, &clean)?
        );
    }

    let stats = window_stats(&noisy, 3)?;
    let (r, c) = (64, 64);
    let i = r * noisy.cols() + c;
    println!(
        "3x3 window at ({r},{c}): min {:.3} median {:.3} max {:.3}",
        stats.zmin[i], stats.zmed[i], stats.zmax[i]
    );
    Ok(())
}
