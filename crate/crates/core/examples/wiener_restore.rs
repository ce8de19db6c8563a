//! Estimates Gaussian noise variance and applies the frequency-domain
//! Wiener filter with the robust, reference and given estimates.
//!
//! cargo run --example wiener_restore

use hybrid_denoise::{
    add_gaussian, estimate_noise_variance, phantom, psnr, wiener_filter, NoiseEstimate,
};

fn main() -> hybrid_denoise::Result<()> {
    let clean = phantom(256, 256, 5)?;
    for variance in [0.0025, 0.01] {
        let noisy = add_gaussian(&clean, 0.0, variance, 5)?;
        println!(
            "injected variance {variance}: noisy {:.2} dB",
            psnr(&noisy, &clean)?
        );
        let estimates = [
            estimate_noise_variance(&noisy, None)?,
            estimate_noise_variance(&noisy, Some(&clean))?,
            NoiseEstimate::given(variance)?,
        ];
        for est in estimates {
            let out = wiener_filter(&noisy, &est)?;
            println!(
                "  {:?}: sigma2 {:.5} -> {:.2} dB",
                est.mode,
                est.sigma2,
                psnr(&out, &clean)?
            );
        }
    }
    Ok(())
}
