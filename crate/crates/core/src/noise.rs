//! Seeded synthetic degradation: additive Gaussian and salt & pepper noise.
//!
//! All randomness comes from `ChaCha8Rng` seeded with `seed_from_u64`, which
//! yields the same stream on every platform, so noisy fixtures are
//! reproducible bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{invalid, Result};
use crate::image::Image;

/// Gaussian variance used when none is given.
pub const DEFAULT_GAUSSIAN_VARIANCE: f64 = 0.01;
/// Salt & pepper density used when none is given.
pub const DEFAULT_SP_DENSITY: f64 = 0.05;

/// Parameters of the combined degradation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub gaussian_mean: f64,
    /// Variance on the unit intensity scale.
    pub gaussian_variance: f64,
    /// Fraction of pixels replaced by an impulse.
    pub sp_density: f64,
    pub seed: u64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self {
            gaussian_mean: 0.0,
            gaussian_variance: DEFAULT_GAUSSIAN_VARIANCE,
            sp_density: DEFAULT_SP_DENSITY,
            seed: 0,
        }
    }
}

impl NoiseSpec {
    pub fn none(seed: u64) -> Self {
        Self {
            gaussian_mean: 0.0,
            gaussian_variance: 0.0,
            sp_density: 0.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_variance(self.gaussian_variance)?;
        check_density(self.sp_density)?;
        if !self.gaussian_mean.is_finite() {
            return Err(invalid("gaussian mean must be finite"));
        }
        Ok(())
    }
}

fn check_variance(variance: f64) -> Result<()> {
    if !(variance >= 0.0 && variance.is_finite()) {
        return Err(invalid(format!(
            "gaussian variance must be a finite value >= 0, got {variance}"
        )));
    }
    Ok(())
}

fn check_density(density: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&density) {
        return Err(invalid(format!(
            "salt & pepper density must be in [0, 1], got {density}"
        )));
    }
    Ok(())
}

/// Adds i.i.d. normal noise with the given mean and variance, clamping to `[0, 1]`.
pub fn add_gaussian(image: &Image, mean: f64, variance: f64, seed: u64) -> Result<Image> {
    check_variance(variance)?;
    let normal = Normal::new(mean, variance.sqrt()).map_err(|e| invalid(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pixels = image
        .pixels()
        .iter()
        .map(|&p| (p + normal.sample(&mut rng)).clamp(0.0, 1.0))
        .collect();
    Ok(Image::from_raw(image.rows(), image.cols(), pixels))
}

/// Each pixel independently becomes 0 with probability `density / 2`,
/// 1 with probability `density / 2`, and is otherwise left alone.
pub fn add_salt_pepper(image: &Image, density: f64, seed: u64) -> Result<Image> {
    check_density(density)?;
    let half = density / 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pixels = image
        .pixels()
        .iter()
        .map(|&p| {
            let u: f64 = rng.gen();
            if u < half {
                0.0
            } else if u < density {
                1.0
            } else {
                p
            }
        })
        .collect();
    Ok(Image::from_raw(image.rows(), image.cols(), pixels))
}

/// Gaussian noise (seeded with `spec.seed`) followed by impulses (seeded with
/// `spec.seed + 1`). Impulses are applied last so they stay exactly 0 or 1.
pub fn degrade(image: &Image, spec: &NoiseSpec) -> Result<Image> {
    spec.validate()?;
    let noisy = add_gaussian(image, spec.gaussian_mean, spec.gaussian_variance, spec.seed)?;
    add_salt_pepper(&noisy, spec.sp_density, spec.seed.wrapping_add(1))
}
