//! The hybrid filter: adaptive median, then Wiener, then contrast stretch.

use crate::error::{invalid, Result};
use crate::image::Image;
use crate::parallel::{adaptive_median_parallel, timed_run, FilterConfig, VarianceSource};
use crate::wiener::{estimate_noise_variance, wiener_filter, NoiseEstimate};

/// Linear min-max stretch onto `[0, 1]`. Constant images are returned unchanged.
pub fn contrast_stretch(image: &Image) -> Image {
    let (lo, hi) = image.min_max();
    if hi == lo {
        return image.clone();
    }
    let range = hi - lo;
    image.map(|p| (p - lo) / range)
}

/// Wall time spent in each stage, in seconds.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StageTimings {
    pub adaptive: f64,
    pub wiener: f64,
    pub stretch: f64,
}

impl StageTimings {
    pub fn total(&self) -> f64 {
        self.adaptive + self.wiener + self.stretch
    }
}

#[derive(Debug, Clone)]
pub struct HybridOutput {
    pub image: Image,
    /// Output of the adaptive median stage alone.
    pub adaptive: Image,
    pub noise: NoiseEstimate,
    pub timings: StageTimings,
}

/// Runs the full hybrid filter on `noisy`.
///
/// `reference` must be supplied when the config asks for reference-based
/// variance estimation and is ignored otherwise.
pub fn hybrid_denoise(
    noisy: &Image,
    config: &FilterConfig,
    reference: Option<&Image>,
) -> Result<HybridOutput> {
    config.validate()?;
    let reference = match config.estimate_mode {
        VarianceSource::Reference => Some(
            reference
                .ok_or_else(|| invalid("reference estimation mode requires a reference image"))?,
        ),
        VarianceSource::Robust => None,
    };

    let (adaptive, t_adaptive) = timed_run(|| adaptive_median_parallel(noisy, config));
    let adaptive = adaptive?;
    let mut timings = StageTimings {
        adaptive: t_adaptive,
        ..StageTimings::default()
    };

    let wiener_input = if config.stretch_after_each {
        let (stretched, t) = timed_run(|| contrast_stretch(&adaptive));
        timings.stretch += t;
        stretched
    } else {
        adaptive.clone()
    };

    let (filtered, t_wiener) = timed_run(|| -> Result<_> {
        let noise = estimate_noise_variance(&wiener_input, reference)?;
        Ok((wiener_filter(&wiener_input, &noise)?, noise))
    });
    let (filtered, noise) = filtered?;
    timings.wiener = t_wiener;

    let (image, t_stretch) = timed_run(|| contrast_stretch(&filtered));
    timings.stretch += t_stretch;

    Ok(HybridOutput {
        image,
        adaptive,
        noise,
        timings,
    })
}
