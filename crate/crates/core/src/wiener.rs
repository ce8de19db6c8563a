//! Frequency-domain Wiener denoising and noise variance estimation.
//!
//! The 2-D transform is unnormalized in the forward direction and divides by
//! `rows * cols` on the way back. Arbitrary sizes are supported; `rustfft`
//! picks mixed-radix or Bluestein plans as needed.
//!
//! The Wiener gain for a bin with power `P = |G|^2` under white noise of
//! variance `sigma2` is `(P - N0) / P` when `P > N0` and zero otherwise,
//! with `N0 = rows * cols * sigma2`.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::adaptive_median::window_stats;
use crate::error::{invalid, Result};
use crate::image::Image;

/// Median absolute deviation to standard deviation for Gaussian data.
const MAD_TO_SIGMA: f64 = 0.6745;

/// 2-D spectrum, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub rows: usize,
    pub cols: usize,
    pub bins: Vec<Complex64>,
}

impl Spectrum {
    pub fn get(&self, u: usize, v: usize) -> Complex64 {
        self.bins[u * self.cols + v]
    }

    pub fn power(&self) -> Vec<f64> {
        self.bins.iter().map(|b| b.norm_sqr()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMode {
    /// Variance supplied by the caller.
    Given,
    /// Mean squared difference against a clean reference image.
    Reference,
    /// Median absolute deviation of the residual after a 3x3 median filter.
    Robust,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseEstimate {
    pub sigma2: f64,
    pub mode: EstimateMode,
}

impl NoiseEstimate {
    pub fn given(sigma2: f64) -> Result<Self> {
        if !(sigma2 >= 0.0 && sigma2.is_finite()) {
            return Err(invalid(format!(
                "noise variance must be >= 0, got {sigma2}"
            )));
        }
        Ok(Self {
            sigma2,
            mode: EstimateMode::Given,
        })
    }
}

fn transform(rows: usize, cols: usize, bins: &mut [Complex64], inverse: bool) {
    let mut planner = FftPlanner::new();
    let (row_fft, col_fft) = if inverse {
        (
            planner.plan_fft_inverse(cols),
            planner.plan_fft_inverse(rows),
        )
    } else {
        (
            planner.plan_fft_forward(cols),
            planner.plan_fft_forward(rows),
        )
    };
    row_fft.process(bins);

    let mut column = vec![Complex64::default(); rows];
    let mut scratch = vec![Complex64::default(); col_fft.get_inplace_scratch_len()];
    for c in 0..cols {
        for r in 0..rows {
            column[r] = bins[r * cols + c];
        }
        col_fft.process_with_scratch(&mut column, &mut scratch);
        for r in 0..rows {
            bins[r * cols + c] = column[r];
        }
    }
}

/// Forward transform of a real row-major plane.
pub fn dft2_forward_plane(rows: usize, cols: usize, values: &[f64]) -> Result<Spectrum> {
    if rows == 0 || cols == 0 || values.len() != rows * cols {
        return Err(invalid("plane dimensions do not match its data"));
    }
    let mut bins: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    transform(rows, cols, &mut bins, false);
    Ok(Spectrum { rows, cols, bins })
}

pub fn dft2_forward(image: &Image) -> Spectrum {
    dft2_forward_plane(image.rows(), image.cols(), image.pixels())
        .expect("image dimensions are always consistent")
}

/// Inverse transform, returning the real part without clamping.
pub fn dft2_inverse(spectrum: &Spectrum) -> Vec<f64> {
    let mut bins = spectrum.bins.clone();
    transform(spectrum.rows, spectrum.cols, &mut bins, true);
    let scale = (spectrum.rows * spectrum.cols) as f64;
    bins.iter().map(|b| b.re / scale).collect()
}

/// Inverse transform clamped into a valid image.
pub fn dft2_inverse_image(spectrum: &Spectrum) -> Image {
    let values = dft2_inverse(spectrum);
    Image::from_raw(
        spectrum.rows,
        spectrum.cols,
        values.into_iter().map(|v| v.clamp(0.0, 1.0)).collect(),
    )
}

fn median_of(values: &mut [f64]) -> f64 {
    let n = values.len();
    values.sort_unstable_by(f64::total_cmp);
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Estimates the additive noise variance of `image`.
///
/// With a reference, returns the mean squared difference. Without one, uses
/// `sigma = median(|x - median3(x)|) / 0.6745`.
pub fn estimate_noise_variance(image: &Image, reference: Option<&Image>) -> Result<NoiseEstimate> {
    if let Some(reference) = reference {
        return Ok(NoiseEstimate {
            sigma2: crate::metrics::mse(image, reference)?,
            mode: EstimateMode::Reference,
        });
    }
    let smoothed = window_stats(image, 3)?.zmed;
    let mut residual: Vec<f64> = image
        .pixels()
        .iter()
        .zip(&smoothed)
        .map(|(x, m)| (x - m).abs())
        .collect();
    let sigma = median_of(&mut residual) / MAD_TO_SIGMA;
    Ok(NoiseEstimate {
        sigma2: sigma * sigma,
        mode: EstimateMode::Robust,
    })
}

/// Per-bin Wiener gains for white noise of variance `sigma2`.
pub fn wiener_gains(spectrum: &Spectrum, sigma2: f64) -> Vec<f64> {
    let noise_power = (spectrum.rows * spectrum.cols) as f64 * sigma2;
    spectrum
        .bins
        .iter()
        .map(|b| {
            let power = b.norm_sqr();
            if power > noise_power {
                (power - noise_power) / power
            } else {
                0.0
            }
        })
        .collect()
}

/// Applies the Wiener gains and returns the unclamped spatial result.
pub fn wiener_filter_plane(image: &Image, sigma2: f64) -> Vec<f64> {
    let mut spectrum = dft2_forward(image);
    let gains = wiener_gains(&spectrum, sigma2);
    for (bin, gain) in spectrum.bins.iter_mut().zip(gains) {
        *bin *= gain;
    }
    dft2_inverse(&spectrum)
}

pub fn wiener_filter(image: &Image, noise: &NoiseEstimate) -> Result<Image> {
    if !(noise.sigma2 >= 0.0 && noise.sigma2.is_finite()) {
        return Err(invalid(format!(
            "noise variance must be >= 0, got {}",
            noise.sigma2
        )));
    }
    let values = wiener_filter_plane(image, noise.sigma2);
    Ok(Image::from_raw(
        image.rows(),
        image.cols(),
        values.into_iter().map(|v| v.clamp(0.0, 1.0)).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cosine4() -> Vec<f64> {
        // x runs along rows here, so bins (1,0) and (3,0) carry the energy
        (0..16)
            .map(|i| (2.0 * PI * (i / 4) as f64 / 4.0).cos())
            .collect()
    }

    #[test]
    fn zero_image_zero_spectrum() {
        let s = dft2_forward(&Image::filled(5, 3, 0.0).unwrap());
        assert!(s.bins.iter().all(|b| b.norm() == 0.0));
    }

    #[test]
    fn single_pixel() {
        let img = Image::from_rows(&[[0.3]]).unwrap();
        let s = dft2_forward(&img);
        assert_eq!(s.bins, vec![Complex64::new(0.3, 0.0)]);
        assert_eq!(dft2_inverse_image(&s), img);
    }

    #[test]
    fn cosine_bins() {
        let s = dft2_forward_plane(4, 4, &cosine4()).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                let expected = if v == 0 && (u == 1 || u == 3) {
                    8.0
                } else {
                    0.0
                };
                let b = s.get(u, v);
                assert!(
                    (b.re - expected).abs() < 1e-9 && b.im.abs() < 1e-9,
                    "({u},{v}) {b}"
                );
            }
        }
    }

    #[test]
    fn inverse_is_unclamped() {
        let s = dft2_forward_plane(4, 4, &cosine4()).unwrap();
        let back = dft2_inverse(&s);
        assert!(back
            .iter()
            .zip(cosine4())
            .all(|(a, b)| (a - b).abs() < 1e-12));
        assert!(back.iter().any(|&v| v < 0.0));
        assert!(dft2_inverse_image(&s).pixels().iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn cosine_gain() {
        let s = dft2_forward_plane(4, 4, &cosine4()).unwrap();
        let gains = wiener_gains(&s, 0.01);
        assert!((gains[4] - 0.9975).abs() < 1e-12);
        assert!((gains[12] - 0.9975).abs() < 1e-12);
        assert_eq!(gains.iter().filter(|&&g| g > 0.0).count(), 2);
    }

    #[test]
    fn zero_sigma_identity() {
        let img = Image::from_fn(6, 7, |r, c| ((r * 7 + c) % 5) as f64 / 5.0).unwrap();
        let out = wiener_filter(&img, &NoiseEstimate::given(0.0).unwrap()).unwrap();
        assert!(out
            .pixels()
            .iter()
            .zip(img.pixels())
            .all(|(a, b)| (a - b).abs() < 1e-9));
    }

    #[test]
    fn zero_image_stays_zero() {
        let img = Image::filled(4, 4, 0.0).unwrap();
        let out = wiener_filter(&img, &NoiseEstimate::given(0.5).unwrap()).unwrap();
        assert_eq!(out, img);
    }

    #[test]
    fn rejects_negative_sigma() {
        assert!(NoiseEstimate::given(-1.0).is_err());
        let img = Image::filled(2, 2, 0.1).unwrap();
        let bad = NoiseEstimate {
            sigma2: -1.0,
            mode: EstimateMode::Given,
        };
        assert!(wiener_filter(&img, &bad).is_err());
    }

    #[test]
    fn estimate_trivial_cases() {
        let flat = Image::filled(16, 16, 0.7).unwrap();
        let robust = estimate_noise_variance(&flat, None).unwrap();
        assert_eq!((robust.sigma2, robust.mode), (0.0, EstimateMode::Robust));
        let img = Image::from_fn(8, 8, |r, c| (r * c) as f64 / 64.0).unwrap();
        let same = estimate_noise_variance(&img, Some(&img)).unwrap();
        assert_eq!((same.sigma2, same.mode), (0.0, EstimateMode::Reference));
        let other = Image::filled(8, 9, 0.0).unwrap();
        assert!(estimate_noise_variance(&img, Some(&other)).is_err());
    }

    #[test]
    fn robust_estimate_near_injected_variance() {
        let clean = Image::filled(256, 256, 0.5).unwrap();
        let noisy = crate::noise::add_gaussian(&clean, 0.0, 0.01, 77).unwrap();
        let est = estimate_noise_variance(&noisy, None).unwrap();
        assert!(est.sigma2 > 0.007 && est.sigma2 < 0.013, "{}", est.sigma2);
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median_of(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median_of(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
