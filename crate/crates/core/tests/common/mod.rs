//! Independent oracles shared by the integration and acceptance tests.
//!
//! Nothing here calls into the filtering code it checks: windows are
//! gathered with plain clamped indexing and sorted in full, and transforms
//! are evaluated by direct summation.

#![allow(dead_code)]

use std::f64::consts::PI;

use hybrid_denoise::{degrade, phantom, Image, NoiseSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Per-pixel adaptive median: grow the window from 3 to `smax` until the
/// median is not an extreme (level A); then keep the pixel unless it is
/// itself an extreme (level B). Pixels that never pass level A keep their value.
pub fn adaptive_median_oracle(img: &Image, smax: usize) -> Vec<f64> {
    let (m, n) = img.dimensions();
    let mut out = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let g = img.get(i, j);
            let mut value = g;
            let mut k = 3;
            while k <= smax {
                let r = (k / 2) as isize;
                let mut w = Vec::with_capacity(k * k);
                for di in -r..=r {
                    for dj in -r..=r {
                        let ii = (i as isize + di).clamp(0, m as isize - 1) as usize;
                        let jj = (j as isize + dj).clamp(0, n as isize - 1) as usize;
                        w.push(img.get(ii, jj));
                    }
                }
                w.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let (zmin, zmed, zmax) = (w[0], w[w.len() / 2], w[w.len() - 1]);
                if zmin < zmed && zmed < zmax {
                    value = if zmin < g && g < zmax { g } else { zmed };
                    break;
                }
                k += 2;
            }
            out.push(value);
        }
    }
    out
}

/// Direct O((MN)^2) forward DFT, returned as (re, im) pairs.
pub fn dft_direct(values: &[f64], m: usize, n: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); m * n];
    for u in 0..m {
        for v in 0..n {
            let (mut re, mut im) = (0.0, 0.0);
            for r in 0..m {
                for c in 0..n {
                    let phase = -2.0 * PI * ((u * r) as f64 / m as f64 + (v * c) as f64 / n as f64);
                    re += values[r * n + c] * phase.cos();
                    im += values[r * n + c] * phase.sin();
                }
            }
            out[u * n + v] = (re, im);
        }
    }
    out
}

/// Direct inverse DFT, real part only.
pub fn idft_direct_real(bins: &[(f64, f64)], m: usize, n: usize) -> Vec<f64> {
    let mut out = vec![0.0; m * n];
    for r in 0..m {
        for c in 0..n {
            let mut acc = 0.0;
            for u in 0..m {
                for v in 0..n {
                    let phase = 2.0 * PI * ((u * r) as f64 / m as f64 + (v * c) as f64 / n as f64);
                    let (re, im) = bins[u * n + v];
                    acc += re * phase.cos() - im * phase.sin();
                }
            }
            out[r * n + c] = acc / (m * n) as f64;
        }
    }
    out
}

/// Wiener filter evaluated bin by bin on the direct DFT, clamped to [0, 1].
pub fn wiener_oracle(img: &Image, sigma2: f64) -> Vec<f64> {
    let (m, n) = img.dimensions();
    let noise_power = (m * n) as f64 * sigma2;
    let filtered: Vec<(f64, f64)> = dft_direct(img.pixels(), m, n)
        .into_iter()
        .map(|(re, im)| {
            let p = re * re + im * im;
            let gain = if p > noise_power {
                (p - noise_power) / p
            } else {
                0.0
            };
            (re * gain, im * gain)
        })
        .collect();
    idft_direct_real(&filtered, m, n)
        .into_iter()
        .map(|v| v.clamp(0.0, 1.0))
        .collect()
}

pub fn uniform_image(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Image {
    Image::new(
        rows,
        cols,
        (0..rows * cols).map(|_| rng.gen::<f64>()).collect(),
    )
    .unwrap()
}

/// Uniform noise quantized to a few levels, so windows often contain ties
/// and flat patches that push pixels up to `smax`.
pub fn quantized_image(rows: usize, cols: usize, levels: u32, rng: &mut ChaCha8Rng) -> Image {
    let px = (0..rows * cols)
        .map(|_| f64::from(rng.gen_range(0..levels)) / f64::from(levels - 1))
        .collect();
    Image::new(rows, cols, px).unwrap()
}

pub fn noisy_phantom(rows: usize, cols: usize, seed: u64) -> Image {
    degrade(
        &phantom(rows, cols, seed).unwrap(),
        &NoiseSpec {
            seed,
            ..NoiseSpec::default()
        },
    )
    .unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
