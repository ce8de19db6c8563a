//! Synthetic grayscale test phantoms.
//!
//! A phantom is a diagonal intensity gradient overlaid with a few bright
//! disks and dark bars whose placement depends on the seed. One disk is at
//! full intensity and one bar at zero, so clean phantoms span `[0, 1]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::image::Image;

const DISKS: usize = 5;
const BARS: usize = 3;

struct Disk {
    row: f64,
    col: f64,
    radius: f64,
    value: f64,
}

struct Bar {
    row: f64,
    col: f64,
    height: f64,
    width: f64,
    value: f64,
}

impl Bar {
    fn contains(&self, y: f64, x: f64) -> bool {
        y >= self.row && y < self.row + self.height && x >= self.col && x < self.col + self.width
    }
}

pub fn phantom(rows: usize, cols: usize, seed: u64) -> Result<Image> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (h, w) = (rows as f64, cols as f64);
    let scale = h.min(w);

    let disks: Vec<Disk> = (0..DISKS)
        .map(|i| Disk {
            row: rng.gen_range(0.15..0.85) * h,
            col: rng.gen_range(0.15..0.85) * w,
            radius: rng.gen_range(0.05..0.15) * scale,
            value: if i == 0 {
                1.0
            } else {
                rng.gen_range(0.65..0.95)
            },
        })
        .collect();
    let bars: Vec<Bar> = (0..BARS)
        .map(|i| Bar {
            row: rng.gen_range(0.05..0.75) * h,
            col: rng.gen_range(0.05..0.75) * w,
            height: rng.gen_range(0.05..0.2) * h,
            width: rng.gen_range(0.02..0.06) * w,
            value: if i == 0 {
                0.0
            } else {
                rng.gen_range(0.05..0.3)
            },
        })
        .collect();

    Image::from_fn(rows, cols, |r, c| {
        let (y, x) = (r as f64 + 0.5, c as f64 + 0.5);
        let mut v = 0.25 + 0.4 * (y / h + x / w) / 2.0;
        // the full-intensity disk and the zero bar are painted last
        for bar in bars.iter().skip(1) {
            if bar.contains(y, x) {
                v = bar.value;
            }
        }
        for d in disks.iter().rev() {
            if (y - d.row).powi(2) + (x - d.col).powi(2) <= d.radius * d.radius {
                v = d.value;
            }
        }
        if bars[0].contains(y, x) {
            v = bars[0].value;
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_seed_dependent() {
        assert_eq!(phantom(32, 40, 3).unwrap(), phantom(32, 40, 3).unwrap());
        assert_ne!(phantom(32, 40, 3).unwrap(), phantom(32, 40, 4).unwrap());
    }

    #[test]
    fn spans_unit_range() {
        let img = phantom(128, 128, 11).unwrap();
        assert_eq!(img.min_max(), (0.0, 1.0));
    }

    #[test]
    fn tiny_sizes() {
        assert_eq!(phantom(1, 1, 0).unwrap().dimensions(), (1, 1));
    }
}
