//! Adaptive median filter with growing windows `3, 5, ..., smax`.
//!
//! For each window size `k` the filter evaluates, on the pristine input `g`:
//!
//! * level A: `zmin < zmed < zmax` for pixels not yet processed;
//! * level B: `zmin < g < zmax`.
//!
//! Pixels passing level A are finalized: they keep `g` when level B holds
//! and take `zmed` otherwise. Pixels that never pass level A up to `smax`
//! keep their input value. Borders are handled by edge replication.
//!
//! Statistics never read partially filtered output, so every output pixel
//! depends only on the input within radius `(smax - 1) / 2`. This is what
//! makes banded evaluation with halo rows exactly equal to the serial filter.

use std::cmp::Ordering;
use std::ops::Range;

use crate::error::{invalid, Result};
use crate::image::Image;

/// Largest window size the paper's experiments use.
pub const DEFAULT_SMAX: usize = 11;

/// Checks that `smax` is an odd integer greater than one.
pub fn validate_smax(smax: i64) -> Result<()> {
    if smax <= 1 || smax % 2 == 0 {
        return Err(invalid(format!(
            "SMAX must be an odd integer > 1, got {smax}"
        )));
    }
    Ok(())
}

fn check_smax(smax: usize) -> Result<()> {
    validate_smax(i64::try_from(smax).unwrap_or(i64::MAX - 1))
}

/// Per-pixel window minimum, maximum and median planes for one window size.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowStats {
    pub k: usize,
    pub rows: usize,
    pub cols: usize,
    pub zmin: Vec<f64>,
    pub zmax: Vec<f64>,
    pub zmed: Vec<f64>,
}

/// Read-only rows of an image, positioned within the full image.
///
/// `data` holds rows `data_start..data_start + data.len() / cols` of an
/// image that is `image_rows` tall. Window rows are clamped to
/// `0..image_rows` (edge replication at true borders only), so the view must
/// include every row a window can reach.
#[derive(Debug, Clone, Copy)]
pub struct BandView<'a> {
    pub data: &'a [f64],
    pub cols: usize,
    pub data_start: usize,
    pub image_rows: usize,
}

impl<'a> BandView<'a> {
    pub fn whole(image: &'a Image) -> Self {
        Self {
            data: image.pixels(),
            cols: image.cols(),
            data_start: 0,
            image_rows: image.rows(),
        }
    }

    fn data_rows(&self) -> usize {
        self.data.len() / self.cols
    }

    fn covers(&self, rows: &Range<usize>, radius: usize) -> bool {
        if rows.is_empty() {
            return true;
        }
        let lo = rows.start.saturating_sub(radius);
        let hi = (rows.end - 1 + radius).min(self.image_rows - 1);
        lo >= self.data_start && hi < self.data_start + self.data_rows()
    }

    /// Collects the `k`x`k` window centred on image pixel `(row, col)` into `buf`.
    #[inline]
    fn gather(&self, row: usize, col: usize, radius: usize, buf: &mut Vec<f64>) {
        buf.clear();
        let last_row = self.image_rows - 1;
        let last_col = self.cols - 1;
        for r in row.saturating_sub(radius)..=(row + radius).min(last_row) {
            // rows beyond the image repeat the border row
            let mut repeat = 1;
            if r == 0 {
                repeat += radius.saturating_sub(row);
            }
            if r == last_row {
                repeat += (row + radius).saturating_sub(last_row);
            }
            let base = (r - self.data_start) * self.cols;
            let line = &self.data[base..base + self.cols];
            for _ in 0..repeat {
                for dc in 0..=2 * radius {
                    let c = (col + dc).saturating_sub(radius).min(last_col);
                    buf.push(line[c]);
                }
            }
        }
    }
}

#[inline]
fn cmp(a: &f64, b: &f64) -> Ordering {
    a.total_cmp(b)
}

/// Returns `(zmin, zmed, zmax)` of `window`, reordering it in place.
#[inline]
fn order_stats(window: &mut [f64]) -> (f64, f64, f64) {
    let mid = (window.len() - 1) / 2;
    let (lower, med, upper) = window.select_nth_unstable_by(mid, cmp);
    let zmed = *med;
    let zmin = lower.iter().copied().fold(zmed, f64::min);
    let zmax = upper.iter().copied().fold(zmed, f64::max);
    (zmin, zmed, zmax)
}

/// Window statistics of `image` for odd window side `k`, with replicated borders.
pub fn window_stats(image: &Image, k: usize) -> Result<WindowStats> {
    if k.is_multiple_of(2) {
        return Err(invalid(format!("window size must be odd, got {k}")));
    }
    let view = BandView::whole(image);
    let radius = (k - 1) / 2;
    let n = image.rows() * image.cols();
    let mut stats = WindowStats {
        k,
        rows: image.rows(),
        cols: image.cols(),
        zmin: Vec::with_capacity(n),
        zmax: Vec::with_capacity(n),
        zmed: Vec::with_capacity(n),
    };
    let mut buf = Vec::with_capacity(k * k);
    for r in 0..image.rows() {
        for c in 0..image.cols() {
            view.gather(r, c, radius, &mut buf);
            let (lo, med, hi) = order_stats(&mut buf);
            stats.zmin.push(lo);
            stats.zmed.push(med);
            stats.zmax.push(hi);
        }
    }
    Ok(stats)
}

/// Filters image rows `rows` of `view`, returning them row-major.
///
/// Only still-unprocessed pixels are revisited at each window size; this is
/// the same mask algebra as evaluating full planes, since processed pixels
/// are excluded from level A.
pub fn filter_band(view: &BandView<'_>, rows: Range<usize>, smax: usize) -> Result<Vec<f64>> {
    check_smax(smax)?;
    let cols = view.cols;
    if cols == 0 || !view.data.len().is_multiple_of(cols) {
        return Err(invalid("band data is not a whole number of rows"));
    }
    if rows.end > view.image_rows || !view.covers(&rows, (smax - 1) / 2) {
        return Err(invalid(format!(
            "band rows {}..{} with data rows {}..{} do not cover the window radius {}",
            rows.start,
            rows.end,
            view.data_start,
            view.data_start + view.data_rows(),
            (smax - 1) / 2
        )));
    }

    let first = (rows.start - view.data_start) * cols;
    let mut out = view.data[first..first + rows.len() * cols].to_vec();
    let mut pending: Vec<usize> = (0..out.len()).collect();
    let mut still = Vec::with_capacity(pending.len());
    let mut buf = Vec::with_capacity(smax * smax);

    for k in (3..=smax).step_by(2) {
        let radius = (k - 1) / 2;
        still.clear();
        for &i in &pending {
            let (r, c) = (rows.start + i / cols, i % cols);
            view.gather(r, c, radius, &mut buf);
            let (zmin, zmed, zmax) = order_stats(&mut buf);
            if zmin < zmed && zmed < zmax {
                let g = out[i];
                if !(zmin < g && g < zmax) {
                    out[i] = zmed;
                }
            } else {
                still.push(i);
            }
        }
        std::mem::swap(&mut pending, &mut still);
        if pending.is_empty() {
            break;
        }
    }
    Ok(out)
}

/// Adaptive median filter over the whole image.
pub fn adaptive_median_serial(image: &Image, smax: usize) -> Result<Image> {
    let out = filter_band(&BandView::whole(image), 0..image.rows(), smax)?;
    Ok(Image::from_raw(image.rows(), image.cols(), out))
}

/// Full-plane version of the filter that materializes the level A/B masks
/// at every window size. Kept for inspection and cross-checking; the
/// per-pixel kernel in [`adaptive_median_serial`] is faster.
pub fn adaptive_median_masked(image: &Image, smax: usize) -> Result<(Image, Vec<Vec<bool>>)> {
    check_smax(smax)?;
    let g = image.pixels();
    let mut f = g.to_vec();
    let mut processed = vec![false; g.len()];
    let mut history = Vec::new();
    for k in (3..=smax).step_by(2) {
        let WindowStats {
            zmin, zmax, zmed, ..
        } = window_stats(image, k)?;
        for i in 0..g.len() {
            let level_b = zmed[i] > zmin[i] && zmax[i] > zmed[i] && !processed[i];
            if !level_b {
                continue;
            }
            let z_b = g[i] > zmin[i] && zmax[i] > g[i];
            f[i] = if z_b { g[i] } else { zmed[i] };
            processed[i] = true;
        }
        history.push(processed.clone());
        if processed.iter().all(|&p| p) {
            break;
        }
    }
    Ok((Image::from_raw(image.rows(), image.cols(), f), history))
}
