//! Grayscale raster on the unit intensity scale and horizontal band tiling.
//!
//! Pixels are stored row-major as `f64` in `[0, 1]`. A [`Tile`] is a
//! full-width band of rows owned by one worker, plus read-only halo rows
//! copied from its neighbours so windowed operators see the same context
//! they would see in the whole image.

use crate::error::{invalid, Error, Result};

/// Row-major grayscale image with intensities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    rows: usize,
    cols: usize,
    pixels: Vec<f64>,
}

impl Image {
    /// Builds an image from row-major pixels. Values are clamped to `[0, 1]`.
    pub fn new(rows: usize, cols: usize, pixels: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(invalid(format!(
                "image dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if pixels.len() != rows * cols {
            return Err(invalid(format!(
                "expected {} pixels for {rows}x{cols}, got {}",
                rows * cols,
                pixels.len()
            )));
        }
        if let Some(p) = pixels.iter().find(|p| p.is_nan()) {
            return Err(invalid(format!("pixel value {p} is not a number")));
        }
        let pixels = pixels.into_iter().map(|p| p.clamp(0.0, 1.0)).collect();
        Ok(Self { rows, cols, pixels })
    }

    /// Constant image.
    pub fn filled(rows: usize, cols: usize, value: f64) -> Result<Self> {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let mut pixels = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                pixels.push(f(r, c));
            }
        }
        Self::new(rows, cols, pixels)
    }

    /// Builds an image from nested rows; all rows must have equal length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(invalid("ragged rows"));
        }
        let pixels = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().copied())
            .collect();
        Self::new(rows.len(), cols, pixels)
    }

    /// Crate-internal constructor for pixels already known to be in range.
    pub(crate) fn from_raw(rows: usize, cols: usize, pixels: Vec<f64>) -> Self {
        debug_assert_eq!(pixels.len(), rows * cols);
        debug_assert!(pixels.iter().all(|p| (0.0..=1.0).contains(p)));
        Self { rows, cols, pixels }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<f64> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.pixels[row * self.cols..(row + 1) * self.cols]
    }

    /// Returns a new image with `f` applied to every pixel, clamped to `[0, 1]`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        let pixels = self.pixels.iter().map(|&p| f(p).clamp(0.0, 1.0)).collect();
        Self::from_raw(self.rows, self.cols, pixels)
    }

    /// Global minimum and maximum intensity.
    pub fn min_max(&self) -> (f64, f64) {
        self.pixels
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &p| {
                (lo.min(p), hi.max(p))
            })
    }

    pub(crate) fn ensure_same_dims(&self, other: &Image) -> Result<()> {
        if self.dimensions() != other.dimensions() {
            return Err(invalid(format!(
                "dimension mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// One horizontal band of an image with read-only halo context.
#[derive(Debug, Clone, PartialEq)]
pub struct Tile {
    pub index: usize,
    /// First owned row, in image coordinates.
    pub core_start: usize,
    pub core_rows: usize,
    pub halo_above: usize,
    pub halo_below: usize,
    pub cols: usize,
    /// `(halo_above + core_rows + halo_below) * cols` pixels, row-major.
    pub data: Vec<f64>,
}

impl Tile {
    pub fn data_rows(&self) -> usize {
        self.halo_above + self.core_rows + self.halo_below
    }

    /// Image row of the first data row.
    pub fn data_start(&self) -> usize {
        self.core_start - self.halo_above
    }

    pub fn core_end(&self) -> usize {
        self.core_start + self.core_rows
    }

    /// The owned rows, without halo.
    pub fn core(&self) -> &[f64] {
        let start = self.halo_above * self.cols;
        &self.data[start..start + self.core_rows * self.cols]
    }

    pub fn core_mut(&mut self) -> &mut [f64] {
        let start = self.halo_above * self.cols;
        let len = self.core_rows * self.cols;
        &mut self.data[start..start + len]
    }
}

/// Core heights for `parts` near-equal bands; the first `rows % parts` bands
/// get one extra row.
pub fn band_heights(rows: usize, parts: usize) -> Vec<usize> {
    let base = rows / parts;
    let extra = rows % parts;
    (0..parts).map(|i| base + usize::from(i < extra)).collect()
}

/// Splits `image` into `parts` full-width bands, each carrying up to `halo`
/// rows of context above and below (clamped at the image borders).
pub fn split_bands(image: &Image, parts: usize, halo: usize) -> Result<Vec<Tile>> {
    let rows = image.rows();
    if parts < 1 || parts > rows {
        return Err(invalid(format!(
            "parts must be in 1..={rows} for a {rows}-row image, got {parts}"
        )));
    }
    let cols = image.cols();
    let mut tiles = Vec::with_capacity(parts);
    let mut core_start = 0;
    for (index, core_rows) in band_heights(rows, parts).into_iter().enumerate() {
        let halo_above = halo.min(core_start);
        let halo_below = halo.min(rows - core_start - core_rows);
        let first = core_start - halo_above;
        let last = core_start + core_rows + halo_below;
        tiles.push(Tile {
            index,
            core_start,
            core_rows,
            halo_above,
            halo_below,
            cols,
            data: image.pixels[first * cols..last * cols].to_vec(),
        });
        core_start += core_rows;
    }
    Ok(tiles)
}

/// Reassembles an image from the core rows of `tiles`, discarding halos.
pub fn stitch_bands(tiles: &[Tile], rows: usize, cols: usize) -> Result<Image> {
    let mut owner: Vec<Option<usize>> = vec![None; rows];
    for tile in tiles {
        if tile.cols != cols {
            return Err(Error::Consistency(format!(
                "tile {} has {} columns, expected {cols}",
                tile.index, tile.cols
            )));
        }
        if tile.data.len() != tile.data_rows() * cols || tile.halo_above > tile.core_start {
            return Err(Error::Consistency(format!(
                "tile {} has inconsistent geometry",
                tile.index
            )));
        }
        if tile.core_end() > rows {
            return Err(Error::Consistency(format!(
                "tile {} owns rows up to {} beyond image height {rows}",
                tile.index,
                tile.core_end() - 1
            )));
        }
        for (r, slot) in owner[tile.core_start..tile.core_end()]
            .iter_mut()
            .enumerate()
        {
            if let Some(prev) = *slot {
                return Err(Error::Consistency(format!(
                    "row {} owned by tiles {prev} and {}",
                    tile.core_start + r,
                    tile.index
                )));
            }
            *slot = Some(tile.index);
        }
    }
    if let Some(r) = owner.iter().position(Option::is_none) {
        return Err(Error::Consistency(format!(
            "row {r} is not owned by any tile"
        )));
    }

    let mut pixels = vec![0.0; rows * cols];
    for tile in tiles {
        pixels[tile.core_start * cols..tile.core_end() * cols].copy_from_slice(tile.core());
    }
    Image::new(rows, cols, pixels)
}
