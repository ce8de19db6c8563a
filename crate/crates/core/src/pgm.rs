//! Netpbm graymap (PGM) reading and writing.
//!
//! Reads binary `P5` and ASCII `P2` files with any `maxval` up to 65535.
//! Always writes binary `P5` with `maxval` 255.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::Image;

const MAX_MAXVAL: u32 = 65535;

pub fn load_pgm(path: impl AsRef<Path>) -> Result<Image> {
    let bytes = fs::read(path)?;
    decode_pgm(&bytes)
}

pub fn save_pgm(image: &Image, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode_pgm(image))?;
    Ok(())
}

/// Quantizes a unit-scale intensity to 8 bits, rounding half away from zero.
#[inline]
pub fn quantize_u8(p: f64) -> u8 {
    (p.clamp(0.0, 1.0) * 255.0).round() as u8
}

pub fn encode_pgm(image: &Image) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", image.cols(), image.rows());
    let mut out = Vec::with_capacity(header.len() + image.pixels().len());
    out.extend_from_slice(header.as_bytes());
    out.extend(image.pixels().iter().map(|&p| quantize_u8(p)));
    out
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.buf.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.buf.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn unsigned(&mut self, what: &str) -> Result<u32> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.buf.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.buf.get(self.pos) {
                None => Error::Format(format!("unexpected end of file reading {what}")),
                Some(_) => Error::Format(format!("invalid {what}")),
            });
        }
        std::str::from_utf8(&self.buf[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Format(format!("{what} out of range")))
    }
}

pub fn decode_pgm(bytes: &[u8]) -> Result<Image> {
    let magic = bytes
        .get(..2)
        .ok_or_else(|| Error::Format("missing magic number".into()))?;
    let binary = match magic {
        b"P5" => true,
        b"P2" => false,
        other => {
            return Err(Error::Format(format!(
                "unsupported magic {:?}",
                String::from_utf8_lossy(other)
            )))
        }
    };
    let mut cur = Cursor { buf: bytes, pos: 2 };
    if !cur
        .buf
        .get(cur.pos)
        .is_some_and(|b| b.is_ascii_whitespace() || *b == b'#')
    {
        return Err(Error::Format(
            "missing whitespace after magic number".into(),
        ));
    }
    let width = cur.unsigned("width")? as usize;
    let height = cur.unsigned("height")? as usize;
    let maxval = cur.unsigned("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::Format(format!(
            "invalid dimensions {width}x{height}"
        )));
    }
    if maxval == 0 || maxval > MAX_MAXVAL {
        return Err(Error::Format(format!("invalid maxval {maxval}")));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| Error::Format("dimensions overflow".into()))?;
    let scale = f64::from(maxval);

    let mut pixels = Vec::with_capacity(count);
    if binary {
        // exactly one whitespace byte separates maxval from the raster
        match cur.buf.get(cur.pos) {
            Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
            _ => return Err(Error::Format("missing whitespace after maxval".into())),
        }
        let raster = &bytes[cur.pos..];
        let sample_bytes = if maxval < 256 { 1 } else { 2 };
        if raster.len() < count * sample_bytes {
            return Err(Error::Format(format!(
                "truncated pixel data: expected {} bytes, found {}",
                count * sample_bytes,
                raster.len()
            )));
        }
        for i in 0..count {
            let v = if sample_bytes == 1 {
                u32::from(raster[i])
            } else {
                u32::from(u16::from_be_bytes([raster[2 * i], raster[2 * i + 1]]))
            };
            pixels.push(sample(v, maxval, scale)?);
        }
    } else {
        for i in 0..count {
            let v = cur.unsigned("pixel data").map_err(|e| match e {
                Error::Format(msg) if msg.starts_with("unexpected end") => Error::Format(format!(
                    "truncated pixel data: expected {count} samples, found {i}"
                )),
                e => e,
            })?;
            pixels.push(sample(v, maxval, scale)?);
        }
    }
    Image::new(height, width, pixels)
}

fn sample(v: u32, maxval: u32, scale: f64) -> Result<f64> {
    if v > maxval {
        return Err(Error::Format(format!("sample {v} exceeds maxval {maxval}")));
    }
    Ok(f64::from(v) / scale)
}
