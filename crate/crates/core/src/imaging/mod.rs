//! Raster types and the preprocessing chain.
//!
//! Pages flow through [`otsu_binarize`] (grayscale input only), then
//! [`mean_filter`], then [`skeletonize`]. Projections and geometric moments
//! are the primitives the segmenter and the feature extractor build on.

mod filter;
pub mod pnm;
mod thinning;
mod threshold;

pub use filter::mean_filter;
pub use thinning::skeletonize;
pub use threshold::{otsu_binarize, otsu_threshold};

use crate::error::{Error, Result};

/// 8-bit grayscale raster, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::degenerate("gray image with zero extent"));
        }
        if pixels.len() != width * height {
            return Err(Error::DimensionMismatch {
                expected: width * height,
                found: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }
}

/// Binary ink mask, row-major; `true` is ink (black).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    ink: Vec<bool>,
}

impl std::fmt::Debug for BinaryImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BinaryImage {}x{}", self.width, self.height)?;
        for y in 0..self.height {
            let row: String = (0..self.width)
                .map(|x| if self.get(x, y) { '#' } else { '.' })
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl BinaryImage {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            ink: vec![false; width * height],
        }
    }

    pub fn from_ink(width: usize, height: usize, ink: Vec<bool>) -> Result<Self> {
        if ink.len() != width * height {
            return Err(Error::DimensionMismatch {
                expected: width * height,
                found: ink.len(),
            });
        }
        Ok(Self { width, height, ink })
    }

    /// Parses rows of `#` (ink) and `.` (background). Handy for fixtures.
    pub fn from_ascii(rows: &[&str]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.chars().count());
        let mut ink = Vec::with_capacity(width * height);
        for (y, row) in rows.iter().enumerate() {
            if row.chars().count() != width {
                return Err(Error::invalid(format!("ragged ascii row {y}")));
            }
            for c in row.chars() {
                match c {
                    '#' => ink.push(true),
                    '.' => ink.push(false),
                    other => return Err(Error::invalid(format!("unexpected glyph {other:?}"))),
                }
            }
        }
        Self::from_ink(width, height, ink)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn ink(&self) -> &[bool] {
        &self.ink
    }

    pub fn is_empty(&self) -> bool {
        self.width == 0 || self.height == 0
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.ink[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.ink[y * self.width + x] = value;
    }

    /// Ink lookup that treats everything outside the raster as background.
    #[inline]
    pub fn get_signed(&self, x: isize, y: isize) -> bool {
        x >= 0
            && y >= 0
            && (x as usize) < self.width
            && (y as usize) < self.height
            && self.get(x as usize, y as usize)
    }

    pub fn ink_count(&self) -> usize {
        self.ink.iter().filter(|&&b| b).count()
    }

    pub fn row(&self, y: usize) -> &[bool] {
        &self.ink[y * self.width..(y + 1) * self.width]
    }

    /// Copies the pixels under `bbox`. The box must lie inside the image.
    pub fn crop(&self, bbox: BoundingBox) -> Result<Self> {
        if bbox.x + bbox.w > self.width || bbox.y + bbox.h > self.height {
            return Err(Error::invalid(format!(
                "crop {bbox:?} outside {}x{} image",
                self.width, self.height
            )));
        }
        let mut out = Self::new(bbox.w, bbox.h);
        for y in 0..bbox.h {
            let src = &self.row(bbox.y + y)[bbox.x..bbox.x + bbox.w];
            out.ink[y * bbox.w..(y + 1) * bbox.w].copy_from_slice(src);
        }
        Ok(out)
    }

    /// Tight box around the ink inside `region`, or `None` when the region is blank.
    pub fn ink_bounds_within(&self, region: BoundingBox) -> Option<BoundingBox> {
        let (mut x0, mut y0) = (usize::MAX, usize::MAX);
        let (mut x1, mut y1) = (0, 0);
        for y in region.y..region.y + region.h {
            let row = &self.row(y)[region.x..region.x + region.w];
            for (dx, _) in row.iter().enumerate().filter(|(_, &b)| b) {
                let x = region.x + dx;
                x0 = x0.min(x);
                x1 = x1.max(x);
                y0 = y0.min(y);
                y1 = y1.max(y);
            }
        }
        (x0 != usize::MAX).then(|| BoundingBox::new(x0, y0, x1 - x0 + 1, y1 - y0 + 1))
    }

    pub fn ink_bounds(&self) -> Option<BoundingBox> {
        if self.is_empty() {
            return None;
        }
        self.ink_bounds_within(BoundingBox::new(0, 0, self.width, self.height))
    }

    /// Surrounds the image with `margin` background pixels on every side.
    pub fn pad(&self, margin: usize) -> Self {
        let mut out = Self::new(self.width + 2 * margin, self.height + 2 * margin);
        for y in 0..self.height {
            for x in 0..self.width {
                if self.get(x, y) {
                    out.set(x + margin, y + margin, true);
                }
            }
        }
        out
    }

    /// ORs `src` into `self` with its top-left corner at (`x`, `y`).
    pub fn blit(&mut self, src: &BinaryImage, x: usize, y: usize) {
        for sy in 0..src.height.min(self.height.saturating_sub(y)) {
            for sx in 0..src.width.min(self.width.saturating_sub(x)) {
                if src.get(sx, sy) {
                    self.set(x + sx, y + sy, true);
                }
            }
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::new(self.height, self.width);
        for y in 0..self.height {
            for x in 0..self.width {
                out.set(y, x, self.get(x, y));
            }
        }
        out
    }

    pub fn flip_vertical(&self) -> Self {
        let mut out = Self::new(self.width, self.height);
        for y in 0..self.height {
            for x in 0..self.width {
                out.set(x, self.height - 1 - y, self.get(x, y));
            }
        }
        out
    }

    pub fn flip_horizontal(&self) -> Self {
        let mut out = Self::new(self.width, self.height);
        for y in 0..self.height {
            for x in 0..self.width {
                out.set(self.width - 1 - x, y, self.get(x, y));
            }
        }
        out
    }

    /// Nearest-neighbour integer upscaling.
    pub fn scaled(&self, factor: usize) -> Self {
        let mut out = Self::new(self.width * factor, self.height * factor);
        for y in 0..out.height {
            for x in 0..out.width {
                out.set(x, y, self.get(x / factor, y / factor));
            }
        }
        out
    }
}

/// Axis-aligned pixel rectangle; `x`,`y` is the top-left corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundingBox {
    pub x: usize,
    pub y: usize,
    pub w: usize,
    pub h: usize,
}

impl BoundingBox {
    pub const fn new(x: usize, y: usize, w: usize, h: usize) -> Self {
        Self { x, y, w, h }
    }

    pub fn area(&self) -> usize {
        self.w * self.h
    }

    pub fn right(&self) -> usize {
        self.x + self.w
    }

    pub fn bottom(&self) -> usize {
        self.y + self.h
    }

    pub fn intersection_area(&self, other: &BoundingBox) -> usize {
        let w = self.right().min(other.right()).saturating_sub(self.x.max(other.x));
        let h = self.bottom().min(other.bottom()).saturating_sub(self.y.max(other.y));
        w * h
    }

    pub fn iou(&self, other: &BoundingBox) -> f64 {
        let inter = self.intersection_area(other);
        let union = self.area() + other.area() - inter;
        if union == 0 {
            0.0
        } else {
            inter as f64 / union as f64
        }
    }
}

/// Ink count per row.
pub fn horizontal_projection(img: &BinaryImage) -> Vec<usize> {
    (0..img.height())
        .map(|y| img.row(y).iter().filter(|&&b| b).count())
        .collect()
}

/// Ink count per column.
pub fn vertical_projection(img: &BinaryImage) -> Vec<usize> {
    let mut counts = vec![0; img.width()];
    for y in 0..img.height() {
        for (c, &b) in counts.iter_mut().zip(img.row(y)) {
            *c += usize::from(b);
        }
    }
    counts
}

/// Normalized geometric moment `M_pq = Σ (x/width)^p (y/height)^q` over ink pixels.
///
/// Only ranks `p, q ∈ {0, 1}` are used by the feature extractor.
pub fn geometric_moment(img: &BinaryImage, p: u32, q: u32) -> Result<f64> {
    if p > 1 || q > 1 {
        return Err(Error::invalid(format!("moment rank ({p}, {q}) not in {{0,1}}")));
    }
    let (w, h) = (img.width() as f64, img.height() as f64);
    let mut sum = 0.0;
    for y in 0..img.height() {
        let fy = if q == 1 { y as f64 / h } else { 1.0 };
        let mut row_sum = 0.0;
        for (x, _) in img.row(y).iter().enumerate().filter(|(_, &b)| b) {
            row_sum += if p == 1 { x as f64 / w } else { 1.0 };
        }
        sum += row_sum * fy;
    }
    Ok(sum)
}
