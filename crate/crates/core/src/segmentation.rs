//! Word segmentation by recursive X-Y cuts.
//!
//! A region is first split at every blank row run; regions without blank
//! rows are split at blank column runs at least
//! `max(2, round(word_gap_factor × region height))` wide. Each piece is
//! trimmed to its ink and cut again until nothing splits or `max_depth` is
//! reached. Leaves are emitted in tree order, which is reading order: line
//! bands top to bottom, then words left to right.

use crate::error::{Error, Result};
use crate::imaging::{BinaryImage, BoundingBox};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SegmentationConfig {
    pub min_region_w: usize,
    pub min_region_h: usize,
    pub min_ink: usize,
    pub word_gap_factor: f64,
    pub max_depth: usize,
}

impl Default for SegmentationConfig {
    fn default() -> Self {
        Self {
            min_region_w: 3,
            min_region_h: 3,
            min_ink: 5,
            word_gap_factor: 0.35,
            max_depth: 6,
        }
    }
}

impl SegmentationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_region_w == 0 || self.min_region_h == 0 || self.min_ink == 0 {
            return Err(Error::invalid("segmentation minima must be positive"));
        }
        if self.max_depth == 0 {
            return Err(Error::invalid("max_depth must be positive"));
        }
        if !(self.word_gap_factor > 0.0 && self.word_gap_factor < 1.0) {
            return Err(Error::invalid(format!(
                "word_gap_factor {} outside (0, 1)",
                self.word_gap_factor
            )));
        }
        Ok(())
    }

    /// Minimum blank-column run that separates words in a band of height `h`.
    pub fn column_gap_threshold(&self, h: usize) -> usize {
        ((self.word_gap_factor * h as f64).round() as usize).max(2)
    }
}

/// Result of a segmentation pass: kept word boxes plus the leaves rejected as noise.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Segmentation {
    pub words: Vec<BoundingBox>,
    pub discarded: Vec<BoundingBox>,
}

/// Word boxes of a preprocessed page in reading order.
pub fn segment_words(page: &BinaryImage, cfg: &SegmentationConfig) -> Result<Vec<BoundingBox>> {
    Ok(segment(page, cfg)?.words)
}

pub fn segment(page: &BinaryImage, cfg: &SegmentationConfig) -> Result<Segmentation> {
    cfg.validate()?;
    let mut seg = Segmentation::default();
    if let Some(region) = page.ink_bounds() {
        cut(page, cfg, region, 0, &mut seg);
    }
    Ok(seg)
}

fn cut(page: &BinaryImage, cfg: &SegmentationConfig, region: BoundingBox, depth: usize, seg: &mut Segmentation) {
    if depth < cfg.max_depth {
        let pieces = split_rows(page, region);
        let pieces = if pieces.len() > 1 {
            pieces
        } else {
            split_columns(page, region, cfg.column_gap_threshold(region.h))
        };
        if pieces.len() > 1 {
            for piece in pieces {
                if let Some(tight) = page.ink_bounds_within(piece) {
                    cut(page, cfg, tight, depth + 1, seg);
                }
            }
            return;
        }
    }
    let ink = ink_in(page, region);
    if region.w < cfg.min_region_w || region.h < cfg.min_region_h || ink < cfg.min_ink {
        seg.discarded.push(region);
    } else {
        seg.words.push(region);
    }
}

fn ink_in(page: &BinaryImage, r: BoundingBox) -> usize {
    (r.y..r.bottom())
        .map(|y| page.row(y)[r.x..r.right()].iter().filter(|&&b| b).count())
        .sum()
}

/// Splits at every run of fully blank rows.
fn split_rows(page: &BinaryImage, r: BoundingBox) -> Vec<BoundingBox> {
    let blank: Vec<bool> = (r.y..r.bottom())
        .map(|y| !page.row(y)[r.x..r.right()].iter().any(|&b| b))
        .collect();
    runs_of_ink(&blank, 1)
        .into_iter()
        .map(|(start, len)| BoundingBox::new(r.x, r.y + start, r.w, len))
        .collect()
}

/// Splits at blank column runs of length `>= min_gap`.
fn split_columns(page: &BinaryImage, r: BoundingBox, min_gap: usize) -> Vec<BoundingBox> {
    let mut blank = vec![true; r.w];
    for y in r.y..r.bottom() {
        for (b, &ink) in blank.iter_mut().zip(&page.row(y)[r.x..r.right()]) {
            if ink {
                *b = false;
            }
        }
    }
    runs_of_ink(&blank, min_gap)
        .into_iter()
        .map(|(start, len)| BoundingBox::new(r.x + start, r.y, len, r.h))
        .collect()
}

/// Segments `(start, len)` separated by blank runs of at least `min_gap`.
/// Shorter blank runs stay inside a segment.
fn runs_of_ink(blank: &[bool], min_gap: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut seg_start: Option<usize> = None;
    let mut last_ink = 0;
    let mut gap = 0;
    for (i, &b) in blank.iter().enumerate() {
        if b {
            gap += 1;
            continue;
        }
        match seg_start {
            None => seg_start = Some(i),
            Some(s) if gap >= min_gap => {
                out.push((s, last_ink - s + 1));
                seg_start = Some(i);
            }
            Some(_) => {}
        }
        last_ink = i;
        gap = 0;
    }
    if let Some(s) = seg_start {
        out.push((s, last_ink - s + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blob(img: &mut BinaryImage, x: usize, y: usize, w: usize, h: usize) {
        for yy in y..y + h {
            for xx in x..x + w {
                img.set(xx, yy, true);
            }
        }
    }

    #[test]
    fn two_blobs_on_a_row() {
        let mut page = BinaryImage::new(60, 20);
        blob(&mut page, 5, 5, 10, 10);
        blob(&mut page, 25, 5, 10, 10);
        let boxes = segment_words(&page, &SegmentationConfig::default()).unwrap();
        assert_eq!(
            boxes,
            vec![BoundingBox::new(5, 5, 10, 10), BoundingBox::new(25, 5, 10, 10)]
        );
    }

    #[test]
    fn narrow_gap_does_not_split() {
        let mut page = BinaryImage::new(60, 20);
        blob(&mut page, 5, 5, 10, 10);
        blob(&mut page, 18, 5, 10, 10); // 3 blank columns < threshold 4
        let boxes = segment_words(&page, &SegmentationConfig::default()).unwrap();
        assert_eq!(boxes, vec![BoundingBox::new(5, 5, 23, 10)]);
    }

    #[test]
    fn blank_page_is_empty() {
        let page = BinaryImage::new(40, 40);
        assert!(segment_words(&page, &SegmentationConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn noise_is_discarded_and_accounted() {
        let mut page = BinaryImage::new(60, 40);
        blob(&mut page, 5, 5, 10, 10);
        page.set(40, 30, true);
        let seg = segment(&page, &SegmentationConfig::default()).unwrap();
        assert_eq!(seg.words, vec![BoundingBox::new(5, 5, 10, 10)]);
        assert_eq!(seg.discarded, vec![BoundingBox::new(40, 30, 1, 1)]);
    }

    #[test]
    fn reading_order_is_line_then_left() {
        let mut page = BinaryImage::new(80, 50);
        // second word on line one starts higher than the first
        blob(&mut page, 5, 8, 10, 6);
        blob(&mut page, 30, 4, 10, 10);
        blob(&mut page, 5, 30, 10, 10);
        let boxes = segment_words(&page, &SegmentationConfig::default()).unwrap();
        let xs: Vec<_> = boxes.iter().map(|b| (b.x, b.y)).collect();
        assert_eq!(xs, vec![(5, 8), (30, 4), (5, 30)]);
    }

    #[test]
    fn depth_limit_stops_recursion() {
        let mut page = BinaryImage::new(60, 20);
        blob(&mut page, 5, 5, 10, 10);
        blob(&mut page, 25, 5, 10, 10);
        let cfg = SegmentationConfig {
            max_depth: 1,
            ..Default::default()
        };
        assert_eq!(segment_words(&page, &cfg).unwrap().len(), 2);
        let mut stacked = page.clone();
        blob(&mut stacked, 5, 16, 1, 1);
        // depth 1 allows only the row cut; the top band is emitted whole
        let boxes = segment(&stacked, &cfg).unwrap();
        assert_eq!(boxes.words, vec![BoundingBox::new(5, 5, 30, 10)]);
    }

    #[test]
    fn rejects_bad_config() {
        let page = BinaryImage::new(4, 4);
        let cfg = SegmentationConfig {
            word_gap_factor: 1.5,
            ..Default::default()
        };
        assert!(segment_words(&page, &cfg).is_err());
    }

    #[test]
    fn gap_threshold() {
        let cfg = SegmentationConfig::default();
        assert_eq!(cfg.column_gap_threshold(10), 4);
        assert_eq!(cfg.column_gap_threshold(2), 2);
        assert_eq!(cfg.column_gap_threshold(13), 5);
    }
}
