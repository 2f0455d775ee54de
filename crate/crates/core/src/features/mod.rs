//! The 93-value word descriptor.
//!
//! | index     | feature                                   |
//! |-----------|-------------------------------------------|
//! | 0         | width / height                            |
//! | 1         | ink density, percent                      |
//! | 2         | centre of gravity                         |
//! | 3..=22    | DCT of the vertical projection (20)       |
//! | 23..=47   | DCT of the top shape projection (25)      |
//! | 48..=72   | DCT of the bottom shape projection (25)   |
//! | 73..=82   | upper grid bits as 0.0 / 1.0              |
//! | 83..=92   | lower grid bits as 0.0 / 1.0              |

pub mod dct;
mod shape;

use std::ops::Deref;

pub use shape::{
    bottom_profile, center_of_gravity, density, grid_features, profile_dct_features, top_profile,
    vertical_profile, GridPart, ProfileSignal,
};

use crate::error::{Error, Result};
use crate::imaging::BinaryImage;

pub const FEATURE_DIM: usize = 93;

pub const ASPECT: usize = 0;
pub const DENSITY: usize = 1;
pub const COG: usize = 2;
pub const VERTICAL_DCT: std::ops::Range<usize> = 3..23;
pub const TOP_DCT: std::ops::Range<usize> = 23..48;
pub const BOTTOM_DCT: std::ops::Range<usize> = 48..73;
pub const UPPER_GRID: std::ops::Range<usize> = 73..83;
pub const LOWER_GRID: std::ops::Range<usize> = 83..93;

/// Human-readable name of a feature slot, used in weight tables.
pub fn feature_name(index: usize) -> String {
    match index {
        ASPECT => "aspect".into(),
        DENSITY => "density".into(),
        COG => "cog".into(),
        i if VERTICAL_DCT.contains(&i) => format!("vproj_dct{}", i - VERTICAL_DCT.start),
        i if TOP_DCT.contains(&i) => format!("top_dct{}", i - TOP_DCT.start),
        i if BOTTOM_DCT.contains(&i) => format!("bottom_dct{}", i - BOTTOM_DCT.start),
        i if UPPER_GRID.contains(&i) => format!("ugf{}", i - UPPER_GRID.start),
        i if LOWER_GRID.contains(&i) => format!("dgf{}", i - LOWER_GRID.start),
        i => format!("f{i}"),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeatureVector(Vec<f64>);

impl FeatureVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() != FEATURE_DIM {
            return Err(Error::DimensionMismatch {
                expected: FEATURE_DIM,
                found: values.len(),
            });
        }
        Ok(Self(values))
    }

    pub fn zeros() -> Self {
        Self(vec![0.0; FEATURE_DIM])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for FeatureVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Feature vector of a tight, skeletonized word crop.
pub fn extract_features(word: &BinaryImage) -> Result<FeatureVector> {
    let (w, h) = (word.width(), word.height());
    if w == 0 || h == 0 {
        return Err(Error::degenerate("empty word image"));
    }
    let mut v = Vec::with_capacity(FEATURE_DIM);
    v.push(w as f64 / h as f64);
    v.push(density(word)?);
    v.push(center_of_gravity(word)?);
    v.extend(profile_dct_features(&vertical_profile(word), h, VERTICAL_DCT.len())?);
    v.extend(profile_dct_features(&top_profile(word), h, TOP_DCT.len())?);
    v.extend(profile_dct_features(&bottom_profile(word), h, BOTTOM_DCT.len())?);
    for part in [GridPart::Upper, GridPart::Lower] {
        v.extend(grid_features(word, part)?.iter().map(|&b| if b { 1.0 } else { 0.0 }));
    }
    FeatureVector::new(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_word(max_w: usize, max_h: usize) -> impl Strategy<Value = BinaryImage> {
        (1..=max_w, 2..=max_h).prop_flat_map(|(w, h)| {
            proptest::collection::vec(any::<bool>(), w * h).prop_map(move |mut ink| {
                ink[0] = true;
                BinaryImage::from_ink(w, h, ink).unwrap()
            })
        })
    }

    /// Direct O(N²) orthonormal DCT-II.
    fn naive_dct(x: &[f64], k_max: usize) -> Vec<f64> {
        let n = x.len() as f64;
        (0..k_max)
            .map(|k| {
                let s = if k == 0 { (1.0 / n).sqrt() } else { (2.0 / n).sqrt() };
                s * x
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v * (std::f64::consts::PI * (i as f64 + 0.5) * k as f64 / n).cos())
                    .sum::<f64>()
            })
            .collect()
    }

    #[test]
    fn layout_adds_up() {
        let total = 3 + VERTICAL_DCT.len() + TOP_DCT.len() + BOTTOM_DCT.len() + UPPER_GRID.len() + LOWER_GRID.len();
        assert_eq!(total, FEATURE_DIM);
        assert_eq!(LOWER_GRID.end, FEATURE_DIM);
        assert_eq!(feature_name(3), "vproj_dct0");
        assert_eq!(feature_name(92), "dgf9");
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(FeatureVector::new(vec![0.0; 92]).is_err());
    }

    proptest! {
        #[test]
        fn vector_ranges(word in arb_word(40, 20)) {
            let f = extract_features(&word).unwrap();
            prop_assert_eq!(f.len(), FEATURE_DIM);
            prop_assert!(f[ASPECT] > 0.0);
            prop_assert!((0.0..=100.0).contains(&f[DENSITY]));
            prop_assert!((0.0..=2f64.sqrt()).contains(&f[COG]));
            for i in UPPER_GRID.start..LOWER_GRID.end {
                prop_assert!(f[i] == 0.0 || f[i] == 1.0);
            }
            prop_assert_eq!(extract_features(&word).unwrap(), f);
        }

        #[test]
        fn mirror_keeps_density_and_reverses_grids(word in arb_word(4, 16), k in 1usize..5) {
            // widths that are multiples of ten keep the cell partition symmetric
            let wide = BinaryImage::from_ink(
                10 * k,
                word.height(),
                (0..10 * k * word.height())
                    .map(|i| word.get((i % (10 * k)) % word.width(), i / (10 * k)))
                    .collect(),
            ).unwrap();
            let a = extract_features(&wide).unwrap();
            let b = extract_features(&wide.flip_horizontal()).unwrap();
            prop_assert_eq!(a[ASPECT], b[ASPECT]);
            prop_assert_eq!(a[DENSITY], b[DENSITY]);
            for part in [UPPER_GRID, LOWER_GRID] {
                let ra: Vec<f64> = a[part.clone()].iter().rev().copied().collect();
                prop_assert_eq!(&ra[..], &b[part]);
            }
        }

        #[test]
        fn cog_matches_per_pixel_sum(word in arb_word(30, 30)) {
            let (w, h) = (word.width() as f64, word.height() as f64);
            let (mut sx, mut sy, mut n) = (0.0, 0.0, 0.0);
            for y in 0..word.height() {
                for x in 0..word.width() {
                    if word.get(x, y) {
                        sx += x as f64 / w;
                        sy += y as f64 / h;
                        n += 1.0;
                    }
                }
            }
            let expect = ((sx / n).powi(2) + (sy / n).powi(2)).sqrt();
            prop_assert!((center_of_gravity(&word).unwrap() - expect).abs() < 1e-12);
        }

        #[test]
        fn top_profile_equals_fill_then_project(word in arb_word(30, 30)) {
            let mut filled = word.clone();
            for x in 0..word.width() {
                let mut on = false;
                for y in 0..word.height() {
                    on |= word.get(x, y);
                    filled.set(x, y, on);
                }
            }
            let expect: Vec<f64> = crate::imaging::vertical_projection(&filled).into_iter().map(|c| c as f64).collect();
            prop_assert_eq!(top_profile(&word).samples, expect);
        }

        #[test]
        fn flip_swaps_top_and_bottom(word in arb_word(30, 30)) {
            let f = word.flip_vertical();
            prop_assert_eq!(top_profile(&f), bottom_profile(&word));
            prop_assert_eq!(bottom_profile(&f), top_profile(&word));
        }

        #[test]
        fn dct_matches_naive_definition(x in proptest::collection::vec(-5.0f64..5.0, 256)) {
            let fast = dct::dct2(&x, 256);
            let slow = naive_dct(&x, 256);
            for (a, b) in fast.iter().zip(&slow) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }

        #[test]
        fn profile_spectrum_is_linear(
            a in proptest::collection::vec(0.0f64..20.0, 1..60),
            s in -3.0f64..3.0,
            t in -3.0f64..3.0,
        ) {
            let b: Vec<f64> = a.iter().rev().map(|v| v * 0.5 + 1.0).collect();
            let mix: Vec<f64> = a.iter().zip(&b).map(|(x, y)| s * x + t * y).collect();
            let fa = profile_dct_features(&ProfileSignal { samples: a }, 20, 25).unwrap();
            let fb = profile_dct_features(&ProfileSignal { samples: b }, 20, 25).unwrap();
            let fm = profile_dct_features(&ProfileSignal { samples: mix }, 20, 25).unwrap();
            for k in 0..25 {
                prop_assert!((fm[k] - (s * fa[k] + t * fb[k])).abs() < 1e-9);
            }
        }
    }
}
