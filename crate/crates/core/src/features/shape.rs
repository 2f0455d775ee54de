use super::dct::{dct2, RESAMPLED_LEN};
use crate::error::{Error, Result};
use crate::imaging::{geometric_moment, BinaryImage};

/// Per-column profile of a word image, in pixels.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileSignal {
    pub samples: Vec<f64>,
}

impl ProfileSignal {
    pub fn native_length(&self) -> usize {
        self.samples.len()
    }
}

/// Word area density: percentage of ink pixels in the box.
pub fn density(word: &BinaryImage) -> Result<f64> {
    let area = word.width() * word.height();
    if area == 0 {
        return Err(Error::degenerate("zero-area word box"));
    }
    Ok(100.0 * word.ink_count() as f64 / area as f64)
}

/// Distance of the normalized ink centroid from the top-left corner.
pub fn center_of_gravity(word: &BinaryImage) -> Result<f64> {
    let m00 = geometric_moment(word, 0, 0)?;
    if m00 == 0.0 {
        return Err(Error::degenerate("centre of gravity of a word without ink"));
    }
    let cx = geometric_moment(word, 1, 0)? / m00;
    let cy = geometric_moment(word, 0, 1)? / m00;
    Ok((cx * cx + cy * cy).sqrt())
}

pub fn vertical_profile(word: &BinaryImage) -> ProfileSignal {
    ProfileSignal {
        samples: crate::imaging::vertical_projection(word)
            .into_iter()
            .map(|c| c as f64)
            .collect(),
    }
}

/// Column sums after flooding each column downward from its first ink pixel.
pub fn top_profile(word: &BinaryImage) -> ProfileSignal {
    let h = word.height();
    let samples = (0..word.width())
        .map(|x| (0..h).find(|&y| word.get(x, y)).map_or(0.0, |r| (h - r) as f64))
        .collect();
    ProfileSignal { samples }
}

/// Column sums after flooding each column upward from its last ink pixel.
pub fn bottom_profile(word: &BinaryImage) -> ProfileSignal {
    let h = word.height();
    let samples = (0..word.width())
        .map(|x| (0..h).rev().find(|&y| word.get(x, y)).map_or(0.0, |r| (r + 1) as f64))
        .collect();
    ProfileSignal { samples }
}

/// Fixed-length spectrum of a profile.
///
/// Samples are divided by `word_height`, smoothed by a centred 5-point
/// moving average with clamped edges, linearly resampled to 256 points and
/// transformed with the orthonormal DCT-II; the first `n_coeffs` are kept.
pub fn profile_dct_features(profile: &ProfileSignal, word_height: usize, n_coeffs: usize) -> Result<Vec<f64>> {
    let n = profile.native_length();
    if n == 0 {
        return Err(Error::degenerate("empty profile"));
    }
    if word_height == 0 {
        return Err(Error::degenerate("zero word height"));
    }
    if n_coeffs > RESAMPLED_LEN {
        return Err(Error::invalid(format!("{n_coeffs} coefficients requested")));
    }
    let h = word_height as f64;
    let norm: Vec<f64> = profile.samples.iter().map(|&s| s / h).collect();

    let at = |i: isize| norm[i.clamp(0, n as isize - 1) as usize];
    let smooth: Vec<f64> = (0..n as isize)
        .map(|i| (at(i - 2) + at(i - 1) + at(i) + at(i + 1) + at(i + 2)) / 5.0)
        .collect();

    let resampled: Vec<f64> = if n == 1 {
        vec![smooth[0]; RESAMPLED_LEN]
    } else {
        let step = (n - 1) as f64 / (RESAMPLED_LEN - 1) as f64;
        (0..RESAMPLED_LEN)
            .map(|j| {
                let pos = j as f64 * step;
                let i = (pos.floor() as usize).min(n - 2);
                let frac = pos - i as f64;
                smooth[i] * (1.0 - frac) + smooth[i + 1] * frac
            })
            .collect()
    };
    Ok(dct2(&resampled, n_coeffs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridPart {
    Upper,
    Lower,
}

/// Ten-cell occupancy mask of the upper or lower half of a word.
///
/// Cell `i` spans columns `[⌊i·W/10⌋, ⌊(i+1)·W/10⌋)` of the half; a bit is set
/// when at least 5% of the cell is ink. Zero-width cells stay clear.
pub fn grid_features(word: &BinaryImage, part: GridPart) -> Result<[bool; 10]> {
    let (w, h) = (word.width(), word.height());
    if h < 2 {
        return Err(Error::degenerate(format!("word height {h} has no upper/lower split")));
    }
    if w == 0 {
        return Err(Error::degenerate("zero-width word"));
    }
    let mid = h / 2;
    let rows = match part {
        GridPart::Upper => 0..mid,
        GridPart::Lower => mid..h,
    };
    let mut bits = [false; 10];
    for (i, bit) in bits.iter_mut().enumerate() {
        let (c0, c1) = (i * w / 10, (i + 1) * w / 10);
        if c1 == c0 {
            continue;
        }
        let ink = rows
            .clone()
            .map(|y| word.row(y)[c0..c1].iter().filter(|&&b| b).count())
            .sum::<usize>();
        let cell = (c1 - c0) * rows.len();
        *bit = ink as f64 / cell as f64 >= 0.05;
    }
    Ok(bits)
}
