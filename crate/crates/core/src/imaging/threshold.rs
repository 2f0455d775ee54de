use super::{BinaryImage, GrayImage};

/// Otsu threshold of a 256-bin histogram.
///
/// Pixels with intensity `< t` form the dark (ink) class. Returns the
/// smallest `t` in `0..=255` maximizing the between-class variance; a
/// constant image has zero variance everywhere and yields `t = 0`.
pub fn otsu_threshold(histogram: &[u64; 256]) -> u8 {
    let total: u64 = histogram.iter().sum();
    if total == 0 {
        return 0;
    }
    let n = total as f64;
    let sum_all: f64 = histogram
        .iter()
        .enumerate()
        .map(|(i, &c)| i as f64 * c as f64)
        .sum();

    let mut best_t = 0u8;
    let mut best_var = 0.0f64;
    let mut dark_count = 0u64;
    let mut dark_sum = 0.0f64;
    // t = 0 puts everything in the light class, so its variance is zero.
    for t in 1..=255usize {
        dark_count += histogram[t - 1];
        dark_sum += (t - 1) as f64 * histogram[t - 1] as f64;
        let light_count = total - dark_count;
        if dark_count == 0 || light_count == 0 {
            continue;
        }
        let w0 = dark_count as f64 / n;
        let w1 = light_count as f64 / n;
        let mu0 = dark_sum / dark_count as f64;
        let mu1 = (sum_all - dark_sum) / light_count as f64;
        let var = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if var > best_var {
            best_var = var;
            best_t = t as u8;
        }
    }
    best_t
}

/// Binarizes with the Otsu threshold; darker pixels become ink.
pub fn otsu_binarize(img: &GrayImage) -> BinaryImage {
    let mut histogram = [0u64; 256];
    for &p in img.pixels() {
        histogram[p as usize] += 1;
    }
    let t = otsu_threshold(&histogram);
    let ink = img.pixels().iter().map(|&p| p < t).collect();
    BinaryImage::from_ink(img.width(), img.height(), ink).expect("same dimensions")
}
