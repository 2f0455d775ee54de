use super::BinaryImage;

/// 3×3 box mean re-binarized at majority: a pixel is ink iff more than half
/// of its (edge-clipped) neighbourhood is ink.
pub fn mean_filter(img: &BinaryImage) -> BinaryImage {
    let (w, h) = (img.width(), img.height());
    let mut out = BinaryImage::new(w, h);
    if img.is_empty() {
        return out;
    }
    // Column sums over the three-row window, slid down the image.
    for y in 0..h {
        let y0 = y.saturating_sub(1);
        let y1 = (y + 1).min(h - 1);
        let rows = y1 - y0 + 1;
        let col: Vec<usize> = (0..w)
            .map(|x| (y0..=y1).filter(|&yy| img.get(x, yy)).count())
            .collect();
        for x in 0..w {
            let x0 = x.saturating_sub(1);
            let x1 = (x + 1).min(w - 1);
            let count: usize = col[x0..=x1].iter().sum();
            let size = rows * (x1 - x0 + 1);
            if 2 * count > size {
                out.set(x, y, true);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn isolated_pixel_removed() {
        let mut img = BinaryImage::new(5, 5);
        img.set(2, 2, true);
        assert_eq!(mean_filter(&img).ink_count(), 0);
    }

    #[test]
    fn solid_rectangle_interior_kept() {
        let mut img = BinaryImage::new(10, 8);
        for y in 2..7 {
            for x in 2..9 {
                img.set(x, y, true);
            }
        }
        let out = mean_filter(&img);
        for y in 3..6 {
            for x in 3..8 {
                assert!(out.get(x, y));
            }
        }
        // idempotent on the interior
        let again = mean_filter(&out);
        for y in 3..6 {
            for x in 3..8 {
                assert!(again.get(x, y));
            }
        }
    }

    #[test]
    fn matches_naive_recomputation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let ink: Vec<bool> = (0..32 * 32).map(|_| rng.random_bool(0.45)).collect();
            let img = BinaryImage::from_ink(32, 32, ink).unwrap();
            let out = mean_filter(&img);
            for y in 0..32isize {
                for x in 0..32isize {
                    let (mut sum, mut n) = (0.0, 0.0);
                    for dy in -1..=1 {
                        for dx in -1..=1 {
                            let (xx, yy) = (x + dx, y + dy);
                            if (0..32).contains(&xx) && (0..32).contains(&yy) {
                                n += 1.0;
                                if img.get(xx as usize, yy as usize) {
                                    sum += 1.0;
                                }
                            }
                        }
                    }
                    assert_eq!(out.get(x as usize, y as usize), sum / n > 0.5);
                }
            }
        }
    }
}
