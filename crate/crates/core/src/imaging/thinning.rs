use super::BinaryImage;

/// Zhang-Suen thinning, iterated until neither sub-iteration deletes a pixel.
///
/// Neighbours are numbered clockwise from north, P2..P9. A pixel is deleted
/// when it has 2..=6 ink neighbours, exactly one background→ink transition
/// around the ring, and passes the sub-iteration's directional test
/// (south-east boundary first, north-west second). The output is a subset of
/// the input. Like every published transcription of the rule, isolated 2×2
/// blocks are erased completely.
pub fn skeletonize(img: &BinaryImage) -> BinaryImage {
    let mut out = img.clone();
    let mut live: Vec<(usize, usize)> = (0..img.height())
        .flat_map(|y| (0..img.width()).map(move |x| (x, y)))
        .filter(|&(x, y)| img.get(x, y))
        .collect();
    let mut doomed = Vec::new();
    loop {
        let mut changed = false;
        for first in [true, false] {
            doomed.clear();
            doomed.extend(live.iter().copied().filter(|&(x, y)| deletable(&out, x, y, first)));
            for &(x, y) in &doomed {
                out.set(x, y, false);
            }
            if !doomed.is_empty() {
                changed = true;
                live.retain(|&(x, y)| out.get(x, y));
            }
        }
        if !changed {
            return out;
        }
    }
}

#[inline]
fn deletable(img: &BinaryImage, x: usize, y: usize, first: bool) -> bool {
    let (x, y) = (x as isize, y as isize);
    // P2, P3, ..., P9
    let p = [
        img.get_signed(x, y - 1),
        img.get_signed(x + 1, y - 1),
        img.get_signed(x + 1, y),
        img.get_signed(x + 1, y + 1),
        img.get_signed(x, y + 1),
        img.get_signed(x - 1, y + 1),
        img.get_signed(x - 1, y),
        img.get_signed(x - 1, y - 1),
    ];
    let b = p.iter().filter(|&&v| v).count();
    if !(2..=6).contains(&b) {
        return false;
    }
    let a = (0..8).filter(|&i| !p[i] && p[(i + 1) % 8]).count();
    if a != 1 {
        return false;
    }
    let (p2, p4, p6, p8) = (p[0], p[2], p[4], p[6]);
    if first {
        !(p2 && p4 && p6) && !(p4 && p6 && p8)
    } else {
        !(p2 && p4 && p8) && !(p2 && p6 && p8)
    }
}
