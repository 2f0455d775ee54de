use std::f64::consts::PI;
use std::sync::OnceLock;

/// Length every shape profile is resampled to before the transform.
pub const RESAMPLED_LEN: usize = 256;

/// `cos(π m / 2N)` for `m in 0..4N`, N = [`RESAMPLED_LEN`].
fn cos_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let quarter = 4 * RESAMPLED_LEN;
        (0..quarter)
            .map(|m| (PI * m as f64 / (2 * RESAMPLED_LEN) as f64).cos())
            .collect()
    })
}

/// First `n_coeffs` coefficients of the orthonormal DCT-II of `x`.
///
/// `X_k = s_k Σ_n x_n cos(π (2n+1) k / 2N)` with `s_0 = √(1/N)` and
/// `s_k = √(2/N)`. For `N = 256` the cosines come from a table indexed by
/// `(2n+1)k mod 4N`; other lengths evaluate the cosine directly.
pub fn dct2(x: &[f64], n_coeffs: usize) -> Vec<f64> {
    let n = x.len();
    if n == 0 {
        return vec![0.0; n_coeffs];
    }
    let table = (n == RESAMPLED_LEN).then(cos_table);
    let s0 = (1.0 / n as f64).sqrt();
    let sk = (2.0 / n as f64).sqrt();
    (0..n_coeffs)
        .map(|k| {
            let sum: f64 = x
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let m = (2 * i + 1) * k;
                    let c = match table {
                        Some(t) => t[m % (4 * n)],
                        None => (PI * m as f64 / (2 * n) as f64).cos(),
                    };
                    v * c
                })
                .sum();
            if k == 0 {
                s0 * sum
            } else {
                sk * sum
            }
        })
        .collect()
}
