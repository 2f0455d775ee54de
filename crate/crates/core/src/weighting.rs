//! Feature weights from coefficients of multiple correlation.
//!
//! For every feature `i`, `λ_i` is the multiple correlation of column `i`
//! with all other active columns over the indexed corpus. A feature that the
//! others predict well (`λ` near 1) is redundant and gets a small weight:
//! `w_i = λ_i⁻¹ / Σ_j λ_j⁻¹`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::store::FeatureDatabase;

/// Lower bound applied to every `λ` before inversion.
pub const LAMBDA_FLOOR: f64 = 1e-3;
/// Columns whose sample variance is below this are inactive.
pub const MIN_VARIANCE: f64 = 1e-24;
/// Clamp for `1 − r²` factors in the recursive formula.
pub const FACTOR_FLOOR: f64 = 1e-12;
/// Condition number above which the correlation matrix gets a ridge.
pub const MAX_CONDITION: f64 = 1e12;
pub const RIDGE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationMatrix {
    dim: usize,
    r: Vec<f64>,
    active: Vec<bool>,
}

impl CorrelationMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.r[i * self.dim + j]
    }

    pub fn active(&self) -> &[bool] {
        &self.active
    }

    pub fn active_indices(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.active[i]).collect()
    }

    fn check_target(&self, target: usize) -> Result<()> {
        if target >= self.dim {
            return Err(Error::invalid(format!("feature {target} out of range 0..{}", self.dim)));
        }
        if !self.active[target] {
            return Err(Error::degenerate(format!("feature {target} has zero variance")));
        }
        Ok(())
    }
}

/// Pearson correlations between the columns of `rows`.
pub fn correlation_matrix_from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<CorrelationMatrix> {
    let n = rows.len();
    if n < 3 {
        return Err(Error::degenerate(format!("{n} records; correlations need at least 3")));
    }
    let dim = rows[0].as_ref().len();
    for row in rows {
        if row.as_ref().len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: row.as_ref().len(),
            });
        }
    }

    let mut mean = vec![0.0; dim];
    for row in rows {
        for (m, v) in mean.iter_mut().zip(row.as_ref()) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }

    let mut cov = vec![0.0; dim * dim];
    let mut centered = vec![0.0; dim];
    for row in rows {
        for (c, (v, m)) in centered.iter_mut().zip(row.as_ref().iter().zip(&mean)) {
            *c = v - m;
        }
        for i in 0..dim {
            let ci = centered[i];
            if ci == 0.0 {
                continue;
            }
            for j in i..dim {
                cov[i * dim + j] += ci * centered[j];
            }
        }
    }

    let first = rows[0].as_ref();
    let active: Vec<bool> = (0..dim)
        .map(|i| {
            let varies = rows.iter().any(|r| r.as_ref()[i] != first[i]);
            varies && cov[i * dim + i] / (n - 1) as f64 >= MIN_VARIANCE
        })
        .collect();
    let mut r = vec![0.0; dim * dim];
    for i in 0..dim {
        r[i * dim + i] = 1.0;
        if !active[i] {
            continue;
        }
        for j in i + 1..dim {
            if !active[j] {
                continue;
            }
            let v = (cov[i * dim + j] / (cov[i * dim + i] * cov[j * dim + j]).sqrt()).clamp(-1.0, 1.0);
            r[i * dim + j] = v;
            r[j * dim + i] = v;
        }
    }
    Ok(CorrelationMatrix { dim, r, active })
}

pub fn correlation_matrix(db: &FeatureDatabase) -> Result<CorrelationMatrix> {
    let rows: Vec<&[f64]> = db.rows().collect();
    correlation_matrix_from_rows(&rows)
}

/// Multiple correlation of `target` on the other active features via the
/// product of successive partial correlations, conditioning in ascending
/// feature order.
pub fn multiple_correlation_recursive(cm: &CorrelationMatrix, target: usize) -> Result<f64> {
    cm.check_target(target)?;
    let others: Vec<usize> = cm.active_indices().into_iter().filter(|&i| i != target).collect();
    if others.is_empty() {
        return Err(Error::degenerate("no other active feature to correlate with"));
    }
    // p[a][b] holds the partial correlation of vars a, b given the variables swept so far;
    // var 0 is the target, var k+1 is others[k].
    let m = others.len() + 1;
    let idx: Vec<usize> = std::iter::once(target).chain(others.iter().copied()).collect();
    let mut p: Vec<f64> = (0..m * m).map(|k| cm.get(idx[k / m], idx[k % m])).collect();

    let mut product = 1.0;
    for c in 1..m {
        let r_tc = p[c];
        product *= (1.0 - r_tc * r_tc).max(FACTOR_FLOOR);
        let rest: Vec<usize> = std::iter::once(0).chain(c + 1..m).collect();
        let denom: Vec<f64> = rest
            .iter()
            .map(|&a| (1.0 - p[a * m + c] * p[a * m + c]).max(FACTOR_FLOOR).sqrt())
            .collect();
        let mut next = p.clone();
        for (ia, &a) in rest.iter().enumerate() {
            for (ib, &b) in rest.iter().enumerate().skip(ia + 1) {
                let v = ((p[a * m + b] - p[a * m + c] * p[b * m + c]) / (denom[ia] * denom[ib])).clamp(-1.0, 1.0);
                next[a * m + b] = v;
                next[b * m + a] = v;
            }
        }
        p = next;
    }
    Ok((1.0 - product).max(0.0).sqrt().min(1.0))
}

/// `λ` for every feature from one inversion of the active correlation
/// submatrix: `λ_t² = 1 − 1 / (R⁻¹)_tt`. Inactive features get 0.
pub fn multiple_correlations(cm: &CorrelationMatrix) -> Result<Vec<f64>> {
    let act = cm.active_indices();
    let k = act.len();
    let mut out = vec![0.0; cm.dim];
    if k == 0 {
        return Ok(out);
    }
    let mut r = DMatrix::from_fn(k, k, |a, b| cm.get(act[a], act[b]));

    let eig = SymmetricEigen::new(r.clone());
    let (lo, hi) = eig
        .eigenvalues
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &e| (lo.min(e.abs()), hi.max(e.abs())));
    let singular = eig.eigenvalues.iter().any(|&e| e <= 0.0);
    if singular || hi / lo > MAX_CONDITION {
        for d in 0..k {
            r[(d, d)] += RIDGE;
        }
    }
    let inv = match r.clone().cholesky() {
        Some(ch) => ch.inverse(),
        None => r
            .try_inverse()
            .ok_or_else(|| Error::degenerate("correlation matrix is not invertible"))?,
    };
    for (a, &i) in act.iter().enumerate() {
        let d = inv[(a, a)];
        let l2 = if d > 0.0 { 1.0 - 1.0 / d } else { 1.0 };
        out[i] = l2.clamp(0.0, 1.0).sqrt();
    }
    Ok(out)
}

pub fn multiple_correlation_matrix_identity(cm: &CorrelationMatrix, target: usize) -> Result<f64> {
    cm.check_target(target)?;
    Ok(multiple_correlations(cm)?[target])
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    pub lambda: Vec<f64>,
    pub weight: Vec<f64>,
    pub active: Vec<bool>,
}

impl WeightVector {
    /// Every feature active with weight `1/dim`.
    pub fn uniform(dim: usize) -> Self {
        Self {
            lambda: vec![1.0; dim],
            weight: vec![1.0 / dim as f64; dim],
            active: vec![true; dim],
        }
    }

    /// Equal weight on the active features, zero elsewhere.
    pub fn uniform_over(active: &[bool]) -> Result<Self> {
        let k = active.iter().filter(|&&a| a).count();
        if k == 0 {
            return Err(Error::degenerate("no active features"));
        }
        Ok(Self {
            lambda: active.iter().map(|&a| if a { 1.0 } else { 0.0 }).collect(),
            weight: active.iter().map(|&a| if a { 1.0 / k as f64 } else { 0.0 }).collect(),
            active: active.to_vec(),
        })
    }

    pub fn dim(&self) -> usize {
        self.weight.len()
    }

    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }
}

/// Inverse-`λ` weights over the active features; `λ` is floored first.
pub fn weights_from_lambdas(lambda: &[f64], active: &[bool]) -> Result<WeightVector> {
    if lambda.len() != active.len() {
        return Err(Error::DimensionMismatch {
            expected: lambda.len(),
            found: active.len(),
        });
    }
    if active.iter().filter(|&&a| a).count() < 2 {
        return Err(Error::degenerate("fewer than 2 active features"));
    }
    let lambda: Vec<f64> = lambda
        .iter()
        .zip(active)
        .map(|(&l, &a)| if a { l.abs().clamp(LAMBDA_FLOOR, 1.0) } else { 0.0 })
        .collect();
    let total: f64 = lambda.iter().zip(active).filter(|(_, &a)| a).map(|(l, _)| 1.0 / l).sum();
    let weight = lambda
        .iter()
        .zip(active)
        .map(|(&l, &a)| if a { (1.0 / l) / total } else { 0.0 })
        .collect();
    Ok(WeightVector {
        lambda,
        weight,
        active: active.to_vec(),
    })
}

pub fn compute_weights(cm: &CorrelationMatrix) -> Result<WeightVector> {
    if cm.active_indices().len() < 2 {
        return Err(Error::degenerate("fewer than 2 active features"));
    }
    weights_from_lambdas(&multiple_correlations(cm)?, &cm.active)
}

/// Diagonal weighting of a feature vector.
pub fn apply_weights(v: &FeatureVector, w: &WeightVector) -> Result<FeatureVector> {
    if v.len() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.dim(),
            found: v.len(),
        });
    }
    FeatureVector::new(v.iter().zip(&w.weight).map(|(a, b)| a * b).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::FEATURE_DIM;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_rows(seed: u64, n: usize, dim: usize) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // mix independent noise so columns are correlated but well conditioned
        let base: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        base.iter()
            .map(|b| {
                (0..dim)
                    .map(|j| b[j] + 0.5 * b[(j + 1) % dim] - 0.3 * b[(j + 2) % dim])
                    .collect()
            })
            .collect()
    }

    fn column(rows: &[Vec<f64>], j: usize) -> Vec<f64> {
        rows.iter().map(|r| r[j]).collect()
    }

    /// Textbook covariance over standard deviations.
    fn pearson(x: &[f64], y: &[f64]) -> f64 {
        let n = x.len() as f64;
        let mx = x.iter().sum::<f64>() / n;
        let my = y.iter().sum::<f64>() / n;
        let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum::<f64>() / (n - 1.0);
        let sx = (x.iter().map(|a| (a - mx).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        let sy = (y.iter().map(|b| (b - my).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        sxy / (sx * sy)
    }

    /// Coefficient of determination of `target` regressed on the other
    /// columns (with intercept), by modified Gram-Schmidt.
    fn regression_r2(rows: &[Vec<f64>], target: usize) -> f64 {
        let n = rows.len();
        let y = column(rows, target);
        let mut basis: Vec<Vec<f64>> = vec![vec![1.0 / (n as f64).sqrt(); n]];
        for j in (0..rows[0].len()).filter(|&j| j != target) {
            let mut v = column(rows, j);
            for q in &basis {
                let d: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(q).for_each(|(x, qi)| *x -= d * qi);
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
        let mut resid = y.clone();
        for q in &basis {
            let d: f64 = q.iter().zip(&resid).map(|(a, b)| a * b).sum();
            resid.iter_mut().zip(q).for_each(|(x, qi)| *x -= d * qi);
        }
        let mean = y.iter().sum::<f64>() / n as f64;
        let sst: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
        let ssr: f64 = resid.iter().map(|v| v * v).sum();
        1.0 - ssr / sst
    }

    #[test]
    fn correlation_matches_textbook_formula() {
        let rows = random_rows(7, 200, 5);
        let cm = correlation_matrix_from_rows(&rows).unwrap();
        for i in 0..5 {
            assert_eq!(cm.get(i, i), 1.0);
            for j in 0..5 {
                let expect = if i == j { 1.0 } else { pearson(&column(&rows, i), &column(&rows, j)) };
                assert!((cm.get(i, j) - expect).abs() < 1e-10, "{i},{j}");
                assert_eq!(cm.get(i, j), cm.get(j, i));
            }
        }
    }

    #[test]
    fn duplicate_and_negated_columns() {
        let rows: Vec<Vec<f64>> = random_rows(3, 50, 3)
            .into_iter()
            .map(|r| vec![r[0], r[0], -r[0], r[1], 4.0])
            .collect();
        let cm = correlation_matrix_from_rows(&rows).unwrap();
        assert!((cm.get(0, 1) - 1.0).abs() < 1e-15);
        assert!((cm.get(0, 2) + 1.0).abs() < 1e-15);
        assert_eq!(cm.active(), &[true, true, true, true, false]);
        assert_eq!(cm.get(4, 0), 0.0);
        assert!((multiple_correlation_recursive(&cm, 0).unwrap() - 1.0).abs() < 1e-6);
        assert!(multiple_correlation_recursive(&cm, 4).is_err());
    }

    #[test]
    fn constant_column_with_inexact_mean_is_inactive() {
        let c = -146.8 * 3.6328126834818697 - 206.1;
        let rows: Vec<Vec<f64>> = random_rows(9, 200, 2).into_iter().map(|r| vec![r[0], c, r[1]]).collect();
        let cm = correlation_matrix_from_rows(&rows).unwrap();
        assert_eq!(cm.active(), [true, false, true]);
        assert_eq!(compute_weights(&cm).unwrap().weight[1], 0.0);
    }

    #[test]
    fn min_max_normalized_columns_give_same_correlations() {
        let rows = random_rows(21, 120, 6);
        let lo: Vec<f64> = (0..6).map(|k| rows.iter().map(|r| r[k]).fold(f64::INFINITY, f64::min)).collect();
        let hi: Vec<f64> = (0..6).map(|k| rows.iter().map(|r| r[k]).fold(f64::NEG_INFINITY, f64::max)).collect();
        let norm: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| (0..6).map(|k| (r[k] - lo[k]) / (hi[k] - lo[k])).collect())
            .collect();
        let (a, b) = (correlation_matrix_from_rows(&rows).unwrap(), correlation_matrix_from_rows(&norm).unwrap());
        for i in 0..6 {
            for j in 0..6 {
                assert!((a.get(i, j) - b.get(i, j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn too_few_records() {
        assert!(correlation_matrix_from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).is_err());
    }

    #[test]
    fn orthogonal_columns_have_zero_multiple_correlation() {
        let rows = vec![
            vec![1.0, 1.0, 1.0],
            vec![-1.0, 1.0, -1.0],
            vec![1.0, -1.0, -1.0],
            vec![-1.0, -1.0, 1.0],
        ];
        let cm = correlation_matrix_from_rows(&rows).unwrap();
        for t in 0..3 {
            assert_eq!(multiple_correlation_recursive(&cm, t).unwrap(), 0.0);
            assert_eq!(multiple_correlation_matrix_identity(&cm, t).unwrap(), 0.0);
        }
    }

    #[test]
    fn bivariate_identity_examples() {
        let cm = CorrelationMatrix {
            dim: 2,
            r: vec![1.0, 0.6, 0.6, 1.0],
            active: vec![true, true],
        };
        for t in 0..2 {
            assert!((multiple_correlation_matrix_identity(&cm, t).unwrap() - 0.6).abs() < 1e-12);
            assert!((multiple_correlation_recursive(&cm, t).unwrap() - 0.6).abs() < 1e-12);
        }
        let zero = CorrelationMatrix {
            dim: 2,
            r: vec![1.0, 0.0, 0.0, 1.0],
            active: vec![true, true],
        };
        assert_eq!(multiple_correlation_matrix_identity(&zero, 0).unwrap(), 0.0);
    }

    #[test]
    fn both_paths_match_regression() {
        for seed in 0..5 {
            let rows = random_rows(seed, 200, 6);
            let cm = correlation_matrix_from_rows(&rows).unwrap();
            for t in 0..6 {
                let oracle = regression_r2(&rows, t).sqrt();
                let rec = multiple_correlation_recursive(&cm, t).unwrap();
                let id = multiple_correlation_matrix_identity(&cm, t).unwrap();
                assert!((rec - oracle).abs() < 1e-6, "seed {seed} t {t}: {rec} vs {oracle}");
                assert!((id - rec).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn inverse_lambda_arithmetic() {
        let w = weights_from_lambdas(&[0.5, 0.25], &[true, true]).unwrap();
        assert!((w.weight[0] - 1.0 / 3.0).abs() <= 1e-15);
        assert!((w.weight[1] - 2.0 / 3.0).abs() <= 1e-15);

        let eq = weights_from_lambdas(&[0.4; 4], &[true; 4]).unwrap();
        assert!(eq.weight.iter().all(|&x| (x - 0.25).abs() < 1e-15));

        let floored = weights_from_lambdas(&[0.0, 1.0, 0.7], &[true, true, false]).unwrap();
        assert_eq!(floored.lambda, vec![LAMBDA_FLOOR, 1.0, 0.0]);
        assert_eq!(floored.weight[2], 0.0);

        assert!(weights_from_lambdas(&[0.5, 0.5], &[true, false]).is_err());
    }

    #[test]
    fn redundant_copies_lose_weight() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rows: Vec<Vec<f64>> = (0..300)
            .map(|_| {
                let a: f64 = rng.random_range(0.0..1.0);
                let c: f64 = rng.random_range(0.0..1.0);
                vec![a, a, c]
            })
            .collect();
        let w = compute_weights(&correlation_matrix_from_rows(&rows).unwrap()).unwrap();
        assert!((w.weight[0] - w.weight[1]).abs() < 1e-12);
        assert!(w.weight[2] > w.weight[0]);
    }

    #[test]
    fn apply_weights_examples() {
        let u = WeightVector::uniform(FEATURE_DIM);
        let v = FeatureVector::new((0..FEATURE_DIM).map(|i| i as f64).collect()).unwrap();
        let scaled = apply_weights(&v, &u).unwrap();
        for i in 0..FEATURE_DIM {
            assert_eq!(scaled[i], v[i] * (1.0 / FEATURE_DIM as f64));
        }
        assert_eq!(apply_weights(&FeatureVector::zeros(), &u).unwrap(), FeatureVector::zeros());
        assert!(apply_weights(&v, &WeightVector::uniform(4)).is_err());
    }

    proptest! {
        #[test]
        fn weights_are_normalized_and_antitone(seed in 0u64..1000, dim in 2usize..9) {
            let rows = random_rows(seed, 60, dim);
            let w = compute_weights(&correlation_matrix_from_rows(&rows).unwrap()).unwrap();
            let sum: f64 = w.weight.iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-12);
            for i in 0..dim {
                prop_assert!(w.weight[i].is_finite() && w.weight[i] >= 0.0);
                prop_assert!((LAMBDA_FLOOR..=1.0).contains(&w.lambda[i]));
                for j in 0..dim {
                    if w.lambda[i] < w.lambda[j] {
                        prop_assert!(w.weight[i] > w.weight[j]);
                    }
                }
            }
        }

        #[test]
        fn lambda_ignores_affine_rescaling(seed in 0u64..1000, a in 0.01f64..100.0, b in -50.0f64..50.0, col in 0usize..5) {
            let rows = random_rows(seed, 100, 5);
            let scaled: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| { let mut r = r.clone(); r[col] = a * r[col] + b; r })
                .collect();
            let l1 = multiple_correlations(&correlation_matrix_from_rows(&rows).unwrap()).unwrap();
            let l2 = multiple_correlations(&correlation_matrix_from_rows(&scaled).unwrap()).unwrap();
            for (x, y) in l1.iter().zip(&l2) {
                prop_assert!((x - y).abs() < 1e-9);
            }
            let cm = correlation_matrix_from_rows(&scaled).unwrap();
            let r1 = multiple_correlation_recursive(&correlation_matrix_from_rows(&rows).unwrap(), col).unwrap();
            prop_assert!((multiple_correlation_recursive(&cm, col).unwrap() - r1).abs() < 1e-9);
        }

        #[test]
        fn weighting_then_l1_is_weighted_l1(
            a in proptest::collection::vec(-10.0f64..10.0, FEATURE_DIM),
            b in proptest::collection::vec(-10.0f64..10.0, FEATURE_DIM),
            raw in proptest::collection::vec(0.01f64..1.0, FEATURE_DIM),
        ) {
            let total: f64 = raw.iter().sum();
            let w = WeightVector {
                lambda: vec![1.0; FEATURE_DIM],
                weight: raw.iter().map(|x| x / total).collect(),
                active: vec![true; FEATURE_DIM],
            };
            let (fa, fb) = (FeatureVector::new(a).unwrap(), FeatureVector::new(b).unwrap());
            let (wa, wb) = (apply_weights(&fa, &w).unwrap(), apply_weights(&fb, &w).unwrap());
            let lhs: f64 = wa.iter().zip(wb.iter()).map(|(x, y)| (x - y).abs()).sum();
            let rhs: f64 = (0..FEATURE_DIM).map(|k| w.weight[k] * (fa[k] - fb[k]).abs()).sum();
            prop_assert!((lhs - rhs).abs() < 1e-9);
        }
    }
}
