//! Threshold-seeded k-means ("improved k-means") over word feature vectors.
//!
//! Seeding walks the records in database order. A record joins the nearest
//! centroid within `threshold`, which then moves to the running mean of its
//! members; otherwise the record founds a new cluster. Lloyd iterations then
//! refine the seeded partition with `k` fixed.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matching::{ColumnNormalizer, MatchConfig};
use crate::store::FeatureDatabase;
use crate::weighting::WeightVector;

pub const MAX_ITERATIONS: usize = 100;
pub const SHIFT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ClusterModel {
    pub k: usize,
    pub centroids: Vec<Vec<f64>>,
    pub assignment: Vec<usize>,
    pub threshold: f64,
    /// Lloyd iterations run after seeding.
    pub iterations: usize,
}

impl ClusterModel {
    pub fn members(&self, cluster: usize) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&i| self.assignment[i] == cluster).collect()
    }

    /// `doc_id word_id cluster` rows for the records of `db`.
    pub fn to_tsv(&self, db: &FeatureDatabase) -> String {
        let mut out = String::from("doc_id\tword_id\tcluster\n");
        for (rec, c) in db.records().iter().zip(&self.assignment) {
            writeln!(out, "{}\t{}\t{c}", rec.doc_id, rec.word_id).expect("write to String");
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClusterQuality {
    pub mean_intra: f64,
    /// `+∞` when there is a single cluster.
    pub min_inter: f64,
    /// `mean_intra / min_inter`, 0 for a single cluster.
    pub ratio: f64,
}

impl std::fmt::Display for ClusterQuality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "mean_intra\t{:.9e}", self.mean_intra)?;
        writeln!(f, "min_inter\t{:.9e}", self.min_inter)?;
        write!(f, "ratio\t{:.9e}", self.ratio)
    }
}

fn distance(a: &[f64], b: &[f64], w: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        a.iter().zip(b).zip(w).map(|((x, y), wk)| wk * (x - y).abs()).sum()
    } else {
        let s: f64 = a.iter().zip(b).zip(w).map(|((x, y), wk)| wk * (x - y).abs().powf(p)).sum();
        s.powf(1.0 / p)
    }
}

/// Index and distance of the nearest centroid; ties go to the lower index.
fn nearest(point: &[f64], centroids: &[Vec<f64>], w: &[f64], p: f64) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, c) in centroids.iter().enumerate() {
        let d = distance(point, c, w, p);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

/// Outcome of the seeding pass.
#[derive(Clone, Debug, PartialEq)]
pub struct Seeding {
    pub centroids: Vec<Vec<f64>>,
    pub assignment: Vec<usize>,
    /// Distance to the joined centroid at assignment time, `None` for founders.
    pub join_distance: Vec<Option<f64>>,
}

pub fn seed_clusters(points: &[Vec<f64>], threshold: f64, w: &[f64], p: f64) -> Result<Seeding> {
    if !(threshold > 0.0 && threshold.is_finite()) {
        return Err(Error::invalid(format!("cluster threshold {threshold} must be positive")));
    }
    let mut centroids: Vec<Vec<f64>> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    let mut assignment = Vec::with_capacity(points.len());
    let mut join_distance = Vec::with_capacity(points.len());
    for pt in points {
        let (j, d) = nearest(pt, &centroids, w, p);
        if d <= threshold {
            counts[j] += 1;
            let n = counts[j] as f64;
            for (c, x) in centroids[j].iter_mut().zip(pt) {
                *c += (x - *c) / n;
            }
            assignment.push(j);
            join_distance.push(Some(d));
        } else {
            centroids.push(pt.clone());
            counts.push(1);
            assignment.push(centroids.len() - 1);
            join_distance.push(None);
        }
    }
    Ok(Seeding {
        centroids,
        assignment,
        join_distance,
    })
}

fn means(points: &[Vec<f64>], assignment: &[usize], k: usize) -> Vec<Vec<f64>> {
    let dim = points[0].len();
    let mut sums = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (pt, &a) in points.iter().zip(assignment) {
        counts[a] += 1;
        for (s, x) in sums[a].iter_mut().zip(pt) {
            *s += x;
        }
    }
    for (s, &n) in sums.iter_mut().zip(&counts) {
        for v in s.iter_mut() {
            *v /= n as f64;
        }
    }
    sums
}

/// Seeding followed by Lloyd refinement over explicit points.
pub fn ik_means_points(points: &[Vec<f64>], threshold: f64, w: &[f64], p: f64) -> Result<ClusterModel> {
    if points.is_empty() {
        return Err(Error::degenerate("no records to cluster"));
    }
    if points.iter().any(|pt| pt.len() != w.len()) {
        return Err(Error::DimensionMismatch {
            expected: w.len(),
            found: points.iter().map(Vec::len).find(|&l| l != w.len()).unwrap_or(0),
        });
    }
    let seeding = seed_clusters(points, threshold, w, p)?;
    let k = seeding.centroids.len();
    let mut assignment = seeding.assignment;
    let mut centroids = means(points, &assignment, k);

    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut next: Vec<usize> = Vec::with_capacity(points.len());
        let mut dist: Vec<f64> = Vec::with_capacity(points.len());
        for pt in points {
            let (j, d) = nearest(pt, &centroids, w, p);
            next.push(j);
            dist.push(d);
        }
        let mut counts = vec![0usize; k];
        for &a in &next {
            counts[a] += 1;
        }
        for j in 0..k {
            if counts[j] > 0 {
                continue;
            }
            // re-seed an empty cluster with the point farthest from its centroid
            let far = (0..points.len())
                .filter(|&i| counts[next[i]] > 1)
                .fold(None, |best: Option<usize>, i| match best {
                    Some(b) if dist[b] >= dist[i] => Some(b),
                    _ => Some(i),
                });
            if let Some(i) = far {
                counts[next[i]] -= 1;
                counts[j] = 1;
                next[i] = j;
                dist[i] = 0.0;
            }
        }
        let updated = means(points, &next, k);
        let shift = centroids
            .iter()
            .zip(&updated)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);
        let changed = next != assignment;
        assignment = next;
        centroids = updated;
        if !changed && shift <= SHIFT_TOLERANCE {
            break;
        }
    }
    Ok(ClusterModel {
        k,
        centroids,
        assignment,
        threshold,
        iterations,
    })
}

fn prepared_points(db: &FeatureDatabase, cfg: &MatchConfig) -> Vec<Vec<f64>> {
    let norm = cfg.normalize.then(|| ColumnNormalizer::from_database(db));
    db.rows()
        .map(|r| match &norm {
            Some(n) => n.apply(r),
            None => r.to_vec(),
        })
        .collect()
}

fn weights_or_uniform(db: &FeatureDatabase, w: Option<&WeightVector>) -> Result<Vec<f64>> {
    let dim = db.col_min().len();
    match w {
        Some(w) if w.dim() != dim => Err(Error::DimensionMismatch {
            expected: dim,
            found: w.dim(),
        }),
        Some(w) => Ok(w.weight.clone()),
        None => Ok(WeightVector::uniform(dim).weight),
    }
}

/// Clusters the records of `db` in the distance space of `rank_query`:
/// columns min-max normalized when `cfg.normalize`, weighted Minkowski
/// distance with exponent `cfg.p`, uniform weights when `w` is `None`.
pub fn ik_means(
    db: &FeatureDatabase,
    threshold: f64,
    w: Option<&WeightVector>,
    cfg: &MatchConfig,
) -> Result<ClusterModel> {
    cfg.validate()?;
    if db.is_empty() {
        return Err(Error::degenerate("empty database"));
    }
    let weights = weights_or_uniform(db, w)?;
    ik_means_points(&prepared_points(db, cfg), threshold, &weights, cfg.p)
}

pub fn quality_of_points(model: &ClusterModel, points: &[Vec<f64>], w: &[f64], p: f64) -> ClusterQuality {
    let mean_intra = points
        .iter()
        .zip(&model.assignment)
        .map(|(pt, &a)| distance(pt, &model.centroids[a], w, p))
        .sum::<f64>()
        / points.len() as f64;
    if model.k < 2 {
        return ClusterQuality {
            mean_intra,
            min_inter: f64::INFINITY,
            ratio: 0.0,
        };
    }
    let mut min_inter = f64::INFINITY;
    for a in 0..model.k {
        for b in a + 1..model.k {
            min_inter = min_inter.min(distance(&model.centroids[a], &model.centroids[b], w, p));
        }
    }
    ClusterQuality {
        mean_intra,
        min_inter,
        ratio: mean_intra / min_inter,
    }
}

pub fn cluster_quality(
    model: &ClusterModel,
    db: &FeatureDatabase,
    w: Option<&WeightVector>,
    cfg: &MatchConfig,
) -> Result<ClusterQuality> {
    if model.assignment.len() != db.len() {
        return Err(Error::DimensionMismatch {
            expected: db.len(),
            found: model.assignment.len(),
        });
    }
    let weights = weights_or_uniform(db, w)?;
    Ok(quality_of_points(model, &prepared_points(db, cfg), &weights, cfg.p))
}
