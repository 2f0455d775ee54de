//! Ranking database words against a query by weighted Minkowski distance.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::store::{FeatureDatabase, WordRef};
use crate::weighting::WeightVector;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatchConfig {
    /// Minkowski exponent, `p ≥ 1`.
    pub p: f64,
    /// Min-max normalize columns with the database statistics.
    pub normalize: bool,
    /// Distance cutoff for the retrieved set.
    pub threshold: f64,
    pub top_k: Option<usize>,
}

impl Default for MatchConfig {
    fn default() -> Self {
        Self {
            p: 1.0,
            normalize: true,
            threshold: 0.05,
            top_k: None,
        }
    }
}

impl MatchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.p >= 1.0 && self.p.is_finite()) {
            return Err(Error::invalid(format!("Minkowski exponent {} must be finite and ≥ 1", self.p)));
        }
        if !(0.0..=1.0).contains(&self.threshold) {
            return Err(Error::invalid(format!("threshold {} outside [0, 1]", self.threshold)));
        }
        Ok(())
    }
}

/// `(Σ_k w_k |a_k − b_k|^p)^{1/p}`.
pub fn weighted_distance(a: &[f64], b: &[f64], w: &WeightVector, cfg: &MatchConfig) -> Result<f64> {
    if a.len() != w.dim() || b.len() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.dim(),
            found: if a.len() != w.dim() { a.len() } else { b.len() },
        });
    }
    Ok(distance_unchecked(a, b, &w.weight, cfg.p))
}

fn distance_unchecked(a: &[f64], b: &[f64], w: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        a.iter().zip(b).zip(w).map(|((x, y), wk)| wk * (x - y).abs()).sum()
    } else {
        let s: f64 = a.iter().zip(b).zip(w).map(|((x, y), wk)| wk * (x - y).abs().powf(p)).sum();
        s.powf(1.0 / p)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankedEntry {
    pub reference: WordRef,
    pub distance: f64,
}

/// Full ranking of a query plus the length of its retrieved prefix.
#[derive(Clone, Debug, PartialEq)]
pub struct QueryResult {
    pub entries: Vec<RankedEntry>,
    pub retrieved_len: usize,
}

impl QueryResult {
    pub fn retrieved(&self) -> &[RankedEntry] {
        &self.entries[..self.retrieved_len]
    }

    /// Retrieved entries as TSV: `rank doc_id word_id distance`, rank from 1.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("rank\tdoc_id\tword_id\tdistance\n");
        for (i, e) in self.retrieved().iter().enumerate() {
            writeln!(out, "{}\t{}\t{}\t{}", i + 1, e.reference.doc_id, e.reference.word_id, format_sig9(e.distance))
                .expect("write to String");
        }
        out
    }
}

/// Nine significant digits in scientific notation.
pub fn format_sig9(x: f64) -> String {
    format!("{x:.8e}")
}

/// Min-max scaling into `[0, 1]` with the database's column statistics.
/// Constant columns map to 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnNormalizer {
    min: Vec<f64>,
    span: Vec<f64>,
}

impl ColumnNormalizer {
    pub fn from_database(db: &FeatureDatabase) -> Self {
        Self {
            min: db.col_min().to_vec(),
            span: db.col_max().iter().zip(db.col_min()).map(|(hi, lo)| hi - lo).collect(),
        }
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        v.iter()
            .zip(self.min.iter().zip(&self.span))
            .map(|(&x, (&lo, &span))| if span > 0.0 { ((x - lo) / span).clamp(0.0, 1.0) } else { 0.0 })
            .collect()
    }
}

/// A database prepared for repeated queries under one weighting and config.
pub struct Matcher<'a> {
    db: &'a FeatureDatabase,
    weights: &'a WeightVector,
    cfg: MatchConfig,
    normalizer: Option<ColumnNormalizer>,
    rows: Vec<Vec<f64>>,
}

impl<'a> Matcher<'a> {
    pub fn new(db: &'a FeatureDatabase, weights: &'a WeightVector, cfg: MatchConfig) -> Result<Self> {
        cfg.validate()?;
        if db.is_empty() {
            return Err(Error::degenerate("empty database"));
        }
        let dim = db.col_min().len();
        if weights.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: weights.dim(),
            });
        }
        let normalizer = cfg.normalize.then(|| ColumnNormalizer::from_database(db));
        let rows = db
            .rows()
            .map(|r| match &normalizer {
                Some(n) => n.apply(r),
                None => r.to_vec(),
            })
            .collect();
        Ok(Self {
            db,
            weights,
            cfg,
            normalizer,
            rows,
        })
    }

    pub fn rank(&self, query: &[f64]) -> Result<QueryResult> {
        if query.len() != self.weights.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.dim(),
                found: query.len(),
            });
        }
        let q = match &self.normalizer {
            Some(n) => n.apply(query),
            None => query.to_vec(),
        };
        let mut entries: Vec<RankedEntry> = self
            .db
            .records()
            .iter()
            .zip(&self.rows)
            .map(|(rec, row)| RankedEntry {
                reference: rec.reference(),
                distance: distance_unchecked(&q, row, &self.weights.weight, self.cfg.p),
            })
            .collect();
        entries.sort_by(|a, b| {
            a.distance
                .total_cmp(&b.distance)
                .then_with(|| a.reference.cmp(&b.reference))
        });
        let mut retrieved_len = entries.partition_point(|e| e.distance <= self.cfg.threshold);
        if let Some(k) = self.cfg.top_k {
            retrieved_len = retrieved_len.min(k);
        }
        Ok(QueryResult { entries, retrieved_len })
    }
}

pub fn rank_query(q: &[f64], db: &FeatureDatabase, w: &WeightVector, cfg: &MatchConfig) -> Result<QueryResult> {
    Matcher::new(db, w, *cfg)?.rank(q)
}
