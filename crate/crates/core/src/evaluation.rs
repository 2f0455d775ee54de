//! Precision/recall over query suites.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;


use crate::error::{Error, Result};
use crate::imaging::{BinaryImage, BoundingBox};
use crate::matching::{MatchConfig, Matcher};
use crate::pipeline::query_features;
use crate::store::{valid_doc_id, FeatureDatabase, WordRef};
use crate::weighting::WeightVector;

/// Minimum overlap for a segmented word to inherit a ground-truth label.
pub const MATCH_IOU: f64 = 0.5;

/// `(precision %, recall %)` with the empty-set conventions: an empty
/// retrieved set has precision 100 only if nothing is relevant, and an
/// empty relevant set has recall 100.
pub fn precision_recall(retrieved: &BTreeSet<WordRef>, relevant: &BTreeSet<WordRef>) -> (f64, f64) {
    let hits = retrieved.intersection(relevant).count() as f64;
    let precision = if retrieved.is_empty() {
        if relevant.is_empty() {
            100.0
        } else {
            0.0
        }
    } else {
        100.0 * hits / retrieved.len() as f64
    };
    let recall = if relevant.is_empty() {
        100.0
    } else {
        100.0 * hits / relevant.len() as f64
    };
    (precision, recall)
}

/// One placed word of the rendered corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundTruthRow {
    pub doc_id: String,
    pub word_id: usize,
    pub bbox: BoundingBox,
    pub text: String,
}

pub fn encode_ground_truth(rows: &[GroundTruthRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let b = r.bbox;
        writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}\t{}", r.doc_id, r.word_id, b.x, b.y, b.w, b.h, r.text)
            .expect("write to String");
    }
    out
}

pub fn decode_ground_truth(text: &str) -> Result<Vec<GroundTruthRow>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 7 {
            return Err(Error::parse(lineno, format!("{} fields, expected 7", f.len())));
        }
        if !valid_doc_id(f[0]) {
            return Err(Error::parse(lineno, "empty doc id"));
        }
        let num = |s: &str, what: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::parse(lineno, format!("{what} {s:?} is not a non-negative integer")))
        };
        if f[6].is_empty() {
            return Err(Error::parse(lineno, "empty word text"));
        }
        rows.push(GroundTruthRow {
            doc_id: f[0].to_string(),
            word_id: num(f[1], "word_id")?,
            bbox: BoundingBox::new(num(f[2], "x")?, num(f[3], "y")?, num(f[4], "w")?, num(f[5], "h")?),
            text: f[6].to_string(),
        });
    }
    Ok(rows)
}

pub fn read_ground_truth(path: impl AsRef<Path>) -> Result<Vec<GroundTruthRow>> {
    let path = path.as_ref();
    decode_ground_truth(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
}

/// Relevant database words per query text.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RelevanceJudgments {
    by_text: BTreeMap<String, BTreeSet<WordRef>>,
}

impl RelevanceJudgments {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `text` with no relevant words if it is not present yet.
    pub fn add_query(&mut self, text: &str) {
        self.by_text.entry(text.to_string()).or_default();
    }

    pub fn insert(&mut self, text: &str, reference: WordRef) {
        self.by_text.entry(text.to_string()).or_default().insert(reference);
    }

    pub fn relevant(&self, text: &str) -> Option<&BTreeSet<WordRef>> {
        self.by_text.get(text)
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.by_text.keys().map(String::as_str)
    }

    /// Labels each database word with the text of the ground-truth box of
    /// the same document it overlaps most (IoU ≥ [`MATCH_IOU`]). Every
    /// ground-truth text gets an entry, possibly empty.
    pub fn from_ground_truth(rows: &[GroundTruthRow], db: &FeatureDatabase) -> Self {
        let mut by_doc: BTreeMap<&str, Vec<&GroundTruthRow>> = BTreeMap::new();
        let mut out = Self::new();
        for r in rows {
            by_doc.entry(r.doc_id.as_str()).or_default().push(r);
            out.add_query(&r.text);
        }
        for rec in db.records() {
            let Some(candidates) = by_doc.get(rec.doc_id.as_str()) else {
                continue;
            };
            let best = candidates
                .iter()
                .map(|g| (g.bbox.iou(&rec.bbox), *g))
                .fold(None, |best: Option<(f64, &GroundTruthRow)>, (iou, g)| match best {
                    Some((b, _)) if b >= iou => best,
                    _ => Some((iou, g)),
                });
            if let Some((iou, g)) = best {
                if iou >= MATCH_IOU {
                    out.insert(&g.text, rec.reference());
                }
            }
        }
        out
    }
}

/// A rendered query word and its text.
#[derive(Clone, Debug)]
pub struct Query {
    pub text: String,
    pub image: BinaryImage,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QueryReport {
    pub query: String,
    pub precision: f64,
    pub recall: f64,
    pub retrieved: usize,
    pub relevant: usize,
    /// Distance of the rank-1 word.
    pub top_distance: f64,
    /// Whether the rank-1 word is relevant.
    pub top_relevant: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PRReport {
    pub rows: Vec<QueryReport>,
    pub avg_precision: f64,
    pub avg_recall: f64,
}

impl PRReport {
    pub fn from_rows(rows: Vec<QueryReport>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::degenerate("no queries; averages are undefined"));
        }
        let n = rows.len() as f64;
        let avg_precision = rows.iter().map(|r| r.precision).sum::<f64>() / n;
        let avg_recall = rows.iter().map(|r| r.recall).sum::<f64>() / n;
        Ok(Self {
            rows,
            avg_precision,
            avg_recall,
        })
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("query\tprecision\trecall\tretrieved\trelevant\ttop_distance\n");
        for r in &self.rows {
            writeln!(
                out,
                "{}\t{:.4}\t{:.4}\t{}\t{}\t{:.8e}",
                r.query, r.precision, r.recall, r.retrieved, r.relevant, r.top_distance
            )
            .expect("write to String");
        }
        out
    }

    pub fn summary(&self, label: &str) -> String {
        format!(
            "[{label}]\nqueries\t{}\naverage_precision\t{:.4}\naverage_recall\t{:.4}\n",
            self.rows.len(),
            self.avg_precision,
            self.avg_recall
        )
    }
}

/// Ranks every query against `db` and scores its retrieved set.
pub fn run_experiment(
    db: &FeatureDatabase,
    judgments: &RelevanceJudgments,
    queries: &[Query],
    w: &WeightVector,
    cfg: &MatchConfig,
) -> Result<PRReport> {
    if queries.is_empty() {
        return Err(Error::degenerate("empty query set"));
    }
    for q in queries {
        if judgments.relevant(&q.text).is_none() {
            return Err(Error::invalid(format!("no relevance judgments for query {:?}", q.text)));
        }
    }
    let matcher = Matcher::new(db, w, *cfg)?;
    let rows = queries
        .iter()
        .map(|q| {
            let relevant = judgments.relevant(&q.text).expect("checked above");
            let result = matcher.rank(&query_features(&q.image)?)?;
            let retrieved: BTreeSet<WordRef> = result.retrieved().iter().map(|e| e.reference.clone()).collect();
            let (precision, recall) = precision_recall(&retrieved, relevant);
            let top = &result.entries[0];
            Ok(QueryReport {
                query: q.text.clone(),
                precision,
                recall,
                retrieved: retrieved.len(),
                relevant: relevant.len(),
                top_distance: top.distance,
                top_relevant: relevant.contains(&top.reference),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PRReport::from_rows(rows)
}
