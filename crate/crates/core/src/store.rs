//! Feature database and weight files.
//!
//! Both are line-oriented UTF-8 with tab-separated fields. Reals use
//! 17 significant digits (`{:.16e}`), enough for `f64` to survive a
//! write/read cycle bit for bit.
//!
//! ```text
//! WORDSPOT-DB 1 dim=93 n=<count>
//! MIN<TAB><93 reals>
//! MAX<TAB><93 reals>
//! doc_id<TAB>word_id<TAB>x<TAB>y<TAB>w<TAB>h<TAB><93 reals>     (one per word)
//! ```
//!
//! ```text
//! WORDSPOT-W 1 dim=<d>
//! index<TAB>active(0|1)<TAB>lambda<TAB>weight                     (one per feature)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::features::{FeatureVector, FEATURE_DIM};
use crate::imaging::BoundingBox;
use crate::weighting::WeightVector;

const DB_MAGIC: &str = "WORDSPOT-DB";
const W_MAGIC: &str = "WORDSPOT-W";
const FORMAT_VERSION: u32 = 1;
/// Tolerance on Σ weight when validating a weights file.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// Identifies one indexed word: page/document id plus position in reading order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordRef {
    pub doc_id: String,
    pub word_id: usize,
}

impl WordRef {
    pub fn new(doc_id: impl Into<String>, word_id: usize) -> Self {
        Self {
            doc_id: doc_id.into(),
            word_id,
        }
    }
}

impl std::fmt::Display for WordRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}#{}", self.doc_id, self.word_id)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WordRecord {
    pub doc_id: String,
    pub word_id: usize,
    pub bbox: BoundingBox,
    pub features: FeatureVector,
}

impl WordRecord {
    pub fn reference(&self) -> WordRef {
        WordRef::new(self.doc_id.clone(), self.word_id)
    }
}

/// Indexed words plus the exact per-column extrema used for normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureDatabase {
    records: Vec<WordRecord>,
    col_min: Vec<f64>,
    col_max: Vec<f64>,
}

pub(crate) fn valid_doc_id(id: &str) -> bool {
    !id.is_empty() && !id.contains(['\t', '\n', '\r'])
}

impl FeatureDatabase {
    pub fn new(records: Vec<WordRecord>) -> Result<Self> {
        let mut seen = HashSet::new();
        for r in &records {
            if !valid_doc_id(&r.doc_id) {
                return Err(Error::invalid(format!("invalid doc id {:?}", r.doc_id)));
            }
            if !seen.insert((r.doc_id.as_str(), r.word_id)) {
                return Err(Error::invalid(format!("duplicate word {}#{}", r.doc_id, r.word_id)));
            }
        }
        let (col_min, col_max) = column_extrema(&records);
        Ok(Self {
            records,
            col_min,
            col_max,
        })
    }

    pub fn records(&self) -> &[WordRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn col_min(&self) -> &[f64] {
        &self.col_min
    }

    pub fn col_max(&self) -> &[f64] {
        &self.col_max
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.records.iter().map(|r| r.features.values())
    }
}

fn column_extrema(records: &[WordRecord]) -> (Vec<f64>, Vec<f64>) {
    if records.is_empty() {
        return (vec![0.0; FEATURE_DIM], vec![0.0; FEATURE_DIM]);
    }
    let mut lo = vec![f64::INFINITY; FEATURE_DIM];
    let mut hi = vec![f64::NEG_INFINITY; FEATURE_DIM];
    for r in records {
        for (k, &v) in r.features.iter().enumerate() {
            lo[k] = lo[k].min(v);
            hi[k] = hi[k].max(v);
        }
    }
    (lo, hi)
}

fn push_reals(out: &mut String, values: &[f64]) {
    for v in values {
        write!(out, "\t{v:.16e}").expect("write to String");
    }
}

pub fn encode_db(db: &FeatureDatabase) -> String {
    let mut out = format!("{DB_MAGIC} {FORMAT_VERSION} dim={FEATURE_DIM} n={}\n", db.len());
    out.push_str("MIN");
    push_reals(&mut out, &db.col_min);
    out.push_str("\nMAX");
    push_reals(&mut out, &db.col_max);
    out.push('\n');
    for r in &db.records {
        let b = r.bbox;
        write!(out, "{}\t{}\t{}\t{}\t{}\t{}", r.doc_id, r.word_id, b.x, b.y, b.w, b.h).expect("write to String");
        push_reals(&mut out, r.features.values());
        out.push('\n');
    }
    out
}

fn parse_real(field: &str, line: usize) -> Result<f64> {
    let v: f64 = field
        .parse()
        .map_err(|_| Error::parse(line, format!("non-numeric field {field:?}")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("non-finite value {field:?}")));
    }
    Ok(v)
}

fn parse_count(field: &str, line: usize, what: &str) -> Result<usize> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("{what} {field:?} is not a non-negative integer")))
}

/// Parses `MAGIC VERSION key=value...` and returns the key/value pairs.
fn parse_header(line: Option<&str>, magic: &str, keys: &[&str]) -> Result<Vec<usize>> {
    let line = line.ok_or_else(|| Error::parse(1, "empty file"))?;
    let mut parts = line.split(' ');
    if parts.next() != Some(magic) {
        return Err(Error::parse(1, format!("expected {magic} header")));
    }
    match parts.next() {
        Some(v) if v == FORMAT_VERSION.to_string() => {}
        Some(v) => return Err(Error::parse(1, format!("unsupported version {v:?}"))),
        None => return Err(Error::parse(1, "missing version")),
    }
    let mut out = Vec::with_capacity(keys.len());
    for key in keys {
        let field = parts
            .next()
            .ok_or_else(|| Error::parse(1, format!("missing {key}=")))?;
        let value = field
            .strip_prefix(key)
            .and_then(|s| s.strip_prefix('='))
            .ok_or_else(|| Error::parse(1, format!("expected {key}=, found {field:?}")))?;
        out.push(parse_count(value, 1, key)?);
    }
    if parts.next().is_some() {
        return Err(Error::parse(1, "trailing header fields"));
    }
    Ok(out)
}

fn parse_stats(line: Option<&str>, lineno: usize, tag: &str) -> Result<Vec<f64>> {
    let line = line.ok_or_else(|| Error::parse(lineno, format!("missing {tag} line")))?;
    let mut fields = line.split('\t');
    if fields.next() != Some(tag) {
        return Err(Error::parse(lineno, format!("expected {tag} line")));
    }
    let values = fields.map(|f| parse_real(f, lineno)).collect::<Result<Vec<_>>>()?;
    if values.len() != FEATURE_DIM {
        return Err(Error::parse(
            lineno,
            format!("{tag} has {} values, expected {FEATURE_DIM}", values.len()),
        ));
    }
    Ok(values)
}

pub fn decode_db(text: &str) -> Result<FeatureDatabase> {
    let mut lines = text.lines();
    let header = parse_header(lines.next(), DB_MAGIC, &["dim", "n"])?;
    if header[0] != FEATURE_DIM {
        return Err(Error::parse(1, format!("dim={} but this build uses {FEATURE_DIM}", header[0])));
    }
    let n = header[1];
    let col_min = parse_stats(lines.next(), 2, "MIN")?;
    let col_max = parse_stats(lines.next(), 3, "MAX")?;

    let mut records = Vec::with_capacity(n);
    let mut seen = HashSet::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 4;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 6 + FEATURE_DIM {
            return Err(Error::parse(
                lineno,
                format!("{} fields, expected {}", fields.len(), 6 + FEATURE_DIM),
            ));
        }
        let doc_id = fields[0];
        if !valid_doc_id(doc_id) {
            return Err(Error::parse(lineno, "empty doc id"));
        }
        let word_id = parse_count(fields[1], lineno, "word_id")?;
        if !seen.insert((doc_id.to_string(), word_id)) {
            return Err(Error::parse(lineno, format!("duplicate word {doc_id}#{word_id}")));
        }
        let bbox = BoundingBox::new(
            parse_count(fields[2], lineno, "x")?,
            parse_count(fields[3], lineno, "y")?,
            parse_count(fields[4], lineno, "w")?,
            parse_count(fields[5], lineno, "h")?,
        );
        if bbox.w == 0 || bbox.h == 0 {
            return Err(Error::parse(lineno, "zero-sized box"));
        }
        let values = fields[6..]
            .iter()
            .map(|f| parse_real(f, lineno))
            .collect::<Result<Vec<_>>>()?;
        records.push(WordRecord {
            doc_id: doc_id.to_string(),
            word_id,
            bbox,
            features: FeatureVector::new(values)?,
        });
    }
    if records.len() != n {
        return Err(Error::parse(
            records.len() + 4,
            format!("header promises {n} records, found {}", records.len()),
        ));
    }
    let db = FeatureDatabase::new(records)?;
    for (k, (stored, exact)) in col_min.iter().zip(&db.col_min).enumerate() {
        if stored.to_bits() != exact.to_bits() {
            return Err(Error::parse(2, format!("MIN column {k} is {stored}, records give {exact}")));
        }
    }
    for (k, (stored, exact)) in col_max.iter().zip(&db.col_max).enumerate() {
        if stored.to_bits() != exact.to_bits() {
            return Err(Error::parse(3, format!("MAX column {k} is {stored}, records give {exact}")));
        }
    }
    Ok(db)
}

pub fn write_db(db: &FeatureDatabase, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, encode_db(db)).map_err(|e| Error::io(path, e))
}

pub fn read_db(path: impl AsRef<Path>) -> Result<FeatureDatabase> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    decode_db(&text)
}

pub fn encode_weights(w: &WeightVector) -> String {
    let mut out = format!("{W_MAGIC} {FORMAT_VERSION} dim={}\n", w.dim());
    for i in 0..w.dim() {
        writeln!(
            out,
            "{i}\t{}\t{:.16e}\t{:.16e}",
            u8::from(w.active[i]),
            w.lambda[i],
            w.weight[i]
        )
        .expect("write to String");
    }
    out
}

pub fn decode_weights(text: &str) -> Result<WeightVector> {
    let mut lines = text.lines();
    let dim = parse_header(lines.next(), W_MAGIC, &["dim"])?[0];
    let mut w = WeightVector {
        lambda: Vec::with_capacity(dim),
        weight: Vec::with_capacity(dim),
        active: Vec::with_capacity(dim),
    };
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::parse(lineno, format!("{} fields, expected 4", fields.len())));
        }
        if parse_count(fields[0], lineno, "index")? != i {
            return Err(Error::parse(lineno, format!("expected feature index {i}")));
        }
        let active = match fields[1] {
            "0" => false,
            "1" => true,
            other => return Err(Error::parse(lineno, format!("active flag {other:?} not 0/1"))),
        };
        let lambda = parse_real(fields[2], lineno)?;
        let weight = parse_real(fields[3], lineno)?;
        if weight < 0.0 {
            return Err(Error::parse(lineno, "negative weight"));
        }
        if !active && weight != 0.0 {
            return Err(Error::parse(lineno, "inactive feature with non-zero weight"));
        }
        if active && !(0.0..=1.0).contains(&lambda) {
            return Err(Error::parse(lineno, format!("lambda {lambda} outside [0, 1]")));
        }
        w.active.push(active);
        w.lambda.push(lambda);
        w.weight.push(weight);
    }
    if w.dim() != dim {
        return Err(Error::parse(w.dim() + 2, format!("header promises dim={dim}, found {}", w.dim())));
    }
    let sum: f64 = w.weight.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(Error::parse(dim + 1, format!("weights sum to {sum}, expected 1")));
    }
    Ok(w)
}

pub fn write_weights(w: &WeightVector, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, encode_weights(w)).map_err(|e| Error::io(path, e))
}

pub fn read_weights(path: impl AsRef<Path>) -> Result<WeightVector> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    decode_weights(&text)
}
