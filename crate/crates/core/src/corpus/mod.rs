//! Deterministic synthetic corpus: rendered word pages with ground truth.
//!
//! Words are set from two embedded 8×16 bitmap fonts. Each glyph is trimmed
//! to its ink columns and overlaps the previous one by a single column, so
//! letter gaps stay closed after filtering and thinning and only the
//! inter-word gap separates words. Lines are filled greedily left to right.
//!
//! Spec files are flat `key=value` text:
//!
//! ```text
//! # standard corpus
//! seed=42
//! pages=100
//! words_per_page=12
//! lexicon=standard          # standard | confusable | comma,separated,words
//! font=A
//! scale=2
//! page_width=640
//! ```
//!
//! `margin`, `word_gap` and `line_gap` (pixels) default to 16, 8 and 8 times
//! the scale.

mod glyphs;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::evaluation::{encode_ground_truth, GroundTruthRow, Query};
use crate::imaging::{pnm, BinaryImage, BoundingBox};
use crate::pipeline::{preprocess, QUERY_MARGIN};

pub const GLYPH_W: usize = 8;
pub const GLYPH_H: usize = 16;
pub const TRUTH_FILE: &str = "truth.tsv";

/// Fifty common words of three to eight letters.
pub const STANDARD_LEXICON: [&str; 50] = [
    "the", "and", "for", "with", "image", "word", "page", "text", "query", "search",
    "record", "feature", "weight", "vector", "system", "sheet", "method", "result", "data", "table",
    "value", "model", "group", "point", "line", "shape", "field", "index", "match", "object",
    "scan", "print", "font", "letter", "number", "figure", "access", "library", "cluster", "height",
    "width", "black", "white", "dark", "light", "small", "large", "first", "second", "third",
];

/// Pairs `(standard word, look-alike)` differing in one similar glyph.
pub const CONFUSABLE_PAIRS: [(&str, &str); 12] = [
    ("word", "ward"),
    ("page", "pane"),
    ("line", "lime"),
    ("font", "fount"),
    ("dark", "bark"),
    ("light", "fight"),
    ("match", "watch"),
    ("print", "paint"),
    ("scan", "scar"),
    ("data", "date"),
    ("value", "valve"),
    ("small", "smell"),
];

pub fn confusable_lexicon() -> Vec<String> {
    STANDARD_LEXICON
        .iter()
        .copied()
        .chain(CONFUSABLE_PAIRS.iter().map(|p| p.1))
        .map(str::to_string)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Font {
    A,
    B,
}

impl FromStr for Font {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Font::A),
            "B" | "b" => Ok(Font::B),
            _ => Err(Error::invalid(format!("unknown font {s:?}; expected A or B"))),
        }
    }
}

impl fmt::Display for Font {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Font::A => "A",
            Font::B => "B",
        })
    }
}

/// Ink columns `[first, last]` and the row bitmap of a glyph.
fn glyph(font: Font, c: char) -> Result<(&'static [u8; 16], usize, usize)> {
    if !c.is_ascii_lowercase() {
        return Err(Error::invalid(format!("no glyph for {c:?}")));
    }
    let rows = match font {
        Font::A => &glyphs::FONT_A[(c as u8 - b'a') as usize],
        Font::B => &glyphs::FONT_B[(c as u8 - b'a') as usize],
    };
    let mask = rows.iter().fold(0u8, |m, r| m | r);
    if mask == 0 {
        return Err(Error::invalid(format!("glyph {c:?} is blank")));
    }
    Ok((rows, mask.leading_zeros() as usize, 7 - mask.trailing_zeros() as usize))
}

/// A word set in a full-height line cell: `16·scale` rows, glyphs sharing
/// their boundary column.
pub fn render_word(word: &str, font: Font, scale: usize) -> Result<BinaryImage> {
    if word.is_empty() {
        return Err(Error::invalid("empty word"));
    }
    if scale == 0 {
        return Err(Error::invalid("scale must be at least 1"));
    }
    let glyphs = word.chars().map(|c| glyph(font, c)).collect::<Result<Vec<_>>>()?;
    let width: usize = glyphs.iter().map(|(_, a, b)| b - a).sum::<usize>() + 1;
    let mut img = BinaryImage::new(width, GLYPH_H);
    let mut x0 = 0;
    for (rows, first, last) in glyphs {
        for (y, bits) in rows.iter().enumerate() {
            for gx in first..=last {
                if bits & (0x80 >> gx) != 0 {
                    img.set(x0 + gx - first, y, true);
                }
            }
        }
        x0 += last - first;
    }
    Ok(img.scaled(scale))
}

/// A single word trimmed to its ink, as a query image.
pub fn render_query(word: &str, font: Font, scale: usize) -> Result<BinaryImage> {
    let img = render_word(word, font, scale)?;
    let bounds = img.ink_bounds().expect("rendered glyphs have ink");
    img.crop(bounds)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Lexicon {
    Standard,
    Confusable,
    Words(Vec<String>),
}

impl Lexicon {
    pub fn words(&self) -> Vec<String> {
        match self {
            Lexicon::Standard => STANDARD_LEXICON.iter().map(|s| s.to_string()).collect(),
            Lexicon::Confusable => confusable_lexicon(),
            Lexicon::Words(w) => w.clone(),
        }
    }
}

impl fmt::Display for Lexicon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lexicon::Standard => f.write_str("standard"),
            Lexicon::Confusable => f.write_str("confusable"),
            Lexicon::Words(w) => f.write_str(&w.join(",")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusSpec {
    pub seed: u64,
    pub pages: usize,
    pub words_per_page: usize,
    pub lexicon: Lexicon,
    pub font: Font,
    pub scale: usize,
    pub page_width: usize,
    pub margin: Option<usize>,
    pub word_gap: Option<usize>,
    pub line_gap: Option<usize>,
}

impl CorpusSpec {
    /// Seed 42, 100 pages of 12 words from the standard lexicon, font A, scale 2.
    pub fn standard() -> Self {
        Self {
            seed: 42,
            pages: 100,
            words_per_page: 12,
            lexicon: Lexicon::Standard,
            font: Font::A,
            scale: 2,
            page_width: 640,
            margin: None,
            word_gap: None,
            line_gap: None,
        }
    }

    pub fn margin(&self) -> usize {
        self.margin.unwrap_or(16 * self.scale)
    }

    pub fn word_gap(&self) -> usize {
        self.word_gap.unwrap_or(8 * self.scale)
    }

    pub fn line_gap(&self) -> usize {
        self.line_gap.unwrap_or(8 * self.scale)
    }

    pub fn validate(&self) -> Result<()> {
        if self.scale == 0 {
            return Err(Error::invalid("scale must be at least 1"));
        }
        if self.pages == 0 || self.words_per_page == 0 {
            return Err(Error::invalid("pages and words_per_page must be positive"));
        }
        let words = self.lexicon.words();
        if words.is_empty() {
            return Err(Error::invalid("empty lexicon"));
        }
        for w in &words {
            if w.is_empty() || !w.chars().all(|c| c.is_ascii_lowercase()) {
                return Err(Error::invalid(format!("lexicon word {w:?} is not lowercase a-z")));
            }
        }
        if self.page_width <= 2 * self.margin() {
            return Err(Error::invalid("page narrower than its margins"));
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = Self::standard();
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(lineno, format!("expected key=value, found {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| -> Result<usize> {
                v.parse()
                    .map_err(|_| Error::parse(lineno, format!("{key}: {v:?} is not a non-negative integer")))
            };
            match key {
                "seed" => {
                    spec.seed = value
                        .parse()
                        .map_err(|_| Error::parse(lineno, format!("seed: {value:?} is not an integer")))?
                }
                "pages" => spec.pages = num(value)?,
                "words_per_page" => spec.words_per_page = num(value)?,
                "scale" => spec.scale = num(value)?,
                "page_width" => spec.page_width = num(value)?,
                "margin" => spec.margin = Some(num(value)?),
                "word_gap" => spec.word_gap = Some(num(value)?),
                "line_gap" => spec.line_gap = Some(num(value)?),
                "font" => spec.font = value.parse().map_err(|e: Error| Error::parse(lineno, e.to_string()))?,
                "lexicon" => {
                    spec.lexicon = match value {
                        "standard" => Lexicon::Standard,
                        "confusable" => Lexicon::Confusable,
                        list => Lexicon::Words(list.split(',').map(|w| w.trim().to_string()).collect()),
                    }
                }
                other => return Err(Error::parse(lineno, format!("unknown key {other:?}"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed={}", self.seed)?;
        writeln!(f, "pages={}", self.pages)?;
        writeln!(f, "words_per_page={}", self.words_per_page)?;
        writeln!(f, "lexicon={}", self.lexicon)?;
        writeln!(f, "font={}", self.font)?;
        writeln!(f, "scale={}", self.scale)?;
        writeln!(f, "page_width={}", self.page_width)?;
        for (key, v) in [("margin", self.margin), ("word_gap", self.word_gap), ("line_gap", self.line_gap)] {
            if let Some(v) = v {
                writeln!(f, "{key}={v}")?;
            }
        }
        Ok(())
    }
}

/// A rendered page and the words placed on it, in reading order.
#[derive(Clone, Debug)]
pub struct RenderedPage {
    pub doc_id: String,
    pub image: BinaryImage,
    pub truth: Vec<GroundTruthRow>,
    /// Raw placement boxes of the words, before preprocessing.
    pub placed: Vec<BoundingBox>,
}

pub fn page_doc_id(index: usize) -> String {
    format!("page_{:04}", index + 1)
}

/// Tight box of a word after the standard preprocessing, in the word
/// image's coordinates; the raw ink box if nothing survives.
fn processed_bounds(word: &BinaryImage) -> BoundingBox {
    let m = QUERY_MARGIN;
    match preprocess(&word.pad(m)).ink_bounds() {
        Some(b) => BoundingBox::new(b.x - m, b.y - m, b.w, b.h),
        None => word.ink_bounds().expect("rendered glyphs have ink"),
    }
}

/// Renders every page in memory.
///
/// Ground-truth boxes are the ink extent each word keeps after mean
/// filtering and thinning, which is what segmentation sees.
pub fn render_pages(spec: &CorpusSpec) -> Result<Vec<RenderedPage>> {
    spec.validate()?;
    let lexicon = spec.lexicon.words();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (margin, word_gap, line_gap) = (spec.margin(), spec.word_gap(), spec.line_gap());
    let line_h = GLYPH_H * spec.scale;
    let usable = spec.page_width - 2 * margin;

    let mut cache: std::collections::HashMap<String, (BinaryImage, BoundingBox)> = Default::default();
    let mut pages = Vec::with_capacity(spec.pages);
    for p in 0..spec.pages {
        let words: Vec<&String> = (0..spec.words_per_page)
            .map(|_| &lexicon[rng.random_range(0..lexicon.len())])
            .collect();

        // greedy line layout: (x, line, word)
        let mut layout = Vec::with_capacity(words.len());
        let (mut x, mut line) = (0usize, 0usize);
        for w in &words {
            if !cache.contains_key(w.as_str()) {
                let img = render_word(w, spec.font, spec.scale)?;
                let b = processed_bounds(&img);
                cache.insert(w.to_string(), (img, b));
            }
            let width = cache[w.as_str()].0.width();
            if width > usable {
                return Err(Error::invalid(format!(
                    "word {w:?} is {width} px wide but the page holds {usable} px per line"
                )));
            }
            if x > 0 && x + word_gap + width > usable {
                x = 0;
                line += 1;
            }
            if x > 0 {
                x += word_gap;
            }
            layout.push((x, line, *w));
            x += width;
        }
        let lines = line + 1;
        let height = 2 * margin + lines * line_h + (lines - 1) * line_gap;

        let doc_id = page_doc_id(p);
        let mut image = BinaryImage::new(spec.page_width, height);
        let mut truth = Vec::with_capacity(words.len());
        let mut placed = Vec::with_capacity(words.len());
        for (word_id, (x, line, w)) in layout.into_iter().enumerate() {
            let (img, b) = &cache[w.as_str()];
            let px = margin + x;
            let py = margin + line * (line_h + line_gap);
            image.blit(img, px, py);
            let raw = img.ink_bounds().expect("rendered glyphs have ink");
            placed.push(BoundingBox::new(px + raw.x, py + raw.y, raw.w, raw.h));
            truth.push(GroundTruthRow {
                doc_id: doc_id.clone(),
                word_id,
                bbox: BoundingBox::new(px + b.x, py + b.y, b.w, b.h),
                text: w.to_string(),
            });
        }
        pages.push(RenderedPage {
            doc_id,
            image,
            truth,
            placed,
        });
    }
    Ok(pages)
}

/// Files written by [`render_corpus`].
#[derive(Clone, Debug)]
pub struct RenderedCorpus {
    pub pages: Vec<PathBuf>,
    pub truth_path: PathBuf,
    pub truth: Vec<GroundTruthRow>,
}

/// Writes `page_NNNN.pbm` files and `truth.tsv` into `out_dir`.
pub fn render_corpus(spec: &CorpusSpec, out_dir: impl AsRef<Path>) -> Result<RenderedCorpus> {
    let out_dir = out_dir.as_ref();
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let pages = render_pages(spec)?;
    let mut paths = Vec::with_capacity(pages.len());
    let mut truth = Vec::new();
    for page in pages {
        let path = out_dir.join(format!("{}.pbm", page.doc_id));
        pnm::write_pbm(&page.image, &path)?;
        paths.push(path);
        truth.extend(page.truth);
    }
    let truth_path = out_dir.join(TRUTH_FILE);
    std::fs::write(&truth_path, encode_ground_truth(&truth)).map_err(|e| Error::io(&truth_path, e))?;
    Ok(RenderedCorpus {
        pages: paths,
        truth_path,
        truth,
    })
}

/// `count` distinct lexicon words chosen by a seeded generator, in draw order.
pub fn seeded_query_words(lexicon: &[&str], count: usize, seed: u64) -> Result<Vec<String>> {
    if count > lexicon.len() {
        return Err(Error::invalid(format!("{count} queries requested from {} words", lexicon.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample(&mut rng, lexicon.len(), count)
        .into_iter()
        .map(|i| lexicon[i].to_string())
        .collect())
}

/// The 30-word query suite drawn from the standard lexicon.
pub fn standard_query_words() -> Vec<String> {
    seeded_query_words(&STANDARD_LEXICON, 30, 2024).expect("30 ≤ 50")
}

pub fn render_queries(words: &[String], font: Font, scale: usize) -> Result<Vec<Query>> {
    words
        .iter()
        .map(|w| {
            Ok(Query {
                text: w.clone(),
                image: render_query(w, font, scale)?,
            })
        })
        .collect()
}

/// Query words from a file: one per line, `#` comments and blank lines skipped.
pub fn parse_query_words(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let w = raw.split('#').next().unwrap_or("").trim();
        if w.is_empty() {
            continue;
        }
        if !w.chars().all(|c| c.is_ascii_lowercase()) {
            return Err(Error::parse(i + 1, format!("query {w:?} is not lowercase a-z")));
        }
        out.push(w.to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_glyph_has_ink_in_both_fonts() {
        for c in 'a'..='z' {
            for font in [Font::A, Font::B] {
                let (_, first, last) = glyph(font, c).unwrap();
                assert!(first <= last && last < GLYPH_W);
            }
        }
        assert!(glyph(Font::A, 'A').is_err());
    }

    #[test]
    fn word_rendering() {
        let a = render_word("a", Font::A, 1).unwrap();
        assert_eq!(a.height(), GLYPH_H);
        assert!(a.width() <= GLYPH_W);
        let ab = render_word("ab", Font::A, 1).unwrap();
        assert_eq!(ab.width(), a.width() + render_word("b", Font::A, 1).unwrap().width() - 1);
        let s3 = render_word("ab", Font::A, 3).unwrap();
        assert_eq!((s3.width(), s3.height()), (3 * ab.width(), 3 * GLYPH_H));
        assert!(render_word("", Font::A, 1).is_err());
        assert!(render_word("a b", Font::A, 1).is_err());
        assert!(render_query("", Font::B, 2).is_err());
    }

    #[test]
    fn fonts_differ() {
        for w in ["x", "word", "query"] {
            assert_ne!(render_query(w, Font::A, 1).unwrap(), render_query(w, Font::B, 1).unwrap());
        }
    }

    #[test]
    fn single_word_page() {
        let spec = CorpusSpec {
            pages: 1,
            words_per_page: 1,
            lexicon: Lexicon::Words(vec!["a".into()]),
            scale: 1,
            ..CorpusSpec::standard()
        };
        let pages = render_pages(&spec).unwrap();
        assert_eq!(pages.len(), 1);
        assert_eq!(pages[0].truth.len(), 1);
        let page = &pages[0].image;
        let ink = page.ink_bounds().unwrap();
        assert!(ink.w <= GLYPH_W && ink.h <= GLYPH_H);
        assert_eq!(page.crop(ink).unwrap(), render_query("a", Font::A, 1).unwrap());
    }

    #[test]
    fn query_equals_placed_pixels() {
        let spec = CorpusSpec {
            pages: 2,
            words_per_page: 9,
            lexicon: Lexicon::Words(vec!["x".into(), "ink".into(), "page".into()]),
            scale: 1,
            ..CorpusSpec::standard()
        };
        for page in render_pages(&spec).unwrap() {
            for (row, b) in page.truth.iter().zip(&page.placed) {
                assert_eq!(page.image.crop(*b).unwrap(), render_query(&row.text, Font::A, 1).unwrap());
            }
        }
    }

    #[test]
    fn too_wide_word_is_named() {
        let spec = CorpusSpec {
            pages: 1,
            lexicon: Lexicon::Words(vec!["extraordinarily".into()]),
            page_width: 100,
            margin: Some(10),
            ..CorpusSpec::standard()
        };
        let err = render_pages(&spec).unwrap_err().to_string();
        assert!(err.contains("extraordinarily"), "{err}");
    }

    #[test]
    fn spec_round_trip_and_errors() {
        let spec = CorpusSpec {
            lexicon: Lexicon::Words(vec!["ab".into(), "cd".into()]),
            font: Font::B,
            margin: Some(20),
            ..CorpusSpec::standard()
        };
        assert_eq!(CorpusSpec::parse(&spec.to_string()).unwrap(), spec);
        assert_eq!(CorpusSpec::parse("# defaults\n\n").unwrap(), CorpusSpec::standard());
        for (text, line) in [("seed=1\npages=x\n", 2), ("colour=red\n", 1), ("font=C\n", 1), ("pages\n", 1)] {
            match CorpusSpec::parse(text).unwrap_err() {
                Error::Parse { line: l, .. } => assert_eq!(l, line, "{text}"),
                e => panic!("{e:?}"),
            }
        }
        assert!(CorpusSpec::parse("lexicon=Ab\n").is_err());
    }

    #[test]
    fn lexicons() {
        assert_eq!(STANDARD_LEXICON.len(), 50);
        let mut seen = std::collections::HashSet::new();
        assert!(confusable_lexicon().iter().all(|w| seen.insert(w.clone())));
        for (a, b) in CONFUSABLE_PAIRS {
            assert!(STANDARD_LEXICON.contains(&a));
            assert!(!STANDARD_LEXICON.contains(&b));
        }
        let q = standard_query_words();
        assert_eq!(q.len(), 30);
        assert_eq!(q.iter().collect::<std::collections::HashSet<_>>().len(), 30);
        assert_eq!(q, standard_query_words());
    }

    #[test]
    fn query_file_parsing() {
        assert_eq!(parse_query_words("word\n# c\n\n page \n").unwrap(), ["word", "page"]);
        match parse_query_words("ok\nBad\n").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("{e:?}"),
        }
    }
}
