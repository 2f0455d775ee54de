//! Offline indexing and online query feature extraction.
//!
//! Pages and queries go through the same stages: binarize (grayscale only),
//! mean filter, skeletonize. Pages are then segmented; a query image is
//! taken to be a single word and trimmed to its ink.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::features::{extract_features, FeatureVector};
use crate::imaging::{mean_filter, pnm, skeletonize, BinaryImage, BoundingBox};
use crate::segmentation::{segment_words, SegmentationConfig};
use crate::store::{FeatureDatabase, WordRecord};

/// Blank border added around a query so filtering and thinning see the
/// same neighbourhood a word has on a page.
pub const QUERY_MARGIN: usize = 4;

pub fn preprocess(img: &BinaryImage) -> BinaryImage {
    skeletonize(&mean_filter(img))
}

/// Word boxes and feature vectors of a raw binary page, in reading order.
pub fn page_words(page: &BinaryImage, cfg: &SegmentationConfig) -> Result<Vec<(BoundingBox, FeatureVector)>> {
    let clean = preprocess(page);
    segment_words(&clean, cfg)?
        .into_iter()
        .map(|b| Ok((b, extract_features(&clean.crop(b)?)?)))
        .collect()
}

/// Feature vector of a single raw word image.
pub fn query_features(word: &BinaryImage) -> Result<FeatureVector> {
    let clean = preprocess(&word.pad(QUERY_MARGIN));
    let bounds = clean
        .ink_bounds()
        .ok_or_else(|| Error::degenerate("query image has no ink after preprocessing"))?;
    extract_features(&clean.crop(bounds)?)
}

/// Indexes named pages; records keep page order, then reading order.
pub fn index_pages(pages: &[(String, BinaryImage)], cfg: &SegmentationConfig) -> Result<FeatureDatabase> {
    cfg.validate()?;
    let per_page: Vec<Vec<WordRecord>> = pages
        .par_iter()
        .map(|(doc_id, page)| {
            Ok(page_words(page, cfg)?
                .into_iter()
                .enumerate()
                .map(|(word_id, (bbox, features))| WordRecord {
                    doc_id: doc_id.clone(),
                    word_id,
                    bbox,
                    features,
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    FeatureDatabase::new(per_page.into_iter().flatten().collect())
}

/// `.pbm`/`.pgm` files of a directory sorted by file name.
pub fn page_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        let ext = path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
        if matches!(ext.as_deref(), Some("pbm" | "pgm")) && path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Document id of a page file: its file stem.
pub fn doc_id_of(path: &Path) -> Result<String> {
    path.file_stem()
        .and_then(|s| s.to_str())
        .filter(|s| crate::store::valid_doc_id(s))
        .map(str::to_string)
        .ok_or_else(|| Error::invalid(format!("{} has no usable file stem", path.display())))
}

/// Reads and indexes every page image in `dir`.
pub fn index_directory(dir: impl AsRef<Path>, cfg: &SegmentationConfig) -> Result<FeatureDatabase> {
    let files = page_files(dir.as_ref())?;
    let pages = files
        .par_iter()
        .map(|f| Ok((doc_id_of(f)?, pnm::read_image(f)?.into_binary())))
        .collect::<Result<Vec<_>>>()?;
    index_pages(&pages, cfg)
}
