//! Removing figures and tables before splitting and putting them back on
//! the page where the PDF shows their caption.

use crate::distance::normalized_levenshtein;
use crate::markup::{unicode_to_latex, Block, MarkupDocument};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FloatKind {
    Figure,
    Table,
}

/// A caption detected on a PDF page.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloatRecord {
    #[serde(rename = "page")]
    pub page_index: u32,
    pub kind: FloatKind,
    #[serde(rename = "caption")]
    pub caption_text: String,
}

/// Splits tables and figure captions out of `doc`, returning them with their
/// original block indices.
pub fn remove_floats(doc: &MarkupDocument) -> (MarkupDocument, Vec<(usize, Block)>) {
    let mut kept = Vec::with_capacity(doc.blocks.len());
    let mut removed = Vec::new();
    for (i, block) in doc.blocks.iter().enumerate() {
        if block.is_float() {
            removed.push((i, block.clone()));
        } else {
            kept.push(block.clone());
        }
    }
    (MarkupDocument::new(doc.source_id.clone(), kept), removed)
}

fn normalize(text: &str) -> Vec<char> {
    let text = unicode_to_latex(text);
    let mut out = Vec::new();
    for w in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(w.chars());
    }
    out
}

/// Chooses a 1-based page for every removed float.
///
/// Captions (and tables without an adjacent caption) are matched greedily,
/// in order, to the unused record with the smallest normalized Levenshtein
/// distance; a match counts when that distance is at most `max_ratio` and
/// the record's page exists. A table directly next to a removed caption
/// follows that caption. Everything else keeps its `fallback_pages` entry.
pub fn assign_float_pages(
    removed: &[(usize, Block)],
    fallback_pages: &[usize],
    records: &[FloatRecord],
    max_ratio: f64,
    num_pages: usize,
) -> Vec<usize> {
    assert_eq!(removed.len(), fallback_pages.len(), "one fallback page per float");
    let caption_at = |index: usize| -> Option<usize> {
        removed
            .iter()
            .position(|(i, b)| *i == index && matches!(b, Block::FigureCaption { .. }))
    };
    let partner: Vec<Option<usize>> = removed
        .iter()
        .map(|(i, b)| match b {
            Block::Table { .. } => caption_at(i + 1).or_else(|| i.checked_sub(1).and_then(caption_at)),
            _ => None,
        })
        .collect();

    let record_keys: Vec<Vec<char>> = records.iter().map(|r| normalize(&r.caption_text)).collect();
    let mut used = vec![false; records.len()];
    let mut pages = fallback_pages.to_vec();
    for (k, (_, block)) in removed.iter().enumerate() {
        if partner[k].is_some() {
            continue;
        }
        let key = normalize(&block.text());
        let mut best: Option<(usize, f64)> = None;
        for (r, rk) in record_keys.iter().enumerate() {
            if used[r] {
                continue;
            }
            let d = normalized_levenshtein(&key, rk);
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((r, d));
            }
        }
        if let Some((r, d)) = best {
            let page = records[r].page_index as usize;
            if d <= max_ratio && (1..=num_pages).contains(&page) {
                used[r] = true;
                pages[k] = page;
            }
        }
    }
    for k in 0..removed.len() {
        if let Some(c) = partner[k] {
            pages[k] = pages[c];
        }
    }
    pages
}

/// Appends every removed float to the end of its assigned page, in the
/// order of `removed`.
pub fn reinsert_floats(
    mut pages: Vec<MarkupDocument>,
    removed: &[(usize, Block)],
    fallback_pages: &[usize],
    records: &[FloatRecord],
    max_ratio: f64,
) -> Vec<MarkupDocument> {
    let assigned = assign_float_pages(removed, fallback_pages, records, max_ratio, pages.len());
    for ((_, block), page) in removed.iter().zip(assigned) {
        let idx = page.clamp(1, pages.len().max(1)) - 1;
        if let Some(p) = pages.get_mut(idx) {
            p.blocks.push(block.clone());
        }
    }
    pages
}
