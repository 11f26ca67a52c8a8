//! Aligning source markup with the pages of a PDF.
//!
//! The PDF's own text lines train a TF-IDF + linear SVM page classifier,
//! which labels each source paragraph with a page. Break points come from
//! minimising a two-page Gini impurity over those labels, and each break is
//! then moved to an exact character position by fuzzy matching against the
//! adjacent pages' boundary text. Pages whose two boundary scores average
//! below the acceptance threshold are flagged as rejected.

mod floats;
mod fuzzy;
mod pipeline;
mod preprocess;
mod split;
mod svm;
mod tfidf;

pub use floats::{assign_float_pages, reinsert_floats, remove_floats, FloatKind, FloatRecord};
pub use fuzzy::{refine_break, refine_break_chars, Cut, FuzzyParams, Refinement};
pub use pipeline::{align_document, score_and_accept, AlignConfig, AlignedDocument, PairedPage, SplitSolution};
pub use preprocess::clean_pdf_pages;
pub use split::{best_split, gini_measure, split_document};
pub use svm::{fit_page_classifier, predict_paragraph_pages, LinearPageClassifier, SvmParams};
pub use tfidf::{tokenize, SparseVector, TfIdfVectorizer};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlignError {
    #[error("no PDF observations")]
    NoObservations,
    #[error("invalid page index {0}")]
    InvalidPage(u32),
    #[error("page {0} has no text lines to fit on")]
    PageWithoutObservations(u32),
    #[error("empty vocabulary")]
    EmptyVocabulary,
    #[error("empty interval [{a}, {b})")]
    EmptyInterval { a: usize, b: usize },
    #[error("interval [{a}, {b}) has fewer than two elements")]
    IntervalTooSmall { a: usize, b: usize },
    #[error("{pages} pages but only {paragraphs} paragraphs")]
    TooManyPages { pages: usize, paragraphs: usize },
    #[error("invalid aligner config: {0}")]
    InvalidConfig(String),
}

/// One PDF text line labelled with its page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageObservation {
    pub line_text: String,
    pub page_index: u32,
}

/// Extracted text of one PDF page, as read from the page-text JSONL.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdfPage {
    pub page: u32,
    pub lines: Vec<String>,
}
