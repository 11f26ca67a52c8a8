//! Corpus construction and evaluation toolkit for document OCR.
//!
//! The crate is organised around the stages of building a paired
//! (page image, markup) dataset and scoring models trained on it:
//!
//! - [`markup`]: the lightweight markup model, an HTML subset reader, the
//!   Markdown-with-LaTeX serializer and modality splitting.
//! - [`align`]: page alignment of source markup against per-page PDF text.
//! - [`augment`]: seeded image augmentations and token perturbation.
//! - [`repetition`]: logit-variance repetition detection.
//! - [`metrics`]: edit distance, BLEU, METEOR and token F1 per modality.
//! - [`distance`]: Levenshtein primitives shared by the above.

pub mod align;
pub mod augment;
pub mod distance;
pub mod markup;
pub mod metrics;
pub mod repetition;
