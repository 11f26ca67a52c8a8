//! Lightweight markup document model.
//!
//! Documents are an ordered list of [`Block`]s. Text-bearing blocks hold a
//! sequence of [`InlineSpan`]s; display math, tables and algorithms hold raw
//! LaTeX. The canonical text form is Markdown with LaTeX math (see
//! [`serialize_markdown`]), which [`parse_markdown`] reads back.

mod html;
mod markdown;
mod modality;
mod unicode;

pub use html::parse_html_subset;
pub use markdown::{parse_markdown, serialize_block, serialize_markdown};
pub use modality::{split_modalities, Modality, ModalitySlices};
pub use unicode::{unicode_to_latex, SUBSTITUTION_TABLE_VERSION};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MarkupError {
    #[error("malformed HTML at byte {offset}: {message}")]
    Html { offset: usize, message: String },
    #[error("unbalanced `{delimiter}` delimiter at character {position}")]
    UnbalancedDelimiter { delimiter: String, position: usize },
    #[error("invalid heading level {0} (expected 1..=6)")]
    HeadingLevel(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanKind {
    Plain,
    Bold,
    Italic,
    InlineMath,
}

/// A run of inline text with a single formatting kind.
///
/// For [`SpanKind::InlineMath`] the text is the LaTeX body without delimiters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InlineSpan {
    pub kind: SpanKind,
    pub text: String,
}

impl InlineSpan {
    pub fn new(kind: SpanKind, text: impl Into<String>) -> Self {
        Self {
            kind,
            text: text.into(),
        }
    }

    pub fn plain(text: impl Into<String>) -> Self {
        Self::new(SpanKind::Plain, text)
    }

    pub fn bold(text: impl Into<String>) -> Self {
        Self::new(SpanKind::Bold, text)
    }

    pub fn italic(text: impl Into<String>) -> Self {
        Self::new(SpanKind::Italic, text)
    }

    pub fn math(text: impl Into<String>) -> Self {
        Self::new(SpanKind::InlineMath, text)
    }
}

/// One block of a [`MarkupDocument`].
///
/// The supported subset that round-trips through Markdown exactly:
/// span text contains no line breaks, adjacent spans differ in kind and are
/// non-empty (see [`Block::normalized`]), inline math never contains the
/// closing `\)`, display math never contains `\]`, verbatim bodies never
/// contain a line equal to their `\end{...}` command, and a paragraph never
/// starts with `Figure: `.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Block {
    Heading { level: u8, spans: Vec<InlineSpan> },
    Paragraph { spans: Vec<InlineSpan> },
    DisplayMath { latex: String },
    Table { latex: String },
    Algorithm { latex: String },
    FigureCaption { spans: Vec<InlineSpan> },
}

impl Block {
    pub fn heading(level: u8, spans: Vec<InlineSpan>) -> Result<Self, MarkupError> {
        if !(1..=6).contains(&level) {
            return Err(MarkupError::HeadingLevel(level));
        }
        Ok(Block::Heading { level, spans }.normalized())
    }

    pub fn paragraph(spans: Vec<InlineSpan>) -> Self {
        Block::Paragraph { spans }.normalized()
    }

    pub fn caption(spans: Vec<InlineSpan>) -> Self {
        Block::FigureCaption { spans }.normalized()
    }

    pub fn spans(&self) -> Option<&[InlineSpan]> {
        match self {
            Block::Heading { spans, .. } | Block::Paragraph { spans } | Block::FigureCaption { spans } => Some(spans),
            _ => None,
        }
    }

    /// Floats are blocks whose position in the PDF may differ from the source.
    pub fn is_float(&self) -> bool {
        matches!(self, Block::Table { .. } | Block::FigureCaption { .. })
    }

    /// Visible text of the block: span texts or the raw LaTeX body.
    pub fn text(&self) -> String {
        match self {
            Block::DisplayMath { latex } | Block::Table { latex } | Block::Algorithm { latex } => latex.clone(),
            _ => self
                .spans()
                .unwrap_or_default()
                .iter()
                .map(|s| s.text.as_str())
                .collect(),
        }
    }

    /// Drops empty spans and merges neighbours of the same kind.
    pub fn normalized(self) -> Self {
        match self {
            Block::Heading { level, spans } => Block::Heading {
                level,
                spans: normalize_spans(spans),
            },
            Block::Paragraph { spans } => Block::Paragraph {
                spans: normalize_spans(spans),
            },
            Block::FigureCaption { spans } => Block::FigureCaption {
                spans: normalize_spans(spans),
            },
            other => other,
        }
    }
}

pub(crate) fn normalize_spans(spans: Vec<InlineSpan>) -> Vec<InlineSpan> {
    let mut out: Vec<InlineSpan> = Vec::with_capacity(spans.len());
    for span in spans {
        if span.text.is_empty() {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.kind == span.kind => last.text.push_str(&span.text),
            _ => out.push(span),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MarkupDocument {
    pub source_id: String,
    pub blocks: Vec<Block>,
}

impl MarkupDocument {
    pub fn new(source_id: impl Into<String>, blocks: Vec<Block>) -> Self {
        Self {
            source_id: source_id.into(),
            blocks,
        }
    }
}
