use docpair_core::metrics::AggregateReport;
use serde::Serialize;

/// Corpus statistics printed to standard output by every subcommand. Sections that do not
/// apply to a subcommand are omitted.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CorpusSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub documents: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub documents_failed: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pages_total: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pages_accepted: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub acceptance_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub traces: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repeating: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repetition_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metrics: Option<AggregateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub images: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped_lines: Option<usize>,
}

/// `part / whole`, or 0 for an empty corpus.
pub fn rate(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        part as f64 / whole as f64
    }
}
