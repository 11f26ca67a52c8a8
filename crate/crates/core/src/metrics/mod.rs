//! Prediction-versus-reference scoring: normalized edit distance, BLEU, METEOR with exact and
//! stem matching, and token precision/recall/F1, overall and per modality.
//!
//! Every metric first trims the texts and collapses whitespace runs. Each metric reduces a
//! pair to additive statistics, so corpus scores come from summed statistics and per-sample
//! means come from summed values.

mod bleu;
mod meteor;
mod prf;
mod report;

pub use bleu::{bleu, bleu_n, BleuStats};
pub use meteor::{meteor, MeteorStats};
pub use prf::{token_prf, PrfStats};
pub use report::{
    evaluate_sample, score_pair, score_sample, AggregateReport, EvaluationAccumulator, MetricValues, ModalityReport,
    ModalityTable, PairScore, PairStats, SampleScores,
};

use crate::distance::levenshtein;
use serde::{Deserialize, Serialize};

/// Trims and collapses every whitespace run to a single space.
pub fn normalize_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

pub(crate) fn tokens(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}

/// Character-level Levenshtein distance and the longer length.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditStats {
    pub distance: usize,
    pub max_len: usize,
}

impl EditStats {
    pub fn compute(pred: &str, reference: &str) -> Self {
        let p: Vec<char> = normalize_whitespace(pred).chars().collect();
        let r: Vec<char> = normalize_whitespace(reference).chars().collect();
        Self {
            distance: levenshtein(&p, &r),
            max_len: p.len().max(r.len()),
        }
    }

    pub fn merge(&mut self, other: &Self) {
        self.distance += other.distance;
        self.max_len += other.max_len;
    }

    pub fn score(&self) -> f64 {
        if self.max_len == 0 {
            0.0
        } else {
            self.distance as f64 / self.max_len as f64
        }
    }
}

/// Levenshtein distance over Unicode scalars divided by the longer length; 0 for two empty texts.
pub fn normalized_edit_distance(pred: &str, reference: &str) -> f64 {
    EditStats::compute(pred, reference).score()
}
