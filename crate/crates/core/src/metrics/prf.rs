use super::tokens;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Multiset token overlap and token counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrfStats {
    pub overlap: usize,
    pub pred_len: usize,
    pub ref_len: usize,
}

impl PrfStats {
    pub fn compute(pred: &str, reference: &str) -> Self {
        let p = tokens(pred);
        let r = tokens(reference);
        let mut ref_counts: HashMap<&str, usize> = HashMap::new();
        for t in &r {
            *ref_counts.entry(t).or_insert(0) += 1;
        }
        let mut overlap = 0;
        for t in &p {
            if let Some(c) = ref_counts.get_mut(t) {
                if *c > 0 {
                    *c -= 1;
                    overlap += 1;
                }
            }
        }
        Self {
            overlap,
            pred_len: p.len(),
            ref_len: r.len(),
        }
    }

    pub fn merge(&mut self, other: &Self) {
        self.overlap += other.overlap;
        self.pred_len += other.pred_len;
        self.ref_len += other.ref_len;
    }

    /// (precision, recall, f1) ×100. Two empty sides score 100; one empty side scores 0.
    pub fn score(&self) -> (f64, f64, f64) {
        match (self.pred_len, self.ref_len) {
            (0, 0) => (100.0, 100.0, 100.0),
            (0, _) | (_, 0) => (0.0, 0.0, 0.0),
            (p, r) => {
                let precision = 100.0 * self.overlap as f64 / p as f64;
                let recall = 100.0 * self.overlap as f64 / r as f64;
                (precision, recall, harmonic_mean(precision, recall))
            }
        }
    }
}

pub(crate) fn harmonic_mean(a: f64, b: f64) -> f64 {
    if a + b == 0.0 {
        0.0
    } else {
        2.0 * a * b / (a + b)
    }
}

pub fn token_prf(pred: &str, reference: &str) -> (f64, f64, f64) {
    PrfStats::compute(pred, reference).score()
}
