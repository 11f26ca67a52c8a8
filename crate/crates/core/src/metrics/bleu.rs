use super::tokens;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Clipped n-gram match counts, candidate n-gram totals and lengths for n = 1..=max_n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BleuStats {
    pub matches: Vec<usize>,
    pub totals: Vec<usize>,
    pub pred_len: usize,
    pub ref_len: usize,
}

impl BleuStats {
    pub fn empty(max_n: usize) -> Self {
        Self {
            matches: vec![0; max_n],
            totals: vec![0; max_n],
            pred_len: 0,
            ref_len: 0,
        }
    }

    pub fn compute(pred: &str, reference: &str, max_n: usize) -> Self {
        let p = tokens(pred);
        let r = tokens(reference);
        let mut stats = Self::empty(max_n);
        stats.pred_len = p.len();
        stats.ref_len = r.len();
        for n in 1..=max_n {
            let ref_counts = ngram_counts(&r, n);
            for (gram, count) in ngram_counts(&p, n) {
                stats.matches[n - 1] += count.min(ref_counts.get(&gram).copied().unwrap_or(0));
                stats.totals[n - 1] += count;
            }
        }
        stats
    }

    pub fn merge(&mut self, other: &Self) {
        assert_eq!(self.matches.len(), other.matches.len(), "mismatched n-gram orders");
        for n in 0..self.matches.len() {
            self.matches[n] += other.matches[n];
            self.totals[n] += other.totals[n];
        }
        self.pred_len += other.pred_len;
        self.ref_len += other.ref_len;
    }

    /// Geometric mean of the precisions times the brevity penalty, ×100. Unigram precision is
    /// raw; higher orders use add-one smoothing. An empty prediction scores 0 unless the
    /// reference is empty too, which scores 100.
    pub fn score(&self) -> f64 {
        if self.pred_len == 0 {
            return if self.ref_len == 0 { 100.0 } else { 0.0 };
        }
        if self.matches[0] == 0 {
            return 0.0;
        }
        let log_sum: f64 = (0..self.matches.len())
            .map(|n| {
                let (m, t) = (self.matches[n] as f64, self.totals[n] as f64);
                if n == 0 {
                    (m / t).ln()
                } else {
                    ((m + 1.0) / (t + 1.0)).ln()
                }
            })
            .sum();
        let c = self.pred_len as f64;
        let r = self.ref_len as f64;
        let bp = if c > r { 1.0 } else { (1.0 - r / c).exp() };
        100.0 * bp * (log_sum / self.matches.len() as f64).exp()
    }
}

fn ngram_counts<'a>(toks: &'a [&'a str], n: usize) -> HashMap<&'a [&'a str], usize> {
    let mut counts = HashMap::new();
    if toks.len() >= n {
        for gram in toks.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// Sentence BLEU with orders 1..=4.
pub fn bleu(pred: &str, reference: &str) -> f64 {
    bleu_n(pred, reference, 4)
}

pub fn bleu_n(pred: &str, reference: &str, max_n: usize) -> f64 {
    BleuStats::compute(pred, reference, max_n.max(1)).score()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_is_perfect() {
        assert!((bleu("a b c d e", "a b c d e") - 100.0).abs() < 1e-9);
        assert!((bleu("x", "x") - 100.0).abs() < 1e-9);
    }

    #[test]
    fn shorter_prediction() {
        let expected = 100.0 * (1.0f64 - 4.0 / 3.0).exp();
        assert!((bleu("the cat sat", "the cat sat down") - expected).abs() < 1e-9);
    }

    #[test]
    fn zero_cases() {
        assert_eq!(bleu("x y", "a b"), 0.0);
        assert_eq!(bleu("", "a b"), 0.0);
        assert_eq!(bleu("", " "), 100.0);
    }

    #[test]
    fn clipping() {
        let s = BleuStats::compute("the the the", "the cat", 2);
        assert_eq!(s.matches, vec![1, 0]);
        assert_eq!(s.totals, vec![3, 2]);
    }
}
