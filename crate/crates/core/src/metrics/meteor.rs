use super::tokens;
use rust_stemmers::{Algorithm, Stemmer};
use serde::{Deserialize, Serialize};

/// Unigram alignment summary: matched tokens, contiguous chunks and token counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeteorStats {
    pub matches: usize,
    pub chunks: usize,
    pub pred_len: usize,
    pub ref_len: usize,
}

impl MeteorStats {
    /// Aligns lowercased tokens in an exact stage, then a stem stage over what is left.
    /// Within a stage each prediction token, left to right, takes the reference token that
    /// extends the current chunk when possible, otherwise the leftmost free candidate.
    pub fn compute(pred: &str, reference: &str) -> Self {
        let p: Vec<String> = tokens(pred).iter().map(|t| t.to_lowercase()).collect();
        let r: Vec<String> = tokens(reference).iter().map(|t| t.to_lowercase()).collect();
        let mut link: Vec<Option<usize>> = vec![None; p.len()];
        let mut used = vec![false; r.len()];
        align_stage(&p, &r, &mut link, &mut used, |t| t.to_string());
        let stemmer = Stemmer::create(Algorithm::English);
        align_stage(&p, &r, &mut link, &mut used, |t| stemmer.stem(t).into_owned());

        let pairs: Vec<(usize, usize)> = link.iter().enumerate().filter_map(|(i, j)| j.map(|j| (i, j))).collect();
        let chunks = if pairs.is_empty() {
            0
        } else {
            1 + pairs
                .windows(2)
                .filter(|w| !(w[1].0 == w[0].0 + 1 && w[1].1 == w[0].1 + 1))
                .count()
        };
        Self {
            matches: pairs.len(),
            chunks,
            pred_len: p.len(),
            ref_len: r.len(),
        }
    }

    pub fn merge(&mut self, other: &Self) {
        self.matches += other.matches;
        self.chunks += other.chunks;
        self.pred_len += other.pred_len;
        self.ref_len += other.ref_len;
    }

    /// Recall-weighted harmonic mean times the fragmentation discount, ×100.
    /// Two empty sides score 100; no matches score 0.
    pub fn score(&self) -> f64 {
        if self.pred_len == 0 && self.ref_len == 0 {
            return 100.0;
        }
        if self.matches == 0 {
            return 0.0;
        }
        let m = self.matches as f64;
        let precision = m / self.pred_len as f64;
        let recall = m / self.ref_len as f64;
        let fmean = 10.0 * precision * recall / (recall + 9.0 * precision);
        let penalty = 0.5 * (self.chunks as f64 / m).powi(3);
        100.0 * fmean * (1.0 - penalty)
    }
}

fn align_stage(
    p: &[String],
    r: &[String],
    link: &mut [Option<usize>],
    used: &mut [bool],
    key: impl Fn(&str) -> String,
) {
    let ref_keys: Vec<String> = r.iter().map(|t| key(t)).collect();
    for i in 0..p.len() {
        if link[i].is_some() {
            continue;
        }
        let k = key(&p[i]);
        let free = |j: usize| !used[j] && ref_keys[j] == k;
        let extend = i
            .checked_sub(1)
            .and_then(|prev| link[prev])
            .map(|j| j + 1)
            .filter(|&j| j < r.len() && free(j));
        if let Some(j) = extend.or_else(|| (0..r.len()).find(|&j| free(j))) {
            link[i] = Some(j);
            used[j] = true;
        }
    }
}

/// METEOR with exact and stem matching only.
pub fn meteor(pred: &str, reference: &str) -> f64 {
    MeteorStats::compute(pred, reference).score()
}
