//! One-vs-rest linear SVM trained with averaged stochastic subgradient descent.

use super::tfidf::{tokenize, SparseVector, TfIdfVectorizer};
use super::{AlignError, PageObservation};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SvmParams {
    pub lambda: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for SvmParams {
    fn default() -> Self {
        Self {
            lambda: 1e-4,
            epochs: 20,
            seed: 0,
        }
    }
}

/// Per-page linear scorers over TF-IDF features.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearPageClassifier {
    weights: Vec<Vec<f64>>,
    bias: Vec<f64>,
}

impl LinearPageClassifier {
    pub fn num_pages(&self) -> usize {
        self.weights.len()
    }

    pub fn scores(&self, x: &SparseVector) -> Vec<f64> {
        self.weights
            .iter()
            .zip(&self.bias)
            .map(|(w, b)| x.iter().map(|&(j, v)| w[j] * v).sum::<f64>() + b)
            .collect()
    }

    /// 1-based page with the highest score; ties go to the lower page.
    pub fn predict(&self, x: &SparseVector) -> u32 {
        let mut best = 0;
        let mut best_score = f64::NEG_INFINITY;
        for (k, s) in self.scores(x).into_iter().enumerate() {
            if s > best_score {
                best = k;
                best_score = s;
            }
        }
        best as u32 + 1
    }
}

/// Fits the vectorizer and the page classifier on PDF lines.
///
/// Each distinct token sequence is trained on once, labelled with the
/// lowest page it occurs on; lines without tokens are skipped.
pub fn fit_page_classifier(
    observations: &[PageObservation],
    params: &SvmParams,
) -> Result<(TfIdfVectorizer, LinearPageClassifier), AlignError> {
    let num_pages = observations
        .iter()
        .map(|o| o.page_index)
        .max()
        .ok_or(AlignError::NoObservations)?;
    if observations.iter().any(|o| o.page_index == 0) {
        return Err(AlignError::InvalidPage(0));
    }
    let mut per_page = vec![0usize; num_pages as usize];
    for o in observations {
        per_page[o.page_index as usize - 1] += 1;
    }
    if let Some(empty) = per_page.iter().position(|&c| c == 0) {
        return Err(AlignError::PageWithoutObservations(empty as u32 + 1));
    }

    let mut lowest: HashMap<String, u32> = HashMap::new();
    let keys: Vec<String> = observations.iter().map(|o| tokenize(&o.line_text).join(" ")).collect();
    for (o, key) in observations.iter().zip(&keys) {
        let e = lowest.entry(key.clone()).or_insert(o.page_index);
        *e = (*e).min(o.page_index);
    }
    let mut seen: HashSet<&str> = HashSet::new();
    let kept: Vec<&PageObservation> = observations
        .iter()
        .zip(&keys)
        .filter(|(o, key)| !key.is_empty() && lowest[*key] == o.page_index && seen.insert(key.as_str()))
        .map(|(o, _)| o)
        .collect();

    let texts: Vec<&str> = kept.iter().map(|o| o.line_text.as_str()).collect();
    let vectorizer = TfIdfVectorizer::fit(&texts)?;
    let rows: Vec<SparseVector> = texts.iter().map(|t| vectorizer.transform(t)).collect();
    let labels: Vec<u32> = kept.iter().map(|o| o.page_index).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut schedule = Vec::with_capacity(rows.len() * params.epochs);
    for _ in 0..params.epochs {
        order.shuffle(&mut rng);
        schedule.extend_from_slice(&order);
    }

    let dim = vectorizer.vocabulary_size();
    let mut weights = Vec::with_capacity(num_pages as usize);
    let mut bias = Vec::with_capacity(num_pages as usize);
    for page in 1..=num_pages {
        let (w, b) = train_binary(&rows, &labels, page, &schedule, dim, params.lambda);
        weights.push(w);
        bias.push(b);
    }
    Ok((vectorizer, LinearPageClassifier { weights, bias }))
}

/// Averaged SGD on the regularised hinge loss for `label == positive`.
///
/// The weight vector is kept as `scale * v` so the L2 shrink is O(1) per step,
/// and the running average uses `sum_k w_k = S_T v_T - sum_j delta_j S_{j-1}`
/// where `S_t` is the sum of scales up to step `t`.
fn train_binary(
    rows: &[SparseVector],
    labels: &[u32],
    positive: u32,
    schedule: &[usize],
    dim: usize,
    lambda: f64,
) -> (Vec<f64>, f64) {
    let t0 = 1.0 / lambda;
    let mut v = vec![0.0; dim];
    let mut correction = vec![0.0; dim];
    let mut scale = 1.0;
    let mut scale_sum = 0.0;
    let mut b = 0.0;
    let mut b_sum = 0.0;
    for (step, &idx) in schedule.iter().enumerate() {
        let eta = 1.0 / (lambda * (step as f64 + 1.0 + t0));
        let x = &rows[idx];
        let y = if labels[idx] == positive { 1.0 } else { -1.0 };
        let margin = y * (scale * x.iter().map(|&(j, xj)| v[j] * xj).sum::<f64>() + b);
        scale *= 1.0 - eta * lambda;
        if margin < 1.0 {
            for &(j, xj) in x {
                let delta = eta * y * xj / scale;
                v[j] += delta;
                correction[j] += delta * scale_sum;
            }
            b += eta * y;
        }
        scale_sum += scale;
        b_sum += b;
    }
    let steps = schedule.len().max(1) as f64;
    let w = v
        .iter()
        .zip(&correction)
        .map(|(vj, cj)| (scale_sum * vj - cj) / steps)
        .collect();
    (w, b_sum / steps)
}


/// Predicts a page for every paragraph; paragraphs without any known token
/// inherit the previous label (page 1 at the start).
pub fn predict_paragraph_pages<S: AsRef<str>>(
    vectorizer: &TfIdfVectorizer,
    classifier: &LinearPageClassifier,
    paragraphs: &[S],
) -> Vec<u32> {
    let mut prev = 1;
    paragraphs
        .iter()
        .map(|p| {
            let x = vectorizer.transform(p.as_ref());
            if !x.is_empty() {
                prev = classifier.predict(&x);
            }
            prev
        })
        .collect()
}

#[cfg(test)]
mod predict_tests {
    use super::*;

    #[test]
    fn carry_forward_for_unknown_paragraphs() {
        let data = vec![
            PageObservation {
                line_text: "first page words".into(),
                page_index: 1,
            },
            PageObservation {
                line_text: "second page text".into(),
                page_index: 2,
            },
            PageObservation {
                line_text: "third chapter lines".into(),
                page_index: 3,
            },
        ];
        let (v, c) = fit_page_classifier(&data, &SvmParams::default()).unwrap();
        let paras = ["", "third chapter", "", "zzz qqq", "third lines"];
        assert_eq!(predict_paragraph_pages(&v, &c, &paras), vec![1, 3, 3, 3, 3]);
    }
}
