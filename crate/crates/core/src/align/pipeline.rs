use super::floats::{assign_float_pages, remove_floats, FloatRecord};
use super::fuzzy::{refine_break_chars, FuzzyParams};
use super::preprocess::clean_pdf_pages;
use super::split::split_document;
use super::svm::{fit_page_classifier, predict_paragraph_pages, SvmParams};
use super::{AlignError, PageObservation, PdfPage};
use crate::markup::{serialize_block, MarkupDocument};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AlignConfig {
    pub fuzzy_window: usize,
    pub max_distance_ratio: f64,
    /// Length of the previous-page tail and next-page head fragments.
    pub fragment_chars: usize,
    pub accept_threshold: f64,
    pub float_max_distance_ratio: f64,
    pub header_page_fraction: f64,
    pub svm_lambda: f64,
    pub svm_epochs: usize,
}

impl Default for AlignConfig {
    fn default() -> Self {
        Self {
            fuzzy_window: 2000,
            max_distance_ratio: 0.3,
            fragment_chars: 128,
            accept_threshold: 0.9,
            float_max_distance_ratio: 0.3,
            header_page_fraction: 0.5,
            svm_lambda: 1e-4,
            svm_epochs: 20,
        }
    }
}

impl AlignConfig {
    pub fn validate(&self) -> Result<(), AlignError> {
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(AlignError::InvalidConfig(format!("{name} must be in [0, 1], got {v}")))
            }
        };
        unit("max_distance_ratio", self.max_distance_ratio)?;
        unit("accept_threshold", self.accept_threshold)?;
        unit("float_max_distance_ratio", self.float_max_distance_ratio)?;
        unit("header_page_fraction", self.header_page_fraction)?;
        if self.fuzzy_window == 0 || self.fragment_chars == 0 || self.svm_epochs == 0 {
            return Err(AlignError::InvalidConfig(
                "fuzzy_window, fragment_chars and svm_epochs must be positive".into(),
            ));
        }
        if !(self.svm_lambda > 0.0 && self.svm_lambda.is_finite()) {
            return Err(AlignError::InvalidConfig(format!(
                "svm_lambda must be positive, got {}",
                self.svm_lambda
            )));
        }
        Ok(())
    }

    pub fn fuzzy(&self) -> FuzzyParams {
        FuzzyParams {
            window: self.fuzzy_window,
            max_distance_ratio: self.max_distance_ratio,
        }
    }
}

/// Break positions and their scores for one document.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SplitSolution {
    /// Paragraph index starting each page after the first.
    pub breaks: Vec<usize>,
    /// Refined character positions of the breaks in the source text.
    pub cuts: Vec<usize>,
    /// Refinement score of each break.
    pub scores: Vec<f64>,
    pub page_scores: Vec<f64>,
    pub accepted: Vec<bool>,
}

/// Fills page scores and acceptance flags: a page scores the mean of its
/// two boundary scores, where the document start and end count as 1.
pub fn score_and_accept(mut solution: SplitSolution, threshold: f64) -> SplitSolution {
    let n_pages = solution.scores.len() + 1;
    solution.page_scores = (0..n_pages)
        .map(|k| {
            let left = if k == 0 { 1.0 } else { solution.scores[k - 1] };
            let right = solution.scores.get(k).copied().unwrap_or(1.0);
            (left + right) / 2.0
        })
        .collect();
    solution.accepted = solution.page_scores.iter().map(|&s| s >= threshold).collect();
    solution
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedPage {
    pub page: u32,
    pub markdown: String,
    pub score: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlignedDocument {
    pub pages: Vec<PairedPage>,
    pub solution: SplitSolution,
}

fn last_chars(s: &str, n: usize) -> String {
    let count = s.chars().count();
    s.chars().skip(count.saturating_sub(n)).collect()
}

fn first_chars(s: &str, n: usize) -> String {
    s.chars().take(n).collect()
}

/// Splits `doc` into the pages of `pdf` and reinserts its floats.
pub fn align_document(
    doc: &MarkupDocument,
    pdf: &[PdfPage],
    records: &[FloatRecord],
    config: &AlignConfig,
    seed: u64,
) -> Result<AlignedDocument, AlignError> {
    config.validate()?;
    let mut pdf = pdf.to_vec();
    pdf.sort_by_key(|p| p.page);
    if let Some(bad) = pdf.iter().find(|p| p.page == 0) {
        return Err(AlignError::InvalidPage(bad.page));
    }
    let num_pages = pdf.last().map(|p| p.page as usize).ok_or(AlignError::NoObservations)?;
    let cleaned = clean_pdf_pages(&pdf, config.header_page_fraction);

    let (float_free, removed) = remove_floats(doc);
    let paragraphs: Vec<String> = float_free.blocks.iter().map(serialize_block).collect();
    if paragraphs.len() < num_pages {
        return Err(AlignError::TooManyPages {
            pages: num_pages,
            paragraphs: paragraphs.len(),
        });
    }

    let breaks = if num_pages > 1 {
        let observations: Vec<PageObservation> = cleaned
            .iter()
            .flat_map(|p| {
                p.lines.iter().map(move |l| PageObservation {
                    line_text: l.clone(),
                    page_index: p.page,
                })
            })
            .collect();
        let params = SvmParams {
            lambda: config.svm_lambda,
            epochs: config.svm_epochs,
            seed,
        };
        let (vectorizer, classifier) = fit_page_classifier(&observations, &params)?;
        let predictions = predict_paragraph_pages(&vectorizer, &classifier, &paragraphs);
        split_document(&predictions, num_pages)?
    } else {
        Vec::new()
    };

    let source = paragraphs.join("\n\n");
    let chars: Vec<char> = source.chars().collect();
    let mut offsets = Vec::with_capacity(paragraphs.len());
    let mut acc = 0;
    for p in &paragraphs {
        offsets.push(acc);
        acc += p.chars().count() + 2;
    }

    let mut page_text = vec![String::new(); num_pages];
    for p in &cleaned {
        page_text[p.page as usize - 1] = p.lines.join(" ");
    }

    let fuzzy = config.fuzzy();
    let mut cuts = Vec::with_capacity(breaks.len());
    let mut scores = Vec::with_capacity(breaks.len());
    let mut prev_cut = 0;
    for (i, &b) in breaks.iter().enumerate() {
        let tail = last_chars(&page_text[i], config.fragment_chars);
        let head = first_chars(&page_text[i + 1], config.fragment_chars);
        let r = refine_break_chars(&chars, offsets[b], &tail, &head, &fuzzy);
        let cut = r.position.max(prev_cut).min(chars.len());
        cuts.push(cut);
        scores.push(r.score);
        prev_cut = cut;
    }
    let solution = score_and_accept(
        SplitSolution {
            breaks: breaks.clone(),
            cuts: cuts.clone(),
            scores,
            ..SplitSolution::default()
        },
        config.accept_threshold,
    );

    let mut markdown: Vec<String> = (0..num_pages)
        .map(|k| {
            let start = if k == 0 { 0 } else { cuts[k - 1] };
            let end = if k + 1 == num_pages { chars.len() } else { cuts[k] };
            chars[start..end].iter().collect::<String>().trim().to_string()
        })
        .collect();

    // a float before paragraph k falls on the page holding paragraph k
    let fallback: Vec<usize> = removed
        .iter()
        .map(|(orig, _)| {
            let floats_before = removed.iter().filter(|(o, _)| o < orig).count();
            let para = orig - floats_before;
            1 + breaks.iter().filter(|&&b| b <= para).count()
        })
        .collect();
    let assigned = assign_float_pages(&removed, &fallback, records, config.float_max_distance_ratio, num_pages);
    for ((_, block), page) in removed.iter().zip(assigned) {
        let md = &mut markdown[page - 1];
        if !md.is_empty() {
            md.push_str("\n\n");
        }
        md.push_str(&serialize_block(block));
    }

    let pages = markdown
        .into_iter()
        .enumerate()
        .map(|(k, markdown)| PairedPage {
            page: k as u32 + 1,
            markdown,
            score: solution.page_scores[k],
            accepted: solution.accepted[k],
        })
        .collect();
    Ok(AlignedDocument { pages, solution })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acceptance_rule() {
        let s = score_and_accept(
            SplitSolution {
                scores: vec![1.0, 0.75],
                ..Default::default()
            },
            0.9,
        );
        assert_eq!(s.page_scores, vec![1.0, 0.875, 0.875]);
        assert_eq!(s.accepted, vec![true, false, false]);
    }

    #[test]
    fn single_page_is_accepted() {
        let s = score_and_accept(SplitSolution::default(), 0.9);
        assert_eq!(s.page_scores, vec![1.0]);
        assert_eq!(s.accepted, vec![true]);
    }

    #[test]
    fn config_validation() {
        assert!(AlignConfig::default().validate().is_ok());
        let bad = AlignConfig {
            max_distance_ratio: 1.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
