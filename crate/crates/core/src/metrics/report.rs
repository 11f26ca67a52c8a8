use super::{normalize_whitespace, BleuStats, EditStats, MeteorStats, PrfStats};
use crate::markup::{split_modalities, Modality, ModalitySlices};
use serde::{Deserialize, Serialize};

const BLEU_ORDER: usize = 4;

/// Scores for one text pair or one aggregate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricValues {
    pub edit_distance: f64,
    pub bleu: f64,
    #[serde(rename = "meteor (exact+stem)")]
    pub meteor: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl MetricValues {
    fn add(&mut self, other: &Self) {
        self.edit_distance += other.edit_distance;
        self.bleu += other.bleu;
        self.meteor += other.meteor;
        self.precision += other.precision;
        self.recall += other.recall;
        self.f1 += other.f1;
    }

    fn scaled(&self, factor: f64) -> Self {
        Self {
            edit_distance: self.edit_distance * factor,
            bleu: self.bleu * factor,
            meteor: self.meteor * factor,
            precision: self.precision * factor,
            recall: self.recall * factor,
            f1: self.f1 * factor,
        }
    }
}

/// Additive statistics behind every metric of one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairStats {
    pub edit: EditStats,
    pub bleu: BleuStats,
    pub meteor: MeteorStats,
    pub prf: PrfStats,
}

impl Default for PairStats {
    fn default() -> Self {
        Self {
            edit: EditStats::default(),
            bleu: BleuStats::empty(BLEU_ORDER),
            meteor: MeteorStats::default(),
            prf: PrfStats::default(),
        }
    }
}

impl PairStats {
    pub fn compute(pred: &str, reference: &str) -> Self {
        let pred = normalize_whitespace(pred);
        let reference = normalize_whitespace(reference);
        Self {
            edit: EditStats::compute(&pred, &reference),
            bleu: BleuStats::compute(&pred, &reference, BLEU_ORDER),
            meteor: MeteorStats::compute(&pred, &reference),
            prf: PrfStats::compute(&pred, &reference),
        }
    }

    pub fn merge(&mut self, other: &Self) {
        self.edit.merge(&other.edit);
        self.bleu.merge(&other.bleu);
        self.meteor.merge(&other.meteor);
        self.prf.merge(&other.prf);
    }

    pub fn values(&self) -> MetricValues {
        let (precision, recall, f1) = self.prf.score();
        MetricValues {
            edit_distance: self.edit.score(),
            bleu: self.bleu.score(),
            meteor: self.meteor.score(),
            precision,
            recall,
            f1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairScore {
    pub values: MetricValues,
    pub stats: PairStats,
}

pub fn score_pair(pred: &str, reference: &str) -> PairScore {
    let stats = PairStats::compute(pred, reference);
    PairScore {
        values: stats.values(),
        stats,
    }
}

/// Per-sample scores. A modality is `None` when both sides have no text in it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleScores {
    pub all: PairScore,
    pub plain: Option<PairScore>,
    pub math: Option<PairScore>,
    pub tables: Option<PairScore>,
    /// Set when either text could not be split and was treated as plain text.
    pub parse_fallback: bool,
}

impl SampleScores {
    pub fn report(&self) -> ModalityReport {
        ModalityReport {
            all: self.all.values,
            plain: self.plain.as_ref().map(|s| s.values),
            math: self.math.as_ref().map(|s| s.values),
            tables: self.tables.as_ref().map(|s| s.values),
            parse_fallback: self.parse_fallback,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModalityReport {
    pub all: MetricValues,
    pub plain: Option<MetricValues>,
    pub math: Option<MetricValues>,
    pub tables: Option<MetricValues>,
    pub parse_fallback: bool,
}

/// Scores the unsplit texts and each modality slice pair.
pub fn score_sample(pred: &str, reference: &str) -> SampleScores {
    let mut fallback = false;
    let mut split = |text: &str| {
        split_modalities(text).unwrap_or_else(|_| {
            fallback = true;
            ModalitySlices::all_plain(text)
        })
    };
    let p = split(pred);
    let r = split(reference);
    let modality = |m: Modality| {
        let (ps, rs) = (p.joined(m), r.joined(m));
        if ps.trim().is_empty() && rs.trim().is_empty() {
            None
        } else {
            Some(score_pair(&ps, &rs))
        }
    };
    SampleScores {
        all: score_pair(pred, reference),
        plain: modality(Modality::Plain),
        math: modality(Modality::Math),
        tables: modality(Modality::Tables),
        parse_fallback: fallback,
    }
}

pub fn evaluate_sample(pred: &str, reference: &str) -> ModalityReport {
    score_sample(pred, reference).report()
}

#[derive(Debug, Clone, Default, PartialEq)]
struct ModalityAccumulator {
    count: usize,
    value_sum: MetricValues,
    stats: PairStats,
}

impl ModalityAccumulator {
    fn add(&mut self, score: &PairScore) {
        self.count += 1;
        self.value_sum.add(&score.values);
        self.stats.merge(&score.stats);
    }

    fn merge(&mut self, other: &Self) {
        self.count += other.count;
        self.value_sum.add(&other.value_sum);
        self.stats.merge(&other.stats);
    }

    fn mean(&self) -> Option<MetricValues> {
        (self.count > 0).then(|| self.value_sum.scaled(1.0 / self.count as f64))
    }

    fn corpus(&self) -> Option<MetricValues> {
        (self.count > 0).then(|| self.stats.values())
    }
}

/// Running totals over scored samples. Merging is associative; sums are taken in the order
/// samples are added.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvaluationAccumulator {
    samples: usize,
    fallbacks: usize,
    all: ModalityAccumulator,
    plain: ModalityAccumulator,
    math: ModalityAccumulator,
    tables: ModalityAccumulator,
}

impl EvaluationAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, sample: &SampleScores) {
        self.samples += 1;
        self.fallbacks += usize::from(sample.parse_fallback);
        self.all.add(&sample.all);
        for (acc, score) in [
            (&mut self.plain, &sample.plain),
            (&mut self.math, &sample.math),
            (&mut self.tables, &sample.tables),
        ] {
            if let Some(score) = score {
                acc.add(score);
            }
        }
    }

    pub fn merge(&mut self, other: &Self) {
        self.samples += other.samples;
        self.fallbacks += other.fallbacks;
        self.all.merge(&other.all);
        self.plain.merge(&other.plain);
        self.math.merge(&other.math);
        self.tables.merge(&other.tables);
    }

    pub fn finish(&self) -> AggregateReport {
        let table = |f: fn(&ModalityAccumulator) -> Option<MetricValues>| ModalityTable {
            all: f(&self.all),
            plain: f(&self.plain),
            math: f(&self.math),
            tables: f(&self.tables),
        };
        AggregateReport {
            samples: self.samples,
            parse_fallbacks: self.fallbacks,
            counts: ModalityCounts {
                all: self.all.count,
                plain: self.plain.count,
                math: self.math.count,
                tables: self.tables.count,
            },
            mean: table(ModalityAccumulator::mean),
            corpus: table(ModalityAccumulator::corpus),
        }
    }
}

/// Metric rows per modality; `None` when no sample contributed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModalityTable {
    pub all: Option<MetricValues>,
    pub plain: Option<MetricValues>,
    pub math: Option<MetricValues>,
    pub tables: Option<MetricValues>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModalityCounts {
    pub all: usize,
    pub plain: usize,
    pub math: usize,
    pub tables: usize,
}

/// Per-sample means and corpus-level scores from summed statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub samples: usize,
    pub parse_fallbacks: usize,
    pub counts: ModalityCounts,
    pub mean: ModalityTable,
    pub corpus: ModalityTable,
}
