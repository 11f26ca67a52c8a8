use crate::jsonl::read_lenient;
use crate::summary::CorpusSummary;
use crate::{thread_pool, CHUNK};
use anyhow::{Context, Result};
use docpair_core::metrics::{score_sample, EvaluationAccumulator, ModalityReport, SampleScores};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairLine {
    pred: String,
    #[serde(rename = "ref")]
    reference: String,
}

#[derive(Debug, Serialize)]
struct SampleRecord {
    line: usize,
    #[serde(flatten)]
    report: ModalityReport,
}

/// Scores every `{"pred", "ref"}` line of `input`. The aggregate report goes to `out` as
/// JSON; per-sample reports go to `samples_out` as JSONL when given.
pub fn run_evaluate(
    input: &Path,
    out: &Path,
    samples_out: Option<&Path>,
    jobs: Option<usize>,
) -> Result<CorpusSummary> {
    let (pairs, skipped) = read_lenient::<PairLine>(input)?;
    let pool = thread_pool(jobs)?;
    let mut samples = samples_out
        .map(|p| {
            File::create(p)
                .with_context(|| format!("cannot create {}", p.display()))
                .map(BufWriter::new)
        })
        .transpose()?;
    let mut acc = EvaluationAccumulator::new();
    for chunk in pairs.chunks(CHUNK) {
        let scores: Vec<SampleScores> = pool.install(|| {
            use rayon::prelude::*;
            chunk
                .par_iter()
                .map(|(_, p)| score_sample(&p.pred, &p.reference))
                .collect()
        });
        for ((line, _), s) in chunk.iter().zip(&scores) {
            acc.add(s);
            if let Some(w) = samples.as_mut() {
                serde_json::to_writer(
                    &mut *w,
                    &SampleRecord {
                        line: *line,
                        report: s.report(),
                    },
                )?;
                w.write_all(b"\n")?;
            }
        }
    }
    if let Some(mut w) = samples {
        w.flush()?;
    }
    let report = acc.finish();
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    std::fs::write(out, json).with_context(|| format!("cannot write {}", out.display()))?;
    Ok(CorpusSummary {
        metrics: Some(report),
        skipped_lines: Some(skipped),
        ..CorpusSummary::default()
    })
}
