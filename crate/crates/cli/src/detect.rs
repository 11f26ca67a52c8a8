use crate::jsonl::read_lenient;
use crate::summary::{rate, CorpusSummary};
use crate::{thread_pool, PipelineConfig, CHUNK};
use anyhow::{Context, Result};
use docpair_core::repetition::{detect_offline, LogitTrace, RepetitionVerdict};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceLine {
    logits: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct VerdictRecord {
    line: usize,
    repeating: bool,
    onset: Option<usize>,
}

/// Runs the offline repetition check on every `{"logits": [...]}` line of `input` and
/// writes one verdict per trace to `out`. Malformed or unusable traces are skipped.
pub fn run_detect(input: &Path, out: &Path, config: &PipelineConfig, jobs: Option<usize>) -> Result<CorpusSummary> {
    let (lines, mut skipped) = read_lenient::<TraceLine>(input)?;
    let pool = thread_pool(jobs)?;
    let file = File::create(out).with_context(|| format!("cannot create {}", out.display()))?;
    let mut writer = BufWriter::new(file);
    let (mut traces, mut repeating) = (0, 0);
    for chunk in lines.chunks(CHUNK) {
        let verdicts: Vec<Result<RepetitionVerdict, String>> = pool.install(|| {
            use rayon::prelude::*;
            chunk
                .par_iter()
                .map(|(_, t)| {
                    let trace = LogitTrace::new(t.logits.clone()).map_err(|e| e.to_string())?;
                    detect_offline(&trace, &config.detector).map_err(|e| e.to_string())
                })
                .collect()
        });
        for ((number, _), verdict) in chunk.iter().zip(verdicts) {
            match verdict {
                Ok(v) => {
                    traces += 1;
                    repeating += usize::from(v.repeating);
                    let record = VerdictRecord {
                        line: *number,
                        repeating: v.repeating,
                        onset: v.onset,
                    };
                    serde_json::to_writer(&mut writer, &record)?;
                    writer.write_all(b"\n")?;
                }
                Err(e) => {
                    log::warn!("{}:{number}: skipping trace: {e}", input.display());
                    skipped += 1;
                }
            }
        }
    }
    writer.flush()?;
    Ok(CorpusSummary {
        traces: Some(traces),
        repeating: Some(repeating),
        repetition_rate: Some(rate(repeating, traces)),
        skipped_lines: Some(skipped),
        ..CorpusSummary::default()
    })
}
