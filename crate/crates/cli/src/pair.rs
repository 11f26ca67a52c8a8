use crate::jsonl::read_strict;
use crate::summary::{rate, CorpusSummary};
use crate::{expand_inputs, item_seed, thread_pool, InputError, PipelineConfig, UsageError, CHUNK};
use anyhow::{Context, Result};
use docpair_core::align::{align_document, FloatRecord, PairedPage, PdfPage};
use docpair_core::markup::parse_html_subset;
use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

/// One line of the paired output.
#[derive(Debug, Serialize)]
struct PairRecord<'a> {
    doc: &'a str,
    page: u32,
    markdown: &'a str,
    score: f64,
    accepted: bool,
}

struct Job {
    stem: String,
    html: PathBuf,
    pdf_text: PathBuf,
    floats: Option<PathBuf>,
}

enum Outcome {
    Aligned(Vec<PairedPage>),
    Failed,
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned())
}

/// A per-document file inside `dir`, or `path` itself for a single document.
fn resolve(path: &Path, stem: &str, single: bool, flag: &str) -> Result<PathBuf> {
    if path.is_dir() {
        Ok(path.join(format!("{stem}.jsonl")))
    } else if single {
        Ok(path.to_path_buf())
    } else {
        Err(UsageError(format!("{flag} must be a directory when pairing several documents")).into())
    }
}

fn process(job: &Job, config: &PipelineConfig, seed: u64) -> Result<Outcome> {
    let html = std::fs::read_to_string(&job.html)
        .map_err(|e| InputError(format!("cannot read {}: {e}", job.html.display())))?;
    let doc = parse_html_subset(&html, &job.stem).map_err(|e| InputError(format!("{}: {e}", job.html.display())))?;
    let pdf: Vec<PdfPage> = read_strict(&job.pdf_text)?;
    let records: Vec<FloatRecord> = match &job.floats {
        Some(path) if path.exists() => read_strict(path)?,
        _ => Vec::new(),
    };
    match align_document(&doc, &pdf, &records, &config.align, seed) {
        Ok(aligned) => Ok(Outcome::Aligned(aligned.pages)),
        Err(e) => {
            log::warn!("{}: not aligned: {e}", job.html.display());
            Ok(Outcome::Failed)
        }
    }
}

/// Aligns every HTML document (directories are expanded to their `*.html` files) with its PDF text and writes paired pages as JSONL to `out`.
///
/// `pdf_text` and `floats` are either files (one document) or directories holding
/// `<stem>.jsonl` per document. Documents that cannot be aligned are counted and skipped.
pub fn run_pair(
    html_paths: &[PathBuf],
    pdf_text: &Path,
    floats: Option<&Path>,
    out: &Path,
    config: &PipelineConfig,
    jobs: Option<usize>,
) -> Result<CorpusSummary> {
    let html_paths = expand_inputs(html_paths, "html")?;
    let single = html_paths.len() == 1;
    let jobs_list = html_paths
        .iter()
        .map(|html| {
            let stem = stem(html);
            Ok(Job {
                pdf_text: resolve(pdf_text, &stem, single, "--pdf-text")?,
                floats: floats.map(|f| resolve(f, &stem, single, "--floats")).transpose()?,
                html: html.clone(),
                stem,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let pool = thread_pool(jobs)?;
    let file = File::create(out).with_context(|| format!("cannot create {}", out.display()))?;
    let mut writer = BufWriter::new(file);
    let (mut failed, mut pages_total, mut pages_accepted) = (0, 0, 0);
    for (chunk_index, chunk) in jobs_list.chunks(CHUNK).enumerate() {
        let outcomes: Vec<Result<Outcome>> = pool.install(|| {
            use rayon::prelude::*;
            chunk
                .par_iter()
                .enumerate()
                .map(|(k, job)| process(job, config, item_seed(config.seed, chunk_index * CHUNK + k)))
                .collect()
        });
        for (job, outcome) in chunk.iter().zip(outcomes) {
            match outcome? {
                Outcome::Failed => failed += 1,
                Outcome::Aligned(pages) => {
                    for p in &pages {
                        pages_total += 1;
                        pages_accepted += usize::from(p.accepted);
                        let record = PairRecord {
                            doc: &job.stem,
                            page: p.page,
                            markdown: &p.markdown,
                            score: p.score,
                            accepted: p.accepted,
                        };
                        serde_json::to_writer(&mut writer, &record)?;
                        writer.write_all(b"\n")?;
                    }
                }
            }
        }
    }
    writer.flush()?;
    Ok(CorpusSummary {
        documents: Some(jobs_list.len()),
        documents_failed: Some(failed),
        pages_total: Some(pages_total),
        pages_accepted: Some(pages_accepted),
        acceptance_rate: Some(rate(pages_accepted, pages_total)),
        ..CorpusSummary::default()
    })
}
