use crate::summary::CorpusSummary;
use crate::{expand_inputs, item_seed, thread_pool, InputError, PipelineConfig, UsageError, CHUNK};
use anyhow::{Context, Result};
use docpair_core::augment::{apply_pipeline, AugmentConfig, GrayImage};
use std::path::{Path, PathBuf};

fn augment_one(input: &Path, output: &Path, config: &AugmentConfig) -> Result<()> {
    let img = GrayImage::load_png(input).map_err(|e| InputError(e.to_string()))?;
    let out = apply_pipeline(&img, config).map_err(|e| UsageError(e.to_string()))?;
    out.save_png(output)
        .with_context(|| format!("cannot write {}", output.display()))
}

/// Augments every PNG in `inputs` and writes the result under the same file name in `out_dir`.
/// Image `i` uses the derived seed `seed ^ i`.
pub fn run_augment(
    inputs: &[PathBuf],
    out_dir: &Path,
    config: &PipelineConfig,
    jobs: Option<usize>,
) -> Result<CorpusSummary> {
    if !out_dir.is_dir() {
        return Err(UsageError(format!("output directory {} does not exist", out_dir.display())).into());
    }
    let inputs = expand_inputs(inputs, "png")?;
    let pool = thread_pool(jobs)?;
    for (chunk_index, chunk) in inputs.chunks(CHUNK).enumerate() {
        let results: Vec<Result<()>> = pool.install(|| {
            use rayon::prelude::*;
            chunk
                .par_iter()
                .enumerate()
                .map(|(k, input)| {
                    let name = input
                        .file_name()
                        .ok_or_else(|| InputError(format!("{} is not a file", input.display())))?;
                    let cfg = AugmentConfig {
                        seed: item_seed(config.seed, chunk_index * CHUNK + k),
                        ..config.augment.clone()
                    };
                    augment_one(input, &out_dir.join(name), &cfg)
                })
                .collect()
        });
        results.into_iter().collect::<Result<Vec<()>>>()?;
    }
    Ok(CorpusSummary {
        images: Some(inputs.len()),
        ..CorpusSummary::default()
    })
}
