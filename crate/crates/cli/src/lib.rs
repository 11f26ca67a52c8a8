//! Corpus-level drivers behind the `docpair` binary.

pub mod augment;
pub mod config;
pub mod convert;
pub mod detect;
pub mod evaluate;
pub mod jsonl;
pub mod pair;
pub mod summary;

pub use config::PipelineConfig;
pub use detect::run_detect;
pub use evaluate::run_evaluate;
pub use pair::run_pair;
pub use summary::CorpusSummary;

use std::fmt;

/// Invalid configuration or command-line usage (exit code 1).
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Input that cannot be read or does not match its declared format (exit code 2).
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Process exit code for a failed run.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.chain().any(|e| e.is::<UsageError>()) {
        EXIT_USAGE
    } else {
        EXIT_INPUT
    }
}

/// Seed of the work item at `index`; independent of scheduling.
pub fn item_seed(seed: u64, index: usize) -> u64 {
    seed ^ index as u64
}

/// Work items handed to the pool at a time; results are written between chunks.
pub const CHUNK: usize = 64;

/// Thread pool with `jobs` workers, or one per logical CPU when `jobs` is `None`.
pub fn thread_pool(jobs: Option<usize>) -> anyhow::Result<rayon::ThreadPool> {
    if jobs == Some(0) {
        return Err(UsageError("--jobs must be at least 1".into()).into());
    }
    Ok(rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build()?)
}

/// Replaces every directory in `paths` by its files with extension `ext`, sorted by name.
pub fn expand_inputs(paths: &[std::path::PathBuf], ext: &str) -> anyhow::Result<Vec<std::path::PathBuf>> {
    let mut out = Vec::new();
    for path in paths {
        if path.is_dir() {
            let entries =
                std::fs::read_dir(path).map_err(|e| InputError(format!("cannot list {}: {e}", path.display())))?;
            let mut found = Vec::new();
            for entry in entries {
                let p = entry
                    .map_err(|e| InputError(format!("cannot list {}: {e}", path.display())))?
                    .path();
                if p.is_file() && p.extension().is_some_and(|e| e.eq_ignore_ascii_case(ext)) {
                    found.push(p);
                }
            }
            found.sort();
            out.extend(found);
        } else {
            out.push(path.clone());
        }
    }
    Ok(out)
}
