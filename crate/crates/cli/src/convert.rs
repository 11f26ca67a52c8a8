use crate::{expand_inputs, InputError, UsageError};
use anyhow::{Context, Result};
use docpair_core::markup::{parse_html_subset, serialize_markdown};
use std::io::Write;
use std::path::{Path, PathBuf};

/// Converts HTML documents to markup text. With `out_dir` each input becomes
/// `<stem>.mmd`; otherwise all documents are written to standard output in order.
pub fn run_convert(inputs: &[PathBuf], out_dir: Option<&Path>) -> Result<usize> {
    if let Some(dir) = out_dir {
        if !dir.is_dir() {
            return Err(UsageError(format!("output directory {} does not exist", dir.display())).into());
        }
    }
    let inputs = expand_inputs(inputs, "html")?;
    let stdout = std::io::stdout();
    for path in &inputs {
        let html =
            std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
        let stem = path
            .file_stem()
            .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        let doc = parse_html_subset(&html, &stem).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        let markdown = serialize_markdown(&doc);
        match out_dir {
            Some(dir) => {
                let target = dir.join(format!("{stem}.mmd"));
                std::fs::write(&target, markdown).with_context(|| format!("cannot write {}", target.display()))?;
            }
            None => stdout.lock().write_all(markdown.as_bytes())?,
        }
    }
    Ok(inputs.len())
}
