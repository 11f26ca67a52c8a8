use crate::InputError;
use anyhow::Result;
use serde::de::DeserializeOwned;
use std::io::{BufRead, BufReader};
use std::path::Path;

/// One parsed line, or why it could not be parsed.
pub struct Line<T> {
    pub number: usize,
    pub value: std::result::Result<T, String>,
}

/// Reads a JSONL file; blank lines are skipped, other lines are parsed independently.
pub fn read_lines<T: DeserializeOwned>(path: &Path) -> Result<Vec<Line<T>>> {
    let file = std::fs::File::open(path).map_err(|e| InputError(format!("cannot open {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, raw) in BufReader::new(file).split(b'\n').enumerate() {
        let raw = raw.map_err(|e| InputError(format!("{}: read error: {e}", path.display())))?;
        let value = match std::str::from_utf8(&raw) {
            Ok(text) if text.trim().is_empty() => continue,
            Ok(text) => serde_json::from_str(text).map_err(|e| e.to_string()),
            Err(e) => Err(format!("invalid UTF-8: {e}")),
        };
        out.push(Line { number: i + 1, value });
    }
    Ok(out)
}

/// Reads a JSONL file where every non-blank line must parse.
pub fn read_strict<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    read_lines(path)?
        .into_iter()
        .map(|line| {
            line.value
                .map_err(|e| InputError(format!("{}:{}: {e}", path.display(), line.number)).into())
        })
        .collect()
}

/// Reads a JSONL file, dropping malformed lines with a warning. Returns the parsed values
/// with their line numbers and the number of skipped lines.
pub fn read_lenient<T: DeserializeOwned>(path: &Path) -> Result<(Vec<(usize, T)>, usize)> {
    let mut skipped = 0;
    let mut values = Vec::new();
    for line in read_lines(path)? {
        match line.value {
            Ok(v) => values.push((line.number, v)),
            Err(e) => {
                log::warn!("{}:{}: skipping malformed line: {e}", path.display(), line.number);
                skipped += 1;
            }
        }
    }
    Ok((values, skipped))
}
