//! Unicode to LaTeX substitution for PDF text.

use std::collections::HashMap;
use std::sync::OnceLock;

const TABLE: &str = include_str!("../../data/unicode_latex.tsv");

/// Version of the bundled substitution table.
pub const SUBSTITUTION_TABLE_VERSION: u32 = 1;

fn table() -> &'static HashMap<char, &'static str> {
    static MAP: OnceLock<HashMap<char, &'static str>> = OnceLock::new();
    MAP.get_or_init(|| {
        TABLE
            .lines()
            .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
            .filter_map(|l| {
                let (cp, latex) = l.split_once('\t')?;
                let code = u32::from_str_radix(cp.strip_prefix("U+")?, 16).ok()?;
                Some((char::from_u32(code)?, latex))
            })
            .collect()
    })
}

/// Replaces every codepoint found in the substitution table by its LaTeX
/// command; everything else, including all ASCII, passes through.
///
/// A space is inserted after a control word (`\alpha`) when the next
/// character is an ASCII letter, so the command name does not absorb it.
pub fn unicode_to_latex(text: &str) -> String {
    let map = table();
    let mut out = String::with_capacity(text.len());
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match map.get(&c) {
            Some(latex) => {
                out.push_str(latex);
                if ends_with_control_word(latex) {
                    if let Some(n) = chars.peek() {
                        if n.is_ascii_alphabetic() {
                            out.push(' ');
                        }
                    }
                }
            }
            None => out.push(c),
        }
    }
    out
}

fn ends_with_control_word(latex: &str) -> bool {
    let trimmed = latex.trim_end_matches(|c: char| c.is_ascii_alphabetic());
    trimmed.len() < latex.len() && trimmed.ends_with('\\')
}
