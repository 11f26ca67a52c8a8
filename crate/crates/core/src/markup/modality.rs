//! Splitting serialized markup into plain text, math and tables.

use super::markdown::scan_latex_close;
use super::MarkupError;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Modality {
    Plain,
    Math,
    Tables,
}

/// The three modality texts of a markup string.
///
/// `plain`, `math` and `tables` are plain concatenations of their regions in
/// source order, so `plain + math + tables + delimiter_chars` equals the
/// input length in characters. The `*_parts` vectors keep the individual
/// regions for callers that must not fuse tokens across region boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModalitySlices {
    pub plain: String,
    pub math: String,
    pub tables: String,
    pub math_parts: Vec<String>,
    pub table_parts: Vec<String>,
    pub delimiter_chars: usize,
}

impl ModalitySlices {
    /// Whole text of a modality with regions joined by a single space.
    pub fn joined(&self, modality: Modality) -> String {
        match modality {
            Modality::Plain => self.plain.clone(),
            Modality::Math => self.math_parts.join(" "),
            Modality::Tables => self.table_parts.join(" "),
        }
    }

    /// Treats the whole input as plain text.
    pub fn all_plain(text: &str) -> Self {
        Self {
            plain: text.to_string(),
            ..Self::default()
        }
    }
}

struct Region {
    open: &'static str,
    close: &'static str,
    modality: Modality,
}

const REGIONS: &[Region] = &[
    Region {
        open: "\\begin{table}",
        close: "\\end{table}",
        modality: Modality::Tables,
    },
    Region {
        open: "\\begin{algorithm}",
        close: "\\end{algorithm}",
        modality: Modality::Tables,
    },
    Region {
        open: "\\(",
        close: "\\)",
        modality: Modality::Math,
    },
    Region {
        open: "\\[",
        close: "\\]",
        modality: Modality::Math,
    },
    Region {
        open: "$$",
        close: "$$",
        modality: Modality::Math,
    },
    Region {
        open: "$",
        close: "$",
        modality: Modality::Math,
    },
];

fn starts_with_str(chars: &[char], s: &str) -> bool {
    let mut it = chars.iter();
    s.chars().all(|c| it.next() == Some(&c))
}

/// Splits markup into modality slices.
///
/// Math regions are `\(…\)`, `\[…\]`, `$…$` and `$$…$$`; table regions are
/// `\begin{table}…\end{table}` (algorithm environments count as tables).
/// A backslash in plain text escapes the following character. An opener
/// without its closer, or a stray `\)` / `\]`, is an error.
pub fn split_modalities(markup: &str) -> Result<ModalitySlices, MarkupError> {
    let chars: Vec<char> = markup.chars().collect();
    let mut out = ModalitySlices::default();
    let mut i = 0;
    'outer: while i < chars.len() {
        let rest = &chars[i..];
        for region in REGIONS {
            if !starts_with_str(rest, region.open) {
                continue;
            }
            let open_len = region.open.chars().count();
            let close: Vec<char> = region.close.chars().collect();
            let end =
                scan_latex_close(&chars, i + open_len, &close).ok_or_else(|| MarkupError::UnbalancedDelimiter {
                    delimiter: region.open.to_string(),
                    position: i,
                })?;
            let body: String = chars[i + open_len..end].iter().collect();
            match region.modality {
                Modality::Math => {
                    out.math.push_str(&body);
                    out.math_parts.push(body);
                }
                _ => {
                    out.tables.push_str(&body);
                    out.table_parts.push(body);
                }
            }
            out.delimiter_chars += open_len + close.len();
            i = end + close.len();
            continue 'outer;
        }
        if chars[i] == '\\' {
            match chars.get(i + 1) {
                Some(')') | Some(']') => {
                    return Err(MarkupError::UnbalancedDelimiter {
                        delimiter: format!("\\{}", chars[i + 1]),
                        position: i,
                    })
                }
                Some(&n) => {
                    out.plain.push('\\');
                    out.plain.push(n);
                    i += 2;
                    continue;
                }
                None => {}
            }
        }
        out.plain.push(chars[i]);
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_inline_pair() {
        let s = split_modalities("a \\(x^{2}\\) b").unwrap();
        assert_eq!(s.plain, "a  b");
        assert_eq!(s.math, "x^{2}");
        assert_eq!(s.tables, "");
        assert_eq!(s.delimiter_chars, 4);
    }

    #[test]
    fn no_delimiters() {
        let s = split_modalities("just words here").unwrap();
        assert_eq!(s.plain, "just words here");
        assert!(s.math.is_empty() && s.tables.is_empty());
    }

    #[test]
    fn escaped_characters_stay_plain() {
        let s = split_modalities("price \\$5 and \\\\(not math)").unwrap();
        assert_eq!(s.plain, "price \\$5 and \\\\(not math)");
        assert!(s.math.is_empty());
    }

    #[test]
    fn math_inside_table_belongs_to_table() {
        let s = split_modalities("\\begin{table}\n\\(a\\) & b\n\\end{table}").unwrap();
        assert_eq!(s.tables, "\n\\(a\\) & b\n");
        assert!(s.math.is_empty());
    }

    #[test]
    fn unbalanced_reports_position() {
        assert_eq!(
            split_modalities("ab \\(x").unwrap_err(),
            MarkupError::UnbalancedDelimiter {
                delimiter: "\\(".into(),
                position: 3
            }
        );
        assert!(split_modalities("x \\) y").is_err());
        assert!(split_modalities("$a").is_err());
        assert!(split_modalities("\\begin{table} x").is_err());
    }

    #[test]
    fn dollar_forms() {
        let s = split_modalities("a $x$ b $$y$$").unwrap();
        assert_eq!(s.math_parts, vec!["x", "y"]);
        assert_eq!(s.joined(Modality::Math), "x y");
    }
}
