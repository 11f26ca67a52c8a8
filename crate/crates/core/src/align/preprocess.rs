use super::PdfPage;
use crate::markup::unicode_to_latex;
use std::collections::{HashMap, HashSet};

/// Page numbers and similar: no letters, at least one digit.
fn is_page_number(line: &str) -> bool {
    line.chars().any(|c| c.is_ascii_digit()) && !line.chars().any(char::is_alphabetic)
}

fn header_key(line: &str) -> String {
    line.trim()
        .chars()
        .map(|c| if c.is_ascii_digit() { '#' } else { c })
        .collect()
}

/// Drops page-number lines and running headers/footers, then rewrites
/// Unicode symbols as LaTeX commands.
///
/// A header is a line that, with digits masked, appears on at least two
/// pages and on at least `header_fraction` of all pages.
pub fn clean_pdf_pages(pages: &[PdfPage], header_fraction: f64) -> Vec<PdfPage> {
    let n_pages = pages.len();
    let mut seen_on: HashMap<String, HashSet<u32>> = HashMap::new();
    for p in pages {
        for line in &p.lines {
            seen_on.entry(header_key(line)).or_default().insert(p.page);
        }
    }
    let is_header = |line: &str| {
        let count = seen_on.get(&header_key(line)).map_or(0, HashSet::len);
        n_pages >= 2 && count >= 2 && count as f64 >= header_fraction * n_pages as f64
    };
    pages
        .iter()
        .map(|p| PdfPage {
            page: p.page,
            lines: p
                .lines
                .iter()
                .map(|l| l.trim())
                .filter(|l| !l.is_empty() && !is_page_number(l) && !is_header(l))
                .map(unicode_to_latex)
                .collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn page(n: u32, lines: &[&str]) -> PdfPage {
        PdfPage {
            page: n,
            lines: lines.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn removes_numbers_and_running_headers() {
        let pages = vec![
            page(1, &["Journal of Things, p. 1", "Intro text about α", "1"]),
            page(2, &["Journal of Things, p. 2", "More text", "- 2 -"]),
            page(3, &["Journal of Things, p. 3", "Final words", "3"]),
        ];
        let cleaned = clean_pdf_pages(&pages, 0.5);
        assert_eq!(cleaned[0].lines, vec!["Intro text about \\alpha"]);
        assert_eq!(cleaned[1].lines, vec!["More text"]);
        assert_eq!(cleaned[2].lines, vec!["Final words"]);
    }

    #[test]
    fn single_page_keeps_everything_but_numbers() {
        let pages = vec![page(1, &["Title", "Body", "7"])];
        assert_eq!(clean_pdf_pages(&pages, 0.5)[0].lines, vec!["Title", "Body"]);
    }

    #[test]
    fn rare_repeats_are_kept() {
        let pages: Vec<PdfPage> = (1..=6)
            .map(|i| {
                if i <= 2 {
                    page(i, &["Proof.", "x"])
                } else {
                    page(i, &["y"])
                }
            })
            .collect();
        let cleaned = clean_pdf_pages(&pages, 0.5);
        assert_eq!(cleaned[0].lines, vec!["Proof.", "x"]);
    }
}
