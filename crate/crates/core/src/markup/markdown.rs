//! Markdown-with-LaTeX serialization and its inverse.

use super::{Block, InlineSpan, MarkupDocument, MarkupError, SpanKind};

const CAPTION_PREFIX: &str = "Figure: ";

/// Characters escaped with a backslash inside plain, bold and italic text.
fn needs_escape(c: char) -> bool {
    matches!(c, '\\' | '*' | '_' | '$')
}

fn escape_text(text: &str, at_block_start: bool, out: &mut String) {
    for (i, c) in text.chars().enumerate() {
        if needs_escape(c) || (c == '#' && at_block_start && i == 0) {
            out.push('\\');
        }
        out.push(c);
    }
}

fn serialize_spans(spans: &[InlineSpan], out: &mut String) {
    for (i, span) in spans.iter().enumerate() {
        let start = i == 0;
        match span.kind {
            SpanKind::Plain => escape_text(&span.text, start, out),
            SpanKind::Bold => {
                out.push_str("**");
                escape_text(&span.text, false, out);
                out.push_str("**");
            }
            SpanKind::Italic => {
                out.push('_');
                escape_text(&span.text, false, out);
                out.push('_');
            }
            SpanKind::InlineMath => {
                out.push_str("\\(");
                out.push_str(&span.text);
                out.push_str("\\)");
            }
        }
    }
}

/// Serializes a single block without surrounding blank lines.
pub fn serialize_block(block: &Block) -> String {
    let mut out = String::new();
    match block {
        Block::Heading { level, spans } => {
            for _ in 0..*level {
                out.push('#');
            }
            out.push(' ');
            serialize_spans(spans, &mut out);
        }
        Block::Paragraph { spans } => serialize_spans(spans, &mut out),
        Block::FigureCaption { spans } => {
            out.push_str(CAPTION_PREFIX);
            serialize_spans(spans, &mut out);
        }
        Block::DisplayMath { latex } => {
            out.push_str("\\[\n");
            out.push_str(latex);
            out.push_str("\n\\]");
        }
        Block::Table { latex } => verbatim_env("table", latex, &mut out),
        Block::Algorithm { latex } => verbatim_env("algorithm", latex, &mut out),
    }
    out
}

fn verbatim_env(name: &str, body: &str, out: &mut String) {
    out.push_str("\\begin{");
    out.push_str(name);
    out.push_str("}\n");
    out.push_str(body);
    out.push_str("\n\\end{");
    out.push_str(name);
    out.push('}');
}

/// Serializes a document: blocks separated by one blank line, LF endings,
/// a trailing newline for non-empty documents.
pub fn serialize_markdown(doc: &MarkupDocument) -> String {
    let mut out = String::new();
    for (i, block) in doc.blocks.iter().enumerate() {
        if i > 0 {
            out.push_str("\n\n");
        }
        out.push_str(&serialize_block(block));
    }
    if !out.is_empty() {
        out.push('\n');
    }
    out
}

/// Parses the Markdown produced by [`serialize_markdown`].
///
/// Also accepts `$…$` / `$$…$$` math and single-line `\[ … \]`.
pub fn parse_markdown(text: &str, source_id: &str) -> Result<MarkupDocument, MarkupError> {
    let lines: Vec<&str> = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
    // character offset of each line start, for diagnostics
    let mut offsets = Vec::with_capacity(lines.len());
    let mut acc = 0usize;
    for l in &lines {
        offsets.push(acc);
        acc += l.chars().count() + 1;
    }

    let mut blocks = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i];
        if line.trim().is_empty() {
            i += 1;
            continue;
        }
        if let Some((close, ctor)) = fence_for(line) {
            let end =
                (i + 1..lines.len())
                    .find(|&j| lines[j] == close)
                    .ok_or_else(|| MarkupError::UnbalancedDelimiter {
                        delimiter: line.to_string(),
                        position: offsets[i],
                    })?;
            blocks.push(ctor(lines[i + 1..end].join("\n")));
            i = end + 1;
            continue;
        }
        if let Some(body) = single_line_display(line) {
            blocks.push(Block::DisplayMath { latex: body });
            i += 1;
            continue;
        }
        let start = i;
        while i < lines.len() && !lines[i].trim().is_empty() && (i == start || fence_for(lines[i]).is_none()) {
            i += 1;
        }
        let para = lines[start..i].join("\n");
        blocks.push(parse_text_block(&para, offsets[start])?);
    }
    Ok(MarkupDocument::new(source_id, blocks))
}

type BlockCtor = fn(String) -> Block;

fn fence_for(line: &str) -> Option<(&'static str, BlockCtor)> {
    match line {
        "\\[" => Some(("\\]", |latex| Block::DisplayMath { latex })),
        "$$" => Some(("$$", |latex| Block::DisplayMath { latex })),
        "\\begin{table}" => Some(("\\end{table}", |latex| Block::Table { latex })),
        "\\begin{algorithm}" => Some(("\\end{algorithm}", |latex| Block::Algorithm { latex })),
        _ => None,
    }
}

fn single_line_display(line: &str) -> Option<String> {
    let t = line.trim();
    let inner = t
        .strip_prefix("\\[")
        .and_then(|r| r.strip_suffix("\\]"))
        .or_else(|| t.strip_prefix("$$").and_then(|r| r.strip_suffix("$$")))?;
    Some(inner.trim().to_string())
}

fn parse_text_block(text: &str, offset: usize) -> Result<Block, MarkupError> {
    let hashes = text.chars().take_while(|&c| c == '#').count();
    if (1..=6).contains(&hashes) && text[hashes..].starts_with(' ') {
        let spans = parse_inline(&text[hashes + 1..], offset + hashes + 1)?;
        return Block::heading(hashes as u8, spans);
    }
    if let Some(rest) = text.strip_prefix(CAPTION_PREFIX) {
        let spans = parse_inline(rest, offset + CAPTION_PREFIX.len())?;
        return Ok(Block::caption(spans));
    }
    Ok(Block::paragraph(parse_inline(text, offset)?))
}

/// Index of the first `closer` in `chars[from..]`, skipping backslash pairs.
pub(crate) fn scan_latex_close(chars: &[char], from: usize, closer: &[char]) -> Option<usize> {
    let mut i = from;
    while i < chars.len() {
        if chars[i..].starts_with(closer) {
            return Some(i);
        }
        if chars[i] == '\\' {
            i += 2;
        } else {
            i += 1;
        }
    }
    None
}

/// Like [`scan_latex_close`] but only for escapes produced by the serializer.
fn scan_text_close(chars: &[char], from: usize, closer: &[char]) -> Option<usize> {
    let mut i = from;
    while i < chars.len() {
        if chars[i] == '\\' && i + 1 < chars.len() && (needs_escape(chars[i + 1]) || chars[i + 1] == '#') {
            i += 2;
            continue;
        }
        if chars[i..].starts_with(closer) {
            return Some(i);
        }
        i += 1;
    }
    None
}

fn unescape(chars: &[char]) -> String {
    let mut out = String::with_capacity(chars.len());
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == '\\' && i + 1 < chars.len() && (needs_escape(chars[i + 1]) || chars[i + 1] == '#') {
            out.push(chars[i + 1]);
            i += 2;
        } else {
            out.push(chars[i]);
            i += 1;
        }
    }
    out
}

fn parse_inline(text: &str, offset: usize) -> Result<Vec<InlineSpan>, MarkupError> {
    let chars: Vec<char> = text.chars().collect();
    let mut spans = Vec::new();
    let mut plain = String::new();
    let flush = |plain: &mut String, spans: &mut Vec<InlineSpan>| {
        if !plain.is_empty() {
            spans.push(InlineSpan::plain(std::mem::take(plain)));
        }
    };
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        match (c, next) {
            ('\\', Some('(')) => {
                let end = scan_latex_close(&chars, i + 2, &['\\', ')']).ok_or(MarkupError::UnbalancedDelimiter {
                    delimiter: "\\(".into(),
                    position: offset + i,
                })?;
                flush(&mut plain, &mut spans);
                spans.push(InlineSpan::math(chars[i + 2..end].iter().collect::<String>()));
                i = end + 2;
            }
            ('\\', Some(n)) if needs_escape(n) || n == '#' => {
                plain.push(n);
                i += 2;
            }
            ('$', _) => {
                let delim: &[char] = if next == Some('$') { &['$', '$'] } else { &['$'] };
                let body_start = i + delim.len();
                let end = scan_latex_close(&chars, body_start, delim).ok_or(MarkupError::UnbalancedDelimiter {
                    delimiter: delim.iter().collect(),
                    position: offset + i,
                })?;
                flush(&mut plain, &mut spans);
                spans.push(InlineSpan::math(chars[body_start..end].iter().collect::<String>()));
                i = end + delim.len();
            }
            ('*', Some('*')) => match scan_text_close(&chars, i + 2, &['*', '*']) {
                Some(end) => {
                    flush(&mut plain, &mut spans);
                    spans.push(InlineSpan::bold(unescape(&chars[i + 2..end])));
                    i = end + 2;
                }
                None => {
                    plain.push_str("**");
                    i += 2;
                }
            },
            ('_', _) => match scan_text_close(&chars, i + 1, &['_']) {
                Some(end) => {
                    flush(&mut plain, &mut spans);
                    spans.push(InlineSpan::italic(unescape(&chars[i + 1..end])));
                    i = end + 1;
                }
                None => {
                    plain.push('_');
                    i += 1;
                }
            },
            _ => {
                plain.push(c);
                i += 1;
            }
        }
    }
    flush(&mut plain, &mut spans);
    Ok(super::normalize_spans(spans))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(blocks: Vec<Block>) -> MarkupDocument {
        MarkupDocument::new("t", blocks)
    }

    #[test]
    fn heading_levels() {
        let d = doc(vec![Block::heading(2, vec![InlineSpan::plain("Results")]).unwrap()]);
        assert_eq!(serialize_markdown(&d), "## Results\n");
    }

    #[test]
    fn empty_document() {
        assert_eq!(serialize_markdown(&MarkupDocument::default()), "");
        assert!(parse_markdown("", "x").unwrap().blocks.is_empty());
    }

    #[test]
    fn inline_forms() {
        let d = doc(vec![Block::paragraph(vec![
            InlineSpan::plain("mass "),
            InlineSpan::italic("m"),
            InlineSpan::plain(" is "),
            InlineSpan::bold("big"),
            InlineSpan::plain(": "),
            InlineSpan::math("E=mc^{2}"),
        ])]);
        let md = serialize_markdown(&d);
        assert_eq!(md, "mass _m_ is **big**: \\(E=mc^{2}\\)\n");
        assert_eq!(parse_markdown(&md, "t").unwrap(), d);
    }

    #[test]
    fn verbatim_blocks_on_own_lines() {
        let d = doc(vec![
            Block::DisplayMath {
                latex: "a^2+b^2=c^2".into(),
            },
            Block::Table {
                latex: "a & b \\\\\nc & d \\\\".into(),
            },
            Block::Algorithm { latex: "x <- 1".into() },
            Block::caption(vec![InlineSpan::plain("A plot.")]),
        ]);
        let md = serialize_markdown(&d);
        assert_eq!(
            md,
            "\\[\na^2+b^2=c^2\n\\]\n\n\\begin{table}\na & b \\\\\nc & d \\\\\n\\end{table}\n\n\\begin{algorithm}\nx <- 1\n\\end{algorithm}\n\nFigure: A plot.\n"
        );
        assert_eq!(parse_markdown(&md, "t").unwrap(), d);
    }

    #[test]
    fn special_characters_escaped() {
        let d = doc(vec![Block::paragraph(vec![
            InlineSpan::plain("#1 costs $5 * x_i \\ y"),
            InlineSpan::bold("a**b"),
        ])]);
        let md = serialize_markdown(&d);
        assert_eq!(parse_markdown(&md, "t").unwrap(), d);
    }

    #[test]
    fn dollar_math_accepted() {
        let d = parse_markdown("see $x_1$ and\n\n$$\ny\n$$\n", "t").unwrap();
        assert_eq!(
            d.blocks,
            vec![
                Block::paragraph(vec![
                    InlineSpan::plain("see "),
                    InlineSpan::math("x_1"),
                    InlineSpan::plain(" and")
                ]),
                Block::DisplayMath { latex: "y".into() },
            ]
        );
    }

    #[test]
    fn unclosed_math_is_error() {
        let err = parse_markdown("ok\n\nbad \\(x", "t").unwrap_err();
        assert_eq!(
            err,
            MarkupError::UnbalancedDelimiter {
                delimiter: "\\(".into(),
                position: 8
            }
        );
        assert!(parse_markdown("\\[\nx\n", "t").is_err());
    }

    #[test]
    fn unclosed_emphasis_is_literal() {
        let d = parse_markdown("snake_case and **open", "t").unwrap();
        assert_eq!(
            d.blocks,
            vec![Block::paragraph(vec![InlineSpan::plain("snake_case and **open")])]
        );
    }
}
