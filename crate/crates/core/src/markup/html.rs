//! Reader for the subset of LaTeXML-style HTML that maps onto the markup model.
//!
//! Element mapping:
//!
//! | HTML                               | markup                              |
//! |------------------------------------|-------------------------------------|
//! | `h1`..`h6`                         | heading, level from the tag         |
//! | `p`                                | paragraph                           |
//! | `b`, `strong`                      | bold span                           |
//! | `i`, `em`                          | italic span                         |
//! | `math alttext=…`                   | inline math, or display math when `display="block"` |
//! | `table`                            | table (rows `a & b \\`)             |
//! | `figcaption`, `caption`            | figure caption                      |
//! | `figure` classed `ltx_*algorithm`  | algorithm                           |
//!
//! Anything else contributes its text. LaTeXML equation tables
//! (`class="ltx_equation…"`) are read as containers so their display math
//! becomes display-math blocks.

use super::{normalize_spans, Block, InlineSpan, MarkupDocument, MarkupError, SpanKind};

const VOID: &[&str] = &[
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "param", "source", "track", "wbr",
];

const BLOCK_CONTAINERS: &[&str] = &[
    "html",
    "body",
    "div",
    "section",
    "article",
    "figure",
    "ul",
    "ol",
    "li",
    "blockquote",
    "header",
    "footer",
    "main",
    "nav",
    "aside",
    "dl",
    "dt",
    "dd",
    "tr",
    "td",
    "th",
    "tbody",
    "thead",
    "tfoot",
    "pre",
    "address",
    "hr",
    "span_block",
];

/// Start tags that implicitly close an open `<p>`.
const CLOSES_P: &[&str] = &[
    "p",
    "h1",
    "h2",
    "h3",
    "h4",
    "h5",
    "h6",
    "table",
    "div",
    "section",
    "article",
    "figure",
    "ul",
    "ol",
    "blockquote",
    "pre",
    "header",
    "footer",
];

#[derive(Debug, Clone)]
struct Element {
    name: String,
    attrs: Vec<(String, String)>,
    children: Vec<Node>,
}

impl Element {
    fn attr(&self, key: &str) -> Option<&str> {
        self.attrs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn has_class_containing(&self, needle: &str) -> bool {
        self.attr("class")
            .map(|c| c.split_whitespace().any(|cls| cls.contains(needle)))
            .unwrap_or(false)
    }
}

#[derive(Debug, Clone)]
enum Node {
    Element(Element),
    Text(String),
}

fn html_error(offset: usize, message: impl Into<String>) -> MarkupError {
    MarkupError::Html {
        offset,
        message: message.into(),
    }
}

struct TreeBuilder {
    stack: Vec<Element>,
}

impl TreeBuilder {
    fn new() -> Self {
        Self {
            stack: vec![Element {
                name: "#root".into(),
                attrs: Vec::new(),
                children: Vec::new(),
            }],
        }
    }

    fn top(&mut self) -> &mut Element {
        self.stack.last_mut().expect("root is never popped")
    }

    fn pop(&mut self) {
        let el = self.stack.pop().expect("non-root element");
        self.top().children.push(Node::Element(el));
    }

    fn text(&mut self, text: String) {
        if !text.is_empty() {
            self.top().children.push(Node::Text(text));
        }
    }

    fn start(&mut self, name: String, attrs: Vec<(String, String)>, self_closing: bool) {
        if CLOSES_P.contains(&name.as_str()) && self.stack.last().is_some_and(|e| e.name == "p") {
            self.pop();
        }
        let same_closes = ["li", "tr", "td", "th", "dt", "dd"];
        if same_closes.contains(&name.as_str()) {
            let cell = matches!(name.as_str(), "td" | "th");
            if let Some(top) = self.stack.last() {
                let top_name = top.name.as_str();
                if top_name == name || (cell && matches!(top_name, "td" | "th")) {
                    self.pop();
                }
            }
        }
        let el = Element {
            name,
            attrs,
            children: Vec::new(),
        };
        if self_closing || VOID.contains(&el.name.as_str()) {
            self.top().children.push(Node::Element(el));
        } else {
            self.stack.push(el);
        }
    }

    fn end(&mut self, name: &str, offset: usize) -> Result<(), MarkupError> {
        if VOID.contains(&name) {
            return Ok(());
        }
        match self.stack.iter().rposition(|e| e.name == name) {
            Some(pos) if pos > 0 => {
                while self.stack.len() > pos {
                    self.pop();
                }
                Ok(())
            }
            _ => Err(html_error(offset, format!("end tag </{name}> has no open element"))),
        }
    }

    fn finish(mut self) -> Element {
        while self.stack.len() > 1 {
            self.pop();
        }
        self.stack.pop().expect("root")
    }
}

fn is_name_char(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'-' | b':' | b'_' | b'.')
}

fn parse_tree(html: &str) -> Result<Element, MarkupError> {
    let bytes = html.as_bytes();
    let mut builder = TreeBuilder::new();
    let mut i = 0;
    let mut text_start = 0;
    while i < bytes.len() {
        if bytes[i] != b'<' {
            i += 1;
            continue;
        }
        let next = bytes.get(i + 1).copied();
        let is_markup = match next {
            Some(b'!') | Some(b'?') | Some(b'/') => true,
            Some(b) => b.is_ascii_alphabetic(),
            None => false,
        };
        if !is_markup {
            i += 1;
            continue;
        }
        builder.text(decode_entities(&html[text_start..i]));
        let tag_start = i;
        if html[i..].starts_with("<!--") {
            let end = html[i + 4..]
                .find("-->")
                .ok_or_else(|| html_error(tag_start, "unterminated comment"))?;
            i = i + 4 + end + 3;
        } else if matches!(next, Some(b'!') | Some(b'?')) {
            let end = html[i..]
                .find('>')
                .ok_or_else(|| html_error(tag_start, "unterminated declaration"))?;
            i += end + 1;
        } else if next == Some(b'/') {
            let mut j = i + 2;
            while j < bytes.len() && is_name_char(bytes[j]) {
                j += 1;
            }
            let name = html[i + 2..j].to_ascii_lowercase();
            if name.is_empty() {
                return Err(html_error(tag_start, "empty end tag"));
            }
            let end = html[j..]
                .find('>')
                .ok_or_else(|| html_error(tag_start, "unterminated end tag"))?;
            builder.end(&name, tag_start)?;
            i = j + end + 1;
        } else {
            let (name, attrs, self_closing, after) = parse_start_tag(html, i)?;
            i = after;
            let raw = matches!(name.as_str(), "script" | "style");
            builder.start(name.clone(), attrs, self_closing);
            if raw && !self_closing {
                let close = format!("</{name}");
                let lower = html[i..].to_ascii_lowercase();
                let end = lower
                    .find(&close)
                    .ok_or_else(|| html_error(tag_start, format!("unterminated <{name}>")))?;
                i += end;
            }
        }
        text_start = i;
    }
    builder.text(decode_entities(&html[text_start..]));
    Ok(builder.finish())
}

type StartTag = (String, Vec<(String, String)>, bool, usize);

fn parse_start_tag(html: &str, start: usize) -> Result<StartTag, MarkupError> {
    let bytes = html.as_bytes();
    let eof = || html_error(start, "unterminated start tag");
    let mut j = start + 1;
    while j < bytes.len() && is_name_char(bytes[j]) {
        j += 1;
    }
    let name = html[start + 1..j].to_ascii_lowercase();
    let mut attrs = Vec::new();
    loop {
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        match bytes.get(j) {
            None => return Err(eof()),
            Some(b'>') => return Ok((name, attrs, false, j + 1)),
            Some(b'/') => {
                if bytes.get(j + 1) == Some(&b'>') {
                    return Ok((name, attrs, true, j + 2));
                }
                j += 1;
                continue;
            }
            _ => {}
        }
        let key_start = j;
        while j < bytes.len() && !bytes[j].is_ascii_whitespace() && !matches!(bytes[j], b'=' | b'>' | b'/') {
            j += 1;
        }
        let key = html[key_start..j].to_ascii_lowercase();
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        let mut value = String::new();
        if bytes.get(j) == Some(&b'=') {
            j += 1;
            while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                j += 1;
            }
            match bytes.get(j) {
                Some(&q) if q == b'"' || q == b'\'' => {
                    let close = html[j + 1..]
                        .find(q as char)
                        .ok_or_else(|| html_error(j, "unterminated attribute value"))?;
                    value = decode_entities(&html[j + 1..j + 1 + close]);
                    j = j + 1 + close + 1;
                }
                Some(_) => {
                    let v_start = j;
                    while j < bytes.len() && !bytes[j].is_ascii_whitespace() && bytes[j] != b'>' {
                        j += 1;
                    }
                    value = decode_entities(&html[v_start..j]);
                }
                None => return Err(eof()),
            }
        }
        if !key.is_empty() {
            attrs.push((key, value));
        }
    }
}

fn decode_entities(s: &str) -> String {
    if !s.contains('&') {
        return s.to_string();
    }
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(pos) = rest.find('&') {
        out.push_str(&rest[..pos]);
        rest = &rest[pos..];
        let decoded = rest.find(';').filter(|&semi| semi <= 10).and_then(|semi| {
            let ent = &rest[1..semi];
            let ch = match ent {
                "amp" => Some('&'),
                "lt" => Some('<'),
                "gt" => Some('>'),
                "quot" => Some('"'),
                "apos" => Some('\''),
                "nbsp" => Some('\u{a0}'),
                "ndash" => Some('–'),
                "mdash" => Some('—'),
                "hellip" => Some('…'),
                _ => {
                    let num = ent.strip_prefix('#')?;
                    let code = match num.strip_prefix(['x', 'X']) {
                        Some(hex) => u32::from_str_radix(hex, 16).ok()?,
                        None => num.parse().ok()?,
                    };
                    char::from_u32(code)
                }
            }?;
            Some((ch, semi))
        });
        match decoded {
            Some((ch, semi)) => {
                out.push(ch);
                rest = &rest[semi + 1..];
            }
            None => {
                out.push('&');
                rest = &rest[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

fn collapse_whitespace(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut in_ws = false;
    for c in s.chars() {
        if c.is_ascii_whitespace() {
            if !in_ws {
                out.push(' ');
            }
            in_ws = true;
        } else {
            out.push(c);
            in_ws = false;
        }
    }
    out
}

fn trim_spans(spans: Vec<InlineSpan>) -> Vec<InlineSpan> {
    let mut spans = normalize_spans(spans);
    // collapse spaces that meet across span boundaries
    for k in 1..spans.len() {
        if spans[k - 1].text.ends_with(' ') && spans[k].kind != SpanKind::InlineMath {
            let t = spans[k].text.trim_start_matches(' ').to_string();
            spans[k].text = t;
        }
    }
    if let Some(first) = spans.first_mut() {
        first.text = first.text.trim_start().to_string();
    }
    if let Some(last) = spans.last_mut() {
        last.text = last.text.trim_end().to_string();
    }
    normalize_spans(spans)
}

fn has_content(spans: &[InlineSpan]) -> bool {
    spans.iter().any(|s| !s.text.trim().is_empty())
}

#[derive(Default)]
struct Converter {
    blocks: Vec<Block>,
    inline: Vec<InlineSpan>,
}

impl Converter {
    fn flush_paragraph(&mut self) {
        let spans = trim_spans(std::mem::take(&mut self.inline));
        if has_content(&spans) {
            self.blocks.push(Block::Paragraph { spans });
        }
    }

    fn collect_inline(&mut self, children: &[Node], style: SpanKind) -> Vec<InlineSpan> {
        let saved = std::mem::take(&mut self.inline);
        for child in children {
            self.walk(child, style);
        }
        let spans = std::mem::replace(&mut self.inline, saved);
        trim_spans(spans)
    }

    fn walk(&mut self, node: &Node, style: SpanKind) {
        let el = match node {
            Node::Text(t) => {
                self.inline.push(InlineSpan::new(style, collapse_whitespace(t)));
                return;
            }
            Node::Element(el) => el,
        };
        let name = el.name.as_str();
        match name {
            "head" | "script" | "style" | "title" => {}
            "h1" | "h2" | "h3" | "h4" | "h5" | "h6" => {
                self.flush_paragraph();
                let level = name.as_bytes()[1] - b'0';
                let spans = self.collect_inline(&el.children, SpanKind::Plain);
                if has_content(&spans) {
                    self.blocks.push(Block::Heading { level, spans });
                }
            }
            "p" => {
                self.flush_paragraph();
                let spans = self.collect_inline(&el.children, SpanKind::Plain);
                if has_content(&spans) {
                    self.blocks.push(Block::Paragraph { spans });
                }
            }
            "b" | "strong" => self.walk_children(el, SpanKind::Bold),
            "i" | "em" => self.walk_children(el, SpanKind::Italic),
            "br" => self.inline.push(InlineSpan::new(style, " ")),
            "math" => match el.attr("alttext") {
                Some(tex) => {
                    let tex = collapse_whitespace(tex).trim().to_string();
                    if el.attr("display") == Some("block") {
                        self.flush_paragraph();
                        self.blocks.push(Block::DisplayMath { latex: tex });
                    } else {
                        self.inline.push(InlineSpan::math(tex));
                    }
                }
                None => self.walk_children(el, SpanKind::Plain),
            },
            "table" if !el.has_class_containing("ltx_equation") => {
                self.flush_paragraph();
                let (latex, captions) = table_latex(el);
                self.blocks.push(Block::Table { latex });
                for caption in captions {
                    let spans = self.collect_inline(&caption.children, SpanKind::Plain);
                    if has_content(&spans) {
                        self.blocks.push(Block::FigureCaption { spans });
                    }
                }
            }
            "figcaption" | "caption" => {
                self.flush_paragraph();
                let spans = self.collect_inline(&el.children, SpanKind::Plain);
                if has_content(&spans) {
                    self.blocks.push(Block::FigureCaption { spans });
                }
            }
            "figure" if el.has_class_containing("algorithm") => {
                self.flush_paragraph();
                let mut lines = Vec::new();
                let mut captions = Vec::new();
                for child in &el.children {
                    match child {
                        Node::Element(c) if c.name == "figcaption" => captions.push(c),
                        _ => text_lines(child, &mut lines),
                    }
                }
                let body: Vec<String> = lines
                    .iter()
                    .map(|l| collapse_whitespace(l).trim().to_string())
                    .filter(|l| !l.is_empty())
                    .collect();
                self.blocks.push(Block::Algorithm { latex: body.join("\n") });
                for caption in captions {
                    self.walk(&Node::Element(caption.clone()), SpanKind::Plain);
                }
            }
            _ if BLOCK_CONTAINERS.contains(&name) || name == "table" => {
                self.flush_paragraph();
                self.walk_children(el, style);
                self.flush_paragraph();
            }
            _ => self.walk_children(el, style),
        }
    }

    fn walk_children(&mut self, el: &Element, style: SpanKind) {
        for child in &el.children {
            self.walk(child, style);
        }
    }
}

/// Text content with a line break at every block-level element boundary.
fn text_lines(node: &Node, lines: &mut Vec<String>) {
    match node {
        Node::Text(t) => match lines.last_mut() {
            Some(last) => last.push_str(t),
            None => lines.push(t.clone()),
        },
        Node::Element(el) => {
            let block = BLOCK_CONTAINERS.contains(&el.name.as_str()) || el.name == "p" || el.name == "br";
            if block {
                lines.push(String::new());
            }
            if el.name == "math" {
                if let Some(tex) = el.attr("alttext") {
                    let l = lines.last_mut();
                    let s = format!("\\({}\\)", collapse_whitespace(tex).trim());
                    match l {
                        Some(last) => last.push_str(&s),
                        None => lines.push(s),
                    }
                    return;
                }
            }
            for c in &el.children {
                text_lines(c, lines);
            }
            if block {
                lines.push(String::new());
            }
        }
    }
}

fn collect_rows<'a>(el: &'a Element, rows: &mut Vec<&'a Element>, captions: &mut Vec<&'a Element>) {
    for child in &el.children {
        if let Node::Element(c) = child {
            match c.name.as_str() {
                "tr" => rows.push(c),
                "caption" => captions.push(c),
                _ => collect_rows(c, rows, captions),
            }
        }
    }
}

fn cell_text(cell: &Element) -> String {
    let mut conv = Converter::default();
    let spans = conv.collect_inline(&cell.children, SpanKind::Plain);
    let mut out = String::new();
    for s in spans {
        match s.kind {
            SpanKind::InlineMath => {
                out.push_str("\\(");
                out.push_str(&s.text);
                out.push_str("\\)");
            }
            _ => out.push_str(&s.text),
        }
    }
    out.trim().to_string()
}

fn table_latex(table: &Element) -> (String, Vec<&Element>) {
    let mut rows = Vec::new();
    let mut captions = Vec::new();
    collect_rows(table, &mut rows, &mut captions);
    if rows.is_empty() {
        let mut lines = Vec::new();
        for c in &table.children {
            if !matches!(c, Node::Element(e) if e.name == "caption") {
                text_lines(c, &mut lines);
            }
        }
        let text = collapse_whitespace(&lines.join(" ")).trim().to_string();
        return (text, captions);
    }
    let body = rows
        .iter()
        .map(|row| {
            let cells: Vec<String> = row
                .children
                .iter()
                .filter_map(|c| match c {
                    Node::Element(e) if e.name == "td" || e.name == "th" => Some(cell_text(e)),
                    _ => None,
                })
                .collect();
            format!("{} \\\\", cells.join(" & "))
        })
        .collect::<Vec<_>>()
        .join("\n");
    (body, captions)
}

/// Parses LaTeXML-style HTML into a [`MarkupDocument`].
///
/// Unsupported elements keep their text; attributes other than the math
/// `alttext` annotation are dropped. Unclosed elements are closed at the
/// end of input; a stray end tag, an unterminated tag, comment or attribute
/// is an error reporting the byte offset.
pub fn parse_html_subset(html: &str, source_id: &str) -> Result<MarkupDocument, MarkupError> {
    let root = parse_tree(html)?;
    let mut conv = Converter::default();
    for child in &root.children {
        conv.walk(child, SpanKind::Plain);
    }
    conv.flush_paragraph();
    Ok(MarkupDocument::new(source_id, conv.blocks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(html: &str) -> Vec<Block> {
        parse_html_subset(html, "t").unwrap().blocks
    }

    #[test]
    fn heading() {
        assert_eq!(
            parse("<h1>Intro</h1>"),
            vec![Block::heading(1, vec![InlineSpan::plain("Intro")]).unwrap()]
        );
    }

    #[test]
    fn paragraph_with_italic() {
        assert_eq!(
            parse("<p>mass <i>m</i></p>"),
            vec![Block::paragraph(vec![
                InlineSpan::plain("mass "),
                InlineSpan::italic("m")
            ])]
        );
    }

    #[test]
    fn inline_math_from_alttext() {
        let expected = vec![Block::Paragraph {
            spans: vec![InlineSpan::math("E=mc^{2}")],
        }];
        assert_eq!(parse(r#"<p><math alttext="E=mc^{2}"/></p>"#), expected);
        assert_eq!(
            parse(r#"<p><math alttext="E=mc^{2}" display="inline"><mi>E</mi></math></p>"#),
            expected
        );
    }

    #[test]
    fn display_math_splits_paragraph() {
        let blocks = parse(r#"<p>before <math display="block" alttext="\sum_i x_i"/> after</p>"#);
        assert_eq!(
            blocks,
            vec![
                Block::paragraph(vec![InlineSpan::plain("before")]),
                Block::DisplayMath {
                    latex: "\\sum_i x_i".into()
                },
                Block::paragraph(vec![InlineSpan::plain("after")]),
            ]
        );
    }

    #[test]
    fn table_rows_and_caption() {
        let html = r#"<figure class="ltx_table"><table class="ltx_tabular"><tr><th>a</th><th><math alttext="x"/></th></tr><tr><td>1</td><td>2</td></tr></table><figcaption>Table 1: Numbers</figcaption></figure>"#;
        assert_eq!(
            parse(html),
            vec![
                Block::Table {
                    latex: "a & \\(x\\) \\\\\n1 & 2 \\\\".into()
                },
                Block::caption(vec![InlineSpan::plain("Table 1: Numbers")]),
            ]
        );
    }

    #[test]
    fn equation_table_is_display_math() {
        let html = r#"<table class="ltx_equation ltx_eqn_table"><tr><td><math display="block" alttext="a=b"/></td><td><span class="ltx_tag">(1)</span></td></tr></table>"#;
        assert_eq!(
            parse(html),
            vec![
                Block::DisplayMath { latex: "a=b".into() },
                Block::paragraph(vec![InlineSpan::plain("(1)")]),
            ]
        );
    }

    #[test]
    fn algorithm_figure() {
        let html = r#"<figure class="ltx_float ltx_float_algorithm"><div class="ltx_listingline">x = 0</div><div class="ltx_listingline">return x</div><figcaption>Algorithm 1: Zero</figcaption></figure>"#;
        assert_eq!(
            parse(html),
            vec![
                Block::Algorithm {
                    latex: "x = 0\nreturn x".into()
                },
                Block::caption(vec![InlineSpan::plain("Algorithm 1: Zero")]),
            ]
        );
    }

    #[test]
    fn unsupported_elements_keep_text() {
        assert_eq!(
            parse(r#"<div class="x"><span style="a">Hello</span> <a href="y">world</a> &amp; more</div>"#),
            vec![Block::paragraph(vec![InlineSpan::plain("Hello world & more")])]
        );
    }

    #[test]
    fn implicit_paragraph_close() {
        assert_eq!(
            parse("<p>one<p>two"),
            vec![
                Block::paragraph(vec![InlineSpan::plain("one")]),
                Block::paragraph(vec![InlineSpan::plain("two")]),
            ]
        );
    }

    #[test]
    fn bold_nested() {
        assert_eq!(
            parse("<p><strong>Bold</strong> and <em>it</em></p>"),
            vec![Block::paragraph(vec![
                InlineSpan::bold("Bold"),
                InlineSpan::plain(" and "),
                InlineSpan::italic("it"),
            ])]
        );
    }

    #[test]
    fn script_and_comments_skipped() {
        assert_eq!(
            parse("<!DOCTYPE html><html><head><title>T</title><script>if (a<b) {}</script></head><body><!-- c --><p>x</p></body></html>"),
            vec![Block::paragraph(vec![InlineSpan::plain("x")])]
        );
    }

    #[test]
    fn errors_name_byte_offset() {
        assert_eq!(
            parse_html_subset("<p>x</div>", "t").unwrap_err(),
            MarkupError::Html {
                offset: 4,
                message: "end tag </div> has no open element".into()
            }
        );
        assert!(matches!(
            parse_html_subset("<p class=\"x>y", "t").unwrap_err(),
            MarkupError::Html { offset: 9, .. }
        ));
        assert!(matches!(
            parse_html_subset("ok <!-- never", "t").unwrap_err(),
            MarkupError::Html { offset: 3, .. }
        ));
    }

    #[test]
    fn lone_angle_bracket_is_text() {
        assert_eq!(
            parse("<p>a < b</p>"),
            vec![Block::paragraph(vec![InlineSpan::plain("a < b")])]
        );
    }

    #[test]
    fn numeric_entities() {
        assert_eq!(
            parse("<p>&#945;&#x3B2;</p>"),
            vec![Block::paragraph(vec![InlineSpan::plain("αβ")])]
        );
    }
}
