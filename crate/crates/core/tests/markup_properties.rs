use docpair_core::markup::{
    parse_html_subset, parse_markdown, serialize_markdown, split_modalities, unicode_to_latex, Block, InlineSpan,
    MarkupDocument, SpanKind,
};
use proptest::prelude::*;

fn span_text() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 .,;:!?()*_#$\\\\-]{1,12}"
}

fn math_text() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop::sample::select(vec![
            "x",
            "y_{1}",
            "^{2}",
            "\\alpha",
            " + ",
            "\\frac{a}{b}",
            " ",
            "=",
            "\\{",
            "3",
        ]),
        1..6,
    )
    .prop_map(|parts| parts.concat())
}

fn span() -> impl Strategy<Value = InlineSpan> {
    prop_oneof![
        3 => span_text().prop_map(InlineSpan::plain),
        1 => span_text().prop_map(InlineSpan::bold),
        1 => span_text().prop_map(InlineSpan::italic),
        1 => math_text().prop_map(InlineSpan::math),
    ]
}

fn spans() -> impl Strategy<Value = Vec<InlineSpan>> {
    prop::collection::vec(span(), 1..5).prop_filter("visible text", |s| s.iter().any(|sp| !sp.text.trim().is_empty()))
}

fn verbatim_body() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop::sample::select(vec![
            "a & b \\\\",
            "\\hline",
            "1 & 2 & 3 \\\\",
            "x <- 1",
            "\\State y",
            "c",
        ]),
        1..4,
    )
    .prop_map(|lines| lines.join("\n"))
}

fn block() -> impl Strategy<Value = Block> {
    prop_oneof![
        1 => (1u8..=6, spans()).prop_map(|(l, s)| Block::heading(l, s).unwrap()),
        4 => spans().prop_map(Block::paragraph),
        1 => math_text().prop_map(|latex| Block::DisplayMath { latex }),
        1 => verbatim_body().prop_map(|latex| Block::Table { latex }),
        1 => verbatim_body().prop_map(|latex| Block::Algorithm { latex }),
        1 => spans().prop_map(Block::caption),
    ]
    .prop_filter("paragraphs stay paragraphs", |b| match b {
        Block::Paragraph { spans } => {
            !matches!(spans.first(), Some(s) if s.kind == SpanKind::Plain && s.text.starts_with("Figure: "))
        }
        _ => true,
    })
}

fn document() -> impl Strategy<Value = MarkupDocument> {
    prop::collection::vec(block(), 0..8).prop_map(|blocks| MarkupDocument::new("doc", blocks))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn markdown_round_trip(doc in document()) {
        let md = serialize_markdown(&doc);
        let back = parse_markdown(&md, "doc").unwrap();
        prop_assert_eq!(back.blocks, doc.blocks, "serialized:\n{}", md);
    }

    #[test]
    fn serialized_documents_conserve_characters(doc in document()) {
        let md = serialize_markdown(&doc);
        let s = split_modalities(&md).unwrap();
        let total = s.plain.chars().count() + s.math.chars().count() + s.tables.chars().count() + s.delimiter_chars;
        prop_assert_eq!(total, md.chars().count());
    }

    #[test]
    fn unicode_to_latex_is_idempotent(text in "\\PC{0,40}") {
        let once = unicode_to_latex(&text);
        prop_assert_eq!(unicode_to_latex(&once), once);
    }

    #[test]
    fn html_keeps_visible_words(words in prop::collection::vec("[a-z]{2,8}", 1..12), split in 0usize..12) {
        let cut = split.min(words.len());
        let html = format!(
            "<html><body><h2>{}</h2><p>{} <b>{}</b></p><figure><figcaption>{}</figcaption></figure></body></html>",
            words[0],
            words[..cut].join(" "),
            words[cut..].join(" "),
            words.join(" "),
        );
        let doc = parse_html_subset(&html, "h").unwrap();
        let text: String = doc.blocks.iter().map(|b| b.text() + " ").collect();
        for w in &words {
            prop_assert!(text.split_whitespace().any(|t| t == w), "{} missing from {:?}", w, text);
        }
    }
}
