//! HTML tag stripping, paragraph segmentation and tokenization.
//!
//! Run with: cargo run --example strip_html

use grantrec::ingest::{segment_paragraphs, strip_html, tokenize, TokenizerConfig};

const PAGE: &str = r#"<html><head><title>Grant call</title></head>
<body><h1>Robotics program</h1>
<p class="lead">Proposals on <b>robot</b> perception &amp; control are invited.</p>

<p>A <a href="themes.html" title='sensors > cameras'>sensor testbed</a>
strengthens an application.</p>
</body></html>"#;

fn main() {
    let text = strip_html(PAGE);
    println!("stripped text:\n{text}\n");

    let paragraphs = segment_paragraphs(&text);
    println!("{} paragraphs:", paragraphs.len());
    for (i, p) in paragraphs.iter().enumerate() {
        println!("  [{i}] {}", p.replace('\n', " / "));
    }

    let mut cfg = TokenizerConfig::default();
    cfg.stopwords
        .extend(["an".into(), "are".into(), "on".into(), "a".into()]);
    println!("\nitems of paragraph 0:");
    for item in tokenize(&paragraphs[0], &cfg).unwrap() {
        println!("  {item}");
    }
}
