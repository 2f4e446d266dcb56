//! Document ingestion: raw grant pages (HTML or plain text) become a
//! transaction database. Each paragraph of a document is one transaction;
//! its items are the normalized tokens of that paragraph.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};
use std::process::{Command, Stdio};
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use unicode_segmentation::UnicodeSegmentation;

use crate::error::{Error, Result};
use crate::normalize::normalize;
use crate::taxonomy::Taxonomy;

/// Tag pattern applied by [`strip_html`]. A match runs from `<` to the first
/// `>` that is not inside a quoted attribute value.
static TAG_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r#"<("[^"]*"|'[^']*'|[^'">])*>"#).expect("tag pattern compiles"));

/// Replaces every tag match with a single space, then decodes the character
/// entities `&amp; &lt; &gt; &quot; &#NN;` in one left-to-right pass.
/// Total function: malformed markup passes through untouched.
pub fn strip_html(html: &str) -> String {
    decode_entities(&TAG_RE.replace_all(html, " "))
}

fn decode_entities(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(pos) = rest.find('&') {
        out.push_str(&rest[..pos]);
        rest = &rest[pos..];
        let mut decoded = None;
        for (name, ch) in [
            ("&amp;", '&'),
            ("&lt;", '<'),
            ("&gt;", '>'),
            ("&quot;", '"'),
        ] {
            if rest.starts_with(name) {
                decoded = Some((ch, name.len()));
                break;
            }
        }
        if decoded.is_none() {
            if let Some(body) = rest.strip_prefix("&#") {
                let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
                if !digits.is_empty() && body[digits.len()..].starts_with(';') {
                    // invalid code points stay literal
                    if let Some(ch) = digits.parse::<u32>().ok().and_then(char::from_u32) {
                        decoded = Some((ch, 2 + digits.len() + 1));
                    }
                }
            }
        }
        match decoded {
            Some((ch, len)) => {
                out.push(ch);
                rest = &rest[len..];
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

/// Splits plain text into paragraphs on runs of one or more blank lines.
/// Paragraphs are trimmed; empty ones are dropped; order is preserved.
pub fn segment_paragraphs(text: &str) -> Vec<String> {
    let mut paragraphs = Vec::new();
    let mut current: Vec<&str> = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            flush(&mut current, &mut paragraphs);
        } else {
            current.push(line);
        }
    }
    flush(&mut current, &mut paragraphs);
    paragraphs
}

fn flush(lines: &mut Vec<&str>, out: &mut Vec<String>) {
    if !lines.is_empty() {
        let para = lines.join("\n").trim().to_string();
        if !para.is_empty() {
            out.push(para);
        }
        lines.clear();
    }
}

/// Word extraction backend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenizerKind {
    /// Unicode word segmentation (UAX-29 word boundaries).
    Unicode,
    /// External command spoken over a line protocol: the paragraph is written
    /// as one line on stdin, the command answers with one line of
    /// space-separated tokens. One invocation per paragraph.
    External(String),
}

impl TokenizerKind {
    /// Parses a tokenizer name from configuration: `unicode` or
    /// `external:<command>`.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        if name == "unicode" {
            return Ok(TokenizerKind::Unicode);
        }
        if let Some(cmd) = name.strip_prefix("external:") {
            let cmd = cmd.trim();
            if cmd.is_empty() {
                return Err(Error::Config("external tokenizer needs a command".into()));
            }
            return Ok(TokenizerKind::External(cmd.to_string()));
        }
        Err(Error::Config(format!("unknown tokenizer '{name}'")))
    }
}

/// Tokenization settings shared by ingestion and researcher-profile scoring.
#[derive(Debug, Clone)]
pub struct TokenizerConfig {
    pub kind: TokenizerKind,
    /// Tokens shorter than this many characters are dropped.
    pub min_len: usize,
    /// Normalized stopwords, dropped after segmentation.
    pub stopwords: BTreeSet<String>,
    /// Normalized keyword phrases. A phrase whose words occur consecutively
    /// in a paragraph is emitted as a single item in addition to the words.
    pub phrases: BTreeSet<String>,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            kind: TokenizerKind::Unicode,
            min_len: 2,
            stopwords: BTreeSet::new(),
            phrases: BTreeSet::new(),
        }
    }
}

impl TokenizerConfig {
    /// Injects every taxonomy keyword as a phrase candidate, so multi-word
    /// keywords can surface as single items.
    pub fn with_taxonomy_phrases(mut self, taxonomy: &Taxonomy) -> Self {
        self.phrases.extend(taxonomy.keywords().map(str::to_string));
        self
    }

    pub fn with_stopwords(mut self, words: impl IntoIterator<Item = String>) -> Self {
        self.stopwords
            .extend(words.into_iter().map(|w| normalize(&w)));
        self
    }
}

/// Tokenizes one paragraph into a deduplicated set of normalized items.
pub fn tokenize(paragraph: &str, cfg: &TokenizerConfig) -> Result<BTreeSet<String>> {
    let words: Vec<String> = match &cfg.kind {
        TokenizerKind::Unicode => paragraph
            .unicode_words()
            .map(normalize)
            .filter(|w| !w.is_empty())
            .collect(),
        TokenizerKind::External(cmd) => external_tokenize(cmd, paragraph)?,
    };

    let mut items = BTreeSet::new();
    for phrase in &cfg.phrases {
        let parts: Vec<&str> = phrase.split(' ').collect();
        if contains_consecutive(&words, &parts) {
            items.insert(phrase.clone());
        }
    }
    for word in words {
        if word.chars().count() >= cfg.min_len && !cfg.stopwords.contains(&word) {
            items.insert(word);
        }
    }
    Ok(items)
}

fn contains_consecutive(words: &[String], parts: &[&str]) -> bool {
    if parts.is_empty() || parts.len() > words.len() {
        return false;
    }
    words
        .windows(parts.len())
        .any(|w| w.iter().zip(parts).all(|(a, b)| a == b))
}

fn external_tokenize(cmd: &str, paragraph: &str) -> Result<Vec<String>> {
    let mut child = Command::new("sh")
        .arg("-c")
        .arg(cmd)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| Error::Config(format!("cannot start tokenizer '{cmd}': {e}")))?;
    {
        let stdin = child.stdin.as_mut().expect("piped stdin");
        let one_line = paragraph.replace(['\n', '\r'], " ");
        stdin
            .write_all(one_line.as_bytes())
            .and_then(|_| stdin.write_all(b"\n"))
            .map_err(|e| Error::Config(format!("tokenizer '{cmd}' rejected input: {e}")))?;
    }
    let output = child
        .wait_with_output()
        .map_err(|e| Error::Config(format!("tokenizer '{cmd}' failed: {e}")))?;
    if !output.status.success() {
        return Err(Error::Config(format!(
            "tokenizer '{cmd}' exited with {}",
            output.status
        )));
    }
    let line = String::from_utf8_lossy(&output.stdout);
    Ok(line
        .split_whitespace()
        .map(normalize)
        .filter(|w| !w.is_empty())
        .collect())
}

/// Raw input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub source_kind: SourceKind,
    pub body: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    Html,
    Text,
}

/// One paragraph reduced to its item set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transaction {
    #[serde(rename = "doc")]
    pub doc_id: String,
    /// Index of the source paragraph within its document.
    pub ordinal: usize,
    pub items: BTreeSet<String>,
}

/// Ordered transaction list plus derived totals; the mining input.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransactionDb {
    transactions: Vec<Transaction>,
    item_universe: BTreeSet<String>,
}

impl TransactionDb {
    pub fn new(transactions: Vec<Transaction>) -> Self {
        let item_universe = transactions
            .iter()
            .flat_map(|t| t.items.iter().cloned())
            .collect();
        TransactionDb {
            transactions,
            item_universe,
        }
    }

    /// Builds a database straight from item sets; handy for tests and small
    /// in-memory experiments. Empty sets are kept and count toward `M`.
    pub fn from_item_sets<I, S>(sets: I) -> Self
    where
        I: IntoIterator<Item = BTreeSet<S>>,
        S: Into<String>,
    {
        let transactions = sets
            .into_iter()
            .enumerate()
            .map(|(i, items)| Transaction {
                doc_id: "mem".to_string(),
                ordinal: i,
                items: items.into_iter().map(Into::into).collect(),
            })
            .collect();
        Self::new(transactions)
    }

    /// Total number of transactions (the `M` of the support formula).
    pub fn total(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn item_universe(&self) -> &BTreeSet<String> {
        &self.item_universe
    }

    /// One JSON object per line, items sorted lexicographically.
    pub fn write_jsonl(&self, mut w: impl Write) -> Result<()> {
        for tx in &self.transactions {
            serde_json::to_writer(&mut w, tx)?;
            w.write_all(b"\n")
                .map_err(|e| Error::Input(format!("write failed: {e}")))?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf)?;
        Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
    }

    pub fn read_jsonl(r: impl BufRead) -> Result<Self> {
        let mut transactions = Vec::new();
        for (idx, line) in r.lines().enumerate() {
            let line = line.map_err(|e| Error::Input(format!("read failed: {e}")))?;
            if line.trim().is_empty() {
                continue;
            }
            let tx: Transaction = serde_json::from_str(&line).map_err(|e| Error::Parse {
                line: idx + 1,
                msg: e.to_string(),
            })?;
            transactions.push(tx);
        }
        Ok(Self::new(transactions))
    }
}

/// Ingests a corpus into a transaction database.
///
/// HTML documents are tag-stripped first; every document is segmented into
/// paragraphs and each paragraph tokenized to an item set. Paragraphs whose
/// item set comes out empty are dropped.
pub fn build_transactions(corpus: &[Document], cfg: &TokenizerConfig) -> Result<TransactionDb> {
    if corpus.is_empty() {
        return Err(Error::Input("corpus is empty".into()));
    }
    let mut transactions = Vec::new();
    for doc in corpus {
        let text = match doc.source_kind {
            SourceKind::Html => strip_html(&doc.body),
            SourceKind::Text => doc.body.clone(),
        };
        for (ordinal, paragraph) in segment_paragraphs(&text).iter().enumerate() {
            let items = tokenize(paragraph, cfg)?;
            if !items.is_empty() {
                transactions.push(Transaction {
                    doc_id: doc.id.clone(),
                    ordinal,
                    items,
                });
            }
        }
    }
    if transactions.is_empty() {
        return Err(Error::Input("no mineable content in corpus".into()));
    }
    Ok(TransactionDb::new(transactions))
}
