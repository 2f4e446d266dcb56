//! Shared token/keyword normalization: lowercase, Unicode NFC, collapse
//! whitespace runs to single spaces. Taxonomy keywords and tokenizer output
//! go through the same function so lookups match deterministically.

use unicode_normalization::UnicodeNormalization;

/// Normalizes a string. Idempotent: `normalize(normalize(s)) == normalize(s)`.
pub fn normalize(s: &str) -> String {
    let folded: String = s.to_lowercase().nfc().collect();
    let mut out = String::with_capacity(folded.len());
    for part in folded.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(part);
    }
    out
}
