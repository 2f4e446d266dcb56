//! Pipeline configuration: a plain `key = value` text file, with a few
//! values overridable from the command line.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::fieldest::GrantScoring;
use crate::frac::parse_frac;
use crate::ingest::{TokenizerConfig, TokenizerKind};
use crate::mining::{MinSupport, MiningParams};
use crate::taxonomy::Taxonomy;

/// Everything the staged pipeline needs. Relative paths in the config file
/// are resolved against the file's own directory.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub corpus_dir: PathBuf,
    pub taxonomy_path: PathBuf,
    pub researchers_path: PathBuf,
    pub out_dir: PathBuf,
    pub params: MiningParams,
    pub tokenizer_kind: TokenizerKind,
    pub min_token_len: usize,
    pub stopwords_path: Option<PathBuf>,
    pub grant_scoring: GrantScoring,
}

impl PipelineConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::parse(&text, base)
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut corpus_dir = None;
        let mut taxonomy = None;
        let mut researchers = None;
        let mut out_dir = None;
        let mut params = MiningParams::default();
        let mut tokenizer_kind = TokenizerKind::Unicode;
        let mut min_token_len = 2usize;
        let mut stopwords = None;
        let mut grant_scoring = GrantScoring::default();

        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!(
                    "line {}: expected 'key = value', got '{raw}'",
                    idx + 1
                ))
            })?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "corpus_dir" => corpus_dir = Some(base.join(value)),
                "taxonomy" => taxonomy = Some(base.join(value)),
                "researchers" => researchers = Some(base.join(value)),
                "out_dir" => out_dir = Some(base.join(value)),
                "min_supp" => params.min_supp = MinSupport::parse(value)?,
                "min_conf" => params.min_conf = parse_frac(value)?,
                "max_len" => {
                    params.max_len = value
                        .parse()
                        .map_err(|_| Error::Config(format!("bad max_len '{value}'")))?
                }
                "tokenizer" => tokenizer_kind = TokenizerKind::parse(value)?,
                "min_token_len" => {
                    min_token_len = value
                        .parse()
                        .map_err(|_| Error::Config(format!("bad min_token_len '{value}'")))?
                }
                "stopwords" => stopwords = Some(base.join(value)),
                "grant_scoring" => grant_scoring = GrantScoring::parse(value)?,
                other => return Err(Error::Config(format!("unknown key '{other}'"))),
            }
        }

        let cfg = PipelineConfig {
            corpus_dir: corpus_dir.ok_or_else(|| missing("corpus_dir"))?,
            taxonomy_path: taxonomy.ok_or_else(|| missing("taxonomy"))?,
            researchers_path: researchers.ok_or_else(|| missing("researchers"))?,
            out_dir: out_dir.ok_or_else(|| missing("out_dir"))?,
            params,
            tokenizer_kind,
            min_token_len,
            stopwords_path: stopwords,
            grant_scoring,
        };
        cfg.params.validate()?;
        Ok(cfg)
    }

    /// Builds the tokenizer configuration, loading the stopword list and
    /// injecting the taxonomy keywords as phrase candidates.
    pub fn tokenizer_config(&self, taxonomy: &Taxonomy) -> Result<TokenizerConfig> {
        let mut stopwords = BTreeSet::new();
        if let Some(path) = &self.stopwords_path {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            stopwords = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_string)
                .collect();
        }
        Ok(TokenizerConfig {
            kind: self.tokenizer_kind.clone(),
            min_len: self.min_token_len,
            stopwords: BTreeSet::new(),
            phrases: BTreeSet::new(),
        }
        .with_stopwords(stopwords)
        .with_taxonomy_phrases(taxonomy))
    }
}

fn missing(key: &str) -> Error {
    Error::Config(format!("missing required key '{key}'"))
}
