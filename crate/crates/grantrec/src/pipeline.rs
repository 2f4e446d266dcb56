//! Staged batch pipeline: ingest -> mine -> report.
//!
//! Each stage reads only the serialized outputs of the one before it, so a
//! run can be restarted at any stage. All outputs are written atomically
//! (temp file + rename) and depend only on the inputs: two runs over the
//! same data produce byte-identical directories.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use crate::config::PipelineConfig;
use crate::error::{Error, Result};
use crate::fieldest::{
    estimate_grant_field, estimate_researcher_field, read_estimates_jsonl, read_researchers_jsonl,
    write_estimates_jsonl, FieldEstimate,
};
use crate::frac::Frac;
use crate::ingest::{build_transactions, Document, SourceKind, TransactionDb};
use crate::matching::{match_all, render_report_table, write_reports_jsonl, MatchReport};
use crate::mining::{frequent_itemsets, generate_rules, read_rules_jsonl, write_rules_jsonl};
use crate::taxonomy::{load_taxonomy, Taxonomy};

pub struct IngestSummary {
    pub grant_id: String,
    /// Number of transactions (M) written for this grant.
    pub transactions: usize,
}

pub struct MineSummary {
    pub grant_id: String,
    pub resolved_min_supp: Frac,
    pub rules: usize,
}

pub struct ReportSummary {
    pub reports: Vec<MatchReport>,
    pub researchers: usize,
}

/// Extra inputs for the report stage: pre-computed estimate files to use
/// instead of deriving estimates from the rule files.
#[derive(Default)]
pub struct ReportOptions {
    pub grant_estimates: Option<PathBuf>,
    pub researcher_estimates: Option<PathBuf>,
}

fn load_taxonomy_file(path: &Path) -> Result<Taxonomy> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    load_taxonomy(&text)
}

/// Writes via a temp file in the same directory, then renames into place.
fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Sorted subdirectory names of the corpus directory; one per grant.
fn grant_dirs(corpus_dir: &Path) -> Result<Vec<String>> {
    let entries = fs::read_dir(corpus_dir).map_err(|e| Error::io(corpus_dir, e))?;
    let mut dirs = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(corpus_dir, e))?;
        if entry.path().is_dir() {
            dirs.push(entry.file_name().to_string_lossy().into_owned());
        }
    }
    dirs.sort();
    Ok(dirs)
}

/// Sorted files with one of the given extensions.
fn files_with_ext(dir: &Path, exts: &[&str]) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        let matched = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| exts.contains(&e));
        if path.is_file() && matched {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Ingest stage: each grant subdirectory of the corpus becomes one
/// transaction file under `out_dir/transactions/`. Unreadable documents are
/// skipped with a warning; the stage fails only when nothing was ingested.
pub fn cmd_ingest(cfg: &PipelineConfig) -> Result<Vec<IngestSummary>> {
    let taxonomy = load_taxonomy_file(&cfg.taxonomy_path)?;
    let tok_cfg = cfg.tokenizer_config(&taxonomy)?;

    let grants = grant_dirs(&cfg.corpus_dir)?;
    if grants.is_empty() {
        return Err(Error::Input(format!(
            "no grant subdirectories in {}",
            cfg.corpus_dir.display()
        )));
    }

    let mut summaries = Vec::new();
    for grant in grants {
        let dir = cfg.corpus_dir.join(&grant);
        let mut docs = Vec::new();
        for path in files_with_ext(&dir, &["html", "txt"])? {
            let body = match fs::read_to_string(&path) {
                Ok(body) => body,
                Err(e) => {
                    eprintln!("warning: skipping unreadable {}: {e}", path.display());
                    continue;
                }
            };
            let kind = match path.extension().and_then(|e| e.to_str()) {
                Some("html") => SourceKind::Html,
                _ => SourceKind::Text,
            };
            let name = path.file_name().unwrap_or_default().to_string_lossy();
            docs.push(Document {
                id: format!("{grant}/{name}"),
                source_kind: kind,
                body,
            });
        }
        if docs.is_empty() {
            eprintln!("warning: grant '{grant}' has no readable documents, skipped");
            continue;
        }
        let db = match build_transactions(&docs, &tok_cfg) {
            Ok(db) => db,
            Err(Error::Input(msg)) => {
                eprintln!("warning: grant '{grant}': {msg}, skipped");
                continue;
            }
            Err(e) => return Err(e),
        };
        let out = cfg
            .out_dir
            .join("transactions")
            .join(format!("{grant}.jsonl"));
        write_atomic(&out, db.to_jsonl()?.as_bytes())?;
        summaries.push(IngestSummary {
            grant_id: grant,
            transactions: db.total(),
        });
    }
    if summaries.is_empty() {
        return Err(Error::Input("no grant could be ingested".into()));
    }
    Ok(summaries)
}

fn list_grant_files(dir: &Path, stage_hint: &str) -> Result<Vec<(String, PathBuf)>> {
    if !dir.is_dir() {
        return Err(Error::Input(format!(
            "{} not found; run '{stage_hint}' first",
            dir.display()
        )));
    }
    let files = files_with_ext(dir, &["jsonl"])?;
    Ok(files
        .into_iter()
        .map(|p| {
            let stem = p
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            (stem, p)
        })
        .collect())
}

/// Mine stage: reads each transaction file, resolves the minimum support
/// (`auto` becomes the mean single-item support of that grant's database)
/// and writes the association rules under `out_dir/rules/`.
pub fn cmd_mine(cfg: &PipelineConfig) -> Result<Vec<MineSummary>> {
    let grants = list_grant_files(&cfg.out_dir.join("transactions"), "ingest")?;
    if grants.is_empty() {
        return Err(Error::Input("no transaction files to mine".into()));
    }
    cfg.params.validate()?;

    let mut summaries = Vec::new();
    for (grant, path) in grants {
        let file = fs::File::open(&path).map_err(|e| Error::io(&path, e))?;
        let db = TransactionDb::read_jsonl(BufReader::new(file))?;
        if db.is_empty() {
            eprintln!("warning: grant '{grant}' has an empty database, skipped");
            continue;
        }
        let min_supp = cfg.params.min_supp.resolve(&db)?;
        let freq = frequent_itemsets(&db, min_supp, cfg.params.max_len)?;
        let rules = generate_rules(&freq, &db, cfg.params.min_conf);
        let out = cfg.out_dir.join("rules").join(format!("{grant}.jsonl"));
        let mut buf = Vec::new();
        write_rules_jsonl(&rules, &mut buf)?;
        write_atomic(&out, &buf)?;
        summaries.push(MineSummary {
            grant_id: grant,
            resolved_min_supp: min_supp,
            rules: rules.len(),
        });
    }
    Ok(summaries)
}

fn read_estimates_file(path: &Path) -> Result<Vec<FieldEstimate>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_estimates_jsonl(BufReader::new(file))
}

/// Report stage: estimates a research field for every grant (from its mined
/// rules) and every researcher (from profile keywords), matches them, and
/// writes the estimates, the JSON report and the plain-text table.
pub fn cmd_report(cfg: &PipelineConfig, opts: &ReportOptions) -> Result<ReportSummary> {
    let taxonomy = load_taxonomy_file(&cfg.taxonomy_path)?;
    let tok_cfg = cfg.tokenizer_config(&taxonomy)?;

    let researchers_file =
        fs::File::open(&cfg.researchers_path).map_err(|e| Error::io(&cfg.researchers_path, e))?;
    let records = read_researchers_jsonl(BufReader::new(researchers_file))?;

    let grant_estimates = match &opts.grant_estimates {
        Some(path) => read_estimates_file(path)?,
        None => {
            let grants = list_grant_files(&cfg.out_dir.join("rules"), "mine")?;
            if grants.is_empty() {
                return Err(Error::Input("no rule files to report on".into()));
            }
            let mut estimates = Vec::new();
            for (grant, path) in grants {
                let file = fs::File::open(&path).map_err(|e| Error::io(&path, e))?;
                let rules = read_rules_jsonl(BufReader::new(file))?;
                estimates.push(estimate_grant_field(
                    &grant,
                    &rules,
                    &taxonomy,
                    cfg.grant_scoring,
                ));
            }
            let mut buf = Vec::new();
            write_estimates_jsonl(&estimates, &mut buf)?;
            write_atomic(&cfg.out_dir.join("estimates").join("grants.jsonl"), &buf)?;
            estimates
        }
    };

    let researcher_estimates = match &opts.researcher_estimates {
        Some(path) => read_estimates_file(path)?,
        None => {
            let estimates = records
                .iter()
                .map(|r| estimate_researcher_field(r, &taxonomy, &tok_cfg))
                .collect::<Result<Vec<_>>>()?;
            let mut buf = Vec::new();
            write_estimates_jsonl(&estimates, &mut buf)?;
            write_atomic(
                &cfg.out_dir.join("estimates").join("researchers.jsonl"),
                &buf,
            )?;
            estimates
        }
    };

    // pair each researcher record with its estimate by subject id
    let pairs: Vec<_> = records
        .into_iter()
        .map(|record| {
            let estimate = researcher_estimates
                .iter()
                .find(|e| e.subject_id == record.id)
                .cloned()
                .unwrap_or_else(|| FieldEstimate {
                    subject_id: record.id.clone(),
                    ranked: Vec::new(),
                });
            (record, estimate)
        })
        .collect();

    let reports = match_all(&grant_estimates, &pairs, &taxonomy)?;

    let mut buf = Vec::new();
    write_reports_jsonl(&reports, &mut buf)?;
    write_atomic(&cfg.out_dir.join("report").join("match_report.jsonl"), &buf)?;
    write_atomic(
        &cfg.out_dir.join("report").join("match_report.txt"),
        render_report_table(&reports).as_bytes(),
    )?;

    Ok(ReportSummary {
        reports,
        researchers: pairs.len(),
    })
}

/// All three stages in sequence.
pub fn cmd_run(
    cfg: &PipelineConfig,
) -> Result<(Vec<IngestSummary>, Vec<MineSummary>, ReportSummary)> {
    let ingest = cmd_ingest(cfg)?;
    let mine = cmd_mine(cfg)?;
    let report = cmd_report(cfg, &ReportOptions::default())?;
    Ok((ingest, mine, report))
}
