//! Research-field estimation. Grants are scored from the items of their
//! mined association rules; researcher profiles are too short to mine, so
//! they are scored by direct keyword counting.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frac::{frac_to_string, parse_frac, Frac};
use crate::ingest::{tokenize, TokenizerConfig};
use crate::mining::AssociationRule;
use crate::taxonomy::{FieldId, Taxonomy};

/// Ranked research fields for one subject (a grant or a researcher).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldEstimate {
    pub subject_id: String,
    /// Sorted by (score desc, field id); scores are strictly positive.
    pub ranked: Vec<(FieldId, Frac)>,
}

impl FieldEstimate {
    fn from_scores(subject_id: String, scores: BTreeMap<FieldId, Frac>) -> Self {
        let mut ranked: Vec<(FieldId, Frac)> = scores
            .into_iter()
            .filter(|(_, score)| !score.is_zero())
            .collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        FieldEstimate { subject_id, ranked }
    }

    /// Highest-scoring field, or `None` when nothing matched ("unclassifiable").
    pub fn top(&self) -> Option<&FieldId> {
        self.ranked.first().map(|(f, _)| f)
    }

    pub fn to_json_line(&self) -> Result<String> {
        let row = EstimateJson {
            subject: self.subject_id.clone(),
            top: self.top().map(|f| f.as_str().to_string()),
            ranked: self
                .ranked
                .iter()
                .map(|(f, s)| (f.as_str().to_string(), frac_to_string(s)))
                .collect(),
        };
        Ok(serde_json::to_string(&row)?)
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        let row: EstimateJson = serde_json::from_str(line)?;
        let ranked = row
            .ranked
            .into_iter()
            .map(|(f, s)| Ok((FieldId::from_name(&f), parse_frac(&s)?)))
            .collect::<Result<Vec<_>>>()?;
        let est = FieldEstimate {
            subject_id: row.subject,
            ranked,
        };
        // the serialized top is derived; reject files where it disagrees
        let expect = est.top().map(|f| f.as_str().to_string());
        if row.top != expect {
            return Err(Error::Validation(format!(
                "estimate for '{}' has inconsistent top field",
                est.subject_id
            )));
        }
        Ok(est)
    }
}

#[derive(Serialize, Deserialize)]
struct EstimateJson {
    subject: String,
    top: Option<String>,
    ranked: Vec<(String, String)>,
}

pub fn write_estimates_jsonl(estimates: &[FieldEstimate], mut w: impl Write) -> Result<()> {
    for est in estimates {
        let line = est.to_json_line()?;
        w.write_all(line.as_bytes())
            .and_then(|_| w.write_all(b"\n"))
            .map_err(|e| Error::Input(format!("write failed: {e}")))?;
    }
    Ok(())
}

pub fn read_estimates_jsonl(r: impl BufRead) -> Result<Vec<FieldEstimate>> {
    let mut out = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::Input(format!("read failed: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            FieldEstimate::from_json_line(&line).map_err(|e| Error::Parse {
                line: idx + 1,
                msg: e.to_string(),
            })?,
        );
    }
    Ok(out)
}

/// How rule items are credited to fields when scoring a grant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GrantScoring {
    /// Each keyword hit adds the rule's support to the field.
    #[default]
    SupportWeighted,
    /// Each keyword hit adds one.
    RuleCount,
}

impl GrantScoring {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "support" => Ok(GrantScoring::SupportWeighted),
            "count" => Ok(GrantScoring::RuleCount),
            other => Err(Error::Config(format!(
                "unknown grant_scoring '{other}' (expected 'support' or 'count')"
            ))),
        }
    }
}

/// Scores research fields from one grant's mined rules.
///
/// Every item on either side of every rule is looked up in the taxonomy
/// keyword index; each hit credits the field (an item mapped to several
/// fields credits each of them). An empty ranking means no rule item is a
/// taxonomy keyword.
pub fn estimate_grant_field(
    subject_id: &str,
    rules: &[AssociationRule],
    taxonomy: &Taxonomy,
    scoring: GrantScoring,
) -> FieldEstimate {
    let mut scores: BTreeMap<FieldId, Frac> = BTreeMap::new();
    for rule in rules {
        let weight = match scoring {
            GrantScoring::SupportWeighted => rule.support,
            GrantScoring::RuleCount => Frac::from_integer(1),
        };
        for item in rule.all_items() {
            for field in taxonomy.fields_for_item(item) {
                *scores.entry(field).or_insert_with(Frac::zero) += weight;
            }
        }
    }
    FieldEstimate::from_scores(subject_id.to_string(), scores)
}

/// One researcher profile row: department plus short free-text lines
/// (declared fields, titles, keyword lists).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResearcherRecord {
    pub id: String,
    pub department: String,
    pub free_text: Vec<String>,
}

/// Reads researcher records from JSON lines, enforcing unique ids.
pub fn read_researchers_jsonl(r: impl BufRead) -> Result<Vec<ResearcherRecord>> {
    let mut out: Vec<ResearcherRecord> = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::Input(format!("read failed: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: ResearcherRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: idx + 1,
            msg: e.to_string(),
        })?;
        if out.iter().any(|r| r.id == rec.id) {
            return Err(Error::Validation(format!(
                "duplicate researcher id '{}'",
                rec.id
            )));
        }
        out.push(rec);
    }
    Ok(out)
}

/// Scores research fields for a researcher by counting taxonomy keyword
/// occurrences in the profile text. Each free-text line is tokenized to an
/// item set (so a keyword counts once per line) and every keyword item adds
/// one to its fields. No association analysis is involved.
pub fn estimate_researcher_field(
    record: &ResearcherRecord,
    taxonomy: &Taxonomy,
    cfg: &TokenizerConfig,
) -> Result<FieldEstimate> {
    let mut scores: BTreeMap<FieldId, Frac> = BTreeMap::new();
    for line in &record.free_text {
        for item in tokenize(line, cfg)? {
            for field in taxonomy.fields_for_item(&item) {
                *scores.entry(field).or_insert_with(Frac::zero) += Frac::from_integer(1);
            }
        }
    }
    Ok(FieldEstimate::from_scores(record.id.clone(), scores))
}
