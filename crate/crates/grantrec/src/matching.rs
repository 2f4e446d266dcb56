//! Grant-to-researcher matching at three taxonomy levels.
//!
//! A researcher is matched at the most specific level where their estimated
//! field agrees with the grant's: same research field, else same discipline,
//! else same area. Buckets are exclusive; a pair that agrees nowhere is
//! omitted from the report.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldest::{FieldEstimate, ResearcherRecord};
use crate::taxonomy::{FieldId, Taxonomy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchLevel {
    ResearcherField,
    Discipline,
    Area,
}

impl MatchLevel {
    pub fn label(&self) -> &'static str {
        match self {
            MatchLevel::ResearcherField => "Researcher Field",
            MatchLevel::Discipline => "Discipline",
            MatchLevel::Area => "Area",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchEntry {
    #[serde(rename = "researcher")]
    pub researcher_id: String,
    pub department: String,
    pub level: MatchLevel,
}

/// Exclusive per-level tallies; each matched researcher is counted once.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCounts {
    pub researcher_field: usize,
    pub discipline: usize,
    pub area: usize,
}

impl LevelCounts {
    pub fn total(&self) -> usize {
        self.researcher_field + self.discipline + self.area
    }

    pub fn get(&self, level: MatchLevel) -> usize {
        match level {
            MatchLevel::ResearcherField => self.researcher_field,
            MatchLevel::Discipline => self.discipline,
            MatchLevel::Area => self.area,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchReport {
    #[serde(rename = "grant")]
    pub grant_id: String,
    pub entries: Vec<MatchEntry>,
    pub counts: LevelCounts,
}

impl MatchReport {
    fn new(grant_id: String, mut entries: Vec<MatchEntry>) -> Self {
        entries.sort_by(|a, b| a.researcher_id.cmp(&b.researcher_id));
        let mut counts = LevelCounts::default();
        for e in &entries {
            match e.level {
                MatchLevel::ResearcherField => counts.researcher_field += 1,
                MatchLevel::Discipline => counts.discipline += 1,
                MatchLevel::Area => counts.area += 1,
            }
        }
        MatchReport {
            grant_id,
            entries,
            counts,
        }
    }
}

/// Most specific level at which two estimated fields agree.
pub fn match_level(
    grant_top: &FieldId,
    researcher_top: &FieldId,
    taxonomy: &Taxonomy,
) -> Result<Option<MatchLevel>> {
    if grant_top == researcher_top {
        // identity match needs no taxonomy lookup
        return Ok(Some(MatchLevel::ResearcherField));
    }
    let (g_disc, g_area) = taxonomy.ancestors(grant_top)?;
    let (r_disc, r_area) = taxonomy.ancestors(researcher_top)?;
    if g_disc == r_disc {
        Ok(Some(MatchLevel::Discipline))
    } else if g_area == r_area {
        Ok(Some(MatchLevel::Area))
    } else {
        Ok(None)
    }
}

/// Matches one grant estimate against every researcher estimate.
///
/// A grant with no estimated field yields an empty report. Researchers with
/// no estimated field, or agreeing at no level, are omitted.
pub fn match_grant(
    grant: &FieldEstimate,
    researchers: &[(ResearcherRecord, FieldEstimate)],
    taxonomy: &Taxonomy,
) -> Result<MatchReport> {
    let Some(grant_top) = grant.top() else {
        return Ok(MatchReport::new(grant.subject_id.clone(), Vec::new()));
    };
    let mut entries = Vec::new();
    for (record, estimate) in researchers {
        let Some(r_top) = estimate.top() else {
            continue;
        };
        if let Some(level) = match_level(grant_top, r_top, taxonomy)? {
            entries.push(MatchEntry {
                researcher_id: record.id.clone(),
                department: record.department.clone(),
                level,
            });
        }
    }
    Ok(MatchReport::new(grant.subject_id.clone(), entries))
}

/// Element-wise [`match_grant`] over a batch of grants, order-preserving.
pub fn match_all(
    grants: &[FieldEstimate],
    researchers: &[(ResearcherRecord, FieldEstimate)],
    taxonomy: &Taxonomy,
) -> Result<Vec<MatchReport>> {
    grants
        .iter()
        .map(|g| match_grant(g, researchers, taxonomy))
        .collect()
}

pub fn write_reports_jsonl(reports: &[MatchReport], mut w: impl Write) -> Result<()> {
    for report in reports {
        serde_json::to_writer(&mut w, report)?;
        w.write_all(b"\n")
            .map_err(|e| Error::Input(format!("write failed: {e}")))?;
    }
    Ok(())
}

pub fn read_reports_jsonl(r: impl BufRead) -> Result<Vec<MatchReport>> {
    let mut out = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::Input(format!("read failed: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        let report: MatchReport = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: idx + 1,
            msg: e.to_string(),
        })?;
        out.push(report);
    }
    Ok(out)
}

const LEVELS: [MatchLevel; 3] = [
    MatchLevel::ResearcherField,
    MatchLevel::Discipline,
    MatchLevel::Area,
];

/// Renders reports as an aligned three-column plain-text table: grant,
/// matched department, matched-researcher counts per level. Matched
/// researchers are aggregated by department; unmatched grants show "none".
/// Counts are exclusive: each researcher appears only at the most specific
/// level achieved.
pub fn render_report_table(reports: &[MatchReport]) -> String {
    let mut rows: Vec<[String; 3]> = Vec::new();
    for report in reports {
        if report.entries.is_empty() {
            rows.push([report.grant_id.clone(), "none".into(), "none".into()]);
            continue;
        }
        let mut per_dept: BTreeMap<&str, LevelCounts> = BTreeMap::new();
        for e in &report.entries {
            let counts = per_dept.entry(e.department.as_str()).or_default();
            match e.level {
                MatchLevel::ResearcherField => counts.researcher_field += 1,
                MatchLevel::Discipline => counts.discipline += 1,
                MatchLevel::Area => counts.area += 1,
            }
        }
        // grant and department cells print once per group
        let mut grant_cell = report.grant_id.clone();
        for (dept, counts) in per_dept {
            let mut dept_cell = dept.to_string();
            for level in LEVELS {
                let n = counts.get(level);
                if n == 0 {
                    continue;
                }
                rows.push([
                    std::mem::take(&mut grant_cell),
                    std::mem::take(&mut dept_cell),
                    format!("{n} (matched in {})", level.label()),
                ]);
            }
        }
    }
    layout_table(
        ["Grant", "Matched department", "Matched researchers"],
        &rows,
    )
}

fn layout_table(header: [&str; 3], rows: &[[String; 3]]) -> String {
    let mut widths = [header[0].len(), header[1].len(), header[2].len()];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let fmt_row = |cells: [&str; 3]| -> String {
        let mut line = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            line.push_str(cell);
            if i < 2 {
                for _ in cell.chars().count()..w {
                    line.push(' ');
                }
                line.push_str("  ");
            }
        }
        line.trim_end().to_string()
    };
    let mut out = String::new();
    out.push_str(&fmt_row(header));
    out.push('\n');
    let rule_len = widths.iter().sum::<usize>() + 4;
    out.push_str(&"-".repeat(rule_len));
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_row([&row[0], &row[1], &row[2]]));
        out.push('\n');
    }
    out
}
