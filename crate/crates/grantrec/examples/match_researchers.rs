//! Matching grants to researchers at three taxonomy levels.
//!
//! Run with: cargo run --example match_researchers

use grantrec::fieldest::{FieldEstimate, ResearcherRecord};
use grantrec::frac::frac;
use grantrec::matching::{match_all, render_report_table};
use grantrec::taxonomy::{load_taxonomy, FieldId};

fn estimate(subject: &str, field: Option<&str>) -> FieldEstimate {
    FieldEstimate {
        subject_id: subject.to_string(),
        ranked: field
            .map(|f| vec![(FieldId::from_name(f), frac(1, 1))])
            .unwrap_or_default(),
    }
}

fn researcher(id: &str, dept: &str, field: Option<&str>) -> (ResearcherRecord, FieldEstimate) {
    (
        ResearcherRecord {
            id: id.to_string(),
            department: dept.to_string(),
            free_text: vec![],
        },
        estimate(id, field),
    )
}

fn main() -> grantrec::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/taxonomy.tsv");
    let taxonomy = load_taxonomy(&std::fs::read_to_string(path).expect("fixture exists"))?;

    let grants = vec![
        estimate("food-grant", Some("Food science")),
        estimate("theory-grant", Some("Theory of informatics")),
        estimate("opaque-grant", None),
    ];
    let researchers = vec![
        researcher("r01", "Health Sciences", Some("Food science")),
        researcher("r02", "Health Sciences", Some("Applied microbiology")),
        researcher(
            "r03",
            "Management Information System",
            Some("Intelligent robotics"),
        ),
        researcher("r04", "Intercultural Studies", None),
    ];

    let reports = match_all(&grants, &researchers, &taxonomy)?;
    for report in &reports {
        println!("grant '{}':", report.grant_id);
        for entry in &report.entries {
            println!(
                "  {} ({}) matched at {}",
                entry.researcher_id,
                entry.department,
                entry.level.label()
            );
        }
        if report.entries.is_empty() {
            println!("  no matches");
        }
    }

    println!("\n{}", render_report_table(&reports));
    Ok(())
}
