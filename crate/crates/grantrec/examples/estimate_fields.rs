//! Research-field estimation for a grant (from mined rules) and a
//! researcher (from profile keywords).
//!
//! Run with: cargo run --example estimate_fields

use grantrec::fieldest::{
    estimate_grant_field, estimate_researcher_field, GrantScoring, ResearcherRecord,
};
use grantrec::frac::{frac, frac_to_string};
use grantrec::ingest::TokenizerConfig;
use grantrec::mining::{AssociationRule, ItemSet};
use grantrec::taxonomy::load_taxonomy;

fn main() -> grantrec::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/taxonomy.tsv");
    let taxonomy = load_taxonomy(&std::fs::read_to_string(path).expect("fixture exists"))?;

    // rules as a grant miner would emit them
    let rules = vec![
        AssociationRule::new(
            ItemSet::new(["artificial"]),
            ItemSet::new(["intelligence"]),
            frac(31, 300),
            frac(47, 50),
        )?,
        AssociationRule::new(
            ItemSet::new(["venture"]),
            ItemSet::new(["robot"]),
            frac(1, 1000),
            frac(1, 1),
        )?,
    ];
    let grant = estimate_grant_field(
        "demo-grant",
        &rules,
        &taxonomy,
        GrantScoring::SupportWeighted,
    );
    println!("grant '{}' ranking:", grant.subject_id);
    for (field, score) in &grant.ranked {
        println!("  {field}  score {}", frac_to_string(score));
    }
    match grant.top() {
        Some(top) => {
            let (discipline, area) = taxonomy.ancestors(top)?;
            println!("  -> classified as {area} / {discipline} / {top}\n");
        }
        None => println!("  -> unclassifiable\n"),
    }

    // researcher profiles are too short to mine; keywords are counted instead
    let record = ResearcherRecord {
        id: "demo-researcher".into(),
        department: "Health Sciences".into(),
        free_text: vec![
            "Food science and nutrient analysis".into(),
            "Dietary protein in school meals".into(),
        ],
    };
    let cfg = TokenizerConfig::default().with_taxonomy_phrases(&taxonomy);
    let researcher = estimate_researcher_field(&record, &taxonomy, &cfg)?;
    println!("researcher '{}' ranking:", researcher.subject_id);
    for (field, score) in &researcher.ranked {
        println!("  {field}  score {}", frac_to_string(score));
    }
    println!("\nserialized: {}", researcher.to_json_line()?);
    Ok(())
}
