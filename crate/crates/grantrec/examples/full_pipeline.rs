//! The staged pipeline (ingest -> mine -> report) over the bundled sample
//! corpus of three grants and five researchers.
//!
//! Run with: cargo run --example full_pipeline

use std::path::Path;

use grantrec::config::PipelineConfig;
use grantrec::frac::frac_to_string;
use grantrec::pipeline::cmd_run;

fn main() -> grantrec::Result<()> {
    let fixtures = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"));
    let out = tempfile::tempdir().expect("temp dir");

    let mut cfg = PipelineConfig::from_file(&fixtures.join("pipeline.conf"))?;
    cfg.out_dir = out.path().to_path_buf();

    let (ingest, mine, report) = cmd_run(&cfg)?;

    println!("ingested:");
    for s in &ingest {
        println!("  {}: {} transactions", s.grant_id, s.transactions);
    }
    println!("mined:");
    for s in &mine {
        println!(
            "  {}: min_supp {}, {} rules",
            s.grant_id,
            frac_to_string(&s.resolved_min_supp),
            s.rules
        );
    }
    let matched = report
        .reports
        .iter()
        .filter(|r| !r.entries.is_empty())
        .count();
    println!(
        "matched {matched} of {} grants against {} researchers",
        report.reports.len(),
        report.researchers
    );

    println!("\nmatch report:\n");
    let table = std::fs::read_to_string(out.path().join("report/match_report.txt"))
        .expect("report written");
    println!("{table}");
    println!("artifacts were written to {}", out.path().display());
    Ok(())
}
