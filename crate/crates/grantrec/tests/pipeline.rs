//! Stage-level and CLI-level pipeline tests over the bundled fixtures and
//! small generated corpora.

mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use grantrec::config::PipelineConfig;
use grantrec::ingest::TransactionDb;
use grantrec::pipeline::{cmd_ingest, cmd_mine, cmd_report, ReportOptions};

fn fixture_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

fn fixture_config(out_dir: &Path) -> PipelineConfig {
    let mut cfg = PipelineConfig::from_file(&fixture_dir().join("pipeline.conf")).unwrap();
    cfg.out_dir = out_dir.to_path_buf();
    cfg
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grantrec"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Writes a minimal config plus support files into `dir`.
fn write_scratch_config(dir: &Path, extra: &str) -> PathBuf {
    fs::write(
        dir.join("taxonomy.tsv"),
        "area\tdiscipline\tfield\tkeyword\nA\tB\tC\tunrelated keyword\n",
    )
    .unwrap();
    fs::write(dir.join("researchers.jsonl"), "").unwrap();
    let conf = format!(
        "corpus_dir = corpus\ntaxonomy = taxonomy.tsv\nresearchers = researchers.jsonl\nout_dir = out\nmin_supp = auto\nmin_conf = 0.8\n{extra}"
    );
    let path = dir.join("pipeline.conf");
    fs::write(&path, conf).unwrap();
    path
}

#[test]
fn bundled_taxonomy_has_the_documented_shape() {
    // row counts derived by script from fixtures/taxonomy.tsv
    let text = fs::read_to_string(fixture_dir().join("taxonomy.tsv")).unwrap();
    let taxonomy = grantrec::taxonomy::load_taxonomy(&text).unwrap();
    assert_eq!(taxonomy.area_count(), 3);
    assert_eq!(taxonomy.discipline_count(), 4);
    assert_eq!(taxonomy.field_count(), 6);
    assert_eq!(taxonomy.keyword_count(), 24);

    let food = grantrec::taxonomy::FieldId::from_name("Food science");
    let (discipline, area) = taxonomy.ancestors(&food).unwrap();
    assert_eq!(discipline.as_str(), "agricultural chemistry");
    assert_eq!(area.as_str(), "agricultural sciences");
}

#[test]
fn ingest_writes_one_transaction_file_per_grant() {
    let out = tempfile::tempdir().unwrap();
    let summaries = cmd_ingest(&fixture_config(out.path())).unwrap();
    let names: Vec<(&str, usize)> = summaries
        .iter()
        .map(|s| (s.grant_id.as_str(), s.transactions))
        .collect();
    assert_eq!(names, [("g-airpf", 8), ("g-food", 8), ("g-lit", 8)]);
    for (grant, _) in names {
        assert!(out
            .path()
            .join("transactions")
            .join(format!("{grant}.jsonl"))
            .is_file());
    }

    let text = fs::read_to_string(out.path().join("transactions/g-airpf.jsonl")).unwrap();
    let db = TransactionDb::read_jsonl(text.as_bytes()).unwrap();
    for item in ["artificial", "intelligence", "robot"] {
        assert!(db.item_universe().contains(item), "missing {item}");
    }
}

#[test]
fn empty_corpus_dir_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("corpus")).unwrap();
    let config = write_scratch_config(dir.path(), "");
    let output = run_cli(&["ingest", "--config", config.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("error"));
}

#[test]
fn html_grant_ingests_like_its_prestripped_twin() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    let html_body = "<html><body><p>Robot sensor &amp; intelligence lab</p>\n\n<p>A <b>robot</b> needs vision</p></body></html>\n";
    fs::create_dir_all(corpus.join("twin-html")).unwrap();
    fs::write(corpus.join("twin-html/doc.html"), html_body).unwrap();
    fs::create_dir_all(corpus.join("twin-text")).unwrap();
    // pre-stripped offline by the reference implementation
    fs::write(
        corpus.join("twin-text/doc.txt"),
        common::reference_strip_html(html_body),
    )
    .unwrap();
    let config = write_scratch_config(dir.path(), "");

    let mut cfg = PipelineConfig::from_file(&config).unwrap();
    let out = tempfile::tempdir().unwrap();
    cfg.out_dir = out.path().to_path_buf();
    cmd_ingest(&cfg).unwrap();

    let load = |name: &str| -> Vec<(usize, Vec<String>)> {
        let text = fs::read_to_string(out.path().join("transactions").join(name)).unwrap();
        TransactionDb::read_jsonl(text.as_bytes())
            .unwrap()
            .transactions()
            .iter()
            .map(|t| (t.ordinal, t.items.iter().cloned().collect()))
            .collect()
    };
    assert_eq!(load("twin-html.jsonl"), load("twin-text.jsonl"));
}

#[test]
fn four_visual_paragraphs_become_four_transactions() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus").join("g");
    fs::create_dir_all(&corpus).unwrap();
    fs::write(
        corpus.join("doc.txt"),
        "first paragraph here\n\nsecond one\n\n\nthird block\nstill third\n\nfourth\n",
    )
    .unwrap();
    let config = write_scratch_config(dir.path(), "");
    let mut cfg = PipelineConfig::from_file(&config).unwrap();
    let out = tempfile::tempdir().unwrap();
    cfg.out_dir = out.path().to_path_buf();
    let summaries = cmd_ingest(&cfg).unwrap();
    assert_eq!(summaries[0].transactions, 4);
}

/// The five-transaction example database, encoded as a plain-text corpus.
fn write_example_corpus(dir: &Path) {
    let grant = dir.join("corpus").join("table");
    fs::create_dir_all(&grant).unwrap();
    fs::write(
        grant.join("doc.txt"),
        "item1 item2\n\nitem2 item3 item5\n\nitem2 item3\n\nitem4\n\nitem2 item3\n",
    )
    .unwrap();
}

#[test]
fn mine_with_auto_support_extracts_exactly_one_rule() {
    let dir = tempfile::tempdir().unwrap();
    write_example_corpus(dir.path());
    let config = write_scratch_config(dir.path(), "");
    let out = tempfile::tempdir().unwrap();

    let ingest = run_cli(&[
        "ingest",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.path().to_str().unwrap(),
    ]);
    assert!(ingest.status.success());

    let mine = run_cli(&[
        "mine",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.path().to_str().unwrap(),
    ]);
    assert!(mine.status.success());
    // auto resolves to the mean single-item support, 2/5
    assert!(String::from_utf8_lossy(&mine.stdout).contains("min_supp resolved to 2/5"));

    let rules = fs::read_to_string(out.path().join("rules/table.jsonl")).unwrap();
    assert_eq!(
        rules,
        "{\"lhs\":[\"item3\"],\"rhs\":[\"item2\"],\"support\":\"3/5\",\"confidence\":\"1/1\"}\n"
    );
}

#[test]
fn mine_rerun_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    write_example_corpus(dir.path());
    let config = write_scratch_config(dir.path(), "");
    let out = tempfile::tempdir().unwrap();
    let mut cfg = PipelineConfig::from_file(&config).unwrap();
    cfg.out_dir = out.path().to_path_buf();

    cmd_ingest(&cfg).unwrap();
    cmd_mine(&cfg).unwrap();
    let first = fs::read(out.path().join("rules/table.jsonl")).unwrap();
    cmd_mine(&cfg).unwrap();
    let second = fs::read(out.path().join("rules/table.jsonl")).unwrap();
    assert_eq!(first, second);
}

#[test]
fn invalid_min_conf_override_is_a_config_error() {
    let output = run_cli(&[
        "mine",
        "--config",
        fixture_dir().join("pipeline.conf").to_str().unwrap(),
        "--min-conf",
        "1.01",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("min_conf"));
}

#[test]
fn fixture_rules_for_the_robotics_grant_are_stable() {
    let out = tempfile::tempdir().unwrap();
    let cfg = fixture_config(out.path());
    cmd_ingest(&cfg).unwrap();
    let summaries = cmd_mine(&cfg).unwrap();
    let airpf = summaries.iter().find(|s| s.grant_id == "g-airpf").unwrap();
    assert_eq!(airpf.rules, 8);

    let rules = fs::read_to_string(out.path().join("rules/g-airpf.jsonl")).unwrap();
    // hand-derived from the planted co-occurrences
    let expected = "\
{\"lhs\":[\"artificial\"],\"rhs\":[\"intelligence\"],\"support\":\"3/4\",\"confidence\":\"1/1\"}
{\"lhs\":[\"robot\"],\"rhs\":[\"intelligence\"],\"support\":\"5/8\",\"confidence\":\"1/1\"}
{\"lhs\":[\"artificial\",\"robot\"],\"rhs\":[\"intelligence\"],\"support\":\"1/2\",\"confidence\":\"1/1\"}
{\"lhs\":[\"intelligence\",\"robot\"],\"rhs\":[\"artificial\"],\"support\":\"1/2\",\"confidence\":\"4/5\"}
{\"lhs\":[\"robot\"],\"rhs\":[\"artificial\"],\"support\":\"1/2\",\"confidence\":\"4/5\"}
{\"lhs\":[\"robot\"],\"rhs\":[\"artificial\",\"intelligence\"],\"support\":\"1/2\",\"confidence\":\"4/5\"}
{\"lhs\":[\"sensor\"],\"rhs\":[\"intelligence\"],\"support\":\"3/8\",\"confidence\":\"1/1\"}
{\"lhs\":[\"robot\",\"sensor\"],\"rhs\":[\"intelligence\"],\"support\":\"1/4\",\"confidence\":\"1/1\"}
";
    assert_eq!(rules, expected);
}

#[test]
fn report_with_zero_researchers_succeeds_with_empty_entries() {
    let dir = tempfile::tempdir().unwrap();
    write_example_corpus(dir.path());
    let config = write_scratch_config(dir.path(), "");
    let out = tempfile::tempdir().unwrap();
    let mut cfg = PipelineConfig::from_file(&config).unwrap();
    cfg.out_dir = out.path().to_path_buf();

    cmd_ingest(&cfg).unwrap();
    cmd_mine(&cfg).unwrap();
    let summary = cmd_report(&cfg, &ReportOptions::default()).unwrap();
    assert_eq!(summary.researchers, 0);
    assert!(summary.reports.iter().all(|r| r.entries.is_empty()));
}

#[test]
fn injected_unknown_field_id_fails_as_taxonomy_mismatch() {
    let out = tempfile::tempdir().unwrap();
    let cfg = fixture_config(out.path());
    cmd_ingest(&cfg).unwrap();
    cmd_mine(&cfg).unwrap();

    let bogus = out.path().join("tampered.jsonl");
    fs::write(
        &bogus,
        "{\"subject\":\"g-airpf\",\"top\":\"not a real field\",\"ranked\":[[\"not a real field\",\"1/1\"]]}\n",
    )
    .unwrap();
    let output = run_cli(&[
        "report",
        "--config",
        fixture_dir().join("pipeline.conf").to_str().unwrap(),
        "--out",
        out.path().to_str().unwrap(),
        "--grant-estimates",
        bogus.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("unknown field id"));
}

#[test]
fn report_accepts_precomputed_estimates() {
    let out = tempfile::tempdir().unwrap();
    let cfg = fixture_config(out.path());
    cmd_ingest(&cfg).unwrap();
    cmd_mine(&cfg).unwrap();
    let first = cmd_report(&cfg, &ReportOptions::default()).unwrap();

    // feeding the serialized estimates back reproduces the same reports
    let opts = ReportOptions {
        grant_estimates: Some(out.path().join("estimates/grants.jsonl")),
        researcher_estimates: Some(out.path().join("estimates/researchers.jsonl")),
    };
    let second = cmd_report(&cfg, &opts).unwrap();
    assert_eq!(first.reports, second.reports);
}

#[test]
fn unreadable_document_warns_and_all_unreadable_fails() {
    let dir = tempfile::tempdir().unwrap();
    let grant = dir.path().join("corpus").join("g");
    fs::create_dir_all(&grant).unwrap();
    // not valid UTF-8
    fs::write(grant.join("bad.txt"), [0xff, 0xfe, 0x00, 0x01]).unwrap();
    fs::write(grant.join("good.txt"), "robot sensor intelligence\n").unwrap();
    let config = write_scratch_config(dir.path(), "");
    let out = tempfile::tempdir().unwrap();

    let output = run_cli(&[
        "ingest",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.path().to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("warning"));
    assert!(String::from_utf8_lossy(&output.stdout).contains("1 transactions"));

    // when every document is unreadable the stage fails
    fs::remove_file(grant.join("good.txt")).unwrap();
    let output = run_cli(&[
        "ingest",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.path().to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn missing_taxonomy_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    write_example_corpus(dir.path());
    let config = write_scratch_config(dir.path(), "");
    fs::remove_file(dir.path().join("taxonomy.tsv")).unwrap();
    let output = run_cli(&["report", "--config", config.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
}
