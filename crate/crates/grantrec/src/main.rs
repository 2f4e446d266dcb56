//! Thin CLI over the staged pipeline. Exit codes: 0 success, 1 input error,
//! 2 configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use grantrec::config::PipelineConfig;
use grantrec::frac::{frac_to_string, parse_frac};
use grantrec::mining::MinSupport;
use grantrec::pipeline::{
    cmd_ingest, cmd_mine, cmd_report, cmd_run, IngestSummary, MineSummary, ReportOptions,
    ReportSummary,
};

#[derive(Parser)]
#[command(
    name = "grantrec",
    about = "Classify grant announcements and researchers into a research-field taxonomy and match them"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Turn corpus documents into per-grant transaction files
    Ingest(CommonArgs),
    /// Mine association rules from ingested transactions
    Mine(CommonArgs),
    /// Estimate research fields and write the match report
    Report(ReportArgs),
    /// Run ingest, mine and report in sequence
    Run(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Path to the `key = value` configuration file
    #[arg(long)]
    config: PathBuf,
    /// Override min_supp: a fraction `p/q`, a decimal, or `auto`
    #[arg(long)]
    min_supp: Option<String>,
    /// Override min_conf: a fraction `p/q` or a decimal
    #[arg(long)]
    min_conf: Option<String>,
    /// Override the output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Use a pre-computed grant estimates file instead of deriving from rules
    #[arg(long)]
    grant_estimates: Option<PathBuf>,
    /// Use a pre-computed researcher estimates file
    #[arg(long)]
    researcher_estimates: Option<PathBuf>,
}

fn load_config(args: &CommonArgs) -> grantrec::Result<PipelineConfig> {
    let mut cfg = PipelineConfig::from_file(&args.config)?;
    if let Some(v) = &args.min_supp {
        cfg.params.min_supp = MinSupport::parse(v)?;
    }
    if let Some(v) = &args.min_conf {
        cfg.params.min_conf = parse_frac(v)?;
    }
    if let Some(out) = &args.out {
        cfg.out_dir = out.clone();
    }
    cfg.params.validate()?;
    Ok(cfg)
}

fn print_ingest(summaries: &[IngestSummary]) {
    for s in summaries {
        println!(
            "ingest: grant '{}': {} transactions",
            s.grant_id, s.transactions
        );
    }
}

fn print_mine(summaries: &[MineSummary]) {
    for s in summaries {
        println!(
            "mine: grant '{}': min_supp resolved to {}, {} rules",
            s.grant_id,
            frac_to_string(&s.resolved_min_supp),
            s.rules
        );
    }
}

fn print_report(summary: &ReportSummary) {
    let matched = summary
        .reports
        .iter()
        .filter(|r| !r.entries.is_empty())
        .count();
    println!(
        "report: {} grants ({} with matches), {} researchers",
        summary.reports.len(),
        matched,
        summary.researchers
    );
}

fn run(cli: Cli) -> grantrec::Result<()> {
    match cli.cmd {
        Cmd::Ingest(args) => {
            let cfg = load_config(&args)?;
            print_ingest(&cmd_ingest(&cfg)?);
        }
        Cmd::Mine(args) => {
            let cfg = load_config(&args)?;
            print_mine(&cmd_mine(&cfg)?);
        }
        Cmd::Report(args) => {
            let cfg = load_config(&args.common)?;
            let opts = ReportOptions {
                grant_estimates: args.grant_estimates,
                researcher_estimates: args.researcher_estimates,
            };
            print_report(&cmd_report(&cfg, &opts)?);
        }
        Cmd::Run(args) => {
            let cfg = load_config(&args)?;
            let (ingest, mine, report) = cmd_run(&cfg)?;
            print_ingest(&ingest);
            print_mine(&mine);
            print_report(&report);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
