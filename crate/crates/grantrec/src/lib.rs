//! Grant-to-researcher recommendation by association-rule mining over a
//! hierarchical keyword taxonomy.
//!
//! Grant announcement pages are ingested into keyword transactions (one per
//! paragraph), mined for frequent association rules with an exact Apriori
//! implementation, and classified into a four-level research-field taxonomy
//! (Area > Discipline > Research Field > Keyword). Researcher profiles are
//! classified by direct keyword counting, and each grant is matched to
//! researchers at the most specific taxonomy level where their estimated
//! fields agree.
//!
//! The `examples/` directory has one runnable example per capability:
//!
//! ```text
//! cargo run --example basket_mining       # support, confidence, Apriori
//! cargo run --example strip_html          # tag stripping + segmentation
//! cargo run --example taxonomy_lookup     # taxonomy loading and queries
//! cargo run --example estimate_fields     # grant & researcher estimation
//! cargo run --example match_researchers   # three-level matching
//! cargo run --example full_pipeline       # staged pipeline over a corpus
//! ```
//!
//! The same pipeline is scriptable through the thin `grantrec` binary
//! (`ingest`, `mine`, `report`, `run` subcommands).
//!
//! All supports, confidences and scores are exact rationals; every stage is
//! deterministic, so identical inputs produce byte-identical outputs.

pub mod config;
pub mod error;
pub mod fieldest;
pub mod frac;
pub mod ingest;
pub mod matching;
pub mod mining;
pub mod normalize;
pub mod pipeline;
pub mod taxonomy;

pub use error::{Error, Result};
pub use frac::Frac;
