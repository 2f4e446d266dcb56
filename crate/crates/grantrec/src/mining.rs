//! Exact Apriori mining: frequent itemsets and association rules over a
//! [`TransactionDb`], with support and confidence kept as exact rationals.

use std::collections::{BTreeSet, HashMap};
use std::io::{BufRead, Write};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frac::{frac_to_string, parse_frac, Frac};
use crate::ingest::TransactionDb;

/// Sorted, duplicate-free collection of items.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemSet {
    items: Vec<String>,
}

impl ItemSet {
    pub fn new<I, S>(items: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = items.into_iter().map(Into::into).collect();
        ItemSet {
            items: set.into_iter().collect(),
        }
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn union(&self, other: &ItemSet) -> ItemSet {
        ItemSet::new(self.items.iter().chain(other.items.iter()).cloned())
    }

    pub fn is_disjoint(&self, other: &ItemSet) -> bool {
        self.items.iter().all(|i| !other.items.contains(i))
    }

    /// True when every item is contained in `transaction_items`.
    pub fn is_subset_of(&self, transaction_items: &BTreeSet<String>) -> bool {
        self.items.iter().all(|i| transaction_items.contains(i))
    }
}

impl std::fmt::Display for ItemSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}}}", self.items.join(", "))
    }
}

/// Itemset that cleared the support threshold, with its exact frequency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequentItemset {
    pub itemset: ItemSet,
    pub support_count: u64,
    pub support: Frac,
}

/// `antecedent => consequent` with exact support and confidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationRule {
    pub antecedent: ItemSet,
    pub consequent: ItemSet,
    pub support: Frac,
    pub confidence: Frac,
}

impl AssociationRule {
    pub fn new(
        antecedent: ItemSet,
        consequent: ItemSet,
        support: Frac,
        confidence: Frac,
    ) -> Result<Self> {
        if antecedent.is_empty() || consequent.is_empty() {
            return Err(Error::Argument("rule sides must both be non-empty".into()));
        }
        if !antecedent.is_disjoint(&consequent) {
            return Err(Error::Argument(
                "rule antecedent and consequent must be disjoint".into(),
            ));
        }
        Ok(AssociationRule {
            antecedent,
            consequent,
            support,
            confidence,
        })
    }

    /// All items mentioned by the rule.
    pub fn all_items(&self) -> impl Iterator<Item = &str> {
        self.antecedent
            .items()
            .iter()
            .chain(self.consequent.items())
            .map(String::as_str)
    }
}

#[derive(Serialize, Deserialize)]
struct RuleJson {
    lhs: Vec<String>,
    rhs: Vec<String>,
    support: String,
    confidence: String,
}

/// Writes rules as JSON lines:
/// `{"lhs":[...],"rhs":[...],"support":"p/q","confidence":"p/q"}`.
pub fn write_rules_jsonl(rules: &[AssociationRule], mut w: impl Write) -> Result<()> {
    for rule in rules {
        let row = RuleJson {
            lhs: rule.antecedent.items().to_vec(),
            rhs: rule.consequent.items().to_vec(),
            support: frac_to_string(&rule.support),
            confidence: frac_to_string(&rule.confidence),
        };
        serde_json::to_writer(&mut w, &row)?;
        w.write_all(b"\n")
            .map_err(|e| Error::Input(format!("write failed: {e}")))?;
    }
    Ok(())
}

pub fn rules_to_jsonl(rules: &[AssociationRule]) -> Result<String> {
    let mut buf = Vec::new();
    write_rules_jsonl(rules, &mut buf)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

pub fn read_rules_jsonl(r: impl BufRead) -> Result<Vec<AssociationRule>> {
    let mut rules = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::Input(format!("read failed: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        let row: RuleJson = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: idx + 1,
            msg: e.to_string(),
        })?;
        let rule = AssociationRule::new(
            ItemSet::new(row.lhs),
            ItemSet::new(row.rhs),
            parse_frac(&row.support)?,
            parse_frac(&row.confidence)?,
        )?;
        rules.push(rule);
    }
    Ok(rules)
}

/// Minimum support threshold: a fixed fraction, or the mean single-item
/// support of the database being mined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinSupport {
    Auto,
    Fixed(Frac),
}

impl MinSupport {
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim() == "auto" {
            Ok(MinSupport::Auto)
        } else {
            Ok(MinSupport::Fixed(parse_frac(s)?))
        }
    }

    pub fn resolve(&self, db: &TransactionDb) -> Result<Frac> {
        match self {
            MinSupport::Auto => auto_min_support(db),
            MinSupport::Fixed(f) => Ok(*f),
        }
    }
}

impl std::fmt::Display for MinSupport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MinSupport::Auto => f.write_str("auto"),
            MinSupport::Fixed(v) => f.write_str(&frac_to_string(v)),
        }
    }
}

/// Validated mining parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiningParams {
    pub min_supp: MinSupport,
    pub min_conf: Frac,
    /// Cap on frequent itemset cardinality.
    pub max_len: usize,
}

impl Default for MiningParams {
    fn default() -> Self {
        MiningParams {
            min_supp: MinSupport::Auto,
            min_conf: Frac::new(4, 5),
            max_len: 4,
        }
    }
}

impl MiningParams {
    pub fn validate(&self) -> Result<()> {
        if let MinSupport::Fixed(f) = &self.min_supp {
            if f.is_zero() || *f > Frac::from_integer(1) {
                return Err(Error::Config(format!(
                    "min_supp must be in (0,1], got {}",
                    frac_to_string(f)
                )));
            }
        }
        if self.min_conf.is_zero() || self.min_conf > Frac::from_integer(1) {
            return Err(Error::Config(format!(
                "min_conf must be in (0,1], got {}",
                frac_to_string(&self.min_conf)
            )));
        }
        if self.max_len < 2 {
            return Err(Error::Config("max_len must be at least 2".into()));
        }
        Ok(())
    }
}

fn support_count(db: &TransactionDb, s: &ItemSet) -> u64 {
    db.transactions()
        .iter()
        .filter(|tx| s.is_subset_of(&tx.items))
        .count() as u64
}

/// Fraction of transactions containing `s`: `|{t : s ⊆ t}| / M`.
pub fn support(db: &TransactionDb, s: &ItemSet) -> Result<Frac> {
    if s.is_empty() {
        return Err(Error::Argument("support of the empty itemset".into()));
    }
    if db.is_empty() {
        return Err(Error::Argument("support over an empty database".into()));
    }
    Ok(Frac::new(support_count(db, s), db.total() as u64))
}

/// Conditional frequency of `y` given `x`: `support(x ∪ y) / support(x)`.
pub fn confidence(db: &TransactionDb, x: &ItemSet, y: &ItemSet) -> Result<Frac> {
    if x.is_empty() {
        return Err(Error::Argument(
            "confidence needs a non-empty antecedent".into(),
        ));
    }
    if db.is_empty() {
        return Err(Error::Argument("confidence over an empty database".into()));
    }
    let x_count = support_count(db, x);
    if x_count == 0 {
        return Err(Error::UndefinedConfidence);
    }
    Ok(Frac::new(support_count(db, &x.union(y)), x_count))
}

/// Arithmetic mean of the single-item supports over the item universe.
pub fn auto_min_support(db: &TransactionDb) -> Result<Frac> {
    if db.is_empty() || db.item_universe().is_empty() {
        return Err(Error::Argument(
            "auto min support needs a non-empty database".into(),
        ));
    }
    let m = db.total() as u64;
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for tx in db.transactions() {
        for item in &tx.items {
            *counts.entry(item.as_str()).or_insert(0) += 1;
        }
    }
    let total: Frac = counts
        .values()
        .map(|&c| Frac::new(c, m))
        .fold(Frac::zero(), |acc, s| acc + s);
    Ok(total / Frac::from_integer(db.item_universe().len() as u64))
}

/// Level-wise Apriori.
///
/// `C1` is the single items; each `L_k` keeps the candidates at or above
/// `min_supp`; `C_{k+1}` joins `L_k` pairs sharing a `(k-1)`-prefix and prunes
/// candidates with an infrequent `k`-subset. Stops when no candidates remain
/// or the cardinality cap is reached. Output is sorted by (cardinality,
/// lexicographic items).
pub fn frequent_itemsets(
    db: &TransactionDb,
    min_supp: Frac,
    max_len: usize,
) -> Result<Vec<FrequentItemset>> {
    if min_supp.is_zero() || min_supp > Frac::from_integer(1) {
        return Err(Error::Argument(format!(
            "min_supp must be in (0,1], got {}",
            frac_to_string(&min_supp)
        )));
    }
    let m = db.total() as u64;
    let mut result: Vec<FrequentItemset> = Vec::new();
    if m == 0 {
        return Ok(result);
    }

    let mut level: Vec<ItemSet> = db
        .item_universe()
        .iter()
        .map(|item| ItemSet::new([item.clone()]))
        .collect();

    let mut k = 1;
    while !level.is_empty() && k <= max_len {
        let mut frequent_level: Vec<FrequentItemset> = Vec::new();
        for candidate in level {
            let count = support_count(db, &candidate);
            let supp = Frac::new(count, m);
            if supp >= min_supp {
                frequent_level.push(FrequentItemset {
                    itemset: candidate,
                    support_count: count,
                    support: supp,
                });
            }
        }
        frequent_level.sort_by(|a, b| a.itemset.cmp(&b.itemset));
        level = join_level(&frequent_level);
        result.extend(frequent_level);
        k += 1;
    }

    result.sort_by(|a, b| {
        a.itemset
            .len()
            .cmp(&b.itemset.len())
            .then_with(|| a.itemset.cmp(&b.itemset))
    });
    Ok(result)
}

/// Joins `L_k` pairs sharing a `(k-1)`-prefix, then prunes candidates that
/// have an infrequent `k`-subset (downward closure).
fn join_level(frequent: &[FrequentItemset]) -> Vec<ItemSet> {
    if frequent.is_empty() {
        return Vec::new();
    }
    let k = frequent[0].itemset.len();
    let members: BTreeSet<&[String]> = frequent.iter().map(|f| f.itemset.items()).collect();
    let mut candidates = Vec::new();
    for i in 0..frequent.len() {
        for j in (i + 1)..frequent.len() {
            let a = frequent[i].itemset.items();
            let b = frequent[j].itemset.items();
            if a[..k - 1] != b[..k - 1] {
                // itemsets are sorted; once prefixes diverge no later j matches
                break;
            }
            let mut items = a.to_vec();
            items.push(b[k - 1].clone());
            let candidate = ItemSet { items };
            if all_k_subsets_frequent(&candidate, &members) {
                candidates.push(candidate);
            }
        }
    }
    candidates
}

fn all_k_subsets_frequent(candidate: &ItemSet, members: &BTreeSet<&[String]>) -> bool {
    let items = candidate.items();
    (0..items.len()).all(|skip| {
        let subset: Vec<String> = items
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, s)| s.clone())
            .collect();
        members.contains(subset.as_slice())
    })
}

/// Emits `X => Z\X` for every frequent `Z` (`|Z| >= 2`) and every non-empty
/// proper subset `X` whose confidence reaches `min_conf`. Rule support is
/// `support(Z)`. Output is sorted by (support desc, confidence desc,
/// antecedent, consequent).
pub fn generate_rules(
    freq: &[FrequentItemset],
    db: &TransactionDb,
    min_conf: Frac,
) -> Vec<AssociationRule> {
    let counts: HashMap<&[String], u64> = freq
        .iter()
        .map(|f| (f.itemset.items(), f.support_count))
        .collect();
    let count_of = |s: &ItemSet| -> u64 {
        counts
            .get(s.items())
            .copied()
            .unwrap_or_else(|| support_count(db, s))
    };

    let mut rules = Vec::new();
    for f in freq.iter().filter(|f| f.itemset.len() >= 2) {
        let items = f.itemset.items();
        let n = items.len();
        // bitmask enumeration of non-empty proper subsets as antecedents
        for mask in 1..((1u32 << n) - 1) {
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for (i, item) in items.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    lhs.push(item.clone());
                } else {
                    rhs.push(item.clone());
                }
            }
            let antecedent = ItemSet { items: lhs };
            let conf = Frac::new(f.support_count, count_of(&antecedent));
            if conf >= min_conf {
                rules.push(AssociationRule {
                    antecedent,
                    consequent: ItemSet { items: rhs },
                    support: f.support,
                    confidence: conf,
                });
            }
        }
    }
    sort_rules(&mut rules);
    rules
}

pub(crate) fn sort_rules(rules: &mut [AssociationRule]) {
    rules.sort_by(|a, b| {
        b.support
            .cmp(&a.support)
            .then_with(|| b.confidence.cmp(&a.confidence))
            .then_with(|| a.antecedent.cmp(&b.antecedent))
            .then_with(|| a.consequent.cmp(&b.consequent))
    });
}
