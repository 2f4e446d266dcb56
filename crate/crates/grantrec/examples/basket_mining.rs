//! Frequent itemsets and association rules over a small in-memory database.
//!
//! Run with: cargo run --example basket_mining

use std::collections::BTreeSet;

use grantrec::frac::{frac, frac_decimal4, frac_to_string};
use grantrec::ingest::TransactionDb;
use grantrec::mining::{
    auto_min_support, confidence, frequent_itemsets, generate_rules, support, ItemSet,
};

fn main() {
    let db = TransactionDb::from_item_sets(vec![
        BTreeSet::from(["item1", "item2"]),
        BTreeSet::from(["item2", "item3", "item5"]),
        BTreeSet::from(["item2", "item3"]),
        BTreeSet::from(["item4"]),
        BTreeSet::from(["item2", "item3"]),
    ]);
    println!(
        "database: {} transactions, {} distinct items\n",
        db.total(),
        db.item_universe().len()
    );

    let x = ItemSet::new(["item2"]);
    let y = ItemSet::new(["item3"]);
    let pair = x.union(&y);
    println!(
        "support({pair}) = {}",
        frac_to_string(&support(&db, &pair).unwrap())
    );
    println!(
        "confidence({x} => {y}) = {}\n",
        frac_to_string(&confidence(&db, &x, &y).unwrap())
    );

    let min_supp = auto_min_support(&db).unwrap();
    println!("auto min support = {}", frac_to_string(&min_supp));

    let freq = frequent_itemsets(&db, min_supp, 4).unwrap();
    println!("frequent itemsets at that threshold:");
    for f in &freq {
        println!("  {}  support {}", f.itemset, frac_to_string(&f.support));
    }

    let rules = generate_rules(&freq, &db, frac(4, 5));
    println!("\nrules at min confidence 4/5:");
    for r in &rules {
        println!(
            "  {} => {}  support {}  confidence {}",
            r.antecedent,
            r.consequent,
            frac_decimal4(&r.support),
            frac_decimal4(&r.confidence)
        );
    }
}
