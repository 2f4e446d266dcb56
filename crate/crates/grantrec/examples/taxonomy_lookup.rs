//! Loading the keyword taxonomy and querying it.
//!
//! Run with: cargo run --example taxonomy_lookup

use grantrec::taxonomy::load_taxonomy;

fn main() -> grantrec::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/taxonomy.tsv");
    let taxonomy = load_taxonomy(&std::fs::read_to_string(path).expect("fixture exists"))?;

    println!(
        "loaded {} areas, {} disciplines, {} fields, {} keywords\n",
        taxonomy.area_count(),
        taxonomy.discipline_count(),
        taxonomy.field_count(),
        taxonomy.keyword_count()
    );

    for area in taxonomy.areas() {
        println!("{}", area.name);
        for disc in &area.disciplines {
            println!("  {}", disc.name);
            for field in &disc.fields {
                let keywords: Vec<&str> = field.keywords.iter().map(String::as_str).collect();
                println!("    {}: {}", field.name, keywords.join(", "));
            }
        }
    }

    println!();
    for item in ["machine learning", "robot", "zzz-not-a-keyword"] {
        let fields = taxonomy.fields_for_item(item);
        if fields.is_empty() {
            println!("'{item}' matches no research field");
        }
        for field in fields {
            let (discipline, area) = taxonomy.ancestors(&field)?;
            println!("'{item}' -> {field} (under {discipline}, {area})");
        }
    }
    Ok(())
}
