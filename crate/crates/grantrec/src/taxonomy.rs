//! Four-level research-field taxonomy: Area > Discipline > Research Field >
//! Keyword. Loaded from a TSV table, queried through a reverse keyword index.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::normalize::normalize;

macro_rules! id_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            /// Builds the id from a display name (normalized form is the id).
            pub fn from_name(name: &str) -> Self {
                Self(normalize(name))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

id_type!(
    /// Stable identifier of an area (level 1).
    AreaId
);
id_type!(
    /// Stable identifier of a discipline (level 2).
    DisciplineId
);
id_type!(
    /// Stable identifier of a research field (level 3).
    FieldId
);

/// Research field node: a set of normalized keywords under one discipline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldNode {
    pub id: FieldId,
    pub name: String,
    pub keywords: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisciplineNode {
    pub id: DisciplineId,
    pub name: String,
    pub fields: Vec<FieldNode>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AreaNode {
    pub id: AreaId,
    pub name: String,
    pub disciplines: Vec<DisciplineNode>,
}

/// Immutable keyword taxonomy. Construct with [`load_taxonomy`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Taxonomy {
    areas: Vec<AreaNode>,
    keyword_index: BTreeMap<String, BTreeSet<FieldId>>,
    parents: BTreeMap<FieldId, (DisciplineId, AreaId)>,
    field_names: BTreeMap<FieldId, String>,
}

const HEADER: [&str; 4] = ["area", "discipline", "field", "keyword"];

/// Loads a taxonomy from tab-separated text.
///
/// Expected layout: a header row `area<TAB>discipline<TAB>field<TAB>keyword`,
/// then one keyword per row. A blank cell inherits the value of the same cell
/// in the previous row, so tables can be pasted in the indented style they
/// are usually published in. Row order does not affect the result.
pub fn load_taxonomy(source: &str) -> Result<Taxonomy> {
    let mut lines = source.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Validation("empty taxonomy stream".into()))?;
    let cells: Vec<&str> = header.split('\t').collect();
    if cells.len() != 4 || !cells.iter().zip(HEADER).all(|(c, h)| normalize(c) == h) {
        return Err(Error::Parse {
            line: 1,
            msg: format!("expected header '{}'", HEADER.join("\\t")),
        });
    }

    // (area, discipline, field) display names -> keywords, with carry-down.
    let mut rows: BTreeMap<(String, String, String), BTreeSet<String>> = BTreeMap::new();
    let mut carry: [Option<String>; 4] = [None, None, None, None];
    let mut saw_row = false;
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split('\t').collect();
        if cells.len() != 4 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected 4 tab-separated columns, found {}", cells.len()),
            });
        }
        let mut row: [String; 4] = Default::default();
        for (i, cell) in cells.iter().enumerate() {
            let cell = cell.trim();
            if cell.is_empty() {
                row[i] = carry[i].clone().ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: format!(
                        "blank '{}' cell with no previous value to inherit",
                        HEADER[i]
                    ),
                })?;
            } else {
                row[i] = cell.to_string();
                carry[i] = Some(row[i].clone());
            }
        }
        let [area, discipline, field, keyword] = row;
        saw_row = true;
        rows.entry((area, discipline, field))
            .or_default()
            .insert(normalize(&keyword));
    }
    if !saw_row {
        return Err(Error::Validation("taxonomy has no data rows".into()));
    }
    build(rows)
}

fn build(rows: BTreeMap<(String, String, String), BTreeSet<String>>) -> Result<Taxonomy> {
    let mut areas: BTreeMap<AreaId, AreaNode> = BTreeMap::new();
    let mut discipline_area: BTreeMap<DisciplineId, AreaId> = BTreeMap::new();
    let mut field_discipline: BTreeMap<FieldId, DisciplineId> = BTreeMap::new();
    // assembled per (area, discipline) before being attached to the tree
    let mut fields: BTreeMap<(AreaId, DisciplineId), BTreeMap<FieldId, FieldNode>> =
        BTreeMap::new();
    let mut disc_names: BTreeMap<DisciplineId, String> = BTreeMap::new();

    for ((area, discipline, field), keywords) in rows {
        let area_id = AreaId::from_name(&area);
        let disc_id = DisciplineId::from_name(&discipline);
        let field_id = FieldId::from_name(&field);

        areas.entry(area_id.clone()).or_insert_with(|| AreaNode {
            id: area_id.clone(),
            name: area.clone(),
            disciplines: Vec::new(),
        });
        match discipline_area.get(&disc_id) {
            None => {
                discipline_area.insert(disc_id.clone(), area_id.clone());
                disc_names.insert(disc_id.clone(), discipline.clone());
            }
            Some(existing) if *existing != area_id => {
                return Err(Error::Validation(format!(
                    "discipline '{discipline}' appears under two areas"
                )));
            }
            Some(_) => {}
        }
        match field_discipline.get(&field_id) {
            None => {
                field_discipline.insert(field_id.clone(), disc_id.clone());
            }
            Some(existing) if *existing != disc_id => {
                return Err(Error::Validation(format!(
                    "research field '{field}' appears under two disciplines"
                )));
            }
            Some(_) => {}
        }

        let node = fields
            .entry((area_id, disc_id))
            .or_default()
            .entry(field_id.clone())
            .or_insert_with(|| FieldNode {
                id: field_id,
                name: field.clone(),
                keywords: BTreeSet::new(),
            });
        node.keywords.extend(keywords);
    }

    let mut keyword_index: BTreeMap<String, BTreeSet<FieldId>> = BTreeMap::new();
    let mut parents = BTreeMap::new();
    let mut field_names = BTreeMap::new();
    for ((area_id, disc_id), field_map) in fields {
        let disc_node = DisciplineNode {
            id: disc_id.clone(),
            name: disc_names[&disc_id].clone(),
            fields: field_map.into_values().collect(),
        };
        for field in &disc_node.fields {
            parents.insert(field.id.clone(), (disc_id.clone(), area_id.clone()));
            field_names.insert(field.id.clone(), field.name.clone());
            for kw in &field.keywords {
                keyword_index
                    .entry(kw.clone())
                    .or_default()
                    .insert(field.id.clone());
            }
        }
        areas
            .get_mut(&area_id)
            .expect("area inserted above")
            .disciplines
            .push(disc_node);
    }

    Ok(Taxonomy {
        areas: areas.into_values().collect(),
        keyword_index,
        parents,
        field_names,
    })
}

impl Taxonomy {
    pub fn areas(&self) -> &[AreaNode] {
        &self.areas
    }

    /// Research fields whose keyword set contains `item`. The item must
    /// already be normalized. Returns the empty set for unknown items.
    pub fn fields_for_item(&self, item: &str) -> BTreeSet<FieldId> {
        self.keyword_index.get(item).cloned().unwrap_or_default()
    }

    /// Parent discipline and area of a research field.
    pub fn ancestors(&self, field: &FieldId) -> Result<(DisciplineId, AreaId)> {
        self.parents
            .get(field)
            .cloned()
            .ok_or_else(|| Error::UnknownField(field.as_str().to_string()))
    }

    pub fn field_name(&self, field: &FieldId) -> Option<&str> {
        self.field_names.get(field).map(String::as_str)
    }

    /// All normalized keywords, including multi-word phrases.
    pub fn keywords(&self) -> impl Iterator<Item = &str> {
        self.keyword_index.keys().map(String::as_str)
    }

    pub fn keyword_count(&self) -> usize {
        self.keyword_index.len()
    }

    pub fn field_count(&self) -> usize {
        self.parents.len()
    }

    pub fn discipline_count(&self) -> usize {
        self.areas.iter().map(|a| a.disciplines.len()).sum()
    }

    pub fn area_count(&self) -> usize {
        self.areas.len()
    }

    /// Canonical TSV rendering: full cells, rows sorted. Loading the output
    /// reproduces the same taxonomy value.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("area\tdiscipline\tfield\tkeyword\n");
        for area in &self.areas {
            for disc in &area.disciplines {
                for field in &disc.fields {
                    for kw in &field.keywords {
                        out.push_str(&format!(
                            "{}\t{}\t{}\t{}\n",
                            area.name, disc.name, field.name, kw
                        ));
                    }
                }
            }
        }
        out
    }
}
