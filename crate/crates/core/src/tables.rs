//! Tabulated leading terms of weight enumerators, as shipped with the crate,
//! and their comparison with computed enumerators.
//!
//! A row lists the first nonzero terms of the enumerator, starting with
//! `A_0 = 1`; it matches a computed enumerator when those are exactly the
//! computed enumerator's first nonzero terms.

use serde::{Deserialize, Serialize};

use crate::code::WeightEnumerator;

const A1: &str = include_str!("../tables/A1.json");
const A2: &str = include_str!("../tables/A2.json");
const A3: &str = include_str!("../tables/A3.json");

pub const TABLE_NAMES: [&str; 3] = ["A1", "A2", "A3"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub class: String,
    pub terms: Vec<(usize, u64)>,
}

impl TableRow {
    /// `A_w` as far as the row determines it: listed terms are exact and an
    /// unlisted weight below the last listed one has count zero.
    pub fn count_at(&self, w: usize) -> Option<u64> {
        match self.terms.iter().find(|t| t.0 == w) {
            Some(&(_, a)) => Some(a),
            None if self.terms.last().is_some_and(|t| t.0 > w) => Some(0),
            None => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableField {
    pub q: usize,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub version: u32,
    pub table: String,
    pub fields: Vec<TableField>,
}

impl Table {
    pub fn field(&self, q: usize) -> Option<&TableField> {
        self.fields.iter().find(|f| f.q == q)
    }

    pub fn orders(&self) -> Vec<usize> {
        self.fields.iter().map(|f| f.q).collect()
    }
}

/// One of `A1`, `A2`, `A3`.
pub fn table(name: &str) -> Option<Table> {
    let raw = match name.to_ascii_uppercase().as_str() {
        "A1" => A1,
        "A2" => A2,
        "A3" => A3,
        _ => return None,
    };
    Some(serde_json::from_str(raw).expect("shipped table parses"))
}

/// The table row for a class over `F_q`, searching all tables.
pub fn lookup(class: &str, q: usize) -> Option<TableRow> {
    TABLE_NAMES
        .iter()
        .filter_map(|n| table(n))
        .find_map(|t| t.field(q).and_then(|f| f.rows.iter().find(|r| r.class == class).cloned()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub class: String,
    pub expected: Vec<(usize, u64)>,
    /// The computed enumerator's first nonzero terms, as many as listed.
    pub computed: Vec<(usize, u64)>,
}

impl Comparison {
    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }

    /// Positions where listed and computed terms differ.
    pub fn mismatches(&self) -> Vec<usize> {
        (0..self.expected.len()).filter(|&i| self.expected.get(i) != self.computed.get(i)).collect()
    }
}

pub fn compare(row: &TableRow, e: &WeightEnumerator) -> Comparison {
    let computed = e.terms().into_iter().take(row.terms.len()).collect();
    Comparison { class: row.class.clone(), expected: row.terms.clone(), computed }
}
