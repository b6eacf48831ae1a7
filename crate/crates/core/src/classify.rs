//! Lattice-equivalence classes of polygons with 3 to 6 lattice points, and
//! the vertex-extension search that produces each size from the previous.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{convex_hull, lattice_equivalent, LatticePoint, LatticePolygon, UnimodularAffineMap};

pub const CATALOG_VERSION: u32 = 1;
/// Extra margin around the parent's bounding box scanned for new vertices.
pub const SEARCH_MARGIN: i64 = 9;

const CATALOG_JSON: &str = include_str!("../data/catalog.json");
const TABLE1_JSON: &str = include_str!("../data/table1.json");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("catalog covers 3 to 6 lattice points, got {0}")]
    SizeOutOfRange(u64),
    #[error("no catalog class matches {0}")]
    NoMatch(LatticePolygon),
    #[error("unknown class {0}")]
    UnknownClass(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub id: String,
    pub k: usize,
    #[serde(rename = "vertices")]
    pub polygon: LatticePolygon,
}

#[derive(Deserialize)]
struct CatalogFile {
    version: u32,
    classes: Vec<ClassRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionRecord {
    pub parent: String,
    pub v: LatticePoint,
    pub child: String,
}

fn load_catalog() -> Vec<ClassRecord> {
    let file: CatalogFile = serde_json::from_str(CATALOG_JSON).expect("catalog data parses");
    assert_eq!(file.version, CATALOG_VERSION, "catalog version");
    for c in &file.classes {
        assert_eq!(c.polygon.lattice_point_count(), c.k as u64, "{} should have {} lattice points", c.id, c.k);
    }
    for (i, a) in file.classes.iter().enumerate() {
        for b in &file.classes[i + 1..] {
            if a.k == b.k {
                assert!(lattice_equivalent(&a.polygon, &b.polygon).is_none(), "{} and {} are equivalent", a.id, b.id);
            }
        }
    }
    file.classes
}

/// Every record, checked on first use.
pub fn full_catalog() -> &'static [ClassRecord] {
    static CATALOG: OnceLock<Vec<ClassRecord>> = OnceLock::new();
    CATALOG.get_or_init(load_catalog)
}

pub fn catalog(k: usize) -> Result<Vec<&'static ClassRecord>, ClassifyError> {
    if !(3..=6).contains(&k) {
        return Err(ClassifyError::SizeOutOfRange(k as u64));
    }
    Ok(full_catalog().iter().filter(|c| c.k == k).collect())
}

pub fn class_by_id(id: &str) -> Result<&'static ClassRecord, ClassifyError> {
    full_catalog().iter().find(|c| c.id == id).ok_or_else(|| ClassifyError::UnknownClass(id.to_string()))
}

/// The class of `p` with a map `T` such that `T(p)` is the representative.
pub fn classify(p: &LatticePolygon) -> Result<(&'static ClassRecord, UnimodularAffineMap), ClassifyError> {
    let k = p.lattice_point_count();
    let candidates = catalog(k as usize).map_err(|_| ClassifyError::SizeOutOfRange(k))?;
    candidates
        .into_iter()
        .find_map(|c| lattice_equivalent(p, &c.polygon).map(|t| (c, t)))
        .ok_or_else(|| ClassifyError::NoMatch(p.clone()))
}

/// Result of extending a parent by one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Child(&'static ClassRecord),
    /// The hull has the wrong number of lattice points.
    WrongSize(u64),
    Unclassified(LatticePolygon),
}

pub fn extend_by(parent: &LatticePolygon, v: LatticePoint) -> Extension {
    let mut pts = parent.vertices().to_vec();
    pts.push(v);
    let hull = convex_hull(&pts).expect("non-empty");
    let k = hull.lattice_point_count();
    if k != parent.lattice_point_count() + 1 {
        return Extension::WrongSize(k);
    }
    match classify(&hull) {
        Ok((c, _)) => Extension::Child(c),
        Err(_) => Extension::Unclassified(hull),
    }
}

/// Candidates scanned around `parent`, in lexicographic order.
pub fn search_box(parent: &LatticePolygon) -> Vec<LatticePoint> {
    let (lo, hi) = parent.bounding_box();
    (lo.x - SEARCH_MARGIN..=hi.x + SEARCH_MARGIN)
        .flat_map(|x| (lo.y - SEARCH_MARGIN..=hi.y + SEARCH_MARGIN).map(move |y| LatticePoint::new(x, y)))
        .collect()
}

/// Every `v` in the search box with `#conv(parent, v) = #parent + 1`, with
/// the class of the hull. Hulls that match no class are returned separately.
pub fn extensions(parent: &ClassRecord) -> (Vec<ExtensionRecord>, Vec<LatticePolygon>) {
    let results: Vec<(LatticePoint, Extension)> = search_box(&parent.polygon)
        .into_par_iter()
        .filter(|v| !parent.polygon.contains(*v))
        .map(|v| (v, extend_by(&parent.polygon, v)))
        .collect();
    let mut found = Vec::new();
    let mut unclassified = Vec::new();
    for (v, e) in results {
        match e {
            Extension::Child(c) => found.push(ExtensionRecord { parent: parent.id.clone(), v, child: c.id.clone() }),
            Extension::Unclassified(h) => unclassified.push(h),
            Extension::WrongSize(_) => {}
        }
    }
    (found, unclassified)
}

/// Classes reached by extending every class of size `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub from: usize,
    pub to: usize,
    pub children: Vec<String>,
    pub unclassified: Vec<LatticePolygon>,
    pub complete: bool,
}

pub fn chain_step(k: usize) -> Result<(ChainStep, Vec<ExtensionRecord>), ClassifyError> {
    let parents = catalog(k)?;
    let expected: BTreeSet<String> = catalog(k + 1)?.iter().map(|c| c.id.clone()).collect();
    let mut all = Vec::new();
    let mut unclassified = Vec::new();
    for p in parents {
        let (found, bad) = extensions(p);
        all.extend(found);
        unclassified.extend(bad);
    }
    let children: BTreeSet<String> = all.iter().map(|e| e.child.clone()).collect();
    let complete = unclassified.is_empty() && children == expected;
    let mut children: Vec<String> = children.into_iter().collect();
    children.sort_by_key(|id| id_order(id));
    Ok((ChainStep { from: k, to: k + 1, children, unclassified, complete }, all))
}

fn id_order(id: &str) -> (u32, u32) {
    let (a, b) = id.trim_start_matches('P').split_once('_').unwrap_or(("0", "0"));
    (a.parse().unwrap_or(0), b.parse().unwrap_or(0))
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum TableV {
    Point(LatticePoint),
    /// `(x0, y)` for every integer `x0` and each listed `y`.
    AnyX {
        any_x: Vec<i64>,
    },
}

impl fmt::Display for TableV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableV::Point(p) => write!(f, "({}, {})", p.x, p.y),
            TableV::AnyX { any_x } => {
                let ys: Vec<String> = any_x.iter().map(|y| format!("(x0, {y})")).collect();
                write!(f, "{}", ys.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub struct TableRow {
    pub parent: String,
    pub v: TableV,
    pub child: String,
}

#[derive(Deserialize)]
struct TableFile {
    version: u32,
    rows: Vec<TableRow>,
}

/// The transcribed extension table.
pub fn table1() -> Vec<TableRow> {
    let file: TableFile = serde_json::from_str(TABLE1_JSON).expect("table data parses");
    assert_eq!(file.version, 1);
    file.rows
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowStatus {
    Agrees,
    /// Computed child differs from the listed one.
    Differs {
        computed: Option<String>,
    },
    /// Same parent and point as an earlier row with the same child.
    Duplicate,
    /// Same parent and point as another row with another child, and not
    /// the child the computation finds.
    Conflicting {
        other_child: String,
    },
    /// The hull does not gain exactly one lattice point.
    NotAnExtension {
        lattice_points: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub row: TableRow,
    pub status: RowStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub chain: Vec<ChainStep>,
    pub extensions: Vec<ExtensionRecord>,
    pub rows: Vec<RowCheck>,
    /// Pairs of equal-size catalog classes checked for inequivalence.
    pub pair_checks: usize,
}

impl Theorem1Report {
    /// Every size reached completely and no unclassifiable hull.
    pub fn classification_holds(&self) -> bool {
        self.chain.iter().all(|s| s.complete)
    }

    pub fn discrepancies(&self) -> Vec<&RowCheck> {
        self.rows.iter().filter(|r| r.status != RowStatus::Agrees).collect()
    }
}

/// `rows[index]` against the computed extensions; the other rows decide
/// duplicates and double listings.
fn check_row(rows: &[TableRow], index: usize, extensions: &[ExtensionRecord]) -> RowStatus {
    let row = &rows[index];
    let parent = match class_by_id(&row.parent) {
        Ok(p) => p,
        Err(_) => return RowStatus::Differs { computed: None },
    };
    match &row.v {
        TableV::AnyX { any_x } => {
            let hits: Vec<&ExtensionRecord> =
                extensions.iter().filter(|e| e.parent == row.parent && any_x.contains(&e.v.y)).collect();
            // points on the listed lines inside the search box must all extend
            let (lo, hi) = parent.polygon.bounding_box();
            let expected = any_x.len() as i64 * (hi.x - lo.x + 1 + 2 * SEARCH_MARGIN);
            if hits.len() as i64 != expected {
                return RowStatus::NotAnExtension { lattice_points: 0 };
            }
            match hits.iter().find(|e| e.child != row.child) {
                Some(e) => RowStatus::Differs { computed: Some(e.child.clone()) },
                None => RowStatus::Agrees,
            }
        }
        TableV::Point(v) => {
            let same_point = |r: &&TableRow| r.parent == row.parent && r.v == row.v;
            if rows[..index].iter().any(|r| same_point(&r) && r.child == row.child) {
                return RowStatus::Duplicate;
            }
            // Listed with two different children: the listing that the
            // computation does not confirm is the conflicting one.
            if let Some(other) = rows.iter().filter(same_point).find(|r| r.child != row.child) {
                let computed = extensions.iter().find(|e| e.parent == row.parent && e.v == *v).map(|e| &e.child);
                if computed != Some(&row.child) {
                    return RowStatus::Conflicting { other_child: other.child.clone() };
                }
            }
            match extend_by(&parent.polygon, *v) {
                Extension::Child(c) if c.id == row.child => RowStatus::Agrees,
                Extension::Child(c) => RowStatus::Differs { computed: Some(c.id.clone()) },
                Extension::Unclassified(_) => RowStatus::Differs { computed: None },
                Extension::WrongSize(n) => RowStatus::NotAnExtension { lattice_points: n },
            }
        }
    }
}

/// Runs the extension chain `3 -> 4 -> 5 -> 6` and compares the size-6
/// extensions against the transcribed table.
pub fn verify_theorem1() -> Theorem1Report {
    let mut chain = Vec::new();
    let mut extensions = Vec::new();
    for k in 3..=5 {
        let (step, found) = chain_step(k).expect("sizes in range");
        chain.push(step);
        if k == 5 {
            extensions = found;
        }
    }
    let rows = table1();
    let checks =
        (0..rows.len()).map(|i| RowCheck { row: rows[i].clone(), status: check_row(&rows, i, &extensions) }).collect();
    let pair_checks = (3..=6).map(|k| catalog(k).unwrap().len()).map(|n| n * (n - 1) / 2).sum();
    Theorem1Report { chain, extensions, rows: checks, pair_checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::from_points(pts).unwrap()
    }

    #[test]
    fn catalog_sizes() {
        let sizes: Vec<usize> = (3..=6).map(|k| catalog(k).unwrap().len()).collect();
        assert_eq!(sizes, vec![2, 4, 7, 14]);
        assert!(catalog(7).is_err());
        assert_eq!(catalog(3).unwrap()[0].polygon, poly(&[(0, 0), (2, 0)]));
    }

    #[test]
    fn classify_examples() {
        let (c, t) = classify(&poly(&[(0, 0), (4, 0), (2, 1)])).unwrap();
        assert_eq!(c.id, "P6_2");
        assert_eq!(t.apply(&poly(&[(0, 0), (4, 0), (2, 1)])), c.polygon);
        assert_eq!(classify(&poly(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap().0.id, "P4_3");
        assert_eq!(classify(&poly(&[(0, 0), (9, 0)])), Err(ClassifyError::SizeOutOfRange(10)));
    }

    #[test]
    fn single_extensions() {
        let p52 = class_by_id("P5_2").unwrap();
        assert_eq!(extend_by(&p52.polygon, LatticePoint::new(3, -1)), Extension::Child(class_by_id("P6_7").unwrap()));
        let p51 = class_by_id("P5_1").unwrap();
        assert_eq!(extend_by(&p51.polygon, LatticePoint::new(5, 0)), Extension::Child(class_by_id("P6_1").unwrap()));
        let p57 = class_by_id("P5_7").unwrap();
        assert_eq!(extend_by(&p57.polygon, LatticePoint::new(1, 1)), Extension::Child(class_by_id("P6_12").unwrap()));
        assert_eq!(extend_by(&p51.polygon, LatticePoint::new(2, 2)), Extension::WrongSize(9));
    }

    #[test]
    fn table_parses() {
        let rows = table1();
        assert_eq!(rows.len(), 57);
        assert_eq!(rows[2].v, TableV::AnyX { any_x: vec![1, -1] });
    }

    #[test]
    fn row_statuses() {
        let report = verify_theorem1();
        assert!(report.classification_holds());
        let status = |parent: &str, v: (i64, i64), child: &str| -> Vec<RowStatus> {
            report
                .rows
                .iter()
                .filter(|r| {
                    r.row.parent == parent
                        && r.row.v == TableV::Point(LatticePoint::new(v.0, v.1))
                        && r.row.child == child
                })
                .map(|r| r.status.clone())
                .collect()
        };
        assert_eq!(status("P5_3", (4, -1), "P6_11"), vec![RowStatus::Agrees]);
        assert_eq!(status("P5_3", (4, -1), "P6_9"), vec![RowStatus::Conflicting { other_child: "P6_11".into() }]);
        assert_eq!(status("P5_4", (1, 2), "P6_12"), vec![RowStatus::Agrees, RowStatus::Duplicate]);
        assert_eq!(status("P5_3", (-1, -1), "P6_9"), vec![RowStatus::Differs { computed: Some("P6_11".into()) }]);
        assert_eq!(status("P5_1", (5, 0), "P6_1"), vec![RowStatus::Agrees]);
    }
}
