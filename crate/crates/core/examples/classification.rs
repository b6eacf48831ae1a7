//! Classifying polygons up to lattice equivalence and rebuilding the
//! catalog one lattice point at a time.

use toric_codes::classify::{catalog, classify, verify_theorem1, RowStatus};
use toric_codes::lattice::parse_polygon;

fn main() {
    for k in 3..=6 {
        let ids: Vec<&str> = catalog(k).unwrap().iter().map(|c| c.id.as_str()).collect();
        println!("k = {k}: {} classes {ids:?}", ids.len());
    }
    for lit in ["[[0,0],[4,0],[2,1]]", "[[0,0],[1,0],[1,1],[0,1]]", "[[3,1],[5,2],[4,4],[2,3]]"] {
        let p = parse_polygon(lit).unwrap();
        match classify(&p) {
            Ok((c, m)) => println!("{lit} is {} via {m}", c.id),
            Err(e) => println!("{lit}: {e}"),
        }
    }

    let report = verify_theorem1();
    for s in &report.chain {
        println!("k = {} -> {}: {} classes reached, complete {}", s.from, s.to, s.children.len(), s.complete);
    }
    println!("{} extension rows, {} disagree", report.rows.len(), report.discrepancies().len());
    for r in report.discrepancies() {
        let what = match &r.status {
            RowStatus::Differs { computed } => format!("computed {computed:?}"),
            other => format!("{other:?}"),
        };
        println!("  {} + {} listed as {}: {what}", r.row.parent, r.row.v, r.row.child);
    }
}
