//! Full Minkowski length of the six-point classes, with a maximal
//! decomposition of a witness subpolygon.

use toric_codes::classify::catalog;
use toric_codes::lattice::{exceptional_triangle, full_minkowski_length, minkowski_sum};

fn main() {
    for c in catalog(6).unwrap() {
        let l = full_minkowski_length(&c.polygon).unwrap();
        let parts: Vec<String> = l.summands.iter().map(|s| s.to_string()).collect();
        println!(
            "{:<6} L = {}  witness {}  = {}{}",
            c.id,
            l.length,
            l.witness,
            parts.join(" + "),
            if l.exceptional_possible { "  (exceptional triangle possible)" } else { "" }
        );
    }
    let t = exceptional_triangle();
    println!("exceptional triangle {t}; T + T = {}", minkowski_sum(&t, &t));
}
