//! Enumerated minimum distances against the closed-form predictions and
//! the Minkowski-length lower bounds.
//!
//!     cargo run --release --example distances -- 11

use toric_codes::classify::catalog;
use toric_codes::code::build_code;
use toric_codes::gf::FieldSpec;
use toric_codes::invariants::{minkowski_bounds, predicted_distance};

fn main() {
    let q: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(11);
    let field = FieldSpec::with_order(q).unwrap();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    println!("{:<6} {:>5} {:>9}  Minkowski bound", "class", "d", "predicted");
    for (i, c) in catalog(6).unwrap().into_iter().enumerate() {
        let code = build_code(&field, &c.polygon).unwrap();
        let d = code.min_distance(workers);
        let pred = predicted_distance(i + 1, q as u64).unwrap();
        let bound = match minkowski_bounds(&c.polygon) {
            Some(b) => match b.weak.at(q as u64) {
                Some(v) => format!("d >= {v}"),
                None => format!("L = {}, applies from q = {}", b.weak.length, b.weak.threshold),
            },
            None => "segment".to_string(),
        };
        let mark = if pred.value == d as u64 { "" } else { "  MISMATCH" };
        println!("{:<6} {:>5} {:>9}  {bound}; formula valid for {}{mark}", c.id, d, pred.value, pred.validity);
    }
}
