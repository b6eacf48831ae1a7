//! Telling codes apart by their weight enumerators, and the counts n1, n2
//! of the two largest non-maximal weights.

use toric_codes::classify::class_by_id;
use toric_codes::code::{build_code, Mode, WeightEnumerator};
use toric_codes::gf::FieldSpec;
use toric_codes::invariants::{distinguish, n1_weight, n2_weight, predicted_n1, predicted_n2};

fn enumerator(id: &str, q: usize) -> WeightEnumerator {
    let field = FieldSpec::with_order(q).unwrap();
    build_code(&field, &class_by_id(id).unwrap().polygon).unwrap().weight_enumerator(Mode::Projective, 4)
}

fn main() {
    for (a, b) in [("P6_5", "P6_6"), ("P6_4", "P6_5")] {
        for q in [7, 8, 9] {
            let v = distinguish(&enumerator(a, q), &enumerator(b, q)).unwrap();
            println!("{a} vs {b} over F_{q}: {v:?}");
        }
    }
    let q = 23;
    println!("q = {q}: n1 at weight {}, n2 at weight {}", n1_weight(q), n2_weight(q));
    for class in 1..=14 {
        let n1 = predicted_n1(class, q).map(|p| format!("{:?}", p.value)).unwrap_or_else(|e| e.to_string());
        let n2 = predicted_n2(class, q).map(|p| format!("{:?}", p.value)).unwrap_or_else(|e| e.to_string());
        println!("  P6_{class:<3} n1 {n1:<22} n2 {n2}");
    }
}
