//! Recompute tabulated leading enumerator terms for one field.
//!
//!     cargo run --release --example reproduce_tables -- 8

use toric_codes::classify::class_by_id;
use toric_codes::code::{build_code, Mode};
use toric_codes::gf::FieldSpec;
use toric_codes::tables::{compare, table, TABLE_NAMES};

fn main() {
    let q: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let field = FieldSpec::with_order(q).unwrap();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let Some(rows) = TABLE_NAMES.iter().find_map(|n| table(n).unwrap().field(q).map(|f| f.rows.clone())) else {
        println!("no tabulated rows for q = {q}");
        return;
    };
    for row in rows {
        let code = build_code(&field, &class_by_id(&row.class).unwrap().polygon).unwrap();
        let c = compare(&row, &code.weight_enumerator(Mode::Projective, workers));
        if c.matches() {
            println!("{:<6} ok", c.class);
        } else {
            for i in c.mismatches() {
                println!("{:<6} listed {:?}, computed {:?}", c.class, c.expected[i], c.computed.get(i));
            }
        }
    }
}
