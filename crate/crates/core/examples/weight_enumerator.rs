//! Weight enumerator of a toric code, in both enumeration modes.
//!
//!     cargo run --release --example weight_enumerator -- P6_12 8

use toric_codes::classify::class_by_id;
use toric_codes::code::{build_code, Mode};
use toric_codes::gf::FieldSpec;

fn main() {
    let mut args = std::env::args().skip(1);
    let class = args.next().unwrap_or_else(|| "P6_12".into());
    let q: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(8);
    let rec = class_by_id(&class).expect("catalog class such as P6_12");
    let field = FieldSpec::with_order(q).unwrap();
    let code = build_code(&field, &rec.polygon).unwrap();
    println!("C_{class} over F_{q}: n = {}, k = {}", code.n(), code.k());
    let monomials: Vec<String> = code.exponents().iter().map(|m| m.to_string()).collect();
    println!("exponents: {}", monomials.join(" "));

    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let p = code.weight_enumerator(Mode::Projective, workers);
    println!("W(x) = {p}");
    println!("sum = {} = {q}^{}, checks: {:?}", p.total(), code.k(), p.check(q, code.k()));
    if q <= 9 {
        let full = code.weight_enumerator(Mode::Full, workers);
        println!("full mode agrees: {}", full == p);
    }
    println!("{}", serde_json::to_string(&p.to_document(&class, &field)).unwrap());
}
