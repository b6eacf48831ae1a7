//! Arithmetic in small finite fields and the torus evaluation order.
//!
//!     cargo run --example field_arithmetic -- 9

use toric_codes::gf::{make_field, FieldSpec};

fn main() {
    let q: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(9);
    let f = FieldSpec::with_order(q).expect("q must be a prime power below 64");
    println!("F_{q}: characteristic {}, degree {}, modulus {:?}", f.characteristic(), f.degree(), f.modulus());
    let g = f.generator();
    println!("generator g = {g} (digits {:?})", f.digits(g));

    print!("powers of g:");
    for i in 0..q - 1 {
        print!(" {}", f.exp(i as i64));
    }
    println!();

    let a = f.element(q - 1).unwrap();
    let b = f.element(2).unwrap();
    println!("a = {a}, b = {b}");
    println!("a + b = {}  a - b = {}  a * b = {}", f.add(a, b), f.sub(a, b), f.mul(a, b));
    println!("a / b = {}  a^-1 = {}  log_g(a) = {:?}", f.div(a, b).unwrap(), f.inv(a).unwrap(), f.log(a));
    println!("a^q = {} (Frobenius fixes every element)", f.pow(a, q as i64).unwrap());
    println!("0^-1 -> {:?}", f.inv(f.element(0).unwrap()).unwrap_err());

    let pts = f.torus_points();
    let head: Vec<String> = pts.iter().take(4).map(|(x, y)| format!("({x}, {y})")).collect();
    println!("torus has {} points, first few: {}", pts.len(), head.join(" "));

    if q == 8 {
        // Another defining polynomial, x^3 + x^2 + 1.
        let h = make_field(2, 3, Some(&[1, 0, 1, 1])).unwrap();
        println!("F_8 with x^3 + x^2 + 1: generator {}", h.generator());
    }
}
