//! Checks shared by the property tests and the acceptance report. Each
//! returns a one-line summary on success and the first counterexample on
//! failure.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_codes::classify::{catalog, classify};
use toric_codes::code::{build_code, GeneratorMatrix, Mode, WeightEnumerator};
use toric_codes::gf::{make_field, prime_power, FieldElement, FieldSpec};
use toric_codes::lattice::{convex_hull, LatticePoint, LatticePolygon, UnimodularAffineMap};

pub type Check = Result<String, String>;

pub const FIELD_ORDERS: [usize; 26] =
    [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 61];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_points(rng: &mut impl Rng, count: usize, span: i64) -> Vec<LatticePoint> {
    (0..count).map(|_| LatticePoint::new(rng.gen_range(-span..=span), rng.gen_range(-span..=span))).collect()
}

/// Hull of a few random points; `None` when they all coincide.
pub fn random_polygon(rng: &mut impl Rng, count: usize, span: i64) -> Option<LatticePolygon> {
    let p = convex_hull(&random_points(rng, count, span)).ok()?;
    (p.dimension() > 0).then_some(p)
}

/// Random word in the generators of GL_2(Z), plus a random translation.
pub fn random_unimodular(rng: &mut impl Rng) -> UnimodularAffineMap {
    const GENS: [[[i64; 2]; 2]; 5] =
        [[[0, -1], [1, 0]], [[1, 1], [0, 1]], [[1, -1], [0, 1]], [[1, 0], [1, 1]], [[1, 0], [0, -1]]];
    let mut m = UnimodularAffineMap::IDENTITY;
    for _ in 0..rng.gen_range(0..8) {
        let g = GENS[rng.gen_range(0..GENS.len())];
        m = UnimodularAffineMap::new(g, LatticePoint::new(0, 0)).unwrap().compose(&m);
    }
    let t = LatticePoint::new(rng.gen_range(-6..=6), rng.gen_range(-6..=6));
    UnimodularAffineMap::translation(t).compose(&m)
}

/// `2 * #P = 2A + boundary + 2`, and the point count agrees with a scan of
/// the bounding box.
pub fn pick_identity(samples: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let mut done = 0;
    while done < samples {
        let n = r.gen_range(1..9);
        let Some(p) = random_polygon(&mut r, n, 7) else { continue };
        let d = p.pick_accounting();
        if 2 * d.sharp != d.area2 + d.boundary + 2 {
            return Err(format!("{p}: {d:?}"));
        }
        let (lo, hi) = p.bounding_box();
        let scanned = (lo.x..=hi.x)
            .flat_map(|x| (lo.y..=hi.y).map(move |y| LatticePoint::new(x, y)))
            .filter(|&v| p.contains(v))
            .count() as u64;
        if scanned != d.sharp || p.lattice_points().len() as u64 != d.sharp {
            return Err(format!("{p}: scanned {scanned}, accounted {}", d.sharp));
        }
        let interior = p.interior_points().len() as u64;
        if p.dimension() == 2 && interior != d.interior {
            return Err(format!("{p}: {interior} interior points, accounted {}", d.interior));
        }
        done += 1;
    }
    Ok(format!("{done} random polygons"))
}

fn field_triple(f: &FieldSpec, a: FieldElement, b: FieldElement, c: FieldElement) -> Result<(), String> {
    let e = |what: &str| Err(format!("F_{}: {what} fails at ({a}, {b}, {c})", f.order()));
    if f.add(f.add(a, b), c) != f.add(a, f.add(b, c)) {
        return e("additive associativity");
    }
    if f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c)) {
        return e("multiplicative associativity");
    }
    if f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c)) {
        return e("distributivity");
    }
    if f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a) {
        return e("commutativity");
    }
    Ok(())
}

fn field_element_laws(f: &FieldSpec, a: FieldElement) -> Result<(), String> {
    let q = f.order();
    let e = |what: &str| Err(format!("F_{q}: {what} fails at {a}"));
    if f.add(a, FieldElement::ZERO) != a || f.mul(a, FieldElement::ONE) != a {
        return e("identity");
    }
    if f.add(a, f.neg(a)) != FieldElement::ZERO || f.sub(a, a) != FieldElement::ZERO {
        return e("additive inverse");
    }
    if f.pow(a, q as i64) != Ok(a) {
        return e("a^q = a");
    }
    if a.is_zero() {
        return if f.inv(a).is_err() && f.log(a).is_none() { Ok(()) } else { e("zero has no inverse") };
    }
    let inv = f.inv(a).map_err(|x| x.to_string())?;
    if f.mul(a, inv) != FieldElement::ONE {
        return e("multiplicative inverse");
    }
    let l = f.log(a).ok_or("nonzero element without logarithm")?;
    if f.exp(l as i64) != a || f.pow(a, -1) != Ok(inv) {
        return e("exp/log");
    }
    Ok(())
}

/// Frobenius `x -> x^p` is additive and multiplicative.
fn frobenius(f: &FieldSpec, a: FieldElement, b: FieldElement) -> Result<(), String> {
    let p = f.characteristic() as i64;
    let fr = |x| f.pow(x, p).unwrap();
    if fr(f.add(a, b)) != f.add(fr(a), fr(b)) || fr(f.mul(a, b)) != f.mul(fr(a), fr(b)) {
        return Err(format!("F_{}: Frobenius fails at ({a}, {b})", f.order()));
    }
    Ok(())
}

/// Exhaustive for `q <= 16`, 2000 random triples above.
pub fn field_axioms(seed: u64) -> Check {
    let mut r = rng(seed);
    let mut triples = 0u64;
    for q in FIELD_ORDERS {
        let f = FieldSpec::with_order(q).map_err(|e| e.to_string())?;
        let els: Vec<FieldElement> = f.elements().collect();
        if els.len() != q {
            return Err(format!("F_{q} lists {} elements", els.len()));
        }
        if f.exp(1) != f.generator() || (1..q - 1).any(|i| f.exp(i as i64) == FieldElement::ONE) {
            return Err(format!("F_{q}: generator {} is not primitive", f.generator()));
        }
        for &a in &els {
            field_element_laws(&f, a)?;
        }
        if q <= 16 {
            for &a in &els {
                for &b in &els {
                    frobenius(&f, a, b)?;
                    for &c in &els {
                        field_triple(&f, a, b, c)?;
                        triples += 1;
                    }
                }
            }
        } else {
            for _ in 0..2000 {
                let [a, b, c] = [0; 3].map(|_| els[r.gen_range(0..q)]);
                field_triple(&f, a, b, c)?;
                frobenius(&f, a, b)?;
                triples += 1;
            }
        }
    }
    Ok(format!("{} fields, {triples} triples", FIELD_ORDERS.len()))
}

pub fn enumerator(field: &FieldSpec, p: &LatticePolygon, mode: Mode) -> WeightEnumerator {
    build_code(field, p).unwrap().weight_enumerator(mode, 2)
}

/// `A_0 = 1`, `sum A_w = q^k`, `(q - 1) | A_w` for `w > 0`.
pub fn enumerator_sanity(e: &WeightEnumerator, q: usize, k: usize) -> Result<(), String> {
    e.check(q, k)
}

/// Enumerators over F_8 and F_9 do not depend on the defining polynomial.
pub fn modulus_independence() -> Check {
    let alternatives: [(u32, u32, &[&[u32]]); 2] = [(2, 3, &[&[1, 0, 1, 1]]), (3, 2, &[&[2, 1, 1], &[2, 2, 1]])];
    let mut compared = 0;
    for (p, n, moduli) in alternatives {
        let base = make_field(p, n, None).map_err(|e| e.to_string())?;
        for m in moduli {
            let other = make_field(p, n, Some(m)).map_err(|e| e.to_string())?;
            if other.modulus() == base.modulus() {
                return Err(format!("alternative modulus {m:?} is the default"));
            }
            for c in catalog(6).unwrap() {
                let a = enumerator(&base, &c.polygon, Mode::Projective);
                let b = enumerator(&other, &c.polygon, Mode::Projective);
                enumerator_sanity(&b, other.order(), 6)?;
                if a != b {
                    return Err(format!(
                        "{} over F_{} differs between {:?} and {m:?}",
                        c.id,
                        base.order(),
                        base.modulus()
                    ));
                }
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} enumerator pairs"))
}

/// Both enumeration modes agree on every catalog class of size 3 to 6.
pub fn full_vs_projective(orders: &[usize]) -> Check {
    let mut compared = 0;
    for &q in orders {
        let f = FieldSpec::with_order(q).map_err(|e| e.to_string())?;
        for k in 3..=6 {
            for c in catalog(k).unwrap() {
                let Ok(code) = build_code(&f, &c.polygon) else { continue };
                let full = code.weight_enumerator(Mode::Full, 2);
                let proj = code.weight_enumerator(Mode::Projective, 2);
                enumerator_sanity(&full, q, code.k())?;
                if full != proj {
                    return Err(format!("{} over F_{q}: full {full} vs projective {proj}", c.id));
                }
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} codes"))
}

/// Weight distribution by encoding every message.
pub fn brute_force(field: &FieldSpec, g: &GeneratorMatrix) -> WeightEnumerator {
    let q = field.order();
    let els: Vec<FieldElement> = field.elements().collect();
    let mut counts = vec![0u64; g.n() + 1];
    let mut msg = vec![0usize; g.k()];
    loop {
        let m: Vec<FieldElement> = msg.iter().map(|&i| els[i]).collect();
        let w = toric_codes::code::weight(&g.encode(field, &m).unwrap());
        counts[w] += 1;
        let Some(i) = msg.iter().rposition(|&d| d + 1 < q) else { break };
        msg[i] += 1;
        msg[i + 1..].iter_mut().for_each(|d| *d = 0);
    }
    WeightEnumerator::new(counts)
}

/// `classify` recovers the class of every image of a representative under
/// random unimodular maps, with a witness map onto the representative.
pub fn classify_after_maps(per_class: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let mut total = 0;
    for k in 3..=6 {
        for c in catalog(k).unwrap() {
            for _ in 0..per_class {
                let m = random_unimodular(&mut r);
                let image = m.apply(&c.polygon);
                let (found, witness) = classify(&image).map_err(|e| format!("{} under {m}: {e}", c.id))?;
                if found.id != c.id {
                    return Err(format!("{} under {m} classified as {}", c.id, found.id));
                }
                if witness.apply(&image) != c.polygon || witness.determinant().abs() != 1 {
                    return Err(format!("{}: witness {witness} does not map {image} onto the representative", c.id));
                }
                total += 1;
            }
        }
    }
    Ok(format!("{total} mapped polygons, {per_class} per class"))
}

pub fn is_field_order(q: usize) -> bool {
    prime_power(q).is_some()
}
