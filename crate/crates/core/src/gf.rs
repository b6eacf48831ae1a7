//! Arithmetic in small finite fields `F_q`, `q = p^n <= 64`.
//!
//! Elements are encoded as a single integer in `[0, q)`: the base-`p` digits
//! of the encoding are the coefficients (constant term first) of the
//! polynomial representative modulo the field's defining polynomial. For
//! prime fields this is just the residue. Multiplication goes through
//! log/exp tables built from a fixed primitive element, addition through a
//! precomputed `q * q` table.

use std::fmt;

use thiserror::Error;

/// Largest field order supported.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
    #[error("field order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("modulus must be monic of degree {expected}, got coefficients {got:?}")]
    BadModulus { expected: u32, got: Vec<u32> },
    #[error("modulus {0:?} is reducible over the prime field")]
    Reducible(Vec<u32>),
    #[error("no built-in modulus for p = {p}, n = {n}")]
    NoDefaultModulus { p: u32, n: u32 },
    #[error("division by zero")]
    DivisionByZero,
}

/// A field element, stored as its integer encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps an encoding without checking it against a field; callers that
    /// accept untrusted input should use [`FieldSpec::element`].
    pub const fn from_encoding(value: u8) -> Self {
        FieldElement(value)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Built-in defining polynomials, coefficients constant term first.
fn default_modulus(p: u32, n: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, n) {
        (_, 1) => &[],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 0, 0, 0, 1],
        (3, 2) => &[1, 0, 1],
        (3, 3) => &[1, 2, 0, 1],
        (5, 2) => &[2, 1, 1],
        (7, 2) => &[3, 1, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Splits `q` into `(p, n)` with `q = p^n`, `p` prime.
pub fn prime_power(q: usize) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))? as u32;
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p as usize) {
        rest /= p as usize;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

/// Dense polynomials over `F_p`, constant term first, used only while
/// building a field.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (i, &c) in m.iter().enumerate() {
                    r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
                }
            }
            r.pop();
        }
        trim(r)
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    /// Trial division by every monic polynomial of degree `1..=deg(m)/2`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let n = m.len() - 1;
        for d in 1..=n / 2 {
            let count = (p as usize).pow(d as u32);
            for code in 0..count {
                let mut f = Vec::with_capacity(d + 1);
                let mut c = code;
                for _ in 0..d {
                    f.push((c % p as usize) as u32);
                    c /= p as usize;
                }
                f.push(1);
                if rem(m, &f, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// An immutable description of `F_q` together with its arithmetic tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    q: usize,
    modulus: Vec<u32>,
    generator: FieldElement,
    /// `exp[i] = g^i` for `i in [0, q - 1)`.
    exp: Vec<u8>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u16>,
    add: Vec<u8>,
    neg: Vec<u8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

/// Builds `F_{p^n}`. Without an explicit modulus the built-in one for
/// `(p, n)` is used.
pub fn make_field(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if n == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
    if q > MAX_ORDER as u64 {
        return Err(FieldError::TooLarge(q));
    }
    let q = q as usize;
    let modulus = match modulus {
        Some(m) if n == 1 && m.is_empty() => Vec::new(),
        Some(m) => {
            let m: Vec<u32> = m.to_vec();
            if m.len() != n as usize + 1 || m[n as usize] != 1 || m.iter().any(|&c| c >= p) {
                return Err(FieldError::BadModulus { expected: n, got: m });
            }
            m
        }
        None => default_modulus(p, n).ok_or(FieldError::NoDefaultModulus { p, n })?,
    };
    if n > 1 && !poly::is_irreducible(&modulus, p) {
        return Err(FieldError::Reducible(modulus));
    }

    let digits = |mut v: usize| -> Vec<u32> {
        let mut out = Vec::with_capacity(n as usize);
        for _ in 0..n {
            out.push((v % p as usize) as u32);
            v /= p as usize;
        }
        poly::trim(out)
    };
    let encode = |c: &[u32]| -> usize { c.iter().rev().fold(0, |acc, &d| acc * p as usize + d as usize) };

    let mut add = vec![0u8; q * q];
    let mut neg = vec![0u8; q];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let sum: Vec<u32> = (0..n as usize)
                .map(|i| (da.get(i).copied().unwrap_or(0) + db.get(i).copied().unwrap_or(0)) % p)
                .collect();
            let s = encode(&sum);
            add[a * q + b] = s as u8;
            if s == 0 {
                neg[a] = b as u8;
            }
        }
    }

    // Schoolbook multiplication, only used to find the generator.
    let slow_mul = |a: usize, b: usize| -> usize {
        if n == 1 {
            (a * b) % q
        } else {
            encode(&poly::rem(&poly::mul(&digits(a), &digits(b), p), &modulus, p))
        }
    };
    let generator = (2..q)
        .chain(std::iter::once(1))
        .find(|&g| {
            let mut x = 1usize;
            for k in 1..q {
                x = slow_mul(x, g);
                if x == 1 {
                    return k == q - 1;
                }
            }
            false
        })
        .expect("the multiplicative group of a finite field is cyclic");

    let mut exp = vec![0u8; q - 1];
    let mut log = vec![0u16; q];
    let mut x = 1usize;
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = x as u8;
        log[x] = i as u16;
        x = slow_mul(x, generator);
    }

    Ok(FieldSpec { p, n, q, modulus, generator: FieldElement(generator as u8), exp, log, add, neg })
}

impl FieldSpec {
    /// The field of order `q` with its built-in modulus.
    pub fn with_order(q: usize) -> Result<FieldSpec, FieldError> {
        let (p, n) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        make_field(p, n, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// Defining polynomial, constant term first; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// Checked conversion from an encoding.
    pub fn element(&self, value: usize) -> Option<FieldElement> {
        (value < self.q).then_some(FieldElement(value as u8))
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u8).map(FieldElement)
    }

    /// Element from its base-`p` digits, constant term first.
    pub fn from_digits(&self, digits: &[u32]) -> Option<FieldElement> {
        if digits.len() > self.n as usize || digits.iter().any(|&d| d >= self.p) {
            return None;
        }
        let v = digits.iter().rev().fold(0usize, |acc, &d| acc * self.p as usize + d as usize);
        self.element(v)
    }

    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        let mut v = a.index();
        (0..self.n)
            .map(|_| {
                let d = (v % self.p as usize) as u32;
                v /= self.p as usize;
                d
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let s = self.log[a.index()] as usize + self.log[b.index()] as usize;
        FieldElement(self.exp[s % (self.q - 1)])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let l = self.log[a.index()] as usize;
        Ok(FieldElement(self.exp[(self.q - 1 - l) % (self.q - 1)]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `g^e` for any integer exponent.
    pub fn exp(&self, e: i64) -> FieldElement {
        FieldElement(self.exp[e.rem_euclid(self.q as i64 - 1) as usize])
    }

    /// Discrete logarithm to the base of [`generator`](Self::generator).
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.index()] as u32)
    }

    /// `a^e`; negative exponents require `a != 0`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return match e {
                0 => Ok(FieldElement::ONE),
                e if e > 0 => Ok(FieldElement::ZERO),
                _ => Err(FieldError::DivisionByZero),
            };
        }
        Ok(self.exp(self.log[a.index()] as i64 * e))
    }

    /// The points of the torus `(F_q^*)^2`, row-major in `(g^i, g^j)`:
    /// index `i * (q - 1) + j` holds `(g^i, g^j)`.
    pub fn torus_points(&self) -> Vec<(FieldElement, FieldElement)> {
        let m = self.q - 1;
        (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| (FieldElement(self.exp[i]), FieldElement(self.exp[j])))
            .collect()
    }
}
