//! Closed-form distance and count predictions for the six-point classes,
//! plus the bounds they rest on. All square roots are taken on integers.

use std::fmt;

use thiserror::Error;

use crate::code::WeightEnumerator;
use crate::lattice::{full_minkowski_length, LatticePolygon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("no six-point class P6_{0}")]
    UnknownClass(usize),
    #[error("{what}: out of range for q = {q}")]
    OutOfRange { what: String, q: u64 },
    #[error("no prediction of {what} for P6_{class} at q = {q}")]
    NotCovered { what: &'static str, class: usize, q: u64 },
    #[error("enumerators have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
}

/// Range of field orders where a formula is known to hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    All,
    /// Proven for every `q >= bound`.
    AtLeast(u64),
    /// Verified by computation for `from <= q < proven_from`, proven above.
    Checked {
        from: u64,
        proven_from: u64,
    },
}

impl Validity {
    pub fn holds(&self, q: u64) -> bool {
        match *self {
            Validity::All => true,
            Validity::AtLeast(b) => q >= b,
            Validity::Checked { from, .. } => q >= from,
        }
    }

    pub fn proven(&self, q: u64) -> bool {
        match *self {
            Validity::All => true,
            Validity::AtLeast(b) => q >= b,
            Validity::Checked { proven_from, .. } => q >= proven_from,
        }
    }
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validity::All => write!(f, "all q"),
            Validity::AtLeast(b) => write!(f, "q >= {b}"),
            Validity::Checked { from, proven_from } => {
                write!(f, "q >= {proven_from} proven, {from} <= q < {proven_from} checked by computation")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistancePrediction {
    pub value: u64,
    pub validity: Validity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountValue {
    Exact(u64),
    LowerBound(u64),
    Positive,
}

impl CountValue {
    pub fn admits(&self, count: u64) -> bool {
        match *self {
            CountValue::Exact(v) => count == v,
            CountValue::LowerBound(v) => count >= v,
            CountValue::Positive => count > 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountPrediction {
    pub weight: u64,
    pub value: CountValue,
    pub validity: Validity,
}

pub fn isqrt(x: u64) -> u64 {
    x.isqrt()
}

fn ceil_sqrt(x: u64) -> u64 {
    let r = x.isqrt();
    if r * r == x {
        r
    } else {
        r + 1
    }
}

/// `d = ((q-1) - k)((q-1) - l)` for the `k x l` rectangle.
pub fn rect_distance(k: u64, l: u64, q: u64) -> Result<u64, InvariantError> {
    if k == 0 || l == 0 || k >= q - 1 || l >= q - 1 {
        return Err(InvariantError::OutOfRange { what: format!("rectangle {k} x {l}"), q });
    }
    Ok((q - 1 - k) * (q - 1 - l))
}

/// `d = (q-1)^2 - max(k, l)(q-1)` for `conv{(0,0), (k,0), (0,l)}`.
pub fn triangle_distance(k: u64, l: u64, q: u64) -> Result<u64, InvariantError> {
    let m = k.max(l);
    if k == 0 || l == 0 || m > q - 2 {
        return Err(InvariantError::OutOfRange { what: format!("triangle ({k}, {l})"), q });
    }
    Ok((q - 1) * (q - 1) - m * (q - 1))
}

/// A lower bound on the minimum distance valid from `threshold` on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinkowskiBound {
    pub length: u64,
    pub threshold: u64,
    strong: bool,
}

impl MinkowskiBound {
    /// The bound at `q`, or `None` below the threshold.
    pub fn at(&self, q: u64) -> Option<u64> {
        if q < self.threshold {
            return None;
        }
        let base = ((q - 1) * (q - 1)).checked_sub(self.length * (q - 1))?;
        if self.strong {
            Some(base)
        } else {
            // d >= base + 1 - 2 sqrt(q), d is an integer
            (base + 1).checked_sub(isqrt(4 * q))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinkowskiBounds {
    pub weak: MinkowskiBound,
    /// Absent when a maximal decomposition may contain an exceptional
    /// triangle.
    pub strong: Option<MinkowskiBound>,
}

/// Least `q` with `8q >= a^2 + lin + a sqrt(a^2 + rad)`, i.e.
/// `q >= (c + sqrt(c^2 + rad/16))^2` for `c = a/4`.
fn threshold(a: i64, lin: i64, rad: i64) -> u64 {
    let d = (a * a + rad) as i128;
    let a = a as i128;
    let ok = |q: i128| {
        let t = 8 * q - a * a - lin as i128;
        if a >= 0 {
            t >= 0 && t * t >= a * a * d
        } else {
            t >= 0 || t * t <= a * a * d
        }
    };
    let mut q = 1;
    while !ok(q) {
        q += 1;
    }
    q as u64
}

/// Distance bounds from the full Minkowski length of a 2-dimensional `p`.
pub fn minkowski_bounds(p: &LatticePolygon) -> Option<MinkowskiBounds> {
    if p.dimension() < 2 {
        return None;
    }
    let full = full_minkowski_length(p).ok()?;
    let l = full.length as i64;
    let area2 = p.area2() as i64;
    let weak =
        MinkowskiBound { length: l as u64, threshold: threshold(area2 - 4 * l + 9, 20, 40).max(23), strong: false };
    let strong = (!full.exceptional_possible).then(|| MinkowskiBound {
        length: l as u64,
        threshold: threshold(area2 - 4 * l + 11, 16, 32).max(37),
        strong: true,
    });
    Some(MinkowskiBounds { weak, strong })
}

/// Largest lower bound on `d(C_P)` that is proven at `q`; 1 when none
/// applies.
pub fn proven_distance_floor(p: &LatticePolygon, q: u64) -> usize {
    let Some(b) = minkowski_bounds(p) else { return 1 };
    let best = [Some(b.weak), b.strong].into_iter().flatten().filter_map(|b| b.at(q)).max();
    best.unwrap_or(1).max(1) as usize
}

/// `[1 + q - 2g sqrt(q), 1 + q + 2g sqrt(q)]` rounded outward, the lower end
/// clamped at 0.
pub fn hasse_weil_interval(g: u64, q: u64) -> (u64, u64) {
    let r = ceil_sqrt(4 * g * g * q);
    ((1 + q).saturating_sub(r), 1 + q + r)
}

/// `floor(q + 1 + 2 I sqrt(q))` with `I` the interior count of `p_f`.
pub fn zero_count_bound(p_f: &LatticePolygon, q: u64) -> u64 {
    let i = p_f.pick_accounting().interior;
    q + 1 + isqrt(4 * i * i * q)
}

fn check_class(class: usize) -> Result<(), InvariantError> {
    if (1..=14).contains(&class) {
        Ok(())
    } else {
        Err(InvariantError::UnknownClass(class))
    }
}

/// Minimum distance of `C_{P6_class}`.
pub fn predicted_distance(class: usize, q: u64) -> Result<DistancePrediction, InvariantError> {
    check_class(class)?;
    let m = q - 1;
    let (value, validity) = match class {
        1 => (m * m - 5 * m, Validity::All),
        2 => (m * m - 4 * m, Validity::All),
        14 => (m * m - (3 * q - 5), Validity::All),
        3 => (m * m - 3 * m, Validity::All),
        4..=8 => (m * m - 3 * m, Validity::Checked { from: 9, proven_from: 37 }),
        13 => (m * m - 2 * m, Validity::All),
        _ => (m * m - 2 * m, Validity::Checked { from: 9, proven_from: 37 }),
    };
    if !validity.holds(q) {
        return Err(InvariantError::NotCovered { what: "the minimum distance", class, q });
    }
    Ok(DistancePrediction { value, validity })
}

/// Weight carrying `n1`: `(q-1)^2 - 2(q-1)`.
pub fn n1_weight(q: u64) -> u64 {
    (q - 1) * (q - 1) - 2 * (q - 1)
}

/// Weight carrying `n2`: `(q-1)^2 - (2q-3)`.
pub fn n2_weight(q: u64) -> u64 {
    (q - 1) * (q - 1) - (2 * q - 3)
}

/// Number of codewords of weight [`n1_weight`].
pub fn predicted_n1(class: usize, q: u64) -> Result<CountPrediction, InvariantError> {
    check_class(class)?;
    let m = q - 1;
    let cube = m * m * m;
    // C(q-1, 2)(q-1)
    let base = m * (m - 1) / 2 * m;
    let value = match class {
        3 | 5 | 6 => 4 * base,
        7 => 4 * base + if m.is_multiple_of(3) { 2 * cube / 3 } else { 0 },
        4 => 5 * base,
        8 => 5 * base + if q % 2 == 1 { cube / 2 } else { 0 },
        9 | 11 => 2 * base,
        12 => 2 * base + if q.is_power_of_two() { 0 } else { cube / 2 },
        10 | 13 => 3 * base,
        _ => return Err(InvariantError::NotCovered { what: "n1", class, q }),
    };
    let validity = if class == 10 { Validity::Checked { from: 23, proven_from: 43 } } else { Validity::AtLeast(23) };
    if !validity.holds(q) {
        return Err(InvariantError::NotCovered { what: "n1", class, q });
    }
    Ok(CountPrediction { weight: n1_weight(q), value: CountValue::Exact(value), validity })
}

/// Number of codewords of weight [`n2_weight`].
pub fn predicted_n2(class: usize, q: u64) -> Result<CountPrediction, InvariantError> {
    check_class(class)?;
    let m = q - 1;
    let cube = m * m * m;
    let two = q.is_power_of_two();
    let not_covered = Err(InvariantError::NotCovered { what: "n2", class, q });
    let late = Validity::Checked { from: 23, proven_from: 25 };
    let (value, validity) = match class {
        3 => (CountValue::Exact((6 + q * (q - 1) / 2) * cube), Validity::AtLeast(23)),
        4 if two => (CountValue::Exact(0), Validity::AtLeast(32)),
        5 | 10 => (CountValue::Exact(0), Validity::Checked { from: 27, proven_from: 47 }),
        6 => (CountValue::Exact(cube), late),
        7 if !m.is_multiple_of(3) => (CountValue::Exact(2 * cube), late),
        8 if two => (CountValue::Exact(cube), late),
        9 => (CountValue::Exact(5 * cube), Validity::AtLeast(23)),
        11 => (CountValue::Exact(3 * cube), Validity::AtLeast(23)),
        12 if two => (CountValue::LowerBound(6 * cube), Validity::AtLeast(23)),
        13 => (CountValue::Positive, Validity::AtLeast(23)),
        _ => return not_covered,
    };
    if !validity.holds(q) {
        return not_covered;
    }
    Ok(CountPrediction { weight: n2_weight(q), value, validity })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Identical,
    /// Smallest weight with different counts.
    DiffersAt {
        weight: usize,
        left: u64,
        right: u64,
    },
}

pub fn distinguish(a: &WeightEnumerator, b: &WeightEnumerator) -> Result<Verdict, InvariantError> {
    if a.n() != b.n() {
        return Err(InvariantError::LengthMismatch(a.n(), b.n()));
    }
    Ok(a.counts().iter().zip(b.counts()).position(|(x, y)| x != y).map_or(Verdict::Identical, |w| Verdict::DiffersAt {
        weight: w,
        left: a.count(w),
        right: b.count(w),
    }))
}
