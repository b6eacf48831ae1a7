use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{convex_hull, LatticePoint, LatticePolygon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("matrix [[{0}, {1}], [{2}, {3}]] has determinant {4}, expected +1 or -1")]
    NotUnimodular(i64, i64, i64, i64, i64),
}

/// `(x, y) -> (m11 x + m12 y + t.x, m21 x + m22 y + t.y)` with an integer
/// matrix of determinant `+-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct UnimodularAffineMap {
    m11: i64,
    m12: i64,
    m21: i64,
    m22: i64,
    t: LatticePoint,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    matrix: [[i64; 2]; 2],
    translation: LatticePoint,
}

impl TryFrom<RawMap> for UnimodularAffineMap {
    type Error = MapError;
    fn try_from(r: RawMap) -> Result<Self, MapError> {
        let [[a, b], [c, d]] = r.matrix;
        UnimodularAffineMap::new([[a, b], [c, d]], r.translation)
    }
}

impl From<UnimodularAffineMap> for RawMap {
    fn from(m: UnimodularAffineMap) -> Self {
        RawMap { matrix: m.matrix(), translation: m.t }
    }
}

/// `a x + b y + c` written the way one would by hand.
fn affine_form(a: i64, b: i64, c: i64) -> String {
    let mut s = String::new();
    for (coef, var) in [(a, "x"), (b, "y"), (c, "")] {
        if coef == 0 {
            continue;
        }
        let mag = coef.unsigned_abs();
        let body = match (mag, var) {
            (1, v) if !v.is_empty() => v.to_string(),
            (m, v) => format!("{m}{v}"),
        };
        match (s.is_empty(), coef < 0) {
            (true, true) => s.push_str(&format!("-{body}")),
            (true, false) => s.push_str(&body),
            (false, true) => s.push_str(&format!(" - {body}")),
            (false, false) => s.push_str(&format!(" + {body}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for UnimodularAffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(x, y) -> ({}, {})",
            affine_form(self.m11, self.m12, self.t.x),
            affine_form(self.m21, self.m22, self.t.y)
        )
    }
}

impl UnimodularAffineMap {
    pub const IDENTITY: UnimodularAffineMap =
        UnimodularAffineMap { m11: 1, m12: 0, m21: 0, m22: 1, t: LatticePoint::ORIGIN };

    pub fn new(matrix: [[i64; 2]; 2], t: LatticePoint) -> Result<Self, MapError> {
        let [[m11, m12], [m21, m22]] = matrix;
        let det = m11 * m22 - m12 * m21;
        if det.abs() != 1 {
            return Err(MapError::NotUnimodular(m11, m12, m21, m22, det));
        }
        Ok(UnimodularAffineMap { m11, m12, m21, m22, t })
    }

    pub fn translation(t: LatticePoint) -> Self {
        UnimodularAffineMap { t, ..Self::IDENTITY }
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        [[self.m11, self.m12], [self.m21, self.m22]]
    }

    pub fn offset(&self) -> LatticePoint {
        self.t
    }

    pub fn determinant(&self) -> i64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    fn linear(&self, p: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.m11 * p.x + self.m12 * p.y, self.m21 * p.x + self.m22 * p.y)
    }

    pub fn apply_point(&self, p: LatticePoint) -> LatticePoint {
        self.linear(p) + self.t
    }

    /// Image polygon, in canonical form.
    pub fn apply(&self, p: &LatticePolygon) -> LatticePolygon {
        let img: Vec<LatticePoint> = p.vertices().iter().map(|&v| self.apply_point(v)).collect();
        convex_hull(&img).expect("image of a non-empty polygon is non-empty")
    }

    /// `self` after `first`: `x -> self(first(x))`.
    pub fn compose(&self, first: &UnimodularAffineMap) -> UnimodularAffineMap {
        UnimodularAffineMap {
            m11: self.m11 * first.m11 + self.m12 * first.m21,
            m12: self.m11 * first.m12 + self.m12 * first.m22,
            m21: self.m21 * first.m11 + self.m22 * first.m21,
            m22: self.m21 * first.m12 + self.m22 * first.m22,
            t: self.apply_point(first.t),
        }
    }

    pub fn inverse(&self) -> UnimodularAffineMap {
        let d = self.determinant();
        let lin = UnimodularAffineMap {
            m11: self.m22 * d,
            m12: -self.m12 * d,
            m21: -self.m21 * d,
            m22: self.m11 * d,
            t: LatticePoint::ORIGIN,
        };
        UnimodularAffineMap { t: -lin.linear(self.t), ..lin }
    }
}

/// Unimodular matrix sending `e1` to the primitive vector `d`.
fn basis_completion(d: LatticePoint) -> [[i64; 2]; 2] {
    // extended Euclid: s * d.x + t * d.y = 1
    fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
        if b == 0 {
            (a.abs(), a.signum(), 0)
        } else {
            let (g, s, t) = egcd(b, a.rem_euclid(b));
            (g, t, s - a.div_euclid(b) * t)
        }
    }
    let (g, s, t) = egcd(d.x, d.y);
    debug_assert_eq!(g, 1);
    [[d.x, -t], [d.y, s]]
}

fn invariants_agree(p: &LatticePolygon, q: &LatticePolygon) -> bool {
    p.vertices().len() == q.vertices().len()
        && p.pick_accounting() == q.pick_accounting()
        && p.edge_lengths() == q.edge_lengths()
}

/// Finds `T` with `T(p) = q`, or `None` when the polygons are not lattice
/// equivalent. Among valid witnesses the first in the order of candidate
/// point triples of `q` is returned, so the result is deterministic.
pub fn lattice_equivalent(p: &LatticePolygon, q: &LatticePolygon) -> Option<UnimodularAffineMap> {
    if !invariants_agree(p, q) {
        return None;
    }
    let (pv, qv) = (p.vertices(), q.vertices());
    match pv.len() {
        1 => return Some(UnimodularAffineMap::translation(qv[0] - pv[0])),
        2 => {
            let a = basis_completion((pv[1] - pv[0]).primitive());
            let b = basis_completion((qv[1] - qv[0]).primitive());
            // b * a^{-1}; both have determinant 1
            let ainv = [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]];
            let m = [
                [b[0][0] * ainv[0][0] + b[0][1] * ainv[1][0], b[0][0] * ainv[0][1] + b[0][1] * ainv[1][1]],
                [b[1][0] * ainv[0][0] + b[1][1] * ainv[1][0], b[1][0] * ainv[0][1] + b[1][1] * ainv[1][1]],
            ];
            let lin = UnimodularAffineMap::new(m, LatticePoint::ORIGIN).ok()?;
            let t = qv[0] - lin.apply_point(pv[0]);
            let map = UnimodularAffineMap { t, ..lin };
            debug_assert_eq!(map.apply(p), *q);
            return Some(map);
        }
        _ => {}
    }

    // A unimodular triangle (a, a + u, a + v) inside p; it exists because
    // every lattice polygon has a unimodular triangulation. An affine map is
    // fixed by the images of its three corners.
    let pp = p.lattice_points();
    let (a, u, v) = unimodular_corner(&pp)?;
    let qp = q.lattice_points();
    for &a2 in &qp {
        for &b2 in &qp {
            if b2 == a2 {
                continue;
            }
            for &c2 in &qp {
                let (u2, v2) = (b2 - a2, c2 - a2);
                if u2.cross(v2).abs() != 1 {
                    continue;
                }
                // M [u v] = [u2 v2]  =>  M = [u2 v2] [u v]^{-1}
                let det = u.cross(v);
                let inv = [[v.y * det, -v.x * det], [-u.y * det, u.x * det]];
                let m = [
                    [u2.x * inv[0][0] + v2.x * inv[1][0], u2.x * inv[0][1] + v2.x * inv[1][1]],
                    [u2.y * inv[0][0] + v2.y * inv[1][0], u2.y * inv[0][1] + v2.y * inv[1][1]],
                ];
                let Ok(lin) = UnimodularAffineMap::new(m, LatticePoint::ORIGIN) else {
                    continue;
                };
                let map = UnimodularAffineMap { t: a2 - lin.apply_point(a), ..lin };
                if map.apply(p) == *q {
                    return Some(map);
                }
            }
        }
    }
    None
}

/// First `(a, u, v)` in lexicographic order with `a, a + u, a + v` among
/// `points` and `|u x v| = 1`.
fn unimodular_corner(points: &[LatticePoint]) -> Option<(LatticePoint, LatticePoint, LatticePoint)> {
    for &a in points {
        for &b in points {
            for &c in points {
                let (u, v) = (b - a, c - a);
                if u.cross(v).abs() == 1 {
                    return Some((a, u, v));
                }
            }
        }
    }
    None
}
