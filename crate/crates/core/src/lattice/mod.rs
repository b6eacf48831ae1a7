//! Exact integer geometry of convex lattice polygons.
//!
//! A [`LatticePolygon`] is always stored in canonical form: the vertices of
//! the convex hull in counter-clockwise order, starting at the
//! lexicographically least vertex, with no three consecutive vertices
//! collinear. Points and segments are valid polygons of dimension 0 and 1.
//! Two polygons are equal as sets iff they are equal as values.

mod equivalence;
mod minkowski;

pub use equivalence::{lattice_equivalent, MapError, UnimodularAffineMap};
pub use minkowski::{
    exceptional_triangle, full_minkowski_length, full_minkowski_length_exhaustive, minkowski_length, minkowski_sum,
    FullMinkowskiLength, MinkowskiError,
};

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("cannot take the hull of an empty point set")]
    Empty,
    #[error("invalid polygon literal: {0}")]
    Literal(String),
}

/// A point of `Z^2`. Ordering is lexicographic, `x` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    /// `self x other`, the signed doubled area of the parallelogram.
    pub fn cross(self, other: LatticePoint) -> i64 {
        self.x * other.y - self.y * other.x
    }

    /// Number of lattice steps along the vector, i.e. `gcd(|x|, |y|)`.
    pub fn lattice_length(self) -> i64 {
        gcd(self.x, self.y)
    }

    /// The vector divided by its lattice length; the zero vector stays put.
    pub fn primitive(self) -> LatticePoint {
        let g = self.lattice_length();
        if g == 0 {
            self
        } else {
            LatticePoint::new(self.x / g, self.y / g)
        }
    }
}

impl From<[i64; 2]> for LatticePoint {
    fn from([x, y]: [i64; 2]) -> Self {
        LatticePoint { x, y }
    }
}

impl From<LatticePoint> for [i64; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.x, p.y]
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint { x, y }
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.x, -self.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.x, self.y)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Lattice-point statistics of a polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PickData {
    /// Number of lattice points, boundary included.
    pub sharp: u64,
    /// Twice the area.
    pub area2: u64,
    /// Lattice perimeter. For a segment this counts both sides, `2 * (sharp - 1)`.
    pub boundary: u64,
    pub interior: u64,
}

/// A convex lattice polygon in canonical vertex order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

impl fmt::Debug for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticePolygon{self}")
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for LatticePolygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePolygon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pts = Vec::<LatticePoint>::deserialize(d)?;
        convex_hull(&pts).map_err(serde::de::Error::custom)
    }
}

/// Canonical convex hull of a non-empty point set (Andrew's monotone chain,
/// collinear points dropped).
pub fn convex_hull(points: &[LatticePoint]) -> Result<LatticePolygon, PolygonError> {
    if points.is_empty() {
        return Err(PolygonError::Empty);
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return Ok(LatticePolygon { vertices: pts });
    }
    let mut hull: Vec<LatticePoint> = Vec::with_capacity(pts.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &LatticePoint>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if (b - a).cross(p - b) <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        // all points collinear: the two chains collapse onto the extremes
        let (lo, hi) = (pts[0], *pts.last().unwrap());
        return Ok(LatticePolygon { vertices: vec![lo, hi] });
    }
    Ok(LatticePolygon { vertices: hull })
}

/// Parses the shared polygon literal `[[x,y],...]` and hulls it.
pub fn parse_polygon(literal: &str) -> Result<LatticePolygon, PolygonError> {
    let pts: Vec<[i64; 2]> = serde_json::from_str(literal).map_err(|e| PolygonError::Literal(e.to_string()))?;
    let pts: Vec<LatticePoint> = pts.into_iter().map(LatticePoint::from).collect();
    convex_hull(&pts)
}

impl LatticePolygon {
    /// Hull of the given points; shorthand for [`convex_hull`] with
    /// coordinate pairs.
    pub fn from_points(points: &[(i64, i64)]) -> Result<Self, PolygonError> {
        let pts: Vec<LatticePoint> = points.iter().map(|&p| p.into()).collect();
        convex_hull(&pts)
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// 0 for a point, 1 for a segment, 2 otherwise.
    pub fn dimension(&self) -> usize {
        self.vertices.len().min(3) - 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Edge vectors in counter-clockwise order. A segment has the two
    /// opposite edges `b - a` and `a - b`; a point has none.
    pub fn edges(&self) -> Vec<LatticePoint> {
        let v = &self.vertices;
        if v.len() < 2 {
            return Vec::new();
        }
        (0..v.len()).map(|i| v[(i + 1) % v.len()] - v[i]).collect()
    }

    /// Sorted lattice lengths of the edges.
    pub fn edge_lengths(&self) -> Vec<i64> {
        let mut l: Vec<i64> = self.edges().iter().map(|e| e.lattice_length()).collect();
        l.sort_unstable();
        l
    }

    /// Bounding box as `(min, max)` corners.
    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let xs = self.vertices.iter().map(|p| p.x);
        let ys = self.vertices.iter().map(|p| p.y);
        (
            LatticePoint::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            LatticePoint::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        let v = &self.vertices;
        match v.len() {
            1 => v[0] == p,
            2 => {
                let (a, b) = (v[0], v[1]);
                (b - a).cross(p - a) == 0
                    && p.x >= a.x.min(b.x)
                    && p.x <= a.x.max(b.x)
                    && p.y >= a.y.min(b.y)
                    && p.y <= a.y.max(b.y)
            }
            _ => (0..v.len()).all(|i| (v[(i + 1) % v.len()] - v[i]).cross(p - v[i]) >= 0),
        }
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains_polygon(&self, other: &LatticePolygon) -> bool {
        other.vertices.iter().all(|&p| self.contains(p))
    }

    /// All lattice points, sorted lexicographically.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        for x in lo.x..=hi.x {
            for y in lo.y..=hi.y {
                let p = LatticePoint::new(x, y);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Lattice-point count without materialising the points.
    pub fn lattice_point_count(&self) -> u64 {
        self.pick_accounting().sharp
    }

    /// Lattice-point count, doubled area, boundary and interior counts.
    /// Boundary and area come from the vertex data, the total from Pick's
    /// identity `2 * sharp = area2 + boundary + 2`.
    pub fn pick_accounting(&self) -> PickData {
        let v = &self.vertices;
        match v.len() {
            1 => PickData { sharp: 1, area2: 0, boundary: 0, interior: 0 },
            2 => {
                let g = (v[1] - v[0]).lattice_length() as u64;
                PickData { sharp: g + 1, area2: 0, boundary: 2 * g, interior: 0 }
            }
            _ => {
                let area2 = self.area2();
                let boundary: u64 = self.edges().iter().map(|e| e.lattice_length() as u64).sum();
                let sharp = (area2 + boundary + 2) / 2;
                PickData { sharp, area2, boundary, interior: sharp - boundary }
            }
        }
    }

    /// Twice the area via the shoelace sum.
    pub fn area2(&self) -> u64 {
        let v = &self.vertices;
        if v.len() < 3 {
            return 0;
        }
        let s: i64 = (0..v.len()).map(|i| v[i].cross(v[(i + 1) % v.len()])).sum();
        s.unsigned_abs()
    }

    pub fn translate(&self, t: LatticePoint) -> LatticePolygon {
        LatticePolygon { vertices: self.vertices.iter().map(|&p| p + t).collect() }
    }

    /// Translate so that the first (lexicographically least) vertex sits at
    /// the origin. Two polygons are translates iff their normalisations agree.
    pub fn normalized(&self) -> LatticePolygon {
        self.translate(-self.vertices[0])
    }

    /// Interior lattice points (points off every edge).
    pub fn interior_points(&self) -> Vec<LatticePoint> {
        if self.dimension() < 2 {
            return Vec::new();
        }
        let v = &self.vertices;
        self.lattice_points()
            .into_iter()
            .filter(|&p| (0..v.len()).all(|i| (v[(i + 1) % v.len()] - v[i]).cross(p - v[i]) > 0))
            .collect()
    }
}
