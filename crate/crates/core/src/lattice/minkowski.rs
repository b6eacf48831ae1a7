//! Minkowski sums, Minkowski length `l(P)` and full Minkowski length `L(P)`.
//!
//! `l(P)` is found by exhaustive search over Minkowski decompositions (every
//! summand is, up to translation, the hull of some lattice points of `P`).
//! `L(P)` has two routes: [`full_minkowski_length_exhaustive`] maximises
//! `l(Q)` over all lattice subpolygons `Q`, while [`full_minkowski_length`]
//! packs summands drawn from a small alphabet (primitive segments, unit
//! triangles, exceptional triangles) which contains every summand of a
//! maximal decomposition of a maximal subpolygon. The two are cross-checked
//! in tests.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::{convex_hull, LatticePoint, LatticePolygon, PickData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinkowskiError {
    #[error("Minkowski length is undefined for a single point")]
    SinglePoint,
}

/// Pointwise sum, computed as the hull of pairwise vertex sums.
pub fn minkowski_sum(p: &LatticePolygon, q: &LatticePolygon) -> LatticePolygon {
    let sums: Vec<LatticePoint> = p.vertices().iter().flat_map(|&a| q.vertices().iter().map(move |&b| a + b)).collect();
    convex_hull(&sums).expect("sum of non-empty polygons is non-empty")
}

/// `conv{(0,0),(2,1),(1,2)}`: one interior and three boundary points.
pub fn exceptional_triangle() -> LatticePolygon {
    LatticePolygon::from_points(&[(0, 0), (2, 1), (1, 2)]).unwrap()
}

fn is_exceptional(p: &LatticePolygon) -> bool {
    p.vertices().len() == 3 && p.pick_accounting() == PickData { sharp: 4, area2: 3, boundary: 3, interior: 1 }
}

fn is_unit_triangle(p: &LatticePolygon) -> bool {
    p.vertices().len() == 3 && p.area2() == 1
}

/// Result of a full-Minkowski-length computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullMinkowskiLength {
    /// `L(P)`.
    pub length: usize,
    /// A subpolygon `Q` of `P` with `l(Q) = L(P)`.
    pub witness: LatticePolygon,
    /// A maximal decomposition of `witness` (normalised summands).
    pub summands: Vec<LatticePolygon>,
    /// Some maximal decomposition of some maximal subpolygon has an
    /// exceptional-triangle summand.
    pub exceptional_possible: bool,
}

#[derive(Clone, Debug)]
struct Decomposition {
    length: usize,
    exceptional: bool,
    summands: Vec<LatticePolygon>,
}

/// Memoised exhaustive decomposition search, keyed by normalised polygon.
#[derive(Default)]
struct Decomposer {
    memo: HashMap<LatticePolygon, Decomposition>,
}

fn subset_hulls(points: &[LatticePoint]) -> Vec<LatticePolygon> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let m = points.len();
    for mask in 1u32..(1 << m) {
        if mask.count_ones() < 2 {
            continue;
        }
        let sub: Vec<LatticePoint> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| points[i]).collect();
        let hull = convex_hull(&sub).unwrap();
        if seen.insert(hull.clone()) {
            out.push(hull);
        }
    }
    out.sort();
    out
}

impl Decomposer {
    fn decompose(&mut self, p: &LatticePolygon) -> Decomposition {
        let key = p.normalized();
        if let Some(d) = self.memo.get(&key) {
            return d.clone();
        }
        let d = self.search(&key);
        self.memo.insert(key, d.clone());
        d
    }

    fn search(&mut self, p: &LatticePolygon) -> Decomposition {
        if p.is_segment() {
            let d = p.vertices()[1] - p.vertices()[0];
            let g = d.lattice_length() as usize;
            let unit = convex_hull(&[LatticePoint::ORIGIN, d.primitive()]).unwrap();
            return Decomposition { length: g, exceptional: false, summands: vec![unit; g] };
        }
        let mut best = Decomposition { length: 1, exceptional: is_exceptional(p), summands: vec![p.clone()] };
        let pts = p.lattice_points();
        let mut candidates: Vec<LatticePolygon> = subset_hulls(&pts).into_iter().map(|h| h.normalized()).collect();
        candidates.sort();
        candidates.dedup();
        for a in candidates {
            if a == *p {
                continue;
            }
            // lattice translates x with a + x inside p
            let shifts: Vec<LatticePoint> = pts
                .iter()
                .map(|&x| x - a.vertices()[0])
                .filter(|&x| a.vertices().iter().all(|&v| p.contains(v + x)))
                .collect();
            if shifts.len() < 2 {
                continue;
            }
            let b = convex_hull(&shifts).unwrap();
            if minkowski_sum(&a, &b) != *p {
                continue;
            }
            let da = self.decompose(&a);
            let db = self.decompose(&b);
            let length = da.length + db.length;
            let exceptional = da.exceptional || db.exceptional;
            if length > best.length {
                let mut summands = da.summands.clone();
                summands.extend(db.summands.iter().cloned());
                best = Decomposition { length, exceptional, summands };
            } else if length == best.length {
                best.exceptional |= exceptional;
            }
        }
        best
    }
}

/// `l(P)`: the largest number of positive-dimensional lattice summands in a
/// Minkowski decomposition of `P`, with one such decomposition.
pub fn minkowski_length(p: &LatticePolygon) -> Result<(usize, Vec<LatticePolygon>), MinkowskiError> {
    if p.dimension() == 0 {
        return Err(MinkowskiError::SinglePoint);
    }
    let d = Decomposer::default().decompose(p);
    Ok((d.length, d.summands))
}

/// `L(P)` by maximising `l(Q)` over every lattice subpolygon `Q`. Exponential
/// in the number of lattice points; meant for polygons with at most a dozen.
pub fn full_minkowski_length_exhaustive(p: &LatticePolygon) -> Result<FullMinkowskiLength, MinkowskiError> {
    if p.dimension() == 0 {
        return Err(MinkowskiError::SinglePoint);
    }
    let mut dec = Decomposer::default();
    let mut best: Option<FullMinkowskiLength> = None;
    for q in subset_hulls(&p.lattice_points()) {
        let d = dec.decompose(&q);
        match &mut best {
            Some(b) if d.length < b.length => {}
            Some(b) if d.length == b.length => b.exceptional_possible |= d.exceptional,
            _ => {
                best = Some(FullMinkowskiLength {
                    length: d.length,
                    witness: q,
                    summands: d.summands,
                    exceptional_possible: d.exceptional,
                })
            }
        }
    }
    Ok(best.expect("a polygon with two lattice points has a segment subpolygon"))
}

struct Packer<'a> {
    target: &'a LatticePolygon,
    points: Vec<LatticePoint>,
    alphabet: Vec<(LatticePolygon, bool)>,
    best: Option<FullMinkowskiLength>,
    chosen: Vec<usize>,
}

impl Packer<'_> {
    /// A translate of `s` inside the target, if any.
    fn placement(&self, s: &LatticePolygon) -> Option<LatticePoint> {
        let base = s.vertices()[0];
        self.points.iter().map(|&p| p - base).find(|&t| s.vertices().iter().all(|&v| self.target.contains(v + t)))
    }

    fn record(&mut self, sum: Option<&LatticePolygon>, shift: LatticePoint) {
        let count = self.chosen.len();
        let exceptional = self.chosen.iter().any(|&i| self.alphabet[i].1);
        match &mut self.best {
            Some(b) if count < b.length => {}
            Some(b) if count == b.length => b.exceptional_possible |= exceptional,
            _ => {
                let witness = sum.map(|s| s.translate(shift)).unwrap_or_else(|| self.target.clone());
                self.best = Some(FullMinkowskiLength {
                    length: count,
                    witness,
                    summands: self.chosen.iter().map(|&i| self.alphabet[i].0.clone()).collect(),
                    exceptional_possible: exceptional,
                });
            }
        }
    }

    fn extend(&mut self, sum: Option<LatticePolygon>, from: usize) {
        for i in from..self.alphabet.len() {
            let next = match &sum {
                None => self.alphabet[i].0.clone(),
                Some(s) => minkowski_sum(s, &self.alphabet[i].0),
            };
            if let Some(shift) = self.placement(&next) {
                self.chosen.push(i);
                self.record(Some(&next), shift);
                self.extend(Some(next.normalized()), i);
                self.chosen.pop();
            }
        }
    }
}

/// `L(P)` by packing alphabet summands into `P`.
pub fn full_minkowski_length(p: &LatticePolygon) -> Result<FullMinkowskiLength, MinkowskiError> {
    if p.dimension() == 0 {
        return Err(MinkowskiError::SinglePoint);
    }
    let points = p.lattice_points();
    let mut alphabet: Vec<(LatticePolygon, bool)> = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |poly: LatticePolygon, exc: bool, alphabet: &mut Vec<(LatticePolygon, bool)>| {
        let poly = poly.normalized();
        if seen.insert(poly.clone()) {
            alphabet.push((poly, exc));
        }
    };
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            let d = (b - a).primitive();
            push(convex_hull(&[LatticePoint::ORIGIN, d]).unwrap(), false, &mut alphabet);
        }
    }
    for (i, &a) in points.iter().enumerate() {
        for (j, &b) in points.iter().enumerate().skip(i + 1) {
            for &c in &points[j + 1..] {
                let tri = convex_hull(&[a, b, c]).unwrap();
                if is_unit_triangle(&tri) {
                    push(tri, false, &mut alphabet);
                } else if is_exceptional(&tri) {
                    push(tri, true, &mut alphabet);
                }
            }
        }
    }
    let mut packer = Packer { target: p, points, alphabet, best: None, chosen: Vec::new() };
    packer.extend(None, 0);
    Ok(packer.best.expect("a polygon with two lattice points contains a primitive segment"))
}
