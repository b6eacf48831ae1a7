//! Toric surface codes `C_P` over `F_q` and their weight statistics.
//!
//! The code of a lattice polygon `P` is spanned by the evaluations of the
//! monomials `x^a y^b`, `(a, b)` a lattice point of `P`, at every point of
//! the torus `(F_q^*)^2`. Rows of the generator matrix follow the
//! lexicographic order of the exponents, columns the order of
//! [`FieldSpec::torus_points`].

mod engine;
mod enumerator;

pub use engine::{min_distance_of, weight_enumerator_of, Checkpoint, EnumerationJob, Mode, CHECKPOINT_VERSION};
pub use enumerator::{EnumeratorDocument, WeightEnumerator};

use thiserror::Error;

use crate::gf::{FieldElement, FieldError, FieldSpec};
use crate::lattice::{LatticePoint, LatticePolygon};

/// Smallest field order accepted by [`build_code`].
pub const MIN_FIELD_ORDER: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("field order {0} is below the supported minimum of {MIN_FIELD_ORDER}")]
    FieldTooSmall(usize),
    #[error("polygon {polygon} spans {width} x {height}, more than fits in [0, {max}]^2 for q = {q}")]
    PolygonTooLarge { polygon: String, width: i64, height: i64, max: i64, q: usize },
    #[error("exponent {exponent} lies outside [-{max}, {max}]^2 for q = {q}")]
    ExponentOutOfRange { exponent: LatticePoint, max: i64, q: usize },
    #[error("generator matrix has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("message has {got} symbols, code dimension is {expected}")]
    MessageLength { expected: usize, got: usize },
    #[error("field element {value} is out of range for F_{q}")]
    BadSymbol { value: u8, q: usize },
    #[error("checkpoint does not belong to this code, field and mode")]
    CheckpointMismatch,
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A `k x n` matrix over `F_q`, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    rows: Vec<Vec<FieldElement>>,
    n: usize,
}

impl GeneratorMatrix {
    /// Panics if the rows have different lengths or there are none.
    pub fn new(rows: Vec<Vec<FieldElement>>) -> Self {
        let n = rows.first().map(Vec::len).expect("generator matrix needs at least one row");
        assert!(rows.iter().all(|r| r.len() == n), "ragged generator matrix");
        GeneratorMatrix { rows, n }
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    /// Same matrix with columns reordered: column `j` of the result is
    /// column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> GeneratorMatrix {
        assert_eq!(perm.len(), self.n);
        GeneratorMatrix::new(self.rows.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect())
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self, field: &FieldSpec) -> usize {
        let mut m = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
            let pivot_row: Vec<FieldElement> = m[rank].iter().map(|&a| field.mul(a, inv)).collect();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let f = row[col];
                    for (x, &p) in row.iter_mut().zip(&pivot_row) {
                        *x = field.sub(*x, field.mul(f, p));
                    }
                }
            }
            m[rank] = pivot_row;
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }

    /// `message * G`.
    pub fn encode(&self, field: &FieldSpec, message: &[FieldElement]) -> Result<Vec<FieldElement>, CodeError> {
        if message.len() != self.k() {
            return Err(CodeError::MessageLength { expected: self.k(), got: message.len() });
        }
        if let Some(bad) = message.iter().find(|m| m.index() >= field.order()) {
            return Err(CodeError::BadSymbol { value: bad.value(), q: field.order() });
        }
        let mut out = vec![FieldElement::ZERO; self.n];
        for (&c, row) in message.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = field.add(*o, field.mul(c, g));
            }
        }
        Ok(out)
    }
}

/// Hamming weight.
pub fn weight(codeword: &[FieldElement]) -> usize {
    codeword.iter().filter(|c| !c.is_zero()).count()
}

/// The toric surface code of a polygon over a field.
#[derive(Clone, Debug)]
pub struct ToricCode {
    field: FieldSpec,
    polygon: LatticePolygon,
    exponents: Vec<LatticePoint>,
    points: Vec<(FieldElement, FieldElement)>,
    generator: GeneratorMatrix,
}

/// Builds `C_P` over `field`. Exponents are used as given; negative ones are
/// evaluated through inverses.
pub fn build_code(field: &FieldSpec, polygon: &LatticePolygon) -> Result<ToricCode, CodeError> {
    let q = field.order();
    if q < MIN_FIELD_ORDER {
        return Err(CodeError::FieldTooSmall(q));
    }
    let max = q as i64 - 2;
    let (lo, hi) = polygon.bounding_box();
    let (width, height) = (hi.x - lo.x, hi.y - lo.y);
    if width > max || height > max {
        return Err(CodeError::PolygonTooLarge { polygon: polygon.to_string(), width, height, max, q });
    }
    let exponents = polygon.lattice_points();
    if let Some(&e) = exponents.iter().find(|e| e.x.abs() > max || e.y.abs() > max) {
        return Err(CodeError::ExponentOutOfRange { exponent: e, max, q });
    }
    let points = field.torus_points();
    let m = q as i64 - 1;
    // t = (g^i, g^j) so t^e = g^(i e.x + j e.y)
    let rows: Vec<Vec<FieldElement>> = exponents
        .iter()
        .map(|e| (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| field.exp(i * e.x + j * e.y)).collect())
        .collect();
    let generator = GeneratorMatrix::new(rows);
    let rank = generator.rank(field);
    if rank != exponents.len() {
        return Err(CodeError::RankDeficient { rank, k: exponents.len() });
    }
    Ok(ToricCode { field: field.clone(), polygon: polygon.clone(), exponents, points, generator })
}

impl ToricCode {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn polygon(&self) -> &LatticePolygon {
        &self.polygon
    }

    /// Monomial exponents in row order.
    pub fn exponents(&self) -> &[LatticePoint] {
        &self.exponents
    }

    /// Evaluation points in column order.
    pub fn points(&self) -> &[(FieldElement, FieldElement)] {
        &self.points
    }

    pub fn generator(&self) -> &GeneratorMatrix {
        &self.generator
    }

    /// Dimension.
    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    /// Block length `(q - 1)^2`.
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Codeword of the polynomial whose coefficient on `exponents()[i]` is
    /// `message[i]`.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>, CodeError> {
        self.generator.encode(&self.field, message)
    }

    pub fn weight_enumerator(&self, mode: Mode, workers: usize) -> WeightEnumerator {
        weight_enumerator_of(&self.field, &self.generator, mode, workers)
    }

    /// Minimum distance. The search stops early once a codeword meets
    /// the best proven lower bound for this polygon and field.
    pub fn min_distance(&self, workers: usize) -> usize {
        let floor = crate::invariants::proven_distance_floor(&self.polygon, self.field.order() as u64);
        min_distance_of(&self.field, &self.generator, floor, workers)
    }
}
