//! Exhaustive enumeration of codewords.
//!
//! Messages are grouped into chunks that are processed independently and
//! merged by histogram addition, so results do not depend on scheduling.
//!
//! In projective mode a message is normalised so that its first nonzero
//! digit is 1. When no entry of the last generator row vanishes (always the
//! case for toric codes, monomials have no zeros on the torus) the last
//! digit is not enumerated: with `s_j = -sum_i m_i g_ij / g_(k-1)j`, the
//! codeword with last digit `c` vanishes at `j` exactly when `s_j = c`, so a
//! single pass over `s` yields the weights of all `q` completions at once.

use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CodeError, GeneratorMatrix, WeightEnumerator};
use crate::gf::FieldSpec;

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every one of the `q^k` messages.
    Full,
    /// One message per line through the origin, counts scaled by `q - 1`.
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Chunk {
    /// Enumerate the free digits below `top`; the digits above are fixed to
    /// `top` (most significant first) and the pivot, if any, to 1.
    Range { pivot: Option<usize>, top: Vec<u8> },
    /// The single projective point whose only nonzero digit is `pivot`.
    Solo { pivot: usize },
}

/// Partial histogram plus the position to continue from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub q: usize,
    pub modulus: Vec<u32>,
    pub mode: Mode,
    pub k: usize,
    pub n: usize,
    /// Hash of the generator matrix, guards against resuming another code.
    pub fingerprint: u64,
    pub chunks_total: usize,
    pub next_chunk: usize,
    /// Raw counts indexed by weight (projective classes in projective mode).
    pub histogram: Vec<u64>,
}

trait Sink {
    fn push(&mut self, weight: usize, count: u64);
    fn stop(&self) -> bool;
}

struct Histogram<'a>(&'a mut [u64]);

impl Sink for Histogram<'_> {
    #[inline]
    fn push(&mut self, weight: usize, count: u64) {
        self.0[weight] += count;
    }
    #[inline]
    fn stop(&self) -> bool {
        false
    }
}

struct Minimum<'a> {
    best: usize,
    floor: usize,
    shared: &'a AtomicUsize,
}

impl Sink for Minimum<'_> {
    #[inline]
    fn push(&mut self, weight: usize, _count: u64) {
        if weight > 0 && weight < self.best {
            self.best = weight;
            self.shared.fetch_min(weight, Ordering::Relaxed);
        }
    }
    #[inline]
    fn stop(&self) -> bool {
        self.best <= self.floor
    }
}

/// Precomputed tables for enumerating one generator matrix.
pub struct EnumerationJob {
    q: usize,
    k: usize,
    n: usize,
    mode: Mode,
    fiber: bool,
    modulus: Vec<u32>,
    fingerprint: u64,
    /// `add[a << 6 | b] = a + b`
    add: Vec<u8>,
    /// `step[a] = (a + 1) - a` with `a + 1` taken in encoding order mod q
    step: Vec<u8>,
    raw: Vec<Vec<u8>>,
    /// `scaled[i][c * n + j] = c * w_ij` for the working rows `w`
    scaled: Vec<Vec<u8>>,
    chunks: Vec<Chunk>,
}

fn fnv1a(bytes: impl Iterator<Item = u8>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

impl EnumerationJob {
    pub fn new(field: &FieldSpec, generator: &GeneratorMatrix, mode: Mode) -> Self {
        let (q, k, n) = (field.order(), generator.k(), generator.n());
        let raw: Vec<Vec<u8>> = generator.rows().iter().map(|r| r.iter().map(|e| e.value()).collect()).collect();
        let fiber = mode == Mode::Projective && k >= 2 && raw[k - 1].iter().all(|&x| x != 0);

        let elems: Vec<_> = field.elements().collect();
        let mut add = vec![0u8; 64 * 64];
        for &a in &elems {
            for &b in &elems {
                add[a.index() << 6 | b.index()] = field.add(a, b).value();
            }
        }
        let step = (0..q).map(|a| field.sub(elems[(a + 1) % q], elems[a]).value()).collect();

        let working: Vec<Vec<u8>> = if fiber {
            let last = &generator.rows()[k - 1];
            generator.rows()[..k - 1]
                .iter()
                .map(|r| {
                    r.iter()
                        .zip(last)
                        .map(|(&a, &l)| field.neg(field.div(a, l).expect("last row has no zeros")).value())
                        .collect()
                })
                .collect()
        } else {
            raw.clone()
        };
        let el = &elems;
        let scaled = working
            .iter()
            .map(|w| el.iter().flat_map(|&c| w.iter().map(move |&x| field.mul(c, el[x as usize]).value())).collect())
            .collect();

        let mut chunks = Vec::new();
        let mut push_ranges = |pivot: Option<usize>, free: usize| {
            let top = free.min(2);
            let count = q.pow(top as u32);
            for idx in 0..count {
                // most significant fixed digit first
                let digits = (0..top).map(|t| ((idx / q.pow((top - 1 - t) as u32)) % q) as u8).collect();
                chunks.push(Chunk::Range { pivot, top: digits });
            }
        };
        match mode {
            Mode::Full => push_ranges(None, k),
            Mode::Projective => {
                let end = if fiber { k - 1 } else { k };
                for h in 0..end {
                    push_ranges(Some(h), end - h - 1);
                }
                if fiber {
                    chunks.push(Chunk::Solo { pivot: k - 1 });
                }
            }
        }

        let fingerprint = fnv1a(
            [q as u8, k as u8]
                .into_iter()
                .chain(field.modulus().iter().map(|&c| c as u8))
                .chain(raw.iter().flatten().copied()),
        );
        EnumerationJob {
            q,
            k,
            n,
            mode,
            fiber,
            modulus: field.modulus().to_vec(),
            fingerprint,
            add,
            step,
            raw,
            scaled,
            chunks,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn chunk_count(&self) -> usize {
        self.chunks.len()
    }

    fn free_range(&self, pivot: Option<usize>) -> Range<usize> {
        match pivot {
            None => 0..self.k,
            Some(h) => h + 1..if self.fiber { self.k - 1 } else { self.k },
        }
    }

    #[inline]
    fn scaled_row(&self, i: usize, c: u8) -> &[u8] {
        let c = c as usize;
        &self.scaled[i][c * self.n..(c + 1) * self.n]
    }

    #[inline]
    fn add_into(&self, acc: &mut [u8], row: &[u8]) {
        for (a, &r) in acc.iter_mut().zip(row) {
            *a = self.add[(*a as usize) << 6 | r as usize];
        }
    }

    #[inline]
    fn add_counting(&self, acc: &mut [u8], row: &[u8], zc: &mut [u32; 64]) {
        *zc = [0; 64];
        for (a, &r) in acc.iter_mut().zip(row) {
            let v = self.add[(*a as usize) << 6 | r as usize];
            *a = v;
            zc[v as usize] += 1;
        }
    }

    #[inline]
    fn emit<S: Sink>(&self, zc: &[u32; 64], sink: &mut S) {
        if self.fiber {
            for &z in &zc[..self.q] {
                sink.push(self.n - z as usize, 1);
            }
        } else {
            sink.push(self.n - zc[0] as usize, 1);
        }
    }

    fn run_chunk<S: Sink>(&self, chunk: &Chunk, sink: &mut S) {
        let (pivot, top) = match chunk {
            Chunk::Solo { pivot } => {
                let w = self.raw[*pivot].iter().filter(|&&x| x != 0).count();
                sink.push(w, 1);
                return;
            }
            Chunk::Range { pivot, top } => (*pivot, top),
        };
        let free = self.free_range(pivot);
        let inner = free.start..free.end - top.len();
        let mut acc = vec![0u8; self.n];
        if let Some(h) = pivot {
            acc.copy_from_slice(self.scaled_row(h, 1));
        }
        for (t, &c) in top.iter().enumerate() {
            self.add_into(&mut acc, self.scaled_row(free.end - 1 - t, c));
        }
        let mut zc = [0u32; 64];
        for &a in &acc {
            zc[a as usize] += 1;
        }
        let mut digits = vec![0u8; inner.len()];
        loop {
            self.emit(&zc, sink);
            if sink.stop() {
                return;
            }
            // advance the little-endian counter; wrapped digits are added
            // plainly, the last changed digit also recounts
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return;
                }
                let d = digits[i];
                let row = self.scaled_row(inner.start + i, self.step[d as usize]);
                let next = if d as usize + 1 == self.q { 0 } else { d + 1 };
                digits[i] = next;
                if next != 0 {
                    self.add_counting(&mut acc, row, &mut zc);
                    break;
                }
                self.add_into(&mut acc, row);
                i += 1;
            }
        }
    }

    fn pool(workers: usize) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().expect("thread pool")
    }

    /// Raw histogram of the chunks in `range`.
    pub fn run_chunks(&self, range: Range<usize>, workers: usize) -> Vec<u64> {
        let n = self.n;
        Self::pool(workers).install(|| {
            self.chunks[range]
                .par_iter()
                .fold(
                    || vec![0u64; n + 1],
                    |mut h, c| {
                        self.run_chunk(c, &mut Histogram(&mut h));
                        h
                    },
                )
                .reduce(
                    || vec![0u64; n + 1],
                    |mut a, b| {
                        a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                        a
                    },
                )
        })
    }

    /// Turns a complete raw histogram into the weight enumerator.
    pub fn finish(&self, raw: &[u64]) -> WeightEnumerator {
        let counts = match self.mode {
            Mode::Full => raw.to_vec(),
            Mode::Projective => {
                debug_assert_eq!(raw[0], 0, "nonzero message with zero codeword");
                let mut c: Vec<u64> = raw.iter().map(|&a| a * (self.q as u64 - 1)).collect();
                c[0] = 1;
                c
            }
        };
        WeightEnumerator::new(counts)
    }

    pub fn run(&self, workers: usize) -> WeightEnumerator {
        self.finish(&self.run_chunks(0..self.chunks.len(), workers))
    }

    /// Smallest nonzero weight, stopping as soon as a weight `<= floor` is
    /// seen. `floor` must be a lower bound for the answer to be exact.
    pub fn min_weight(&self, floor: usize, workers: usize) -> usize {
        let shared = AtomicUsize::new(usize::MAX);
        Self::pool(workers).install(|| {
            self.chunks.par_iter().for_each(|c| {
                if shared.load(Ordering::Relaxed) <= floor {
                    return;
                }
                let mut sink = Minimum { best: usize::MAX, floor, shared: &shared };
                self.run_chunk(c, &mut sink);
            })
        });
        shared.into_inner()
    }

    pub fn checkpoint(&self, next_chunk: usize, histogram: Vec<u64>) -> Checkpoint {
        Checkpoint {
            version: CHECKPOINT_VERSION,
            q: self.q,
            modulus: self.modulus.clone(),
            mode: self.mode,
            k: self.k,
            n: self.n,
            fingerprint: self.fingerprint,
            chunks_total: self.chunks.len(),
            next_chunk,
            histogram,
        }
    }

    fn check_resume(&self, c: &Checkpoint) -> Result<(), CodeError> {
        let fresh = self.checkpoint(c.next_chunk, c.histogram.clone());
        let same = c.version == fresh.version
            && c.q == fresh.q
            && c.modulus == fresh.modulus
            && c.mode == fresh.mode
            && c.k == fresh.k
            && c.n == fresh.n
            && c.fingerprint == fresh.fingerprint
            && c.chunks_total == fresh.chunks_total
            && c.next_chunk <= c.chunks_total
            && c.histogram.len() == self.n + 1;
        if same {
            Ok(())
        } else {
            Err(CodeError::CheckpointMismatch)
        }
    }

    /// Runs the remaining chunks in batches of `batch`, calling `save`
    /// after each batch. Starting from a checkpoint produces the same result
    /// as an uninterrupted run.
    pub fn run_resumable(
        &self,
        resume: Option<Checkpoint>,
        workers: usize,
        batch: usize,
        mut save: impl FnMut(&Checkpoint) -> std::io::Result<()>,
    ) -> Result<WeightEnumerator, CodeError> {
        let (mut next, mut hist) = match resume {
            Some(c) => {
                self.check_resume(&c)?;
                (c.next_chunk, c.histogram)
            }
            None => (0, vec![0u64; self.n + 1]),
        };
        let total = self.chunks.len();
        while next < total {
            let end = (next + batch.max(1)).min(total);
            let part = self.run_chunks(next..end, workers);
            hist.iter_mut().zip(&part).for_each(|(x, y)| *x += y);
            next = end;
            save(&self.checkpoint(next, hist.clone())).map_err(|e| CodeError::Io(e.to_string()))?;
        }
        Ok(self.finish(&hist))
    }
}

pub fn weight_enumerator_of(
    field: &FieldSpec,
    generator: &GeneratorMatrix,
    mode: Mode,
    workers: usize,
) -> WeightEnumerator {
    EnumerationJob::new(field, generator, mode).run(workers)
}

pub fn min_distance_of(field: &FieldSpec, generator: &GeneratorMatrix, floor: usize, workers: usize) -> usize {
    EnumerationJob::new(field, generator, Mode::Projective).min_weight(floor, workers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{build_code, weight};
    use crate::gf::FieldElement;
    use crate::lattice::LatticePolygon;

    fn poly(pts: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::from_points(pts).unwrap()
    }

    fn brute(field: &FieldSpec, g: &GeneratorMatrix) -> Vec<u64> {
        let (q, k) = (field.order(), g.k());
        let mut h = vec![0u64; g.n() + 1];
        for idx in 0..q.pow(k as u32) {
            let msg: Vec<FieldElement> =
                (0..k).map(|i| FieldElement::from_encoding(((idx / q.pow(i as u32)) % q) as u8)).collect();
            h[weight(&g.encode(field, &msg).unwrap())] += 1;
        }
        h
    }

    #[test]
    fn modes_agree_with_brute_force() {
        let f7 = FieldSpec::with_order(7).unwrap();
        for p in [
            poly(&[(0, 0), (1, 0), (0, 1)]),
            poly(&[(0, 0), (2, 0), (1, 1), (0, 1)]),
            poly(&[(-1, -1), (1, 0), (0, 1)]),
        ] {
            let c = build_code(&f7, &p).unwrap();
            let expect = brute(&f7, c.generator());
            for mode in [Mode::Full, Mode::Projective] {
                for workers in [1, 3] {
                    assert_eq!(c.weight_enumerator(mode, workers).counts(), &expect[..], "{p} {mode:?}");
                }
            }
        }
    }

    #[test]
    fn projective_without_fiber() {
        // a last row with a zero forces the direct projective path
        let f5 = FieldSpec::with_order(5).unwrap();
        let e = |v: u8| FieldElement::from_encoding(v);
        let g = GeneratorMatrix::new(vec![
            vec![e(1), e(1), e(1), e(1), e(0)],
            vec![e(0), e(1), e(2), e(3), e(4)],
            vec![e(1), e(0), e(4), e(2), e(3)],
        ]);
        let job = EnumerationJob::new(&f5, &g, Mode::Projective);
        assert!(!job.fiber);
        assert_eq!(job.run(2).counts(), &brute(&f5, &g)[..]);
        assert_eq!(weight_enumerator_of(&f5, &g, Mode::Full, 1).counts(), &brute(&f5, &g)[..]);
    }

    #[test]
    fn single_row_code() {
        let f7 = FieldSpec::with_order(7).unwrap();
        let c = build_code(&f7, &poly(&[(1, 2)])).unwrap();
        let e = c.weight_enumerator(Mode::Projective, 1);
        assert_eq!(e.terms(), vec![(0, 1), (36, 6)]);
        assert_eq!(c.weight_enumerator(Mode::Full, 1), e);
    }

    #[test]
    fn min_weight_with_and_without_floor() {
        let f7 = FieldSpec::with_order(7).unwrap();
        let c = build_code(&f7, &poly(&[(0, 0), (2, 0), (2, 1), (0, 1)])).unwrap();
        let job = EnumerationJob::new(&f7, c.generator(), Mode::Projective);
        assert_eq!(job.min_weight(1, 1), 20);
        assert_eq!(job.min_weight(20, 2), 20);
    }

    #[test]
    fn resume_matches_uninterrupted_run() {
        let f7 = FieldSpec::with_order(7).unwrap();
        let c = build_code(&f7, &poly(&[(0, 0), (1, 0), (3, 3), (0, 1)])).unwrap();
        let job = EnumerationJob::new(&f7, c.generator(), Mode::Projective);
        let whole = job.run(1);
        let mut saved = Vec::new();
        let again = job
            .run_resumable(None, 1, 7, |cp| {
                saved.push(cp.clone());
                Ok(())
            })
            .unwrap();
        assert_eq!(again, whole);
        let mid = saved[saved.len() / 2].clone();
        let json = serde_json::to_string(&mid).unwrap();
        let back: Checkpoint = serde_json::from_str(&json).unwrap();
        assert_eq!(job.run_resumable(Some(back), 2, 5, |_| Ok(())).unwrap(), whole);

        let other = build_code(&f7, &poly(&[(-1, -1), (3, 0), (0, 1)])).unwrap();
        let other = EnumerationJob::new(&f7, other.generator(), Mode::Projective);
        assert_eq!(other.run_resumable(Some(mid), 1, 5, |_| Ok(())), Err(CodeError::CheckpointMismatch));
    }
}
