use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::gf::FieldSpec;

/// `A_w` for `w = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightEnumerator {
    counts: Vec<u64>,
}

/// Serialized form: nonzero terms only, ascending by weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratorDocument {
    pub class: String,
    pub q: usize,
    pub modulus: Vec<u32>,
    pub weights: Vec<(usize, u64)>,
}

impl WeightEnumerator {
    /// `counts[w] = A_w`; the block length is `counts.len() - 1`.
    pub fn new(counts: Vec<u64>) -> Self {
        assert!(!counts.is_empty());
        WeightEnumerator { counts }
    }

    pub fn from_terms(n: usize, terms: &[(usize, u64)]) -> Option<Self> {
        let mut counts = vec![0; n + 1];
        for &(w, a) in terms {
            *counts.get_mut(w)? += a;
        }
        Some(WeightEnumerator { counts })
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, w: usize) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Nonzero `(w, A_w)` in ascending order.
    pub fn terms(&self) -> Vec<(usize, u64)> {
        self.counts.iter().enumerate().filter(|(_, &a)| a > 0).map(|(w, &a)| (w, a)).collect()
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&a| a as u128).sum()
    }

    /// Smallest positive weight that occurs.
    pub fn min_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| self.counts[w] > 0)
    }

    /// Checks `A_0 = 1`, `sum A_w = q^k` and `(q - 1) | A_w` for `w > 0`.
    pub fn check(&self, q: usize, k: usize) -> Result<(), String> {
        if self.counts[0] != 1 {
            return Err(format!("A_0 = {}", self.counts[0]));
        }
        let expect = (q as u128).pow(k as u32);
        if self.total() != expect {
            return Err(format!("sum of counts is {}, expected {q}^{k} = {expect}", self.total()));
        }
        if let Some((w, a)) = self.terms().into_iter().find(|&(w, a)| w > 0 && a % (q as u64 - 1) != 0) {
            return Err(format!("A_{w} = {a} is not divisible by {}", q - 1));
        }
        Ok(())
    }

    pub fn to_document(&self, class: &str, field: &FieldSpec) -> EnumeratorDocument {
        EnumeratorDocument {
            class: class.to_string(),
            q: field.order(),
            modulus: field.modulus().to_vec(),
            weights: self.terms(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("weight,count\n");
        for (w, a) in self.terms() {
            writeln!(s, "{w},{a}").unwrap();
        }
        s
    }
}

impl EnumeratorDocument {
    /// The enumerator of a code of length `(q - 1)^2`.
    pub fn enumerator(&self) -> Option<WeightEnumerator> {
        let n = self.q.checked_sub(1)?.pow(2);
        WeightEnumerator::from_terms(n, &self.weights)
    }
}

/// Polynomial notation, e.g. `1 + 36x^6 + 540x^12`.
impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (w, a)) in self.terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match w {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}x")?,
                _ => write!(f, "{a}x^{w}")?,
            }
        }
        Ok(())
    }
}
