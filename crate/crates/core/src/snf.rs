//! Smith normal form over arbitrary-precision integers and abelianization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::presentation::Presentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().cloned().map(Into::into).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(src, c) * k;
            *self.get_mut(dst, c) += v;
        }
    }

    /// `col[dst] += k * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, src) * k;
            *self.get_mut(r, dst) += v;
        }
    }
}

/// Position of the nonzero entry of least absolute value among `cells`.
fn smallest(m: &IntegerMatrix, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    cells
        .filter(|&(r, c)| !m.get(r, c).is_zero())
        .min_by(|&(r1, c1), &(r2, c2)| m.get(r1, c1).abs().cmp(&m.get(r2, c2).abs()))
}

/// Diagonal `d1 | d2 | ...` of length `min(rows, cols)`, nonnegative, zeros last.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let n = a.rows.min(a.cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        let cells = (t..a.rows).flat_map(|r| (t..a.cols).map(move |c| (r, c)));
        let Some((r, c)) = smallest(&a, cells) else {
            break;
        };
        a.swap_rows(t, r);
        a.swap_cols(t, c);
        loop {
            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for r in t + 1..a.rows {
                let q = a.get(r, t).div_floor(&pivot);
                if !q.is_zero() {
                    a.add_row(r, t, &-q);
                }
                clean &= a.get(r, t).is_zero();
            }
            for c in t + 1..a.cols {
                let q = a.get(t, c).div_floor(&pivot);
                if !q.is_zero() {
                    a.add_col(c, t, &-q);
                }
                clean &= a.get(t, c).is_zero();
            }
            if !clean {
                let line = (t..a.rows).map(|r| (r, t)).chain((t + 1..a.cols).map(|c| (t, c)));
                let (r, c) = smallest(&a, line).expect("pivot is nonzero");
                a.swap_rows(t, r);
                a.swap_cols(t, c);
                continue;
            }
            let stray = (t + 1..a.rows)
                .find(|&r| (t + 1..a.cols).any(|c| !a.get(r, c).is_multiple_of(&pivot)));
            match stray {
                Some(r) => a.add_row(t, r, &BigInt::from(1)),
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
    }
    diag.resize(n, BigInt::zero());
    diag
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Invariant factors greater than 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

/// Torsion entries become JSON numbers when they fit in `u64` and decimal strings otherwise.
impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Entry {
            Small(u64),
            Big(String),
        }
        let torsion: Vec<Entry> = self
            .torsion
            .iter()
            .map(|t| t.to_u64().map_or_else(|| Entry::Big(t.to_string()), Entry::Small))
            .collect();
        let mut st = s.serialize_struct("AbelianInvariants", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}

/// Exponent-sum matrix with one row per relator and one column per generator.
pub fn relation_matrix(p: &Presentation) -> IntegerMatrix {
    let gens: Vec<_> = p.generators.iter().collect();
    let rels: Vec<_> = p.relator_words().collect();
    let mut m = IntegerMatrix::zeros(rels.len(), gens.len());
    for (row, r) in rels.iter().enumerate() {
        for s in r.symbols() {
            if let Ok(col) = gens.binary_search(&&s.gen) {
                *m.get_mut(row, col) += s.exponent();
            }
        }
    }
    m
}

pub fn abelianize(p: &Presentation) -> AbelianInvariants {
    let diag = smith_normal_form(&relation_matrix(p));
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    AbelianInvariants {
        free_rank: p.generators.len() - rank,
        torsion: diag.into_iter().filter(|x| *x > BigInt::from(1)).collect(),
    }
}
