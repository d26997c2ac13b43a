//! Compositions of integers as real-root multiplicity patterns.
//!
//! A composition `(w1, ..., wl)` lists the multiplicities of the distinct real
//! roots of a polynomial, in increasing order of the roots. Two moves degenerate
//! a pattern: [`Composition::merge`] collides two adjacent roots and
//! [`Composition::insert`] turns a complex-conjugate pair into a real double
//! root. Their reflexive-transitive closure is the order used to decide which
//! pattern sets are closed.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of positive integers. The empty composition is allowed.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::Parse(format!(
                "composition parts must be positive, found 0 at position {}",
                pos + 1
            )));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// The composition `(1, ..., 1)` with `k` parts.
    pub fn ones(k: usize) -> Self {
        Composition(vec![1; k])
    }

    /// The wall pattern `(1^i, 2, 1^j)`.
    pub fn wall(i: usize, j: usize) -> Self {
        let mut parts = vec![1; i];
        parts.push(2);
        parts.extend(std::iter::repeat(1).take(j));
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn norm(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    /// `norm - length`, the codimension of the corresponding cell.
    pub fn reduced_norm(&self) -> usize {
        self.norm() - self.length()
    }

    /// Whether the pattern is realizable by a monic polynomial of degree `d`.
    pub fn in_omega(&self, d: usize) -> bool {
        let n = self.norm();
        n <= d && n % 2 == d % 2
    }

    /// Sums parts `j` and `j + 1` (1-based). Returns `self` unchanged when `j >= length`.
    pub fn merge(&self, j: usize) -> Composition {
        assert!(j >= 1, "merge index is 1-based");
        if j >= self.length() {
            return self.clone();
        }
        let mut parts = Vec::with_capacity(self.length() - 1);
        parts.extend_from_slice(&self.0[..j - 1]);
        parts.push(self.0[j - 1] + self.0[j]);
        parts.extend_from_slice(&self.0[j + 1..]);
        Composition(parts)
    }

    /// Inserts a part `2` at position `j` (1-based). Returns `self` unchanged when `j > length + 1`.
    pub fn insert(&self, j: usize) -> Composition {
        assert!(j >= 1, "insert index is 1-based");
        if j > self.length() + 1 {
            return self.clone();
        }
        let mut parts = self.0.clone();
        parts.insert(j - 1, 2);
        Composition(parts)
    }

    /// All compositions reachable by one effective merge or insert.
    pub fn successors(&self) -> BTreeSet<Composition> {
        let l = self.length();
        let merges = (1..l).map(|j| self.merge(j));
        let inserts = (1..=l + 1).map(|j| self.insert(j));
        merges.chain(inserts).collect()
    }

    /// If the composition is `(1^i, 2, 1^j)`, returns `(i, j)`.
    pub fn as_wall(&self) -> Option<(usize, usize)> {
        let twos: Vec<usize> = positions(&self.0, 2);
        if twos.len() == 1 && self.0.iter().all(|&p| p == 1 || p == 2) {
            let i = twos[0];
            Some((i, self.length() - i - 1))
        } else {
            None
        }
    }

    /// If the composition is `(1^i, 3, 1^j)`, returns `(i, j)`.
    pub fn as_single_three(&self) -> Option<(usize, usize)> {
        let threes = positions(&self.0, 3);
        if threes.len() == 1 && self.0.iter().all(|&p| p == 1 || p == 3) {
            let i = threes[0];
            Some((i, self.length() - i - 1))
        } else {
            None
        }
    }

    /// If the composition is `(1^i, 2, 1^j, 2, 1^l)`, returns `(i, j, l)`.
    pub fn as_double_two(&self) -> Option<(usize, usize, usize)> {
        let twos = positions(&self.0, 2);
        if twos.len() == 2 && self.0.iter().all(|&p| p == 1 || p == 2) {
            let (a, b) = (twos[0], twos[1]);
            Some((a, b - a - 1, self.length() - b - 1))
        } else {
            None
        }
    }

    /// Compact rendering used by the DOT export: `(1 2 1)`.
    pub fn spaced(&self) -> String {
        self.to_string()
    }
}

fn positions(parts: &[usize], value: usize) -> Vec<usize> {
    parts
        .iter()
        .enumerate()
        .filter(|(_, &p)| p == value)
        .map(|(k, _)| k)
        .collect()
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.norm()
            .cmp(&other.norm())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Accepts `(1 2 1)`, `(1,2,1)`, `1 2 1` and `()`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad composition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

/// Whether `lower` is obtained from `upper` by a (possibly empty) sequence of merges and inserts.
///
/// Breadth-first search from `upper`. Merges keep the norm and inserts raise it,
/// so anything with norm above `lower.norm()` is pruned.
pub fn precedes(lower: &Composition, upper: &Composition) -> bool {
    if lower == upper {
        return true;
    }
    let bound = lower.norm();
    if upper.norm() > bound || upper.reduced_norm() >= lower.reduced_norm() {
        return false;
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([upper.clone()]);
    seen.insert(upper.clone());
    while let Some(c) = queue.pop_front() {
        for next in c.successors() {
            if next.norm() > bound || seen.contains(&next) {
                continue;
            }
            if &next == lower {
                return true;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    false
}

/// Filter on the reduced norm used by [`enumerate_omega`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedNormFilter {
    Any,
    Eq(usize),
    AtLeast(usize),
}

impl ReducedNormFilter {
    fn accepts(self, c: &Composition) -> bool {
        match self {
            ReducedNormFilter::Any => true,
            ReducedNormFilter::Eq(k) => c.reduced_norm() == k,
            ReducedNormFilter::AtLeast(k) => c.reduced_norm() >= k,
        }
    }
}

/// All compositions of `n`, in lexicographic order.
fn compositions_of(n: usize) -> Vec<Composition> {
    fn rec(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if rest == 0 {
            out.push(Composition(prefix.clone()));
            return;
        }
        for first in 1..=rest {
            prefix.push(first);
            rec(rest - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// The compositions of `Omega<d]` passing `filter`, in canonical order (norm, then lexicographic).
pub fn enumerate_omega(d: usize, filter: ReducedNormFilter) -> Vec<Composition> {
    (0..=d)
        .filter(|n| n % 2 == d % 2)
        .flat_map(compositions_of)
        .filter(|c| filter.accepts(c))
        .collect()
}

/// A set of forbidden patterns inside `Omega<d]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaPoset {
    d: usize,
    members: BTreeSet<Composition>,
}

impl ThetaPoset {
    /// Validates membership in `Omega<d]`; closedness is not required.
    pub fn new(d: usize, members: impl IntoIterator<Item = Composition>) -> Result<Self> {
        if d == 0 {
            return Err(Error::DegreeTooSmall(d));
        }
        let members: BTreeSet<Composition> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|c| !c.in_omega(d)) {
            return Err(Error::OutsideOmega { composition: bad.clone(), d });
        }
        Ok(ThetaPoset { d, members })
    }

    /// Like [`ThetaPoset::new`] but fails unless the set is already closed.
    pub fn new_closed(d: usize, members: impl IntoIterator<Item = Composition>) -> Result<Self> {
        let theta = Self::new(d, members)?;
        theta.require_closed()?;
        Ok(theta)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn members(&self) -> &BTreeSet<Composition> {
        &self.members
    }

    pub fn contains(&self, c: &Composition) -> bool {
        self.members.contains(c)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// A member together with a one-step descendant in `Omega<d]` that is missing, if any.
    pub fn closedness_witness(&self) -> Option<(Composition, Composition)> {
        self.members.iter().find_map(|m| {
            m.successors()
                .into_iter()
                .find(|s| s.in_omega(self.d) && !self.members.contains(s))
                .map(|s| (m.clone(), s))
        })
    }

    pub fn is_closed(&self) -> bool {
        self.closedness_witness().is_none()
    }

    pub fn require_closed(&self) -> Result<()> {
        match self.closedness_witness() {
            Some((member, missing)) => Err(Error::NotClosed { member, missing }),
            None => Ok(()),
        }
    }

    /// Members with the given reduced norm.
    pub fn slice(&self, reduced_norm: usize) -> BTreeSet<Composition> {
        self.members
            .iter()
            .filter(|c| c.reduced_norm() == reduced_norm)
            .cloned()
            .collect()
    }

    /// Splits the codimension-2 patterns of `Omega<d]` into members and non-members.
    pub fn split_eq2(&self) -> Result<(BTreeSet<Composition>, BTreeSet<Composition>)> {
        self.require_closed()?;
        Ok(enumerate_omega(self.d, ReducedNormFilter::Eq(2))
            .into_iter()
            .partition(|c| self.members.contains(c)))
    }
}

/// The smallest closed pattern set in `Omega<d]` containing `seed`.
pub fn closure<'a>(seed: impl IntoIterator<Item = &'a Composition>, d: usize) -> Result<ThetaPoset> {
    let mut members = BTreeSet::new();
    let mut queue = VecDeque::new();
    for c in seed {
        if !c.in_omega(d) {
            return Err(Error::OutsideOmega { composition: c.clone(), d });
        }
        if members.insert(c.clone()) {
            queue.push_back(c.clone());
        }
    }
    while let Some(c) = queue.pop_front() {
        for next in c.successors() {
            if next.norm() <= d && members.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    ThetaPoset::new(d, members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn merge_examples() {
        assert_eq!(c(&[2, 1, 3]).merge(1), c(&[3, 3]));
        assert_eq!(c(&[1, 1]).merge(1), c(&[2]));
        assert_eq!(c(&[4]).merge(2), c(&[4]));
        assert_eq!(c(&[2, 1, 3]).merge(2), c(&[2, 4]));
    }

    #[test]
    fn insert_examples() {
        assert_eq!(c(&[1, 1]).insert(1), c(&[2, 1, 1]));
        assert_eq!(c(&[1, 1]).insert(3), c(&[1, 1, 2]));
        assert_eq!(Composition::empty().insert(1), c(&[2]));
        assert_eq!(c(&[1, 1]).insert(5), c(&[1, 1]));
    }

    #[test]
    fn precedes_examples() {
        assert!(precedes(&c(&[2]), &c(&[1, 1])));
        assert!(precedes(&c(&[4]), &c(&[2, 2])));
        assert!(!precedes(&c(&[2]), &c(&[2, 2])));
        assert!(precedes(&c(&[1, 3]), &c(&[1, 3])));
        assert!(precedes(&c(&[2, 2, 1, 1]), &c(&[1, 1])));
    }

    #[test]
    fn enumerate_counts() {
        let zero = enumerate_omega(6, ReducedNormFilter::Eq(0));
        assert_eq!(zero, vec![Composition::empty(), c(&[1, 1]), Composition::ones(4), Composition::ones(6)]);
        assert_eq!(enumerate_omega(6, ReducedNormFilter::Eq(1)).len(), 9);
        let two = enumerate_omega(6, ReducedNormFilter::Eq(2));
        assert_eq!(two.len(), 13);
        assert_eq!(&two[..3], &[c(&[1, 3]), c(&[2, 2]), c(&[3, 1])]);
    }

    #[test]
    fn closure_examples() {
        let t = closure(&[c(&[2, 2])], 4).unwrap();
        assert_eq!(t.members().iter().cloned().collect::<Vec<_>>(), vec![c(&[2, 2]), c(&[4])]);
        let t = closure(&[c(&[6])], 6).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.is_closed());
    }

    #[test]
    fn closure_rejects_wrong_parity() {
        let err = closure(&[c(&[2, 1])], 6).unwrap_err();
        assert!(matches!(err, Error::OutsideOmega { .. }));
        let err = closure(&[c(&[4, 4])], 6).unwrap_err();
        assert!(matches!(err, Error::OutsideOmega { .. }));
    }

    #[test]
    fn split_requires_closed() {
        let open = ThetaPoset::new(4, [c(&[2, 2])]).unwrap();
        assert!(!open.is_closed());
        assert!(matches!(open.split_eq2(), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn split_of_full_and_ge3() {
        let full = closure(&enumerate_omega(6, ReducedNormFilter::Eq(2)), 6).unwrap();
        let (inside, outside) = full.split_eq2().unwrap();
        assert_eq!(inside.len(), 13);
        assert!(outside.is_empty());
        let ge3 = closure(&enumerate_omega(6, ReducedNormFilter::Eq(3)), 6).unwrap();
        let (inside, outside) = ge3.split_eq2().unwrap();
        assert!(inside.is_empty());
        assert_eq!(outside.len(), 13);
    }

    #[test]
    fn shape_recognizers() {
        assert_eq!(c(&[1, 2, 1, 1]).as_wall(), Some((1, 2)));
        assert_eq!(c(&[2]).as_wall(), Some((0, 0)));
        assert_eq!(c(&[1, 3]).as_single_three(), Some((1, 0)));
        assert_eq!(c(&[1, 2, 1, 2]).as_double_two(), Some((1, 1, 0)));
        assert_eq!(c(&[2, 2]).as_double_two(), Some((0, 0, 0)));
        assert_eq!(c(&[2, 3]).as_double_two(), None);
        assert_eq!(c(&[3, 3]).as_single_three(), None);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("(1 2 1)".parse::<Composition>().unwrap(), c(&[1, 2, 1]));
        assert_eq!("(1,2,1)".parse::<Composition>().unwrap(), c(&[1, 2, 1]));
        assert_eq!("()".parse::<Composition>().unwrap(), Composition::empty());
        assert!("(1 0)".parse::<Composition>().is_err());
        assert_eq!(c(&[1, 2, 1]).to_string(), "(1 2 1)");
        assert_eq!(Composition::empty().to_string(), "()");
    }
}
