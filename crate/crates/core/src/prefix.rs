//! Finite listing prefixes and their order fingerprints.
//!
//! Positions are 1-based throughout: `f(1)` is the first value a listing
//! enumerates. Values are naturals starting at 1.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// An initial segment of a listing: pairwise distinct naturals in
/// enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrefixListing {
    values: Vec<u64>,
}

impl PrefixListing {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(values.len());
        for &v in &values {
            if v == 0 {
                return Err(Error::ZeroValue);
            }
            if !seen.insert(v) {
                return Err(Error::DuplicateValue(v));
            }
        }
        Ok(Self { values })
    }

    pub fn empty() -> Self {
        Self { values: Vec::new() }
    }

    /// Builds a prefix whose distinctness the caller has already established.
    pub(crate) fn from_distinct(values: Vec<u64>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self { values }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The value at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> Option<u64> {
        pos.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    /// The 1-based position of `value`, if enumerated.
    pub fn position_of(&self, value: u64) -> Option<usize> {
        self.values.iter().position(|&v| v == value).map(|i| i + 1)
    }

    pub fn contains(&self, value: u64) -> bool {
        self.values.contains(&value)
    }

    /// The first `k` values (or all of them, if shorter).
    pub fn take(&self, k: usize) -> Self {
        Self {
            values: self.values[..k.min(self.len())].to_vec(),
        }
    }

    pub fn value_set(&self) -> BTreeSet<u64> {
        self.values.iter().copied().collect()
    }

    /// Values sorted ascending.
    pub fn ascending_values(&self) -> Vec<u64> {
        let mut sorted = self.values.clone();
        sorted.sort_unstable();
        sorted
    }
}

impl fmt::Display for PrefixListing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Position pairs `(i, j)`, `i < j`, where the earlier value is larger.
/// Stored in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct InversionSet {
    pairs: Vec<(usize, usize)>,
}

impl InversionSet {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: (usize, usize)) -> bool {
        self.pairs.binary_search(&pair).is_ok()
    }

    pub fn is_subset(&self, other: &InversionSet) -> bool {
        self.pairs.iter().all(|&p| other.contains(p))
    }
}

/// The standardized permutation of a prefix: `ranks[i]` is the number of
/// prefix values less than or equal to the value at position `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Pattern {
    ranks: Vec<usize>,
}

impl Pattern {
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        let n = ranks.len();
        let mut seen = vec![false; n];
        for &r in &ranks {
            if r == 0 || r > n || seen[r - 1] {
                return Err(Error::BadPattern(format!(
                    "{ranks:?} is not a permutation of 1..={n}"
                )));
            }
            seen[r - 1] = true;
        }
        Ok(Self { ranks })
    }

    pub(crate) fn from_ranks_unchecked(ranks: Vec<usize>) -> Self {
        Self { ranks }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// The listing that places the `r`-th smallest of `values` wherever the
    /// pattern has rank `r`. `values` need not be sorted.
    pub fn materialize(&self, values: &[u64]) -> Result<PrefixListing> {
        if values.len() != self.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: values.len(),
            });
        }
        let mut ascending = PrefixListing::new(values.to_vec())?.into_values();
        ascending.sort_unstable();
        Ok(PrefixListing::from_distinct(
            self.ranks.iter().map(|&r| ascending[r - 1]).collect(),
        ))
    }

    /// The pattern viewed as a listing of `{1..n}`.
    pub fn to_listing(&self) -> PrefixListing {
        PrefixListing::from_distinct(self.ranks.iter().map(|&r| r as u64).collect())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_listing(), f)
    }
}

/// Outcome of a reducibility check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// The lexicographically least `(i, j)` with `i < j`, `f(i) > f(j)` and
    /// `g(i) < g(j)`.
    FailsAt(usize, usize),
}

impl Verdict {
    pub fn holds(self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn failure(self) -> Option<(usize, usize)> {
        match self {
            Verdict::Holds => None,
            Verdict::FailsAt(i, j) => Some((i, j)),
        }
    }
}

/// A finite stand-in for an infinite set: the set's elements up to `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SetSample {
    elements: BTreeSet<u64>,
    bound: u64,
}

impl SetSample {
    pub fn new(elements: impl IntoIterator<Item = u64>, bound: u64) -> Result<Self> {
        let elements: BTreeSet<u64> = elements.into_iter().collect();
        if elements.contains(&0) {
            return Err(Error::ZeroValue);
        }
        if let Some(&max) = elements.last() {
            if max > bound {
                return Err(Error::BadSample(format!(
                    "element {max} exceeds bound {bound}"
                )));
            }
        }
        Ok(Self { elements, bound })
    }

    /// A sample whose bound is its own maximum.
    pub fn tight(elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        let elements: BTreeSet<u64> = elements.into_iter().collect();
        let bound = elements.last().copied().unwrap_or(0);
        Self::new(elements, bound)
    }

    pub fn elements(&self) -> &BTreeSet<u64> {
        &self.elements
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.contains(&x)
    }

    pub fn min(&self) -> Option<u64> {
        self.elements.first().copied()
    }
}

pub fn make_prefix(values: Vec<u64>) -> Result<PrefixListing> {
    PrefixListing::new(values)
}

pub fn inversions(p: &PrefixListing) -> InversionSet {
    let v = p.values();
    let mut pairs = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                pairs.push((i + 1, j + 1));
            }
        }
    }
    InversionSet { pairs }
}

pub fn standardize(p: &PrefixListing) -> Pattern {
    let v = p.values();
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_unstable_by_key(|&i| v[i]);
    let mut ranks = vec![0; v.len()];
    for (rank, &i) in order.iter().enumerate() {
        ranks[i] = rank + 1;
    }
    Pattern::from_ranks_unchecked(ranks)
}

fn check_lengths(f: &PrefixListing, g: &PrefixListing) -> Result<()> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    Ok(())
}

/// Decides `f ≤eo g` on equal-length prefixes: every inversion of `f` must be
/// an inversion of `g`.
pub fn leq_eo(f: &PrefixListing, g: &PrefixListing) -> Result<Verdict> {
    check_lengths(f, g)?;
    let (fv, gv) = (f.values(), g.values());
    for i in 0..fv.len() {
        for j in i + 1..fv.len() {
            if fv[i] > fv[j] && gv[i] < gv[j] {
                return Ok(Verdict::FailsAt(i + 1, j + 1));
            }
        }
    }
    Ok(Verdict::Holds)
}

pub fn equiv_eo(f: &PrefixListing, g: &PrefixListing) -> Result<bool> {
    Ok(leq_eo(f, g)?.holds() && leq_eo(g, f)?.holds())
}

/// The decidable-set listing: the sample in ascending order.
pub fn ascending_listing(s: &SetSample) -> PrefixListing {
    PrefixListing::from_distinct(s.elements().iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(values: &[u64]) -> PrefixListing {
        PrefixListing::new(values.to_vec()).unwrap()
    }

    // Independent oracles: plain pair enumeration and rank counting.
    fn oracle_inversions(v: &[u64]) -> Vec<(usize, usize)> {
        let n = v.len();
        (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| i < j && v[i - 1] > v[j - 1])
            .collect()
    }

    fn oracle_ranks(v: &[u64]) -> Vec<usize> {
        v.iter()
            .map(|x| v.iter().filter(|y| *y <= x).count())
            .collect()
    }

    #[test]
    fn make_prefix_validates() {
        assert_eq!(make_prefix(vec![2, 4, 6]).unwrap().len(), 3);
        assert!(make_prefix(vec![]).unwrap().is_empty());
        assert_eq!(make_prefix(vec![3, 3]), Err(Error::DuplicateValue(3)));
        assert_eq!(make_prefix(vec![1, 0]), Err(Error::ZeroValue));
    }

    #[test]
    fn inversion_examples() {
        assert!(inversions(&p(&[2, 4, 6, 8])).is_empty());
        let oracle = oracle_inversions(&[3, 1, 2]);
        assert_eq!(oracle, vec![(1, 2), (1, 3)]);
        assert_eq!(inversions(&p(&[3, 1, 2])).pairs(), oracle.as_slice());
        assert_eq!(
            inversions(&p(&[3, 2, 1])).pairs(),
            &[(1, 2), (1, 3), (2, 3)]
        );
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&p(&[2, 4, 6])).ranks(), &[1, 2, 3]);
        let oracle = oracle_ranks(&[6, 2, 4]);
        assert_eq!(oracle, vec![3, 1, 2]);
        assert_eq!(standardize(&p(&[6, 2, 4])).ranks(), oracle.as_slice());
        assert_eq!(standardize(&p(&[3, 1, 2])).ranks(), &[3, 1, 2]);
        assert!(standardize(&PrefixListing::empty()).is_empty());
    }

    #[test]
    fn leq_examples() {
        assert_eq!(leq_eo(&p(&[2, 4, 6]), &p(&[2, 3, 4])), Ok(Verdict::Holds));
        assert_eq!(
            leq_eo(&p(&[1, 3, 2]), &p(&[1, 2, 3])),
            Ok(Verdict::FailsAt(2, 3))
        );
        assert_eq!(leq_eo(&p(&[5, 9, 7]), &p(&[5, 9, 7])), Ok(Verdict::Holds));
        assert_eq!(
            leq_eo(&p(&[1, 2]), &p(&[1])),
            Err(Error::LengthMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn fails_at_is_lexicographically_least() {
        // f inverts (1,2), (1,3), (2,3); g inverts none of them.
        let v = leq_eo(&p(&[3, 2, 1]), &p(&[1, 2, 3])).unwrap();
        assert_eq!(v, Verdict::FailsAt(1, 2));
        // Only (2,3) and (1,3) are inverted in f; g keeps (1,3).
        let v = leq_eo(&p(&[3, 5, 1]), &p(&[9, 2, 4])).unwrap();
        assert_eq!(v, Verdict::FailsAt(2, 3));
    }

    #[test]
    fn equiv_examples() {
        assert!(equiv_eo(&p(&[2, 4, 6]), &p(&[2, 3, 4])).unwrap());
        assert!(equiv_eo(&p(&[2, 4]), &p(&[5, 9])).unwrap());
        assert!(!equiv_eo(&p(&[1, 3, 2]), &p(&[1, 2, 3])).unwrap());
        assert!(equiv_eo(&p(&[1]), &p(&[1, 2])).is_err());
    }

    #[test]
    fn ascending_examples() {
        let s = SetSample::tight([5, 2, 9]).unwrap();
        assert_eq!(ascending_listing(&s).values(), &[2, 5, 9]);
        assert!(ascending_listing(&SetSample::tight([]).unwrap()).is_empty());
        let s = SetSample::tight([2, 4, 6, 8]).unwrap();
        assert_eq!(ascending_listing(&s).values(), &[2, 4, 6, 8]);
    }

    #[test]
    fn sample_rejects_elements_above_bound() {
        assert!(SetSample::new([1, 10], 9).is_err());
        assert!(SetSample::new([0], 9).is_err());
    }

    #[test]
    fn pattern_materialize_and_validate() {
        let pat = Pattern::new(vec![3, 1, 2]).unwrap();
        assert_eq!(
            pat.materialize(&[20, 10, 30]).unwrap().values(),
            &[30, 10, 20]
        );
        assert!(Pattern::new(vec![1, 1]).is_err());
        assert!(Pattern::new(vec![0]).is_err());
        assert!(pat.materialize(&[1, 2]).is_err());
    }

    #[test]
    fn take_truncates() {
        let q = p(&[4, 1, 3]);
        assert_eq!(q.take(2).values(), &[4, 1]);
        assert_eq!(q.take(10), q);
        assert_eq!(q.at(1), Some(4));
        assert_eq!(q.at(0), None);
        assert_eq!(q.position_of(3), Some(3));
        assert_eq!(q.to_string(), "4 1 3");
    }
}
