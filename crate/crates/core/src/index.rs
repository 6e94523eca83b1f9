//! Canonical multiset indices, bases and majorization.
//!
//! Every entry key of a symmetric tensor and every edge of a uniform
//! multi-hypergraph is a multiset of `m` vertices drawn from `1..=n`. The
//! canonical representative is the ascending sort of any raw tuple, so two
//! tuples that are permutations of each other share one key.
//!
//! Vertices are 1-based everywhere in the public API.

use std::cmp::Ordering;
use std::fmt;

use num_integer::binomial;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Sorted m-tuple of vertex indices in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetIndex {
    entries: Vec<usize>,
    n: usize,
}

impl MultisetIndex {
    /// Sorts `raw` into canonical form after range-checking every position.
    pub fn canonicalize(raw: &[usize], n: usize) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::InvalidOrder(raw.len()));
        }
        if n == 0 {
            return Err(Error::InvalidDimension(n));
        }
        if let Some((position, &value)) = raw.iter().enumerate().find(|(_, &v)| v == 0 || v > n) {
            return Err(Error::IndexOutOfRange {
                position: position + 1,
                value,
                n,
            });
        }
        let mut entries = raw.to_vec();
        entries.sort_unstable();
        Ok(Self { entries, n })
    }

    /// Caller guarantees `entries` is sorted, in range and of length >= 2.
    pub(crate) fn from_sorted(entries: Vec<usize>, n: usize) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(entries.iter().all(|&v| v >= 1 && v <= n));
        Self { entries, n }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// The set of distinct vertices.
    pub fn base(&self) -> Base {
        let mut vertices = self.entries.clone();
        vertices.dedup();
        Base { vertices }
    }

    /// Number of distinct ordered tuples that canonicalize to this index,
    /// i.e. the multinomial `m! / prod(multiplicity!)`.
    pub fn ordered_count(&self) -> u64 {
        let mut count = 1u64;
        let mut placed = 0u64;
        for run in self.entries.chunk_by(|a, b| a == b) {
            let k = run.len() as u64;
            count *= binomial(placed + k, k);
            placed += k;
        }
        count
    }

    /// How many positions (with multiplicity) fall inside `set`.
    pub fn count_in(&self, set: &Base) -> usize {
        self.entries.iter().filter(|v| set.contains(**v)).count()
    }

    /// Relation between the bases of `self` and `other`.
    pub fn majorization(&self, other: &MultisetIndex) -> Result<Majorization> {
        if self.order() != other.order() || self.n != other.n {
            return Err(Error::ShapeMismatch {
                expected_m: self.order(),
                expected_n: self.n,
                found_m: other.order(),
                found_n: other.n,
            });
        }
        let a = self.base();
        let b = other.base();
        Ok(Majorization::from_flags(a.is_subset(&b), b.is_subset(&a)))
    }
}

impl fmt::Display for MultisetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MultisetIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

/// Relation `a ? b` induced by base inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Majorization {
    /// Equal bases.
    Similar,
    /// `B(a)` is a proper subset of `B(b)`.
    StrictlyMajorizedBy,
    /// `B(b)` is a proper subset of `B(a)`.
    StrictlyMajorizes,
    Incomparable,
}

impl Majorization {
    fn from_flags(a_in_b: bool, b_in_a: bool) -> Self {
        match (a_in_b, b_in_a) {
            (true, true) => Majorization::Similar,
            (true, false) => Majorization::StrictlyMajorizedBy,
            (false, true) => Majorization::StrictlyMajorizes,
            (false, false) => Majorization::Incomparable,
        }
    }

    /// `a ⪯ b`
    pub fn a_below_b(self) -> bool {
        matches!(
            self,
            Majorization::Similar | Majorization::StrictlyMajorizedBy
        )
    }

    /// `b ⪯ a`
    pub fn b_below_a(self) -> bool {
        matches!(
            self,
            Majorization::Similar | Majorization::StrictlyMajorizes
        )
    }
}

/// Sorted set of distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Base {
    vertices: Vec<usize>,
}

impl Base {
    /// Builds a base from arbitrary vertices in `1..=n`; duplicates collapse.
    pub fn new(vertices: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let mut vertices: Vec<usize> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::EmptyBase);
        }
        if let Some((position, &value)) =
            vertices.iter().enumerate().find(|(_, &v)| v == 0 || v > n)
        {
            return Err(Error::IndexOutOfRange {
                position: position + 1,
                value,
                n,
            });
        }
        vertices.sort_unstable();
        vertices.dedup();
        Ok(Self { vertices })
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self { vertices }
    }

    /// `{1, ..., n}`
    pub fn full(n: usize) -> Self {
        Self {
            vertices: (1..=n).collect(),
        }
    }

    /// Vertices whose bit `v - 1` is set.
    pub fn from_mask(mask: u64) -> Self {
        Self {
            vertices: (0..64)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| b + 1)
                .collect(),
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Base) -> bool {
        let mut theirs = other.vertices.iter();
        'outer: for v in &self.vertices {
            for w in theirs.by_ref() {
                match w.cmp(v) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Base) -> bool {
        !self.vertices.iter().any(|v| other.contains(*v))
    }

    /// Bitmask with bit `v - 1` set for each vertex. Only meaningful for
    /// vertices up to 64.
    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0u64, |acc, v| acc | 1 << (v - 1))
    }

    /// All canonical m-multisets whose base is contained in `self`, in
    /// lexicographic order. There are `C(r + m - 1, m)` of them.
    pub fn complete_multisets(&self, m: usize, n: usize) -> Result<Vec<MultisetIndex>> {
        self.check_complete(m, n)?;
        let r = self.vertices.len();
        let mut out = Vec::with_capacity(multiset_count(r, m) as usize);
        // positions into `self.vertices`, kept non-decreasing
        let mut pos = vec![0usize; m];
        loop {
            out.push(MultisetIndex::from_sorted(
                pos.iter().map(|&p| self.vertices[p]).collect(),
                n,
            ));
            let Some(k) = (0..m).rev().find(|&k| pos[k] + 1 < r) else {
                break;
            };
            let next = pos[k] + 1;
            pos[k..].fill(next);
        }
        Ok(out)
    }

    /// All ordered m-tuples over `self`, in lexicographic order; `r^m` of them.
    pub fn complete_tuples(&self, m: usize, n: usize) -> Result<Vec<Vec<usize>>> {
        self.check_complete(m, n)?;
        let r = self.vertices.len();
        let total = r.checked_pow(m as u32).ok_or(Error::CapabilityExceeded {
            what: "ordered tuple count",
            limit: usize::MAX,
            actual: usize::MAX,
        })?;
        let mut out = Vec::with_capacity(total);
        let mut pos = vec![0usize; m];
        loop {
            out.push(pos.iter().map(|&p| self.vertices[p]).collect());
            let Some(k) = (0..m).rev().find(|&k| pos[k] + 1 < r) else {
                break;
            };
            pos[k] += 1;
            pos[k + 1..].fill(0);
        }
        Ok(out)
    }

    fn check_complete(&self, m: usize, n: usize) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyBase);
        }
        if m < 2 {
            return Err(Error::InvalidOrder(m));
        }
        if let Some(&value) = self.vertices.last().filter(|&&v| v > n) {
            return Err(Error::IndexOutOfRange {
                position: self.vertices.len(),
                value,
                n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// `C(r + m - 1, m)`: canonical m-multisets over r vertices.
pub fn multiset_count(r: usize, m: usize) -> u64 {
    if r == 0 {
        return 0;
    }
    binomial((r + m - 1) as u64, m as u64)
}

/// `C(m - 1, k - 1)`: canonical m-multisets whose base is one fixed set of
/// exactly k vertices.
pub fn exact_base_count(k: usize, m: usize) -> u64 {
    if k == 0 || k > m {
        return 0;
    }
    binomial((m - 1) as u64, (k - 1) as u64)
}

/// Every canonical m-multiset over `1..=n`.
pub fn all_multisets(n: usize, m: usize) -> Result<Vec<MultisetIndex>> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    Base::full(n).complete_multisets(m, n)
}
