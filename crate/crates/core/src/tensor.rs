//! Sparse symmetric tensors keyed by canonical multiset index.
//!
//! Values are exact nonnegative rationals; zero entries are never stored.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::decision::CpCertificate;
use crate::error::{Error, Result};
use crate::index::{all_multisets, Base, MultisetIndex};

/// Exact nonnegative tensor entry.
pub type Value = Ratio<u64>;

pub(crate) fn check_shape(m: usize, n: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidOrder(m));
    }
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    Ok(())
}

/// Order-m, dimension-n symmetric tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTensor {
    m: usize,
    n: usize,
    entries: BTreeMap<MultisetIndex, Value>,
}

impl SymTensor {
    pub fn zero(m: usize, n: usize) -> Result<Self> {
        check_shape(m, n)?;
        Ok(Self {
            m,
            n,
            entries: BTreeMap::new(),
        })
    }

    /// The all-ones tensor `J`.
    pub fn all_ones(m: usize, n: usize) -> Result<Self> {
        ZeroOneTensor::all_ones(m, n).map(|t| t.to_tensor())
    }

    /// Builds a tensor from raw (possibly unsorted) index tuples. Tuples that
    /// canonicalize to the same key must agree on their value.
    pub fn from_entries<I>(m: usize, n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Value)>,
    {
        check_shape(m, n)?;
        let mut seen: BTreeMap<MultisetIndex, Value> = BTreeMap::new();
        for (raw, value) in entries {
            if raw.len() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    found: raw.len(),
                });
            }
            let key = MultisetIndex::canonicalize(&raw, n)?;
            if let Some(prev) = seen.get(&key) {
                if *prev != value {
                    return Err(Error::SymmetryViolation {
                        key: key.to_string(),
                        first: prev.to_string(),
                        second: value.to_string(),
                    });
                }
            } else {
                seen.insert(key, value);
            }
        }
        seen.retain(|_, v| !v.is_zero());
        Ok(Self {
            m,
            n,
            entries: seen,
        })
    }

    pub(crate) fn from_map(
        m: usize,
        n: usize,
        mut entries: BTreeMap<MultisetIndex, Value>,
    ) -> Self {
        entries.retain(|_, v| !v.is_zero());
        Self { m, n, entries }
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Entry at a raw tuple; routes through canonicalization.
    pub fn get(&self, raw: &[usize]) -> Result<Value> {
        if raw.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                found: raw.len(),
            });
        }
        let key = MultisetIndex::canonicalize(raw, self.n)?;
        Ok(self.value_at(&key))
    }

    pub fn value_at(&self, key: &MultisetIndex) -> Value {
        self.entries.get(key).copied().unwrap_or_else(Value::zero)
    }

    /// Stored (nonzero) entries in lexicographic key order.
    pub fn entries(&self) -> impl Iterator<Item = (&MultisetIndex, &Value)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.values().all(|v| v.is_one())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }

    pub fn same_shape(&self, m: usize, n: usize) -> Result<()> {
        if self.m != m || self.n != n {
            return Err(Error::ShapeMismatch {
                expected_m: self.m,
                expected_n: self.n,
                found_m: m,
                found_n: n,
            });
        }
        Ok(())
    }

    /// Support indicator.
    pub fn pattern(&self) -> ZeroOneTensor {
        ZeroOneTensor {
            m: self.m,
            n: self.n,
            support: self.entries.keys().cloned().collect(),
        }
    }

    /// Restriction to indices inside `set`, relabeled `1..=|set|` in
    /// increasing order. The second value maps new labels back to the old
    /// ones: `relabel[k - 1]` is the original vertex of new vertex `k`.
    pub fn principal_subtensor(&self, set: &Base) -> Result<(SymTensor, Vec<usize>)> {
        validate_subset(set, self.n)?;
        let relabel = set.vertices().to_vec();
        let mut new_label = vec![0usize; self.n + 1];
        for (k, &v) in relabel.iter().enumerate() {
            new_label[v] = k + 1;
        }
        let dim = relabel.len();
        let entries = self
            .entries
            .iter()
            .filter(|(key, _)| key.entries().iter().all(|&v| new_label[v] != 0))
            .map(|(key, value)| {
                let mapped = key.entries().iter().map(|&v| new_label[v]).collect();
                (MultisetIndex::from_sorted(mapped, dim), *value)
            })
            .collect();
        Ok((SymTensor::from_map(self.m, dim, entries), relabel))
    }

    /// Zero slices, isolated vertices and (when `n <= exhaustive_limit`) all
    /// inclusion-maximal zero principal subtensors.
    pub fn find_zero_structures(&self, exhaustive_limit: usize) -> ZeroStructures {
        let mut touched = vec![false; self.n + 1];
        for key in self.entries.keys() {
            for &v in key.entries() {
                touched[v] = true;
            }
        }
        let isolated: Vec<usize> = (1..=self.n).filter(|&v| !touched[v]).collect();

        let maximal_zero_blocks = (self.n <= exhaustive_limit && self.n < 64).then(|| {
            let key_masks: BTreeSet<u64> = self.entries.keys().map(|k| k.base().mask()).collect();
            let is_zero_block = |set: u64| !key_masks.iter().any(|&b| b & !set == 0);
            let mut blocks: Vec<Base> = (1u64..1 << self.n)
                .filter(|&set| is_zero_block(set))
                .filter(|&set| {
                    (0..self.n)
                        .filter(|b| set >> b & 1 == 0)
                        .all(|b| !is_zero_block(set | 1 << b))
                })
                .map(Base::from_mask)
                .collect();
            blocks.sort();
            blocks
        });

        ZeroStructures {
            zero_slices: isolated.clone(),
            isolated,
            maximal_zero_blocks,
        }
    }

    /// Simultaneous relabeling of every mode: the value at `(i1..im)` moves
    /// to `(phi(i1)..phi(im))`.
    pub fn permute(&self, phi: &Permutation) -> Result<SymTensor> {
        if phi.len() != self.n {
            return Err(Error::NotBijection {
                n: self.n,
                reason: format!("permutation acts on {} vertices", phi.len()),
            });
        }
        let entries = self
            .entries
            .iter()
            .map(|(key, value)| {
                let mut mapped: Vec<usize> = key.entries().iter().map(|&v| phi.apply(v)).collect();
                mapped.sort_unstable();
                (MultisetIndex::from_sorted(mapped, self.n), *value)
            })
            .collect();
        Ok(SymTensor::from_map(self.m, self.n, entries))
    }

    /// Block placement: `self` on `1..=n1`, `other` shifted onto
    /// `n1+1..=n1+n2`, all mixed entries zero.
    pub fn direct_sum(&self, other: &SymTensor) -> Result<SymTensor> {
        if self.m != other.m {
            return Err(Error::ShapeMismatch {
                expected_m: self.m,
                expected_n: other.n,
                found_m: other.m,
                found_n: other.n,
            });
        }
        let n = self.n + other.n;
        let mut entries: BTreeMap<MultisetIndex, Value> = self
            .entries
            .iter()
            .map(|(k, v)| (MultisetIndex::from_sorted(k.entries().to_vec(), n), *v))
            .collect();
        entries.extend(other.entries.iter().map(|(k, v)| {
            let shifted = k.entries().iter().map(|&i| i + self.n).collect();
            (MultisetIndex::from_sorted(shifted, n), *v)
        }));
        Ok(SymTensor::from_map(self.m, n, entries))
    }

    /// `u^m` for a {0,1} vector `u`: the entry at `σ` is 1 iff every vertex
    /// of `σ` lies in `supp(u)`.
    pub fn rank_one_power(u: &[u8], m: usize) -> Result<SymTensor> {
        check_shape(m, u.len())?;
        if let Some((position, &value)) = u.iter().enumerate().find(|(_, &x)| x > 1) {
            return Err(Error::NonBinary {
                position: position + 1,
                value: value as u64,
            });
        }
        let n = u.len();
        let support: Vec<usize> = (1..=n).filter(|&i| u[i - 1] == 1).collect();
        if support.is_empty() {
            return SymTensor::zero(m, n);
        }
        let entries = Base::from_sorted(support)
            .complete_multisets(m, n)?
            .into_iter()
            .map(|k| (k, Value::one()))
            .collect();
        Ok(SymTensor::from_map(m, n, entries))
    }

    /// `Σ mult · 1_S^m` over the certificate's supports: the entry at `σ`
    /// counts the certificate vectors whose support contains every vertex
    /// of `σ`.
    pub fn cp_sum(cert: &CpCertificate) -> SymTensor {
        let (m, n) = (cert.order(), cert.dimension());
        let mut entries: BTreeMap<MultisetIndex, Value> = BTreeMap::new();
        for vector in cert.vectors() {
            let keys = vector
                .support
                .complete_multisets(m, n)
                .expect("certificate supports are validated on construction");
            for key in keys {
                *entries.entry(key).or_insert_with(Value::zero) += Value::from(vector.multiplicity);
            }
        }
        SymTensor::from_map(m, n, entries)
    }

    /// Entrywise sum of two tensors of equal shape.
    pub fn add(&self, other: &SymTensor) -> Result<SymTensor> {
        self.same_shape(other.m, other.n)?;
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            *entries.entry(k.clone()).or_insert_with(Value::zero) += *v;
        }
        Ok(SymTensor::from_map(self.m, self.n, entries))
    }

    /// Dense `n x n` slice with the last `m - 2` indices fixed: row = first
    /// mode, column = second mode. For order 3, `slice(&[k])` is `A(:,:,k)`.
    pub fn slice(&self, fixed: &[usize]) -> Result<Vec<Vec<Value>>> {
        if fixed.len() + 2 != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m - 2,
                found: fixed.len(),
            });
        }
        let mut raw = vec![0usize; self.m];
        raw[2..].copy_from_slice(fixed);
        (1..=self.n)
            .map(|i| {
                (1..=self.n)
                    .map(|j| {
                        raw[0] = i;
                        raw[1] = j;
                        self.get(&raw)
                    })
                    .collect()
            })
            .collect()
    }
}

fn validate_subset(set: &Base, n: usize) -> Result<()> {
    if set.is_empty() {
        return Err(Error::EmptyBase);
    }
    if set.vertices().last().is_some_and(|&v| v > n) {
        return Err(Error::InvalidVertexSet(set.to_string()));
    }
    Ok(())
}

/// Symmetric tensor with entries in {0,1}, stored as its support.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroOneTensor {
    m: usize,
    n: usize,
    support: BTreeSet<MultisetIndex>,
}

impl ZeroOneTensor {
    pub fn new(
        m: usize,
        n: usize,
        support: impl IntoIterator<Item = MultisetIndex>,
    ) -> Result<Self> {
        check_shape(m, n)?;
        let support: BTreeSet<MultisetIndex> = support.into_iter().collect();
        if let Some(bad) = support
            .iter()
            .find(|k| k.order() != m || k.dimension() != n)
        {
            return Err(Error::ShapeMismatch {
                expected_m: m,
                expected_n: n,
                found_m: bad.order(),
                found_n: bad.dimension(),
            });
        }
        Ok(Self { m, n, support })
    }

    pub(crate) fn from_support_unchecked(
        m: usize,
        n: usize,
        support: BTreeSet<MultisetIndex>,
    ) -> Self {
        Self { m, n, support }
    }

    pub fn zero(m: usize, n: usize) -> Result<Self> {
        check_shape(m, n)?;
        Ok(Self {
            m,
            n,
            support: BTreeSet::new(),
        })
    }

    pub fn all_ones(m: usize, n: usize) -> Result<Self> {
        check_shape(m, n)?;
        Ok(Self {
            m,
            n,
            support: all_multisets(n, m)?.into_iter().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &BTreeSet<MultisetIndex> {
        &self.support
    }

    pub fn contains(&self, key: &MultisetIndex) -> bool {
        self.support.contains(key)
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn to_tensor(&self) -> SymTensor {
        SymTensor {
            m: self.m,
            n: self.n,
            entries: self
                .support
                .iter()
                .map(|k| (k.clone(), Value::one()))
                .collect(),
        }
    }
}

/// Bijection on `1..=n`, stored as the image of each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i - 1]` is the image of vertex `i`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut hit = vec![false; n + 1];
        for (i, &v) in images.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::NotBijection {
                    n,
                    reason: format!("image {v} of vertex {} is out of range", i + 1),
                });
            }
            if std::mem::replace(&mut hit[v], true) {
                return Err(Error::NotBijection {
                    n,
                    reason: format!("vertex {v} is hit twice"),
                });
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroStructures {
    /// Vertices whose slice is identically zero.
    pub zero_slices: Vec<usize>,
    /// Vertices appearing in no stored key. For a symmetric tensor these
    /// coincide with the zero slices.
    pub isolated: Vec<usize>,
    /// `None` when the exhaustive subset search was skipped.
    pub maximal_zero_blocks: Option<Vec<Base>>,
}

impl ZeroStructures {
    pub fn exhaustive_skipped(&self) -> bool {
        self.maximal_zero_blocks.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u64) -> Value {
        Value::from(x)
    }

    /// The order-3 tensor whose slices are
    /// [2 1 1; 1 1 0; 1 0 1], [1 1 0; 1 2 1; 0 1 1], [1 0 1; 0 1 1; 1 1 2].
    fn three_pair_tensor() -> SymTensor {
        let slices = [
            [[2, 1, 1], [1, 1, 0], [1, 0, 1]],
            [[1, 1, 0], [1, 2, 1], [0, 1, 1]],
            [[1, 0, 1], [0, 1, 1], [1, 1, 2]],
        ];
        let mut entries = Vec::new();
        for (k, slice) in slices.iter().enumerate() {
            for (i, row) in slice.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    if x != 0 {
                        entries.push((vec![i + 1, j + 1, k + 1], v(x)));
                    }
                }
            }
        }
        assert_eq!(entries.len(), 21);
        SymTensor::from_entries(3, 3, entries).unwrap()
    }

    fn matrix(rows: &[&[u64]]) -> SymTensor {
        let n = rows.len();
        let mut entries = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                entries.push((vec![i + 1, j + 1], v(x)));
            }
        }
        SymTensor::from_entries(2, n, entries).unwrap()
    }

    #[test]
    fn from_slices() {
        let a = three_pair_tensor();
        assert_eq!(a.get(&[1, 1, 1]).unwrap(), v(2));
        assert_eq!(a.get(&[1, 1, 2]).unwrap(), v(1));
        assert_eq!(a.get(&[2, 1, 1]).unwrap(), v(1));
        assert_eq!(a.get(&[1, 2, 3]).unwrap(), v(0));
        assert_eq!(a.nnz(), 9);
    }

    #[test]
    fn from_entries_edge_cases() {
        assert!(SymTensor::from_entries(3, 3, Vec::new()).unwrap().is_zero());
        let a =
            SymTensor::from_entries(2, 2, vec![(vec![1, 2], v(5)), (vec![2, 1], v(5))]).unwrap();
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.get(&[2, 1]).unwrap(), v(5));

        let err = SymTensor::from_entries(2, 2, vec![(vec![1, 2], v(5)), (vec![2, 1], v(4))])
            .unwrap_err();
        assert!(matches!(err, Error::SymmetryViolation { ref key, .. } if key == "(1,2)"));

        let err = SymTensor::from_entries(2, 2, vec![(vec![1, 3], v(1))]).unwrap_err();
        assert!(matches!(
            err,
            Error::IndexOutOfRange {
                position: 2,
                value: 3,
                n: 2
            }
        ));

        // a zero and a nonzero on the same key also conflict
        assert!(
            SymTensor::from_entries(2, 2, vec![(vec![1, 2], v(0)), (vec![2, 1], v(1))]).is_err()
        );
    }

    #[test]
    fn pattern_and_idempotence() {
        let a = three_pair_tensor();
        let p = a.pattern();
        let expected: BTreeSet<MultisetIndex> = [[1, 2], [1, 3], [2, 3]]
            .iter()
            .flat_map(|b| Base::new(*b, 3).unwrap().complete_multisets(3, 3).unwrap())
            .collect();
        assert_eq!(p.support(), &expected);
        assert_eq!(p.to_tensor().pattern(), p);

        assert!(SymTensor::zero(3, 2).unwrap().pattern().is_empty());
        let j = SymTensor::all_ones(2, 2).unwrap();
        assert_eq!(j.pattern().to_tensor(), j);
    }

    #[test]
    fn principal_subtensors() {
        let a = three_pair_tensor();
        let (sub, relabel) = a.principal_subtensor(&Base::new([1], 3).unwrap()).unwrap();
        assert_eq!(relabel, vec![1]);
        assert_eq!(sub.dimension(), 1);
        assert_eq!(sub.nnz(), 1);
        assert_eq!(sub.get(&[1, 1, 1]).unwrap(), v(2));

        let (whole, _) = a.principal_subtensor(&Base::full(3)).unwrap();
        assert_eq!(whole, a);

        let z = SymTensor::zero(3, 4).unwrap();
        assert!(z
            .principal_subtensor(&Base::new([2, 4], 4).unwrap())
            .unwrap()
            .0
            .is_zero());

        let (sub, relabel) = a
            .principal_subtensor(&Base::new([2, 3], 3).unwrap())
            .unwrap();
        assert_eq!(relabel, vec![2, 3]);
        assert_eq!(sub.get(&[1, 1, 1]).unwrap(), v(2));
        assert_eq!(sub.get(&[1, 2, 2]).unwrap(), v(1));

        assert_eq!(
            a.principal_subtensor(&Base::from_mask(0)).unwrap_err(),
            Error::EmptyBase
        );
        assert!(a.principal_subtensor(&Base::new([4], 4).unwrap()).is_err());
    }

    #[test]
    fn zero_structures() {
        let a = three_pair_tensor();
        let z = a.find_zero_structures(12);
        assert!(z.zero_slices.is_empty());
        assert_eq!(z.maximal_zero_blocks, Some(vec![]));

        let z = SymTensor::zero(2, 2).unwrap().find_zero_structures(12);
        assert_eq!(z.isolated, vec![1, 2]);
        assert_eq!(z.maximal_zero_blocks, Some(vec![Base::full(2)]));

        let single = SymTensor::from_entries(3, 3, vec![(vec![1, 2, 3], v(1))]).unwrap();
        let z = single.find_zero_structures(12);
        // brute force over the six nonempty proper subsets
        let mut zero_sets = Vec::new();
        for mask in 1u64..7 {
            let set = Base::from_mask(mask);
            let (sub, _) = single.principal_subtensor(&set).unwrap();
            if sub.is_zero() {
                zero_sets.push(set);
            }
        }
        let maximal: Vec<Base> = zero_sets
            .iter()
            .filter(|s| !zero_sets.iter().any(|t| t != *s && s.is_subset(t)))
            .cloned()
            .collect();
        assert_eq!(z.maximal_zero_blocks.as_ref(), Some(&maximal));
        assert_eq!(
            maximal,
            vec![
                Base::new([1, 2], 3).unwrap(),
                Base::new([1, 3], 3).unwrap(),
                Base::new([2, 3], 3).unwrap()
            ]
        );

        let skipped = single.find_zero_structures(2);
        assert!(skipped.exhaustive_skipped());
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 1, 3]).is_err());
        assert!(Permutation::new(vec![1, 4, 3]).is_err());
        let p = Permutation::new(vec![3, 1, 2]).unwrap();
        assert_eq!(p.inverse().images(), &[2, 3, 1]);
        let a = SymTensor::zero(2, 2).unwrap();
        assert!(a.permute(&p).is_err());
    }

    #[test]
    fn permute_cases() {
        let a = three_pair_tensor();
        let swap = Permutation::new(vec![2, 1, 3]).unwrap();
        let b = a.permute(&swap).unwrap();
        // key-by-key over all 27 ordered positions
        for i in 1..=3 {
            for j in 1..=3 {
                for k in 1..=3 {
                    let moved = [swap.apply(i), swap.apply(j), swap.apply(k)];
                    assert_eq!(b.get(&moved).unwrap(), a.get(&[i, j, k]).unwrap());
                }
            }
        }
        assert_eq!(b, a);
        assert_eq!(a.permute(&Permutation::identity(3)).unwrap(), a);

        let single = SymTensor::from_entries(3, 3, vec![(vec![1, 1, 2], v(1))]).unwrap();
        let phi = Permutation::new(vec![3, 1, 2]).unwrap();
        let moved = single.permute(&phi).unwrap();
        assert_eq!(moved.entries().count(), 1);
        assert_eq!(moved.get(&[1, 3, 3]).unwrap(), v(1));
        assert_eq!(moved.permute(&phi.inverse()).unwrap(), single);
    }

    #[test]
    fn direct_sums() {
        let j2 = SymTensor::all_ones(2, 2).unwrap();
        let j1 = SymTensor::all_ones(2, 1).unwrap();
        assert_eq!(
            j2.direct_sum(&j1).unwrap(),
            matrix(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]])
        );

        let a = three_pair_tensor();
        let padded = a.direct_sum(&SymTensor::zero(3, 1).unwrap()).unwrap();
        assert_eq!(padded.dimension(), 4);
        assert_eq!(padded.find_zero_structures(12).isolated, vec![4]);
        let (back, _) = padded.principal_subtensor(&Base::full(3)).unwrap();
        assert_eq!(back, a);

        assert!(a.direct_sum(&j1).is_err());
    }

    #[test]
    fn rank_one_powers() {
        let u = SymTensor::rank_one_power(&[1, 1, 0], 3).unwrap();
        // direct product expansion over all 27 tuples
        let vec = [1u64, 1, 0];
        let mut ordered_nonzero = 0;
        for i in 1..=3 {
            for j in 1..=3 {
                for k in 1..=3 {
                    let prod = vec[i - 1] * vec[j - 1] * vec[k - 1];
                    assert_eq!(u.get(&[i, j, k]).unwrap(), v(prod));
                    ordered_nonzero += prod;
                }
            }
        }
        assert_eq!(ordered_nonzero, 8);
        assert_eq!(u.nnz(), 4);

        assert!(SymTensor::rank_one_power(&[0, 0, 0], 4).unwrap().is_zero());
        assert_eq!(
            SymTensor::rank_one_power(&[1, 1, 1, 1], 3).unwrap(),
            SymTensor::all_ones(3, 4).unwrap()
        );
        assert_eq!(
            SymTensor::rank_one_power(&[1, 2], 3).unwrap_err(),
            Error::NonBinary {
                position: 2,
                value: 2
            }
        );
    }

    #[test]
    fn cp_sum_matches_printed_slices() {
        let cert = CpCertificate::from_vectors(
            3,
            3,
            vec![
                (Base::new([1, 2], 3).unwrap(), 1),
                (Base::new([1, 3], 3).unwrap(), 1),
                (Base::new([2, 3], 3).unwrap(), 1),
            ],
        )
        .unwrap();
        let a = SymTensor::cp_sum(&cert);
        assert_eq!(a, three_pair_tensor());
        let s1: Vec<Vec<Value>> = a.slice(&[1]).unwrap();
        assert_eq!(
            s1,
            vec![
                vec![v(2), v(1), v(1)],
                vec![v(1), v(1), v(0)],
                vec![v(1), v(0), v(1)]
            ]
        );

        let by_powers = SymTensor::rank_one_power(&[1, 1, 0], 3)
            .unwrap()
            .add(&SymTensor::rank_one_power(&[1, 0, 1], 3).unwrap())
            .unwrap()
            .add(&SymTensor::rank_one_power(&[0, 1, 1], 3).unwrap())
            .unwrap();
        assert_eq!(by_powers, a);

        let full = CpCertificate::from_vectors(4, 3, vec![(Base::full(3), 1)]).unwrap();
        assert_eq!(SymTensor::cp_sum(&full), SymTensor::all_ones(4, 3).unwrap());
        let empty = CpCertificate::from_vectors(3, 3, vec![]).unwrap();
        assert!(SymTensor::cp_sum(&empty).is_zero());
    }

    #[test]
    fn slice_shape_check() {
        let a = three_pair_tensor();
        assert!(a.slice(&[]).is_err());
        let m = matrix(&[&[1, 0], &[0, 3]]);
        assert_eq!(
            m.slice(&[]).unwrap(),
            vec![vec![v(1), v(0)], vec![v(0), v(3)]]
        );
    }
}
