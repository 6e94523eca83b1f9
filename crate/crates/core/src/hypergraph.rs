//! Uniform multi-hypergraphs and their (0,1) associated tensors.
//!
//! An edge is a multiset of `m` vertices. The edge set and the support of
//! the (0,1) associated tensor are the same set of canonical keys, so the
//! two conversions here are inverse to each other.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{exact_base_count, Base, MultisetIndex};
use crate::tensor::{check_shape, SymTensor, ZeroOneTensor};

/// m-uniform multi-hypergraph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiHypergraph {
    n: usize,
    m: usize,
    edges: BTreeSet<MultisetIndex>,
}

/// An edge `α` together with a multiset `η` over `B(α)` that is not an edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyRViolation {
    pub edge: MultisetIndex,
    pub missing: MultisetIndex,
}

/// A zero entry whose base is contained in the base of a nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominanceViolation {
    pub zero: MultisetIndex,
    pub nonzero: MultisetIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchPartition {
    /// Connected vertex sets, ordered by smallest vertex.
    pub branches: Vec<Base>,
    /// Vertices in no edge.
    pub isolated: Vec<usize>,
}

impl BranchPartition {
    pub fn dimensions(&self) -> Vec<usize> {
        self.branches.iter().map(Base::len).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeCounts {
    /// Canonical edges.
    pub distinct: usize,
    /// Ordered tuples whose multiset is an edge.
    pub ordered: u64,
}

impl MultiHypergraph {
    /// Builds a hypergraph from raw edges in any vertex order. Repeated
    /// edges collapse.
    pub fn new<I>(n: usize, m: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        check_shape(m, n)?;
        let mut set = BTreeSet::new();
        for raw in edges {
            if raw.len() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    found: raw.len(),
                });
            }
            set.insert(MultisetIndex::canonicalize(&raw, n)?);
        }
        Ok(Self { n, m, edges: set })
    }

    /// Every m-multiset over `1..=n`.
    pub fn complete(n: usize, m: usize) -> Result<Self> {
        Ok(Self::from_pattern(&ZeroOneTensor::all_ones(m, n)?))
    }

    /// Union of the complete multisets over each of `bases`.
    pub fn union_of_complete(n: usize, m: usize, bases: &[Base]) -> Result<Self> {
        check_shape(m, n)?;
        let mut edges = BTreeSet::new();
        for base in bases {
            edges.extend(base.complete_multisets(m, n)?);
        }
        Ok(Self { n, m, edges })
    }

    /// Edges are the support keys of `t`.
    pub fn from_pattern(t: &ZeroOneTensor) -> Self {
        Self {
            n: t.dimension(),
            m: t.order(),
            edges: t.support().clone(),
        }
    }

    /// The unique (0,1) tensor whose support is the edge set.
    pub fn associated_tensor(&self) -> ZeroOneTensor {
        ZeroOneTensor::from_support_unchecked(self.m, self.n, self.edges.clone())
    }

    /// Whether `a` is nonzero exactly on the edges.
    pub fn is_associated(&self, a: &SymTensor) -> Result<bool> {
        a.same_shape(self.m, self.n)?;
        Ok(a.nnz() == self.edges.len() && a.entries().all(|(k, _)| self.edges.contains(k)))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn uniformity(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &BTreeSet<MultisetIndex> {
        &self.edges
    }

    pub fn contains(&self, edge: &MultisetIndex) -> bool {
        self.edges.contains(edge)
    }

    /// Maximum and minimum base size over all edges.
    pub fn rank_corank(&self) -> Result<(usize, usize)> {
        let sizes = self.edges.iter().map(|e| e.base().len());
        let rank = sizes.clone().max().ok_or(Error::EmptyEdgeSet)?;
        let corank = sizes.min().ok_or(Error::EmptyEdgeSet)?;
        Ok((rank, corank))
    }

    fn distinct_bases(&self) -> BTreeSet<Base> {
        self.edges.iter().map(MultisetIndex::base).collect()
    }

    /// Inclusion-maximal edge bases in lexicographic order. Each stands for
    /// one similarity class of maximal edges.
    pub fn maximal_bases(&self) -> Result<Vec<Base>> {
        let bases = self.distinct_bases();
        if bases.is_empty() {
            return Err(Error::EmptyEdgeSet);
        }
        Ok(bases
            .iter()
            .filter(|b| !bases.iter().any(|c| c != *b && b.is_subset(c)))
            .cloned()
            .collect())
    }

    /// Inclusion-minimal edge bases in lexicographic order.
    pub fn minimal_bases(&self) -> Result<Vec<Base>> {
        let bases = self.distinct_bases();
        if bases.is_empty() {
            return Err(Error::EmptyEdgeSet);
        }
        Ok(bases
            .iter()
            .filter(|b| !bases.iter().any(|c| c != *b && c.is_subset(b)))
            .cloned()
            .collect())
    }

    /// Checks that every multiset over the base of every edge is itself an
    /// edge. Returns the lexicographically first violating (edge, missing)
    /// pair otherwise.
    pub fn property_r(&self) -> Result<(), PropertyRViolation> {
        for edge in &self.edges {
            let closure = edge
                .base()
                .complete_multisets(self.m, self.n)
                .expect("edge bases are non-empty and in range");
            if let Some(missing) = closure.into_iter().find(|eta| !self.edges.contains(eta)) {
                return Err(PropertyRViolation {
                    edge: edge.clone(),
                    missing,
                });
            }
        }
        Ok(())
    }

    pub fn has_property_r(&self) -> bool {
        self.property_r().is_ok()
    }

    /// Connected components of vertices under shared membership in an edge.
    pub fn branches(&self) -> BranchPartition {
        let mut dsu = DisjointSet::new(self.n + 1);
        let mut touched = vec![false; self.n + 1];
        for edge in &self.edges {
            let first = edge.entries()[0];
            for &v in edge.entries() {
                touched[v] = true;
                dsu.union(first, v);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in (1..=self.n).filter(|&v| touched[v]) {
            groups.entry(dsu.find(v)).or_default().push(v);
        }
        let mut branches: Vec<Base> = groups.into_values().map(Base::from_sorted).collect();
        branches.sort_by_key(|b| b.vertices()[0]);
        BranchPartition {
            branches,
            isolated: (1..=self.n).filter(|&v| !touched[v]).collect(),
        }
    }

    pub fn edge_counts(&self) -> EdgeCounts {
        EdgeCounts {
            distinct: self.edges.len(),
            ordered: self.edges.iter().map(MultisetIndex::ordered_count).sum(),
        }
    }
}

/// Zero-entry dominance: a zero at some index with base `B` forces zeros at
/// every index whose base contains `B`.
///
/// Works on per-base entry counts: a base `B` of size `k` carries
/// `C(m-1, k-1)` canonical indices, and it holds a zero exactly when fewer
/// than that many of its indices are stored.
pub fn zero_entry_dominance(a: &SymTensor) -> Result<(), DominanceViolation> {
    let m = a.order();
    let n = a.dimension();
    let mut stored_per_base: BTreeMap<Base, u64> = BTreeMap::new();
    for (key, _) in a.entries() {
        *stored_per_base.entry(key.base()).or_default() += 1;
    }
    for (nonzero, _) in a.entries() {
        let outer = nonzero.base();
        let r = outer.len();
        for pick in 1u64..1 << r {
            let inner = Base::from_sorted(
                (0..r)
                    .filter(|b| pick >> b & 1 == 1)
                    .map(|b| outer.vertices()[b])
                    .collect(),
            );
            let full = exact_base_count(inner.len(), m);
            let stored = stored_per_base.get(&inner).copied().unwrap_or(0);
            if stored < full {
                let zero = first_absent_with_base(a, &inner, m, n);
                return Err(DominanceViolation {
                    zero,
                    nonzero: nonzero.clone(),
                });
            }
        }
    }
    Ok(())
}

fn first_absent_with_base(a: &SymTensor, base: &Base, m: usize, n: usize) -> MultisetIndex {
    base.complete_multisets(m, n)
        .expect("base is non-empty and in range")
        .into_iter()
        .filter(|k| k.base() == *base)
        .find(|k| a.value_at(k) == num_traits::Zero::zero())
        .expect("a base with fewer stored indices than it carries has an absent index")
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller label as root
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
