//! {0,1}-complete-positivity decisions and constructions.
//!
//! A (0,1) symmetric tensor is a sum of {0,1} rank-one powers exactly when
//! every connected branch of its pattern carries the all-ones block: any
//! two factors sharing a vertex `k` would push `a_{k...k}` to 2, so the
//! factor supports are disjoint and each one spans a complete branch.
//!
//! A multi-hypergraph admits *some* {0,1}-cp associated tensor exactly when
//! every edge's complete multiset lies in the edge set. The witness tensor
//! sums one indicator power per inclusion-maximal edge base.
//!
//! Direct-sum decomposition goes through branch connectivity rather than
//! reducibility witnesses. For order 3 and up a symmetric tensor can be
//! reducible without splitting as a direct sum (the single entry at
//! `(1,2,3)` is reducible via `{1,2}`), so [`reducibility_witness`] and
//! [`decompose`] are reported separately and may disagree.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::MultiHypergraph;
use crate::index::{Base, MultisetIndex};
use crate::tensor::{Permutation, SymTensor, ZeroOneTensor};

/// Default bound on `n` for the exponential subset scans.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CertificateVector {
    pub support: Base,
    pub multiplicity: u64,
}

/// Multiset of {0,1} vectors, stored as supports with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CpCertificate {
    #[serde(rename = "order")]
    m: usize,
    #[serde(rename = "dimension")]
    n: usize,
    vectors: Vec<CertificateVector>,
}

impl CpCertificate {
    pub fn from_vectors(m: usize, n: usize, vectors: Vec<(Base, u64)>) -> Result<Self> {
        crate::tensor::check_shape(m, n)?;
        let mut out = Vec::with_capacity(vectors.len());
        for (i, (support, multiplicity)) in vectors.into_iter().enumerate() {
            if support.is_empty() || multiplicity == 0 {
                return Err(Error::InvalidCertificate(i + 1));
            }
            if support.vertices().last().is_some_and(|&v| v > n) {
                return Err(Error::InvalidVertexSet(support.to_string()));
            }
            out.push(CertificateVector {
                support,
                multiplicity,
            });
        }
        Ok(Self { m, n, vectors: out })
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[CertificateVector] {
        &self.vectors
    }

    /// Number of rank-one terms `q`, counting multiplicity.
    pub fn total_vectors(&self) -> u64 {
        self.vectors.iter().map(|v| v.multiplicity).sum()
    }

    /// Supports listed once per unit of multiplicity.
    pub fn expanded_supports(&self) -> Vec<&Base> {
        self.vectors
            .iter()
            .flat_map(|v| std::iter::repeat_n(&v.support, v.multiplicity as usize))
            .collect()
    }

    /// `U^T U` for `U = [u_1 ... u_q]`.
    pub fn gram_matrix(&self) -> Vec<Vec<u64>> {
        let supports = self.expanded_supports();
        supports
            .iter()
            .map(|a| {
                supports
                    .iter()
                    .map(|b| a.vertices().iter().filter(|v| b.contains(**v)).count() as u64)
                    .collect()
            })
            .collect()
    }

    pub fn supports_disjoint(&self) -> bool {
        let supports = self.expanded_supports();
        supports
            .iter()
            .enumerate()
            .all(|(i, a)| supports[i + 1..].iter().all(|b| a.is_disjoint(b)))
    }

    /// Whether `U^T U = diag(|supp u_1|, ..., |supp u_q|)`.
    pub fn gram_is_diagonal(&self) -> bool {
        let supports = self.expanded_supports();
        self.gram_matrix().iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, &g)| g == if i == j { supports[i].len() as u64 } else { 0 })
        })
    }

    /// Dense `n x q` factor matrix with one column per expanded vector.
    pub fn factor_matrix(&self) -> Vec<Vec<u8>> {
        let supports = self.expanded_supports();
        (1..=self.n)
            .map(|i| supports.iter().map(|s| s.contains(i) as u8).collect())
            .collect()
    }

    /// Supports relabeled by `phi`.
    pub fn permute(&self, phi: &Permutation) -> Result<Self> {
        if phi.len() != self.n {
            return Err(Error::NotBijection {
                n: self.n,
                reason: format!("permutation acts on {} vertices", phi.len()),
            });
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                let support =
                    Base::new(v.support.vertices().iter().map(|&x| phi.apply(x)), self.n)?;
                Ok((support, v.multiplicity))
            })
            .collect::<Result<_>>()?;
        Self::from_vectors(self.m, self.n, vectors)
    }

    /// Sorted by support with equal supports merged; two certificates
    /// describe the same multiset of vectors iff their normal forms match.
    pub fn normalized(&self) -> Self {
        let mut merged: std::collections::BTreeMap<Base, u64> = Default::default();
        for v in &self.vectors {
            *merged.entry(v.support.clone()).or_default() += v.multiplicity;
        }
        Self {
            m: self.m,
            n: self.n,
            vectors: merged
                .into_iter()
                .map(|(support, multiplicity)| CertificateVector {
                    support,
                    multiplicity,
                })
                .collect(),
        }
    }
}

/// Lexicographically first nonempty proper `I` with
/// `a_{i1..im} = 0` whenever `i1 ∈ I` and `i2..im ∉ I`, or `None` when the
/// tensor is irreducible.
///
/// A canonical key violates the condition for `I` exactly when one of its
/// positions (counting multiplicity) falls in `I`.
pub fn reducibility_witness(a: &SymTensor, exhaustive_limit: usize) -> Result<Option<Base>> {
    let n = a.dimension();
    if n > exhaustive_limit || n >= 64 {
        return Err(Error::CapabilityExceeded {
            what: "reducibility subset scan dimension",
            limit: exhaustive_limit.min(63),
            actual: n,
        });
    }
    let keys: Vec<&[usize]> = a.entries().map(|(k, _)| k.entries()).collect();
    let blocks = |set: u64| {
        !keys
            .iter()
            .any(|k| k.iter().filter(|&&v| set >> (v - 1) & 1 == 1).count() == 1)
    };
    let full = (1u64 << n) - 1;
    // depth-first walk yields subsets in lexicographic order of their
    // sorted vertex lists
    let mut stack: Vec<(u64, usize)> = (1..=n).rev().map(|v| (1u64 << (v - 1), v)).collect();
    while let Some((set, last)) = stack.pop() {
        if set != full && blocks(set) {
            return Ok(Some(Base::from_mask(set)));
        }
        stack.extend((last + 1..=n).rev().map(|v| (set | 1 << (v - 1), v)));
    }
    Ok(None)
}

/// Branch-wise direct-sum decomposition of a symmetric tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    /// Maps each original vertex to its position in the block layout.
    pub permutation: Permutation,
    /// One principal subtensor per branch, in branch order.
    pub blocks: Vec<SymTensor>,
    pub zero_block_dim: usize,
    pub branch_vertex_sets: Vec<Base>,
    /// Original labels of the vertices routed to the zero block.
    pub zero_vertices: Vec<usize>,
}

impl DecompositionReport {
    /// `blocks[0] ⊕ ... ⊕ blocks[r-1] ⊕ O`, which equals the input tensor
    /// permuted by [`Self::permutation`].
    pub fn reassemble(&self, m: usize) -> Result<SymTensor> {
        let mut parts = self.blocks.iter();
        let mut acc = match parts.next() {
            Some(first) => first.clone(),
            None => return SymTensor::zero(m, self.zero_block_dim),
        };
        for block in parts {
            acc = acc.direct_sum(block)?;
        }
        if self.zero_block_dim > 0 {
            acc = acc.direct_sum(&SymTensor::zero(m, self.zero_block_dim)?)?;
        }
        Ok(acc)
    }

    pub fn block_dimensions(&self) -> Vec<usize> {
        self.blocks.iter().map(SymTensor::dimension).collect()
    }
}

pub fn decompose(a: &SymTensor) -> DecompositionReport {
    let partition = MultiHypergraph::from_pattern(&a.pattern()).branches();
    let mut images = vec![0usize; a.dimension()];
    let layout = partition
        .branches
        .iter()
        .flat_map(|b| b.vertices().iter())
        .chain(partition.isolated.iter());
    for (position, v) in (1..).zip(layout) {
        images[v - 1] = position;
    }
    let blocks = partition
        .branches
        .iter()
        .map(|b| {
            a.principal_subtensor(b)
                .expect("branches are non-empty vertex subsets")
                .0
        })
        .collect();
    DecompositionReport {
        permutation: Permutation::new(images)
            .expect("branches and isolated vertices partition 1..=n"),
        blocks,
        zero_block_dim: partition.isolated.len(),
        branch_vertex_sets: partition.branches,
        zero_vertices: partition.isolated,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum ZeroOneVerdict {
    Cp {
        /// One indicator per branch, pairwise disjoint, multiplicity 1.
        certificate: CpCertificate,
        /// Isolated vertices; they lie outside every support.
        zero_block: Vec<usize>,
    },
    NotCp {
        /// First branch whose principal block is not all-ones.
        branch: Base,
        /// First canonical key over `branch` that is absent.
        missing: MultisetIndex,
    },
}

impl ZeroOneVerdict {
    pub fn is_cp(&self) -> bool {
        matches!(self, ZeroOneVerdict::Cp { .. })
    }

    pub fn certificate(&self) -> Option<&CpCertificate> {
        match self {
            ZeroOneVerdict::Cp { certificate, .. } => Some(certificate),
            ZeroOneVerdict::NotCp { .. } => None,
        }
    }
}

/// Decides whether a (0,1) symmetric tensor is {0,1}-completely positive.
pub fn is_zero_one_cp(t: &ZeroOneTensor) -> ZeroOneVerdict {
    let (m, n) = (t.order(), t.dimension());
    let partition = MultiHypergraph::from_pattern(t).branches();
    for branch in &partition.branches {
        let complete = branch
            .complete_multisets(m, n)
            .expect("branches are non-empty vertex subsets");
        if let Some(missing) = complete.into_iter().find(|k| !t.contains(k)) {
            return ZeroOneVerdict::NotCp {
                branch: branch.clone(),
                missing,
            };
        }
    }
    let certificate = CpCertificate::from_vectors(
        m,
        n,
        partition.branches.into_iter().map(|b| (b, 1)).collect(),
    )
    .expect("branch supports are valid");
    ZeroOneVerdict::Cp {
        certificate,
        zero_block: partition.isolated,
    }
}

/// Whether some {0,1}-cp tensor is associated with `p`.
pub fn is_cp_multihypergraph(p: &MultiHypergraph) -> bool {
    p.has_property_r()
}

/// One indicator power per inclusion-maximal edge base. The result is
/// associated with `p`; its entry at `σ` counts the maximal bases that
/// contain every vertex of `σ`.
pub fn construct_cp_tensor(p: &MultiHypergraph) -> Result<(SymTensor, CpCertificate)> {
    p.property_r().map_err(Error::PropertyRViolated)?;
    let (m, n) = (p.uniformity(), p.vertex_count());
    let bases = if p.edges().is_empty() {
        Vec::new()
    } else {
        p.maximal_bases()?
    };
    let certificate =
        CpCertificate::from_vectors(m, n, bases.into_iter().map(|b| (b, 1)).collect())?;
    Ok((SymTensor::cp_sum(&certificate), certificate))
}

/// Whether `cert` sums to exactly `a`.
pub fn verify_certificate(a: &SymTensor, cert: &CpCertificate) -> Result<bool> {
    a.same_shape(cert.order(), cert.dimension())?;
    Ok(SymTensor::cp_sum(cert) == *a)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub holds: bool,
    /// Ordered edge count.
    pub lhs: u64,
    /// Sum over branches of `dim^m`.
    pub rhs: u64,
    pub branch_dims: Vec<usize>,
}

/// Compares the ordered edge count with the sum of `dim^m` over branches.
/// The two agree whenever the hypergraph is a disjoint union of complete
/// blocks.
pub fn corollary_check(p: &MultiHypergraph) -> CorollaryReport {
    let lhs = p.edge_counts().ordered;
    let branch_dims = p.branches().dimensions();
    let rhs = branch_dims
        .iter()
        .map(|&d| (d as u64).pow(p.uniformity() as u32))
        .sum();
    CorollaryReport {
        holds: lhs == rhs,
        lhs,
        rhs,
        branch_dims,
    }
}
