//! Symmetric tensors with multiset indexing, uniform multi-hypergraphs, and
//! exact decisions for {0,1} completely positive factorizations.
//!
//! Vertices are 1-based throughout. A tensor of order `m` and dimension `n`
//! stores one value per canonical (sorted) index; every permutation of that
//! index reads the same value.

pub mod decision;
pub mod error;
pub mod format;
pub mod hypergraph;
pub mod index;
pub mod oracle;
pub mod tensor;

pub use decision::{
    construct_cp_tensor, corollary_check, decompose, is_cp_multihypergraph, is_zero_one_cp,
    reducibility_witness, verify_certificate, CertificateVector, CorollaryReport, CpCertificate,
    DecompositionReport, ZeroOneVerdict, DEFAULT_EXHAUSTIVE_LIMIT,
};
pub use error::{Error, Result};
pub use format::{Document, LoadedHypergraph, Warning};
pub use hypergraph::{
    zero_entry_dominance, BranchPartition, DominanceViolation, EdgeCounts, MultiHypergraph,
    PropertyRViolation,
};
pub use index::{
    all_multisets, exact_base_count, multiset_count, Base, Majorization, MultisetIndex,
};
pub use oracle::{
    enumerate_patterns, oracle_cp_rank, oracle_is_cp, BudgetReason, NotCpReason, OracleBudget,
    OracleVerdict, RankOutcome,
};
pub use tensor::{Permutation, SymTensor, Value, ZeroOneTensor, ZeroStructures};
