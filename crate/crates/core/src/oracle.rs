//! Exhaustive {0,1}-cp search for small tensors.
//!
//! A {0,1} factor is determined by its support `S`, and `1_S^m` contributes
//! 1 at `σ` exactly when `B(σ) ⊆ S`. Collecting equal factors, a tensor is
//! {0,1}-cp iff there are multiplicities `x_S >= 0` with
//!
//! ```text
//!     Σ_{S ⊇ B} x_S = f(B)     for every base B with |B| <= m,
//! ```
//!
//! where `f(B)` is the common entry value at base `B`. Subsets are visited
//! in decreasing size. Once every proper superset of a base `B` has been
//! assigned, `x_B` is forced to the remaining `f(B)`, so only supports
//! larger than `m` are branched on. Branch values are bounded by the
//! smallest remaining `f` over their sub-bases.
//!
//! This module does not share code with [`crate::decision`]; it is the
//! ground truth the structural decisions are tested against.

use serde::Serialize;

use crate::decision::CpCertificate;
use crate::error::{Error, Result};
use crate::index::{all_multisets, exact_base_count, Base, MultisetIndex};
use crate::tensor::{SymTensor, ZeroOneTensor};

/// Hard ceiling on the subset-mask width.
const MAX_MASK_DIMENSION: usize = 20;

/// Largest key count accepted by [`enumerate_patterns`].
pub const MAX_PATTERN_KEYS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleBudget {
    pub max_dimension: usize,
    /// Cap on `q`, the number of rank-one terms.
    pub max_total_vectors: u64,
    /// Cap on visited search nodes.
    pub node_limit: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_dimension: 6,
            max_total_vectors: 256,
            node_limit: 5_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum NotCpReason {
    /// A {0,1}-cp tensor has nonnegative integer entries.
    NonIntegral { key: MultisetIndex },
    /// Two indices with the same base carry different values.
    UnequalWithinBase {
        first: MultisetIndex,
        second: MultisetIndex,
    },
    /// The multiplicity system has no nonnegative integer solution.
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum BudgetReason {
    NodeLimit {
        nodes: u64,
    },
    /// The vector cap is below the trace bound and no solution fits under it.
    VectorCap {
        cap: u64,
        trace: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum OracleVerdict {
    Cp { certificate: CpCertificate },
    NotCp(NotCpReason),
    BudgetExceeded(BudgetReason),
}

impl OracleVerdict {
    pub fn is_cp(&self) -> bool {
        matches!(self, OracleVerdict::Cp { .. })
    }

    pub fn certificate(&self) -> Option<&CpCertificate> {
        match self {
            OracleVerdict::Cp { certificate } => Some(certificate),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum RankOutcome {
    Rank {
        rank: u64,
        certificate: CpCertificate,
    },
    NotCp(NotCpReason),
    BudgetExceeded(BudgetReason),
}

/// Searches for a {0,1} factorization of `a`.
pub fn oracle_is_cp(a: &SymTensor, budget: &OracleBudget) -> Result<OracleVerdict> {
    let system = match System::build(a, budget)? {
        Ok(system) => system,
        Err(reason) => return Ok(OracleVerdict::NotCp(reason)),
    };
    let cap = budget.max_total_vectors.min(system.trace);
    Ok(match system.search(cap, budget.node_limit) {
        Search::Found(x) => OracleVerdict::Cp {
            certificate: system.certificate(&x),
        },
        Search::Exhausted if cap < system.trace => {
            OracleVerdict::BudgetExceeded(BudgetReason::VectorCap {
                cap,
                trace: system.trace,
            })
        }
        Search::Exhausted => OracleVerdict::NotCp(NotCpReason::Infeasible),
        Search::Aborted(nodes) => OracleVerdict::BudgetExceeded(BudgetReason::NodeLimit { nodes }),
    })
}

/// Smallest `q` admitting a {0,1} factorization, by iterative deepening.
pub fn oracle_cp_rank(a: &SymTensor, budget: &OracleBudget) -> Result<RankOutcome> {
    let system = match System::build(a, budget)? {
        Ok(system) => system,
        Err(reason) => return Ok(RankOutcome::NotCp(reason)),
    };
    let cap = budget.max_total_vectors.min(system.trace);
    let mut spent = 0u64;
    for q in 0..=cap {
        match system.search(q, budget.node_limit.saturating_sub(spent)) {
            Search::Found(x) => {
                return Ok(RankOutcome::Rank {
                    rank: q,
                    certificate: system.certificate(&x),
                })
            }
            Search::Exhausted => {}
            Search::Aborted(nodes) => {
                return Ok(RankOutcome::BudgetExceeded(BudgetReason::NodeLimit {
                    nodes: spent + nodes,
                }))
            }
        }
        spent += system.last_nodes.get();
    }
    Ok(if cap < system.trace {
        RankOutcome::BudgetExceeded(BudgetReason::VectorCap {
            cap,
            trace: system.trace,
        })
    } else {
        RankOutcome::NotCp(NotCpReason::Infeasible)
    })
}

enum Search {
    Found(Vec<u64>),
    Exhausted,
    Aborted(u64),
}

struct System {
    m: usize,
    n: usize,
    /// `f(B)` indexed by base mask; zero for masks wider than `m`.
    target: Vec<u64>,
    /// Supports in visiting order: decreasing size, then lexicographic.
    order: Vec<u32>,
    /// For each support in `order`, its nonempty sub-bases of size `<= m`.
    sub_bases: Vec<Vec<u32>>,
    trace: u64,
    last_nodes: std::cell::Cell<u64>,
}

impl System {
    fn build(
        a: &SymTensor,
        budget: &OracleBudget,
    ) -> Result<std::result::Result<Self, NotCpReason>> {
        let (m, n) = (a.order(), a.dimension());
        let limit = budget.max_dimension.min(MAX_MASK_DIMENSION);
        if n > limit {
            return Err(Error::CapabilityExceeded {
                what: "oracle dimension",
                limit,
                actual: n,
            });
        }

        let width = 1usize << n;
        let mut target = vec![0u64; width];
        let mut stored = vec![0u64; width];
        let mut witness: Vec<Option<&MultisetIndex>> = vec![None; width];
        for (key, value) in a.entries() {
            if !value.is_integer() {
                return Ok(Err(NotCpReason::NonIntegral { key: key.clone() }));
            }
            let v = value.to_integer();
            let mask = key.base().mask() as usize;
            match witness[mask] {
                Some(first) if target[mask] != v => {
                    return Ok(Err(NotCpReason::UnequalWithinBase {
                        first: first.clone(),
                        second: key.clone(),
                    }))
                }
                Some(_) => {}
                None => {
                    witness[mask] = Some(key);
                    target[mask] = v;
                }
            }
            stored[mask] += 1;
        }
        for mask in 1..width {
            let k = mask.count_ones() as usize;
            if stored[mask] > 0 && stored[mask] < exact_base_count(k, m) {
                let base = Base::from_mask(mask as u64);
                let absent = base
                    .complete_multisets(m, n)?
                    .into_iter()
                    .find(|key| key.base() == base && a.value_at(key) == num_traits::Zero::zero())
                    .expect("a partially stored base has an absent index");
                return Ok(Err(NotCpReason::UnequalWithinBase {
                    first: witness[mask].expect("stored base has a witness").clone(),
                    second: absent,
                }));
            }
        }

        let mut order: Vec<u32> = (1..width as u32).collect();
        order.sort_by(|&x, &y| {
            y.count_ones()
                .cmp(&x.count_ones())
                .then_with(|| Base::from_mask(x as u64).cmp(&Base::from_mask(y as u64)))
        });
        let sub_bases = order
            .iter()
            .map(|&s| {
                let mut subs = Vec::new();
                let mut b = s;
                while b != 0 {
                    if b.count_ones() as usize <= m {
                        subs.push(b);
                    }
                    b = (b - 1) & s;
                }
                subs
            })
            .collect();
        let trace = (0..n).map(|v| target[1 << v]).sum();
        Ok(Ok(Self {
            m,
            n,
            target,
            order,
            sub_bases,
            trace,
            last_nodes: std::cell::Cell::new(0),
        }))
    }

    fn search(&self, cap: u64, node_limit: u64) -> Search {
        let mut state = SearchState {
            remaining: self.target.clone(),
            x: vec![0u64; self.order.len()],
            nodes: 0,
            node_limit,
            cap,
        };
        let outcome = match self.descend(&mut state, 0, 0) {
            Step::Found => Search::Found(state.x),
            Step::Dead => Search::Exhausted,
            Step::Abort => Search::Aborted(state.nodes),
        };
        self.last_nodes.set(state.nodes);
        outcome
    }

    fn descend(&self, st: &mut SearchState, i: usize, total: u64) -> Step {
        st.nodes += 1;
        if st.nodes > st.node_limit {
            return Step::Abort;
        }
        if i == self.order.len() {
            return if st.remaining.iter().all(|&r| r == 0) {
                Step::Found
            } else {
                Step::Dead
            };
        }
        let support = self.order[i];
        let subs = &self.sub_bases[i];
        let headroom = st.cap - total;
        let (lo, hi) = if support.count_ones() as usize <= self.m {
            let forced = st.remaining[support as usize];
            (forced, forced)
        } else {
            (
                0,
                subs.iter()
                    .map(|&b| st.remaining[b as usize])
                    .min()
                    .unwrap_or(0),
            )
        };
        if lo > headroom || subs.iter().any(|&b| st.remaining[b as usize] < lo) {
            return Step::Dead;
        }
        for value in (lo..=hi.min(headroom)).rev() {
            for &b in subs {
                st.remaining[b as usize] -= value;
            }
            st.x[i] = value;
            let step = self.descend(st, i + 1, total + value);
            for &b in subs {
                st.remaining[b as usize] += value;
            }
            match step {
                Step::Dead => continue,
                other => return other,
            }
        }
        st.x[i] = 0;
        Step::Dead
    }

    fn certificate(&self, x: &[u64]) -> CpCertificate {
        let vectors = self
            .order
            .iter()
            .zip(x)
            .filter(|(_, &mult)| mult > 0)
            .map(|(&s, &mult)| (Base::from_mask(s as u64), mult))
            .collect();
        CpCertificate::from_vectors(self.m, self.n, vectors)
            .expect("search only emits non-empty supports with positive multiplicity")
            .normalized()
    }
}

struct SearchState {
    remaining: Vec<u64>,
    x: Vec<u64>,
    nodes: u64,
    node_limit: u64,
    cap: u64,
}

enum Step {
    Found,
    Dead,
    Abort,
}

/// Every symmetric (0,1) tensor of order `m` and dimension `n`, once each.
/// The i-th tensor's support is the set of canonical keys whose position
/// bit is set in `i`.
pub fn enumerate_patterns(n: usize, m: usize) -> Result<PatternIter> {
    let keys = all_multisets(n, m)?;
    if keys.len() > MAX_PATTERN_KEYS {
        return Err(Error::CapabilityExceeded {
            what: "pattern enumeration key count",
            limit: MAX_PATTERN_KEYS,
            actual: keys.len(),
        });
    }
    Ok(PatternIter {
        m,
        n,
        end: 1u64 << keys.len(),
        keys,
        next: 0,
    })
}

pub struct PatternIter {
    m: usize,
    n: usize,
    keys: Vec<MultisetIndex>,
    next: u64,
    end: u64,
}

impl Iterator for PatternIter {
    type Item = ZeroOneTensor;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let bits = self.next;
        self.next += 1;
        let support = self
            .keys
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, k)| k.clone())
            .collect();
        Some(ZeroOneTensor::from_support_unchecked(
            self.m, self.n, support,
        ))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for PatternIter {}
