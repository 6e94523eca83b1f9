use proptest::prelude::*;

use cphg_core::format::{parse_hypergraph, parse_tensor, write_hypergraph, write_tensor};
use cphg_core::{
    all_multisets, exact_base_count, is_zero_one_cp, multiset_count, oracle_cp_rank, oracle_is_cp,
    Base, CpCertificate, MultiHypergraph, MultisetIndex, OracleBudget, Permutation, RankOutcome,
    SymTensor, Value, ZeroOneTensor,
};

fn shape() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=4, 1usize..=5)
}

fn value() -> impl Strategy<Value = Value> {
    prop_oneof![
        3 => (0u64..4).prop_map(Value::from_integer),
        1 => (0u64..7, 1u64..4).prop_map(|(a, b)| Value::new(a, b)),
    ]
}

/// Random sparse tensor: a random subset of canonical keys with random values.
fn tensor() -> impl Strategy<Value = SymTensor> {
    shape().prop_flat_map(|(m, n)| {
        let keys = all_multisets(n, m).unwrap();
        let len = keys.len();
        proptest::collection::vec(proptest::option::weighted(0.4, value()), len).prop_map(
            move |vals| {
                let entries = keys
                    .iter()
                    .zip(vals)
                    .filter_map(|(k, v)| v.map(|v| (k.entries().to_vec(), v)));
                SymTensor::from_entries(m, n, entries).unwrap()
            },
        )
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).unwrap())
}

fn tensor_and_permutation() -> impl Strategy<Value = (SymTensor, Permutation)> {
    tensor().prop_flat_map(|a| {
        let n = a.dimension();
        (Just(a), permutation(n))
    })
}

fn raw_index() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (1usize..=6, 2usize..=5).prop_flat_map(|(n, m)| (Just(n), proptest::collection::vec(1..=n, m)))
}

proptest! {
    #[test]
    fn canonical_form_ignores_position_order(
        (n, raw) in raw_index().prop_flat_map(|(n, raw)| (Just(n), Just(raw.clone()).prop_shuffle().prop_map(move |s| (raw.clone(), s))))
    ) {
        let (raw, shuffled) = raw;
        let a = MultisetIndex::canonicalize(&raw, n).unwrap();
        let b = MultisetIndex::canonicalize(&shuffled, n).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.entries().windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(a.base(), Base::new(raw.iter().copied(), n).unwrap());
    }

    #[test]
    fn complete_multiset_counts(r in 1usize..=5, m in 2usize..=5) {
        let base = Base::new(1..=r, r).unwrap();
        let canon = base.complete_multisets(m, r).unwrap();
        prop_assert_eq!(canon.len() as u64, multiset_count(r, m));
        let total: u64 = canon.iter().map(MultisetIndex::ordered_count).sum();
        prop_assert_eq!(total, (r as u64).pow(m as u32));
        prop_assert_eq!(base.complete_tuples(m, r).unwrap().len() as u64, (r as u64).pow(m as u32));
        // keys with base exactly {1..r}
        let exact = canon.iter().filter(|k| k.base() == base).count() as u64;
        prop_assert_eq!(exact, exact_base_count(r, m));
    }

    #[test]
    fn majorization_is_a_preorder(
        n in 1usize..=4,
        raws in proptest::collection::vec(proptest::collection::vec(1usize..=4, 3), 3)
    ) {
        let keys: Vec<MultisetIndex> = raws
            .iter()
            .map(|r| MultisetIndex::canonicalize(&r.iter().map(|&v| (v - 1) % n + 1).collect::<Vec<_>>(), n).unwrap())
            .collect();
        let below = |a: &MultisetIndex, b: &MultisetIndex| a.majorization(b).unwrap().a_below_b();
        for a in &keys {
            prop_assert!(below(a, a));
            for b in &keys {
                prop_assert_eq!(below(a, b), a.base().is_subset(&b.base()));
                prop_assert_eq!(a.majorization(b).unwrap().b_below_a(), below(b, a));
                for c in &keys {
                    if below(a, b) && below(b, c) {
                        prop_assert!(below(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn permutation_relabels_entries((a, phi) in tensor_and_permutation()) {
        let b = a.permute(&phi).unwrap();
        prop_assert_eq!(b.nnz(), a.nnz());
        for (k, v) in a.entries() {
            let moved: Vec<usize> = k.entries().iter().map(|&i| phi.apply(i)).collect();
            prop_assert_eq!(b.get(&moved).unwrap(), *v);
        }
        prop_assert_eq!(b.permute(&phi.inverse()).unwrap(), a);
    }

    #[test]
    fn direct_sum_blocks_are_recoverable(a in tensor(), b in tensor()) {
        prop_assume!(a.order() == b.order());
        let (n1, n2) = (a.dimension(), b.dimension());
        let s = a.direct_sum(&b).unwrap();
        prop_assert_eq!(s.dimension(), n1 + n2);
        prop_assert_eq!(s.nnz(), a.nnz() + b.nnz());
        prop_assert_eq!(s.principal_subtensor(&Base::new(1..=n1, n1 + n2).unwrap()).unwrap().0, a);
        prop_assert_eq!(s.principal_subtensor(&Base::new(n1 + 1..=n1 + n2, n1 + n2).unwrap()).unwrap().0, b);
    }

    #[test]
    fn pattern_and_hypergraph_are_inverse(a in tensor()) {
        let t = a.pattern();
        let p = MultiHypergraph::from_pattern(&t);
        prop_assert_eq!(p.associated_tensor(), t.clone());
        prop_assert!(p.is_associated(&a).unwrap());
        prop_assert_eq!(p.edges().len(), a.nnz());
        let ordered: u64 = a.entries().map(|(k, _)| k.ordered_count()).sum();
        prop_assert_eq!(p.edge_counts().ordered, ordered);
    }

    #[test]
    fn files_round_trip(a in tensor()) {
        let text = write_tensor(&a);
        let back = parse_tensor(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(write_tensor(&back), text);
        let p = MultiHypergraph::from_pattern(&a.pattern());
        let loaded = parse_hypergraph(&write_hypergraph(&p)).unwrap();
        prop_assert_eq!(loaded.hypergraph, p);
        prop_assert!(loaded.warnings.is_empty());
    }

    #[test]
    fn certificate_sums_are_certified_by_the_oracle(
        m in 2usize..=3,
        n in 1usize..=4,
        masks in proptest::collection::vec((1u64..16, 1u64..3), 0..4)
    ) {
        let full = (1u64 << n) - 1;
        let vectors: Vec<(Base, u64)> = masks
            .into_iter()
            .filter(|(s, _)| s & full != 0)
            .map(|(s, k)| (Base::from_mask(s & full), k))
            .collect();
        let cert = CpCertificate::from_vectors(m, n, vectors).unwrap();
        let a = SymTensor::cp_sum(&cert);
        let verdict = oracle_is_cp(&a, &OracleBudget::default()).unwrap();
        let found = verdict.certificate().unwrap();
        prop_assert_eq!(SymTensor::cp_sum(found), a.clone());
        match oracle_cp_rank(&a, &OracleBudget::default()).unwrap() {
            RankOutcome::Rank { rank, certificate } => {
                prop_assert!(rank <= cert.total_vectors());
                prop_assert_eq!(certificate.total_vectors(), rank);
                prop_assert_eq!(SymTensor::cp_sum(&certificate), a);
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn zero_one_decision_matches_oracle_at_dimension_four(bits in 0u64..1 << 10) {
        let keys = all_multisets(4, 2).unwrap();
        let support = keys.into_iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, k)| k);
        let t = ZeroOneTensor::new(2, 4, support).unwrap();
        let oracle = oracle_is_cp(&t.to_tensor(), &OracleBudget::default()).unwrap();
        prop_assert_eq!(is_zero_one_cp(&t).is_cp(), oracle.is_cp());
    }
}
