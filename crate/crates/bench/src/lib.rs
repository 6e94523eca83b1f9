//! Fixtures shared by the benchmarks.

use cphg_core::{Base, MultiHypergraph, SymTensor};

/// Disjoint complete blocks of the given sizes laid out consecutively.
pub fn block_union(sizes: &[usize], m: usize) -> MultiHypergraph {
    let n: usize = sizes.iter().sum();
    let mut start = 1;
    let blocks: Vec<Base> = sizes
        .iter()
        .map(|&s| {
            let b = Base::new(start..start + s, n).expect("sizes are positive");
            start += s;
            b
        })
        .collect();
    MultiHypergraph::union_of_complete(n, m, &blocks).expect("blocks fit in 1..=n")
}

/// Sum of the indicator powers of all consecutive vertex pairs on a path.
pub fn pair_chain(n: usize, m: usize) -> SymTensor {
    let vectors = (1..n)
        .map(|v| (Base::new([v, v + 1], n).expect("pairs lie in 1..=n"), 1))
        .collect();
    let cert = cphg_core::CpCertificate::from_vectors(m, n, vectors).expect("valid supports");
    SymTensor::cp_sum(&cert)
}
