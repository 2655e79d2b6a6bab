//! Copositive minimum `minC(B)` and the vectors attaining it.
//!
//! For strictly copositive `B`, the standard simplex is partitioned into
//! cones on which all generator products are positive, and each cone's
//! integer points are enumerated by backtracking under a threshold.

mod enumerate;
mod partition;

use std::collections::BTreeSet;

use num_traits::Signed;
use rayon::prelude::*;

pub use partition::{
    build_partition, build_partition_with, ConeLattice, Partition, SimplicialCone, DEFAULT_MAX_CONES,
};

use crate::error::{Error, Result};
use crate::linalg::{LatticeVector, Rational, SymMatrix};
use enumerate::{search_cone, Threshold};

/// All `v in Z^n_{>=0} \ {0}` with `B[v] <= m` (or `< m` when `strict`),
/// sorted lexicographically.
pub fn enumerate_below(b: &SymMatrix, m: &Rational, strict: bool) -> Result<Vec<LatticeVector>> {
    let partition = build_partition(b)?;
    Ok(enumerate_in(&partition, m, strict))
}

pub(crate) fn enumerate_in(partition: &Partition, m: &Rational, strict: bool) -> Vec<LatticeVector> {
    if !m.is_positive() {
        return Vec::new();
    }
    let found: BTreeSet<LatticeVector> = partition
        .cones
        .par_iter()
        .flat_map_iter(|cone| {
            let threshold = Threshold {
                bound: m.clone(),
                strict,
                shrink: false,
            };
            search_cone(cone, threshold).1
        })
        .collect();
    found.into_iter().collect()
}

/// `(minC(B), MinC(B))` for strictly copositive `B`; the vectors are sorted
/// lexicographically.
pub fn copositive_minimum(b: &SymMatrix) -> Result<(Rational, Vec<LatticeVector>)> {
    let partition = build_partition(b)?;
    minimum_in(&partition)
}

pub(crate) fn minimum_in(partition: &Partition) -> Result<(Rational, Vec<LatticeVector>)> {
    // every generator is a nonzero integer point, so the smallest generator
    // value bounds minC from above
    let start = partition
        .cones
        .iter()
        .flat_map(|c| (0..c.dim()).map(move |i| c.product(i, i)))
        .min()
        .ok_or(Error::EmptyDimension)?;
    let (best, vectors) = partition
        .cones
        .par_iter()
        .map(|cone| {
            let threshold = Threshold {
                bound: start.clone(),
                strict: false,
                shrink: true,
            };
            let (bound, found) = search_cone(cone, threshold);
            (bound, found.into_iter().collect::<BTreeSet<_>>())
        })
        .reduce(
            || (start.clone(), BTreeSet::new()),
            |(b1, mut s1), (b2, s2)| match b1.cmp(&b2) {
                std::cmp::Ordering::Less => (b1, s1),
                std::cmp::Ordering::Greater => (b2, s2),
                std::cmp::Ordering::Equal => {
                    s1.extend(s2);
                    (b1, s1)
                }
            },
        );
    debug_assert!(!vectors.is_empty());
    Ok((best, vectors.into_iter().collect()))
}
