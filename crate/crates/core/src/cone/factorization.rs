use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank1, LatticeVector, Rational, SymMatrix};
use crate::lp::{self, LinearProgram, LpOutcome, Sense};

/// `A = sum alpha_i v_i v_i^T` with `alpha_i >= 0` and `v_i >= 0` integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    dim: usize,
    terms: Vec<(Rational, LatticeVector)>,
}

impl Factorization {
    pub fn new(dim: usize, terms: Vec<(Rational, LatticeVector)>) -> Result<Self> {
        for (i, (alpha, v)) in terms.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
            if alpha.is_negative() {
                return Err(Error::NegativeCoefficient(i));
            }
        }
        Ok(Factorization { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Rational, LatticeVector)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum alpha_i v_i v_i^T`.
    pub fn matrix(&self) -> SymMatrix {
        let mut acc = SymMatrix::zeros(self.dim);
        for (alpha, v) in &self.terms {
            acc = acc.add_scaled(alpha, &rank1(v)).expect("dimensions checked on construction");
        }
        acc
    }

    /// Exact check that this factors `a`.
    pub fn verify(&self, a: &SymMatrix) -> bool {
        a.dim() == self.dim && self.terms.iter().all(|(alpha, _)| !alpha.is_negative()) && self.matrix() == *a
    }

    pub fn has_integral_coefficients(&self) -> bool {
        self.terms.iter().all(|(alpha, _)| alpha.is_integer())
    }

    /// Terms sorted lexicographically by vector.
    pub fn sorted(mut self) -> Self {
        self.terms.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        self
    }
}

/// Rewrites `f` with linearly independent rank-1 terms and positive
/// coefficients, taken from a basic feasible solution of the coefficient LP.
pub fn caratheodory_reduce(f: &Factorization) -> Result<Factorization> {
    let mut merged: BTreeMap<LatticeVector, Rational> = BTreeMap::new();
    for (alpha, v) in &f.terms {
        if alpha.is_zero() || v.is_zero() {
            continue;
        }
        *merged.entry(v.clone()).or_insert_with(Rational::zero) += alpha;
    }
    let vectors: Vec<LatticeVector> = merged.keys().cloned().collect();
    let target = f.matrix();
    let coeffs = cone_coefficients(&vectors, &target)?.ok_or(Error::InconsistentMembership)?;
    let terms = coeffs
        .into_iter()
        .zip(vectors)
        .filter(|(c, _)| c.is_positive())
        .collect();
    Ok(Factorization { dim: f.dim, terms })
}

/// Nonnegative `lambda` with `sum lambda_v v v^T = target`, found as a basic
/// solution of a Phase-I LP, or `None` when `target` is outside the cone.
pub(crate) fn cone_coefficients(vectors: &[LatticeVector], target: &SymMatrix) -> Result<Option<Vec<Rational>>> {
    let n = target.dim();
    let mut prog = LinearProgram::feasibility(vectors.len());
    let cols: Vec<Vec<Rational>> = vectors.iter().map(|v| rank1(v).upper_triangle()).collect();
    let rhs = target.upper_triangle();
    for (k, b) in rhs.into_iter().enumerate() {
        let row = cols.iter().map(|c| c[k].clone()).collect();
        prog = prog.subject_to(row, Sense::Eq, b);
    }
    debug_assert_eq!(prog.constraints.len(), n * (n + 1) / 2);
    match lp::feasible_point(&prog)? {
        LpOutcome::Optimal { solution, .. } => Ok(Some(solution)),
        LpOutcome::Infeasible { .. } => Ok(None),
        LpOutcome::Unbounded { .. } => Err(Error::MalformedLp("feasibility problem reported unbounded".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int, linearly_independent};
    use proptest::prelude::*;

    fn lv(c: &[u64]) -> LatticeVector {
        LatticeVector::from_u64s(c)
    }

    #[test]
    fn duplicates_merge() {
        let f = Factorization::new(2, vec![(frac(1, 2), lv(&[1, 2])), (frac(1, 3), lv(&[1, 2]))]).unwrap();
        let g = caratheodory_reduce(&f).unwrap();
        assert_eq!(g.terms(), &[(frac(5, 6), lv(&[1, 2]))]);
    }

    #[test]
    fn independent_terms_kept() {
        let f = Factorization::new(
            2,
            vec![(int(1), lv(&[1, 0])), (int(0), lv(&[1, 1])), (int(2), lv(&[0, 1]))],
        )
        .unwrap();
        let g = caratheodory_reduce(&f).unwrap().sorted();
        assert_eq!(g.terms(), &[(int(2), lv(&[0, 1])), (int(1), lv(&[1, 0]))]);
    }

    #[test]
    fn four_terms_in_two_dimensions() {
        let f = Factorization::new(
            2,
            vec![
                (int(1), lv(&[1, 0])),
                (int(1), lv(&[0, 1])),
                (int(1), lv(&[1, 1])),
                (int(1), lv(&[1, 2])),
            ],
        )
        .unwrap();
        let g = caratheodory_reduce(&f).unwrap();
        assert!(g.len() <= 3);
        assert!(g.verify(&f.matrix()));
    }

    #[test]
    fn rejects_bad_terms() {
        assert!(Factorization::new(2, vec![(int(-1), lv(&[1, 0]))]).is_err());
        assert!(Factorization::new(2, vec![(int(1), lv(&[1, 0, 0]))]).is_err());
        let f = Factorization::new(2, vec![]).unwrap();
        assert!(f.verify(&SymMatrix::zeros(2)));
        assert!(!f.verify(&SymMatrix::identity(2)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn reduction_preserves_matrix(
            raw in proptest::collection::vec((proptest::collection::vec(0u64..=3, 3), 0i64..=5, 1i64..=4), 1..12)
        ) {
            let terms: Vec<(Rational, LatticeVector)> = raw.iter().map(|(v, p, q)| (frac(*p, *q), lv(v))).collect();
            let f = Factorization::new(3, terms).unwrap();
            let g = caratheodory_reduce(&f).unwrap();
            prop_assert!(g.verify(&f.matrix()));
            prop_assert!(g.len() <= 6);
            prop_assert!(g.terms().iter().all(|(a, _)| a.is_positive()));
            let mats: Vec<SymMatrix> = g.terms().iter().map(|(_, v)| rank1(v)).collect();
            prop_assert!(linearly_independent(&mats));
        }
    }
}
