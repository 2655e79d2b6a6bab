//! Vertices of the Ryshkov-type polyhedron, their Voronoi cones
//! `V(P) = cone{v v^T : v in MinC(P)}` and the extreme rays of the dual cones.

mod dd;
mod factorization;

use num_bigint::BigInt;
use num_traits::{One, Signed};

pub use factorization::{caratheodory_reduce, Factorization};

use crate::copositive_min::copositive_minimum;
use crate::error::{Error, Result};
use crate::linalg::{rank, rank1, sym_inner, LatticeVector, Rational, SymMatrix};
use factorization::cone_coefficients;

/// Default cap on intermediate ray lists in the double description method.
pub const DEFAULT_RAY_LIMIT: usize = 500_000;

/// A COP-perfect matrix scaled to `minC(P) = 1`, with its minimal vectors and
/// the extreme rays of the dual of its Voronoi cone.
#[derive(Clone, Debug)]
pub struct PerfectVertex {
    matrix: SymMatrix,
    min_vectors: Vec<LatticeVector>,
    dual_rays: Vec<SymMatrix>,
}

impl PerfectVertex {
    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `MinC(P)`, sorted lexicographically.
    pub fn min_vectors(&self) -> &[LatticeVector] {
        &self.min_vectors
    }

    /// Primitive integral generators, in the order produced by the double
    /// description method.
    pub fn dual_rays(&self) -> &[SymMatrix] {
        &self.dual_rays
    }
}

/// Rescales a strictly copositive `P` to `minC = 1`, checks perfectness and
/// computes the dual rays.
pub fn make_vertex(p: &SymMatrix) -> Result<PerfectVertex> {
    make_vertex_with(p, DEFAULT_RAY_LIMIT)
}

pub fn make_vertex_with(p: &SymMatrix, ray_limit: usize) -> Result<PerfectVertex> {
    let (min, min_vectors) = copositive_minimum(p)?;
    let matrix = p.scale(&min.recip());
    vertex_from_parts(matrix, min_vectors, ray_limit)
}

/// `matrix` must already satisfy `minC = 1` with minimal vectors `min_vectors`.
pub(crate) fn vertex_from_parts(
    matrix: SymMatrix,
    min_vectors: Vec<LatticeVector>,
    ray_limit: usize,
) -> Result<PerfectVertex> {
    let n = matrix.dim();
    let dim = n * (n + 1) / 2;
    let flat: Vec<Vec<Rational>> = min_vectors.iter().map(|v| rank1(v).upper_triangle()).collect();
    let r = rank(&flat);
    if r < dim {
        return Err(Error::NotPerfect { rank: r, dim });
    }
    let dual_rays = dual_extreme_rays(n, &min_vectors, ray_limit)?;
    Ok(PerfectVertex {
        matrix,
        min_vectors,
        dual_rays,
    })
}

/// Extreme rays of `{Q : <Q, v v^T> >= 0 for v in vectors}`, as primitive
/// integral matrices. Inequalities are inserted by increasing `|v|^2`.
pub fn dual_extreme_rays(n: usize, vectors: &[LatticeVector], ray_limit: usize) -> Result<Vec<SymMatrix>> {
    let mut ordered: Vec<&LatticeVector> = vectors.iter().collect();
    ordered.sort_by(|a, b| a.norm_sq().cmp(&b.norm_sq()).then_with(|| a.cmp(b)));
    // <Q, v v^T> in upper-triangle coordinates: q_ii v_i^2 + 2 q_ij v_i v_j
    let inequalities: Vec<Vec<BigInt>> = ordered
        .iter()
        .map(|v| {
            let c = v.coords();
            let mut row = Vec::with_capacity(n * (n + 1) / 2);
            for i in 0..n {
                for j in i..n {
                    let f = if i == j { BigInt::one() } else { BigInt::from(2) };
                    row.push(f * &c[i] * &c[j]);
                }
            }
            row
        })
        .collect();
    let rays = dd::extreme_rays(&inequalities, n * (n + 1) / 2, ray_limit)?;
    rays.into_iter()
        .map(|r| {
            let values: Vec<Rational> = r.into_iter().map(Rational::from_integer).collect();
            SymMatrix::from_upper_triangle(n, &values)
        })
        .collect()
}

/// Outcome of testing `A in V(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `A` as a nonnegative combination of the `v v^T`, `v in MinC(P)`.
    Member(Factorization),
    /// Indices into [`PerfectVertex::dual_rays`] of the rays `R` with
    /// `<A, R> < 0`; never empty.
    Violations(Vec<usize>),
}

/// Decides `A in V(P)` by a Phase-I LP on the coefficients and cross-checks
/// the answer against the dual rays.
pub fn membership(a: &SymMatrix, vertex: &PerfectVertex) -> Result<Membership> {
    if a.dim() != vertex.dim() {
        return Err(Error::DimensionMismatch {
            expected: vertex.dim(),
            found: a.dim(),
        });
    }
    let violated: Vec<usize> = vertex
        .dual_rays
        .iter()
        .enumerate()
        .filter(|(_, r)| sym_inner(a, r).expect("same dimension").is_negative())
        .map(|(i, _)| i)
        .collect();
    match cone_coefficients(&vertex.min_vectors, a)? {
        Some(coeffs) if violated.is_empty() => {
            let terms = coeffs
                .into_iter()
                .zip(&vertex.min_vectors)
                .filter(|(c, _)| c.is_positive())
                .map(|(c, v)| (c, v.clone()))
                .collect();
            Ok(Membership::Member(Factorization::new(a.dim(), terms)?))
        }
        None if !violated.is_empty() => Ok(Membership::Violations(violated)),
        _ => Err(Error::InconsistentMembership),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, gram_an, int, quad_form};
    use num_traits::Zero;

    fn lv(c: &[u64]) -> LatticeVector {
        LatticeVector::from_u64s(c)
    }

    fn half_a2() -> PerfectVertex {
        make_vertex(&gram_an(2).unwrap()).unwrap()
    }

    #[test]
    fn gram_an_vertices() {
        let v = half_a2();
        assert_eq!(v.matrix(), &gram_an(2).unwrap().scale(&frac(1, 2)));
        assert_eq!(v.min_vectors(), &[lv(&[0, 1]), lv(&[1, 0]), lv(&[1, 1])]);
        for n in 1..=4 {
            let v = make_vertex(&gram_an(n).unwrap()).unwrap();
            assert_eq!(v.min_vectors().len(), n * (n + 1) / 2);
            for m in v.min_vectors() {
                assert_eq!(quad_form(v.matrix(), m).unwrap(), int(1));
            }
            assert!(v.dual_rays().len() >= n * (n + 1) / 2);
        }
    }

    #[test]
    fn identity_is_not_perfect() {
        assert!(matches!(
            make_vertex(&SymMatrix::identity(2)),
            Err(Error::NotPerfect { rank: 2, dim: 3 })
        ));
    }

    #[test]
    fn dual_rays_of_half_a2() {
        let v = half_a2();
        assert_eq!(v.dual_rays().len(), 3);
        // solve R[(1,0)] = R[(0,1)] = 0 directly: r11 = r22 = 0, r12 free
        let offdiag = SymMatrix::from_integers(&[[0, 1], [1, 0]]).unwrap();
        assert!(v.dual_rays().contains(&offdiag));
        assert!(sym_inner(&offdiag, &rank1(&lv(&[1, 1]))).unwrap().is_positive());
        for r in v.dual_rays() {
            let zeros = v
                .min_vectors()
                .iter()
                .filter(|m| sym_inner(r, &rank1(m)).unwrap().is_zero())
                .count();
            assert_eq!(zeros, 2);
        }
    }

    #[test]
    fn dual_rays_are_extreme_and_valid() {
        for n in 2..=4 {
            let v = make_vertex(&gram_an(n).unwrap()).unwrap();
            let d = n * (n + 1) / 2;
            for r in v.dual_rays() {
                let mut tight = Vec::new();
                for m in v.min_vectors() {
                    let value = sym_inner(r, &rank1(m)).unwrap();
                    assert!(!value.is_negative());
                    if value.is_zero() {
                        tight.push(rank1(m).upper_triangle());
                    }
                }
                assert_eq!(rank(&tight), d - 1);
            }
        }
    }

    #[test]
    fn membership_examples() {
        let v = half_a2();
        let a = SymMatrix::from_integers(&[[2, 1], [1, 2]]).unwrap();
        match membership(&a, &v).unwrap() {
            Membership::Member(f) => {
                assert!(f.verify(&a));
                assert_eq!(
                    f.sorted().terms(),
                    &[(int(1), lv(&[0, 1])), (int(1), lv(&[1, 0])), (int(1), lv(&[1, 1]))]
                );
            }
            other => panic!("expected member, got {other:?}"),
        }
        let a = rank1(&lv(&[1, 2]));
        match membership(&a, &v).unwrap() {
            Membership::Violations(idx) => {
                assert!(!idx.is_empty());
                for i in idx {
                    assert!(sym_inner(&a, &v.dual_rays()[i]).unwrap().is_negative());
                }
            }
            other => panic!("expected violations, got {other:?}"),
        }
        match membership(&SymMatrix::zeros(2), &v).unwrap() {
            Membership::Member(f) => assert!(f.is_empty()),
            other => panic!("expected member, got {other:?}"),
        }
    }
}
