use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{hnf, IntMatrix, LatticeVector, Rational, SymMatrix};

/// Default cap on the number of cones a partition may grow to.
pub const DEFAULT_MAX_CONES: usize = 250_000;

/// `B` scaled to integer entries: `B = entries / denom`.
#[derive(Clone, Debug)]
pub(crate) struct IntegerForm {
    pub n: usize,
    pub entries: Vec<BigInt>,
    pub denom: BigInt,
}

impl IntegerForm {
    pub fn new(b: &SymMatrix) -> Self {
        let denom = b
            .entries()
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let entries = b
            .entries()
            .iter()
            .map(|v| v.numer() * (&denom / v.denom()))
            .collect();
        Self {
            n: b.dim(),
            entries,
            denom,
        }
    }

    pub fn bilinear(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        let n = self.n;
        let mut acc = BigInt::zero();
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            let mut row = BigInt::zero();
            for j in 0..n {
                if !v[j].is_zero() {
                    row += &self.entries[i * n + j] * &v[j];
                }
            }
            acc += row * &u[i];
        }
        acc
    }
}

/// Lattice data of a simplicial cone: `U * V = W` in Hermite normal form.
#[derive(Clone, Debug)]
pub struct ConeLattice {
    pub u: IntMatrix,
    pub w: IntMatrix,
    pub u_inv: IntMatrix,
    /// `det W`, the index of the sublattice spanned by the generators.
    pub index: BigInt,
}

/// A cone spanned by `n` linearly independent nonnegative integer vectors
/// whose pairwise products `v_i^T B v_j` are all positive.
#[derive(Clone, Debug)]
pub struct SimplicialCone {
    generators: Vec<LatticeVector>,
    /// `v_i^T (denom * B) v_j`, row-major.
    gram: Vec<BigInt>,
    denom: BigInt,
    lattice: ConeLattice,
}

impl SimplicialCone {
    pub(crate) fn from_parts(generators: Vec<LatticeVector>, gram: Vec<BigInt>, denom: BigInt) -> Result<Self> {
        let cols: Vec<Vec<BigInt>> = generators.iter().map(|g| g.coords().to_vec()).collect();
        let v = IntMatrix::from_columns(&cols)?;
        let (u, w) = hnf(&v)?;
        let u_inv = u.unimodular_inverse()?;
        let index = (0..w.dim()).fold(BigInt::one(), |acc, i| acc * w.get(i, i));
        Ok(Self {
            generators,
            gram,
            denom,
            lattice: ConeLattice { u, w, u_inv, index },
        })
    }

    /// Cone for `B` with the given generators (validated: independent,
    /// nonnegative, and `v_i^T B v_j >= 0` with strict diagonal).
    pub fn new(b: &SymMatrix, generators: Vec<LatticeVector>) -> Result<Self> {
        let form = IntegerForm::new(b);
        let n = form.n;
        if generators.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: generators.len(),
            });
        }
        let mut gram = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let g = form.bilinear(generators[i].coords(), generators[j].coords());
                if g.is_negative() || (i == j && g.is_zero()) {
                    return Err(Error::NotStrictlyCopositive);
                }
                gram[i * n + j] = g.clone();
                gram[j * n + i] = g;
            }
        }
        Self::from_parts(generators, gram, form.denom)
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn lattice(&self) -> &ConeLattice {
        &self.lattice
    }

    /// `v_i^T B v_j`.
    pub fn product(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.gram[i * self.dim() + j].clone(), self.denom.clone())
    }

    pub(crate) fn scaled_gram(&self) -> &[BigInt] {
        &self.gram
    }

    pub(crate) fn denom(&self) -> &BigInt {
        &self.denom
    }

    /// `B' = (U^{-1})^T B U^{-1}`, so that `w_i^T B' w_j = v_i^T B v_j`.
    pub fn transformed(&self, b: &SymMatrix) -> SymMatrix {
        let inv = &self.lattice.u_inv;
        let cols: Vec<Vec<BigInt>> = (0..inv.dim()).map(|j| inv.column(j)).collect();
        SymMatrix::from_fn(b.dim(), |i, j| b.bilinear(&cols[i], &cols[j]))
    }

    pub fn is_strict(&self) -> bool {
        self.gram.iter().all(Signed::is_positive)
    }
}

/// Simplicial partition of the standard simplex, expressed as cones.
#[derive(Clone, Debug)]
pub struct Partition {
    pub cones: Vec<SimplicialCone>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }
}

struct Simplex {
    vertices: Vec<Vec<BigInt>>,
    gram: Vec<BigInt>,
}

pub fn build_partition(b: &SymMatrix) -> Result<Partition> {
    build_partition_with(b, DEFAULT_MAX_CONES)
}

/// Refines the standard simplex until every cone satisfies
/// `v_i^T B v_j > 0` for all `i, j`.
///
/// The worst edge (smallest product, first in index order on ties) is split
/// at the integral point `v_i + v_j`. Splitting this way keeps every cone
/// unimodular when starting from the unit vectors. Fails with
/// [`Error::NotStrictlyCopositive`] if some vertex has `B[v] <= 0`, and with
/// [`Error::PartitionLimit`] once more than `max_cones` cones exist.
pub fn build_partition_with(b: &SymMatrix, max_cones: usize) -> Result<Partition> {
    let form = IntegerForm::new(b);
    let n = form.n;
    let root = Simplex {
        vertices: (0..n)
            .map(|i| (0..n).map(|k| BigInt::from(u8::from(k == i))).collect())
            .collect(),
        gram: form.entries.clone(),
    };
    let mut stack = vec![root];
    let mut done: Vec<Simplex> = Vec::new();
    while let Some(s) = stack.pop() {
        if (0..n).any(|i| !s.gram[i * n + i].is_positive()) {
            return Err(Error::NotStrictlyCopositive);
        }
        let mut worst: Option<(usize, usize)> = None;
        for i in 0..n {
            for j in (i + 1)..n {
                let g = &s.gram[i * n + j];
                if g.is_positive() {
                    continue;
                }
                if worst.is_none_or(|(a, b)| g < &s.gram[a * n + b]) {
                    worst = Some((i, j));
                }
            }
        }
        match worst {
            None => done.push(s),
            Some((i, j)) => {
                if done.len() + stack.len() + 2 > max_cones {
                    return Err(Error::PartitionLimit(max_cones));
                }
                let (left, right) = split(&s, n, i, j);
                stack.push(right);
                stack.push(left);
            }
        }
    }
    let cones = done
        .into_iter()
        .map(|s| {
            let generators = s
                .vertices
                .into_iter()
                .map(LatticeVector::new)
                .collect::<Result<Vec<_>>>()?;
            SimplicialCone::from_parts(generators, s.gram, form.denom.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition { cones })
}

/// Children replacing `v_i` (resp. `v_j`) by `v_i + v_j`; gram entries follow
/// by bilinearity.
fn split(s: &Simplex, n: usize, i: usize, j: usize) -> (Simplex, Simplex) {
    let mid: Vec<BigInt> = s.vertices[i]
        .iter()
        .zip(&s.vertices[j])
        .map(|(a, b)| a + b)
        .collect();
    let g = &s.gram;
    let mid_row: Vec<BigInt> = (0..n).map(|k| &g[i * n + k] + &g[j * n + k]).collect();
    let mid_sq = &g[i * n + i] + &g[j * n + j] + &g[i * n + j] * 2u32;
    let child = |replace: usize| {
        let mut vertices = s.vertices.clone();
        vertices[replace] = mid.clone();
        let mut gram = g.clone();
        for k in 0..n {
            let v = if k == replace { mid_sq.clone() } else { mid_row[k].clone() };
            gram[replace * n + k] = v.clone();
            gram[k * n + replace] = v;
        }
        Simplex { vertices, gram }
    };
    (child(i), child(j))
}
