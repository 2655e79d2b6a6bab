use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{int, LatticeVector, Rational};
use crate::error::{Error, Result};

/// Symmetric `n x n` matrix over the rationals.
///
/// Stored as a full row-major array; symmetry is enforced by every
/// constructor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    /// Builds a matrix from its upper triangle; `f` is called with `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                entries[j * n + i] = v.clone();
                entries[i * n + j] = v;
            }
        }
        Self { n, entries }
    }

    /// Builds a matrix from rows, checking squareness and exact symmetry.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    /// Inverse of [`SymMatrix::upper_triangle`].
    pub fn from_upper_triangle(n: usize, values: &[Rational]) -> Result<Self> {
        let expected = n * (n + 1) / 2;
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: values.len(),
            });
        }
        let mut it = values.iter();
        Ok(Self::from_fn(n, |_, _| it.next().cloned().unwrap_or_default()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.n.max(1))
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Row-major upper triangle, length `n(n+1)/2`.
    pub fn upper_triangle(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.n * (self.n + 1) / 2);
        for i in 0..self.n {
            for j in i..self.n {
                out.push(self.get(i, j).clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|v| v * c).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Rational, other: &SymMatrix) -> Result<Self> {
        self.check_dim(other.n)?;
        Ok(Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + c * b)
                .collect(),
        })
    }

    pub fn add(&self, other: &SymMatrix) -> Result<Self> {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<Self> {
        self.add_scaled(&-Rational::one(), other)
    }

    /// Principal submatrix on the given (sorted) index set.
    pub fn principal(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in indices {
            for &j in indices {
                entries.push(self.get(i, j).clone());
            }
        }
        Self { n: k, entries }
    }

    /// `<self, self>`, the squared Frobenius norm.
    pub fn norm_sq(&self) -> Rational {
        self.entries.iter().map(|v| v * v).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|v| v.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|v| !v.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|v| v.is_positive())
    }

    /// `u^T B v` for integer vectors.
    pub fn bilinear(&self, u: &[BigInt], v: &[BigInt]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.n {
            if u[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..self.n {
                if !v[j].is_zero() {
                    row += self.get(i, j) * &v[j];
                }
            }
            acc += row * &u[i];
        }
        acc
    }

    /// `B v` for an integer vector.
    pub fn mul_int_vec(&self, v: &[BigInt]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(b, x)| b * x)
                    .sum()
            })
            .collect()
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.n != other {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `<A, B> = Trace(AB) = sum_ij A_ij B_ij`.
pub fn sym_inner(a: &SymMatrix, b: &SymMatrix) -> Result<Rational> {
    a.check_dim(b.n)?;
    Ok(a.entries.iter().zip(&b.entries).map(|(x, y)| x * y).sum())
}

/// `B[v] = v^T B v`.
pub fn quad_form(b: &SymMatrix, v: &LatticeVector) -> Result<Rational> {
    b.check_dim(v.dim())?;
    Ok(b.bilinear(v.coords(), v.coords()))
}

/// `v v^T`.
pub fn rank1(v: &LatticeVector) -> SymMatrix {
    let c = v.coords();
    SymMatrix::from_fn(v.dim(), |i, j| Rational::from_integer(&c[i] * &c[j]))
}

/// Gram matrix of the root lattice A_n: 2 on the diagonal, -1 next to it.
pub fn gram_an(n: usize) -> Result<SymMatrix> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    Ok(SymMatrix::from_fn(n, |i, j| match j - i {
        0 => int(2),
        1 => int(-1),
        _ => Rational::zero(),
    }))
}
