use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Row-style Hermite normal form of a full-rank square integer matrix.
///
/// Returns `(U, W)` with `U` unimodular and `W = U * V` upper triangular with
/// positive diagonal and entries above the diagonal reduced into
/// `[0, W_jj)`.
pub fn hnf(v: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let n = v.dim();
    let mut w = v.clone();
    let mut u = IntMatrix::identity(n);

    for k in 0..n {
        for i in (k + 1)..n {
            if w.get(i, k).is_zero() {
                continue;
            }
            let a = w.get(k, k).clone();
            let b = w.get(i, k).clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (ag, bg) = (&a / &g, &b / &g);
            // [s t; -b/g a/g] has determinant 1
            combine_rows(&mut w, k, i, &s, &t, &(-&bg), &ag);
            combine_rows(&mut u, k, i, &s, &t, &(-&bg), &ag);
        }
        if w.get(k, k).is_zero() {
            return Err(Error::Singular);
        }
        if w.get(k, k).is_negative() {
            negate_row(&mut w, k);
            negate_row(&mut u, k);
        }
        let pivot = w.get(k, k).clone();
        for i in 0..k {
            let q = w.get(i, k).div_floor(&pivot);
            if !q.is_zero() {
                sub_row_multiple(&mut w, i, k, &q);
                sub_row_multiple(&mut u, i, k, &q);
            }
        }
    }
    Ok((u, w))
}

/// `(row_a, row_b) <- (s*row_a + t*row_b, p*row_a + q*row_b)`
fn combine_rows(m: &mut IntMatrix, a: usize, b: usize, s: &BigInt, t: &BigInt, p: &BigInt, q: &BigInt) {
    for j in 0..m.dim() {
        let x = m.get(a, j).clone();
        let y = m.get(b, j).clone();
        *m.get_mut(a, j) = s * &x + t * &y;
        *m.get_mut(b, j) = p * &x + q * &y;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.dim() {
        let v = -m.get(r, j).clone();
        *m.get_mut(r, j) = v;
    }
}

fn sub_row_multiple(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for j in 0..m.dim() {
        let v = m.get(target, j) - q * m.get(source, j);
        *m.get_mut(target, j) = v;
    }
}
