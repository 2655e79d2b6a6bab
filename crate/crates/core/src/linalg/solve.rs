use num_traits::Zero;

use super::{Rational, SymMatrix};

/// Rank of a list of rational vectors (all of equal length).
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in (r + 1)..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for j in c..cols {
                let d = &f * &rows[r][j];
                rows[i][j] -= d;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// True iff the matrices are linearly independent as points of the
/// `n(n+1)/2`-dimensional space of symmetric matrices.
pub fn linearly_independent(mats: &[SymMatrix]) -> bool {
    let flat: Vec<Vec<Rational>> = mats.iter().map(SymMatrix::upper_triangle).collect();
    rank(&flat) == mats.len()
}

/// Coefficients `c` with `sum_i c_i * generators[i] = target`, or `None` when
/// the target is outside the span. Generators must be linearly independent;
/// the sign of the result is not checked.
pub fn solve_cone_coefficients(generators: &[SymMatrix], target: &SymMatrix) -> Option<Vec<Rational>> {
    let m = generators.len();
    let t = target.upper_triangle();
    let d = t.len();
    if generators.iter().any(|g| g.dim() != target.dim()) {
        return None;
    }
    let cols: Vec<Vec<Rational>> = generators.iter().map(SymMatrix::upper_triangle).collect();
    // augmented system, one row per coordinate
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(t[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(m);
    let mut r = 0;
    for c in 0..m {
        let p = (r..d).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for j in c..=m {
            a[r][j] = &a[r][j] / &pivot;
        }
        for i in 0..d {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..=m {
                let v = &f * &a[r][j];
                a[i][j] -= v;
            }
        }
        pivots.push(r);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&row| a[row][m].clone()).collect())
}
