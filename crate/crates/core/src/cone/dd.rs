//! Double description method for `{x : a_k . x >= 0 for all k}` over the
//! integers, for a pointed cone whose inequality rows span the whole space.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{make_primitive, primitive_integer, Rational};

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    coords: Vec<BigInt>,
    tight: Bits,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Indices of a maximal linearly independent prefix-greedy subset of `rows`.
fn independent_rows(rows: &[Vec<BigInt>], dim: usize) -> Vec<usize> {
    // reduced basis rows, each with its pivot column
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut r: Vec<Rational> = row.iter().cloned().map(Rational::from_integer).collect();
        for (pc, b) in &basis {
            if r[*pc].is_zero() {
                continue;
            }
            let f = &r[*pc] / &b[*pc];
            for (x, y) in r.iter_mut().zip(b) {
                *x -= &f * y;
            }
        }
        if let Some(pc) = r.iter().position(|x| !x.is_zero()) {
            basis.push((pc, r));
            chosen.push(idx);
            if chosen.len() == dim {
                break;
            }
        }
    }
    chosen
}

/// Columns of the inverse of a square integer matrix, each scaled to a
/// primitive integer vector.
fn inverse_columns(rows: &[&Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let d = rows.len();
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rational> = r.iter().cloned().map(Rational::from_integer).collect();
            row.extend((0..d).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&i| !a[i][c].is_zero()).expect("rows are independent");
        a.swap(c, p);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &piv;
        }
        for i in 0..d {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..2 * d {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    (0..d)
        .map(|j| primitive_integer(&(0..d).map(|i| a[i][d + j].clone()).collect::<Vec<_>>()))
        .collect()
}

/// Primitive integer generators of the extreme rays of
/// `{x in Q^dim : a . x >= 0 for a in inequalities}`, processing the
/// inequalities in the given order. Fails with `RayLimit` when an
/// intermediate ray list grows beyond `ray_limit`.
pub(crate) fn extreme_rays(inequalities: &[Vec<BigInt>], dim: usize, ray_limit: usize) -> Result<Vec<Vec<BigInt>>> {
    let m = inequalities.len();
    let initial = independent_rows(inequalities, dim);
    if initial.len() < dim {
        return Err(Error::NotPerfect {
            rank: initial.len(),
            dim,
        });
    }
    let cols = inverse_columns(&initial.iter().map(|&i| &inequalities[i]).collect::<Vec<_>>());
    let mut rays: Vec<Ray> = cols
        .into_iter()
        .enumerate()
        .map(|(j, coords)| {
            let mut tight = Bits::new(m);
            for (pos, &row) in initial.iter().enumerate() {
                if pos != j {
                    tight.set(row);
                }
            }
            Ray { coords, tight }
        })
        .collect();

    let mut in_initial = vec![false; m];
    for &i in &initial {
        in_initial[i] = true;
    }
    for (k, a) in inequalities.iter().enumerate() {
        if in_initial[k] {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.tight.set(k);
                }
            }
            continue;
        }
        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.and(&rays[q].tight);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(r, ray)| r == p || r == q || !common.subset_of(&ray.tight));
                if !adjacent {
                    continue;
                }
                let vp = &values[p];
                let vq = -&values[q];
                let coords: Vec<BigInt> = rays[p]
                    .coords
                    .iter()
                    .zip(&rays[q].coords)
                    .map(|(x, y)| x * &vq + y * vp)
                    .collect();
                let mut tight = common;
                tight.set(k);
                created.push(Ray {
                    coords: make_primitive(coords),
                    tight,
                });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() - neg.len() + created.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.tight.set(k);
            }
            next.push(r);
        }
        next.extend(created);
        if next.len() > ray_limit {
            return Err(Error::RayLimit(ray_limit));
        }
        rays = next;
    }
    Ok(rays.into_iter().map(|r| r.coords).collect())
}
