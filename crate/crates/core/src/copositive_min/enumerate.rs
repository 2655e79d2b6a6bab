//! Fincke-Pohst style backtracking over the integer points of one cone.
//!
//! A point of the cone is `x = V alpha` with `alpha >= 0`. With `U V = W` in
//! Hermite normal form, `x` is integral iff `y = W alpha` is, so the search
//! runs over integer `y_n, y_{n-1}, .., y_1`. Everything is scaled to
//! integers: `a = det(W) * alpha` and the gram matrix is `denom * V^T B V`.
//! Because every gram entry is nonnegative, the partial sum over the already
//! fixed coefficients is a lower bound for `B[x]`, and it grows with each
//! coefficient; this justifies both the per-level bound and the early break.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::partition::SimplicialCone;
use crate::linalg::{ceil_sqrt, LatticeVector, Rational};

/// Threshold state shared by a single cone search.
pub(crate) struct Threshold {
    pub bound: Rational,
    pub strict: bool,
    /// Lower the bound to each new best value and keep only ties.
    pub shrink: bool,
}

struct Search<'a> {
    n: usize,
    gram: &'a [BigInt],
    w: &'a crate::linalg::IntMatrix,
    u_inv: &'a crate::linalg::IntMatrix,
    index: &'a BigInt,
    /// `denom * index^2`: `B[x] = a^T gram a / scale`.
    scale: BigInt,
    threshold: Threshold,
    y: Vec<BigInt>,
    a: Vec<BigInt>,
    found: Vec<LatticeVector>,
}

pub(crate) fn search_cone(cone: &SimplicialCone, threshold: Threshold) -> (Rational, Vec<LatticeVector>) {
    let n = cone.dim();
    let lat = cone.lattice();
    let mut s = Search {
        n,
        gram: cone.scaled_gram(),
        w: &lat.w,
        u_inv: &lat.u_inv,
        index: &lat.index,
        scale: cone.denom() * &lat.index * &lat.index,
        threshold,
        y: vec![BigInt::zero(); n],
        a: vec![BigInt::zero(); n],
        found: Vec::new(),
    };
    s.level(n, &BigInt::zero());
    (s.threshold.bound, s.found)
}

impl Search<'_> {
    /// `value <= bound` (or `<`), with `value = q / scale`.
    fn within(&self, q: &BigInt) -> bool {
        let lhs = q * self.threshold.bound.denom();
        let rhs = self.threshold.bound.numer() * &self.scale;
        if self.threshold.strict {
            lhs < rhs
        } else {
            lhs <= rhs
        }
    }

    /// Fix coordinate `k - 1` given the partial value of coordinates `k..n`.
    fn level(&mut self, k: usize, partial: &BigInt) {
        if k == 0 {
            self.leaf(partial);
            return;
        }
        let k = k - 1;
        let n = self.n;
        let g = |i: usize, j: usize| &self.gram[i * n + j];
        let wkk = self.w.get(k, k).clone();
        // S = sum_{j>k} W_kj a_j and L = sum_{j>k} G_kj a_j
        let mut s_k = BigInt::zero();
        let mut l_k = BigInt::zero();
        for j in (k + 1)..n {
            if self.a[j].is_zero() {
                continue;
            }
            s_k += self.w.get(k, j) * &self.a[j];
            l_k += g(k, j) * &self.a[j];
        }
        let gkk = g(k, k).clone();

        // a_k = (index * y_k - S) / W_kk >= 0
        let y_min = s_k.div_ceil(self.index);
        // over-approximate the largest admissible a_k from
        // gkk t^2 + 2 L t + partial - bound*scale <= 0
        let cap = Rational::from_integer(self.scale.clone()) * &self.threshold.bound;
        let slack = cap - Rational::from_integer(partial.clone());
        if slack.is_negative() {
            return;
        }
        let disc = Rational::from_integer(&l_k * &l_k) + Rational::from_integer(gkk.clone()) * slack;
        let root = ceil_sqrt(&disc);
        let a_max = (root - &l_k).div_floor(&gkk);
        let y_max = (&s_k + &wkk * &a_max).div_floor(self.index);

        let mut yk = y_min;
        while yk <= y_max {
            let num = self.index * &yk - &s_k;
            if num.is_multiple_of(&wkk) {
                let ak = num / &wkk;
                let q = partial + &gkk * &ak * &ak + &l_k * &ak * 2u32;
                if !self.within(&q) {
                    break;
                }
                self.y[k] = yk.clone();
                self.a[k] = ak;
                self.level(k, &q);
                self.a[k] = BigInt::zero();
                self.y[k] = BigInt::zero();
            }
            yk += 1;
        }
    }

    fn leaf(&mut self, q: &BigInt) {
        if self.y.iter().all(Zero::is_zero) {
            return;
        }
        if !self.within(q) {
            return;
        }
        let value = Rational::new(q.clone(), self.scale.clone());
        let coords = self.u_inv.mul_vec(&self.y);
        let vector = LatticeVector::new(coords).expect("cone points are nonnegative");
        if self.threshold.shrink && value < self.threshold.bound {
            self.threshold.bound = value;
            self.found.clear();
        }
        self.found.push(vector);
    }
}
