//! Copositivity tests via Gaddum's recursive characterization.
//!
//! `B` is copositive iff every principal submatrix has a nonnegative game
//! value, and strictly copositive iff every one has a positive value. The
//! subsets are evaluated bottom-up by size, so each principal submatrix is
//! solved exactly once and a failure on a small minor stops the search before
//! any larger LP runs.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::linalg::{int, Rational, SymMatrix};
use crate::lp::{self, Bound, LinearProgram, LpOutcome, Sense};

/// Value `max_{y in simplex} min_i (B y)_i` of the matrix game with payoff `B`.
pub fn game_value(b: &SymMatrix) -> Rational {
    let n = b.dim();
    if n == 1 {
        return b.get(0, 0).clone();
    }
    // variables y_0..y_{n-1} >= 0, lambda free
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = int(1);
    let mut prog = LinearProgram::maximize(objective).with_bound(n, Bound::free());
    let mut simplex_row = vec![int(1); n + 1];
    simplex_row[n] = Rational::zero();
    prog = prog.subject_to(simplex_row, Sense::Eq, int(1));
    for i in 0..n {
        let mut row: Vec<Rational> = b.row(i).to_vec();
        row.push(int(-1));
        prog = prog.subject_to(row, Sense::Ge, Rational::zero());
    }
    match lp::solve(&prog).expect("game LP is well formed") {
        LpOutcome::Optimal { value, .. } => value,
        // the simplex is nonempty and lambda is bounded by the largest entry
        other => unreachable!("game LP cannot be {other:?}"),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Strictness {
    NonStrict,
    Strict,
}

impl Strictness {
    fn accepts(self, value: &Rational) -> bool {
        match self {
            Strictness::NonStrict => !value.is_negative(),
            Strictness::Strict => value.is_positive(),
        }
    }

    /// Entrywise sufficient condition that avoids an LP.
    fn trivially_accepts(self, b: &SymMatrix) -> bool {
        match self {
            Strictness::NonStrict => b.is_nonnegative(),
            Strictness::Strict => b.is_positive(),
        }
    }
}

/// `B[x] >= 0` for all `x >= 0`.
pub fn is_copositive(b: &SymMatrix) -> bool {
    check(b, Strictness::NonStrict)
}

/// `B` lies in the interior of the copositive cone.
pub fn is_strictly_copositive(b: &SymMatrix) -> bool {
    check(b, Strictness::Strict)
}

fn check(b: &SymMatrix, strictness: Strictness) -> bool {
    let n = b.dim();
    if n == 0 {
        return true;
    }
    if !(0..n).all(|i| strictness.accepts(b.get(i, i))) {
        return false;
    }
    if strictness.trivially_accepts(b) {
        return true;
    }
    for size in 2..=n {
        let subsets = subsets_of_size(n, size);
        let ok = subsets.par_iter().all(|indices| {
            let minor = b.principal(indices);
            strictness.trivially_accepts(&minor) || strictness.accepts(&game_value(&minor))
        });
        if !ok {
            return false;
        }
    }
    true
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < size - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, size, current, out);
            current.pop();
        }
    }
    rec(0, n, size, &mut current, &mut out);
    out
}
