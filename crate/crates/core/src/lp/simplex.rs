//! Dense two-phase tableau simplex over the rationals.

use num_traits::{One, Signed, Zero};

use super::{Direction, LinearProgram, LpOutcome, Sense};
use crate::linalg::Rational;

/// Anti-cycling pivot rules. Both terminate on every input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest-index entering and leaving variables.
    #[default]
    Bland,
    /// Most negative reduced cost with the lexicographic ratio test.
    Lexicographic,
}

#[derive(Clone, Copy)]
enum RowOrigin {
    /// Original row index and the sign applied to make the rhs nonnegative.
    Original(usize, bool),
    UpperBound,
}

struct StandardForm {
    /// `(original variable, +1/-1)` for structural columns; slack columns
    /// follow and map to nothing.
    structural: Vec<(usize, bool)>,
    num_cols: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    origin: Vec<RowOrigin>,
    cost: Vec<Rational>,
    shift: Vec<Rational>,
}

enum Prepared {
    Standard(StandardForm),
    /// An all-zero row that cannot be satisfied, with its Farkas multiplier.
    TriviallyInfeasible(usize, Rational),
}

fn standardize(lp: &LinearProgram) -> Prepared {
    let n = lp.num_vars();
    let negate_cost = lp.direction == Direction::Maximize;
    let mut structural = Vec::new();
    let mut shift = vec![Rational::zero(); n];
    let mut cols_of = vec![Vec::new(); n];
    let mut upper_rows = Vec::new();
    for (j, b) in lp.bounds.iter().enumerate() {
        match (&b.lower, &b.upper) {
            (Some(l), u) => {
                shift[j] = l.clone();
                cols_of[j].push((structural.len(), true));
                if let Some(u) = u {
                    upper_rows.push((structural.len(), u - l));
                }
                structural.push((j, true));
            }
            (None, Some(u)) => {
                shift[j] = u.clone();
                cols_of[j].push((structural.len(), false));
                structural.push((j, false));
            }
            (None, None) => {
                cols_of[j].push((structural.len(), true));
                structural.push((j, true));
                cols_of[j].push((structural.len(), false));
                structural.push((j, false));
            }
        }
    }

    let mut kept = Vec::new();
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.coefficients.iter().all(Zero::is_zero) {
            let zero = Rational::zero();
            let violated = match c.sense {
                Sense::Le => c.rhs < zero,
                Sense::Ge => c.rhs > zero,
                Sense::Eq => !c.rhs.is_zero(),
            };
            if violated {
                let y = if c.rhs.is_positive() { Rational::one() } else { -Rational::one() };
                return Prepared::TriviallyInfeasible(i, y);
            }
            continue;
        }
        kept.push(i);
    }
    let slack_count = kept
        .iter()
        .filter(|&&i| lp.constraints[i].sense != Sense::Eq)
        .count()
        + upper_rows.len();
    let num_cols = structural.len() + slack_count;

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut origin = Vec::new();
    let mut next_slack = structural.len();
    for &i in &kept {
        let c = &lp.constraints[i];
        let mut row = vec![Rational::zero(); num_cols];
        let mut b = c.rhs.clone();
        for (j, a) in c.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            b -= a * &shift[j];
            for &(col, positive) in &cols_of[j] {
                row[col] = if positive { a.clone() } else { -a };
            }
        }
        match c.sense {
            Sense::Le => {
                row[next_slack] = Rational::one();
                next_slack += 1;
            }
            Sense::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
            }
            Sense::Eq => {}
        }
        let flip = b.is_negative();
        if flip {
            for v in &mut row {
                *v = -&*v;
            }
            b = -b;
        }
        rows.push(row);
        rhs.push(b);
        origin.push(RowOrigin::Original(i, flip));
    }
    for (col, width) in upper_rows {
        let mut row = vec![Rational::zero(); num_cols];
        row[col] = Rational::one();
        row[next_slack] = Rational::one();
        next_slack += 1;
        rows.push(row);
        rhs.push(width);
        origin.push(RowOrigin::UpperBound);
    }

    let mut cost = vec![Rational::zero(); num_cols];
    for (col, &(j, positive)) in structural.iter().enumerate() {
        let c = &lp.objective[j];
        let c = if negate_cost { -c } else { c.clone() };
        cost[col] = if positive { c } else { -c };
    }

    Prepared::Standard(StandardForm {
        structural,
        num_cols,
        rows,
        rhs,
        origin,
        cost,
        shift,
    })
}

/// Tableau with columns `[structural+slack | artificial | rhs]` and the
/// reduced-cost row kept separately (its last entry is minus the objective).
struct Tableau {
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
    num_cols: usize,
}

enum Step {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn width(&self) -> usize {
        self.num_cols + self.rows.len() + 1
    }

    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width() - 1]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width();
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in &mut self.rows[r] {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..w).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                let d = &f * &pivot_row[j];
                row[j] -= d;
            }
        };
        for row in self.rows.iter_mut() {
            if !row.is_empty() {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    fn entering(&self, rule: PivotRule) -> Option<usize> {
        let candidates = (0..self.num_cols).filter(|&j| self.obj[j].is_negative());
        match rule {
            PivotRule::Bland => candidates.into_iter().next(),
            PivotRule::Lexicographic => {
                let mut best: Option<usize> = None;
                for j in candidates {
                    if best.is_none_or(|b| self.obj[j] < self.obj[b]) {
                        best = Some(j);
                    }
                }
                best
            }
        }
    }

    fn leaving(&self, c: usize, rule: PivotRule) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][c];
            if !a.is_positive() {
                continue;
            }
            let ratio = self.rhs(i) / a;
            let better = match &best {
                None => true,
                Some((b, br)) => {
                    if ratio != *br {
                        ratio < *br
                    } else {
                        match rule {
                            PivotRule::Bland => self.basis[i] < self.basis[*b],
                            PivotRule::Lexicographic => self.lex_less(i, *b, c),
                        }
                    }
                }
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Compares rows of `B^{-1}` (the artificial block) scaled by the pivot
    /// column; distinct rows of a nonsingular matrix never tie.
    fn lex_less(&self, i: usize, k: usize, c: usize) -> bool {
        let m = self.rows.len();
        for t in 0..m {
            let col = self.num_cols + t;
            let a = &self.rows[i][col] / &self.rows[i][c];
            let b = &self.rows[k][col] / &self.rows[k][c];
            if a != b {
                return a < b;
            }
        }
        false
    }

    fn run(&mut self, rule: PivotRule) -> Step {
        loop {
            let Some(c) = self.entering(rule) else {
                return Step::Optimal;
            };
            let Some(r) = self.leaving(c, rule) else {
                return Step::Unbounded(c);
            };
            self.pivot(r, c);
        }
    }

    fn set_objective(&mut self, cost: &[Rational]) {
        let w = self.width();
        let mut obj = vec![Rational::zero(); w];
        obj[..self.num_cols].clone_from_slice(cost);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = if b < self.num_cols { cost[b].clone() } else { Rational::zero() };
            if cb.is_zero() {
                continue;
            }
            for (o, t) in obj.iter_mut().zip(&self.rows[i]) {
                if !t.is_zero() {
                    *o -= &cb * t;
                }
            }
        }
        self.obj = obj;
    }

    fn artificial_duals(&self, artificial_cost: &Rational) -> Vec<Rational> {
        (0..self.rows.len())
            .map(|i| artificial_cost - &self.obj[self.num_cols + i])
            .collect()
    }
}

pub(super) fn solve(lp: &LinearProgram, rule: PivotRule) -> LpOutcome {
    let sf = match standardize(lp) {
        Prepared::Standard(sf) => sf,
        Prepared::TriviallyInfeasible(i, y) => {
            let mut farkas = vec![Rational::zero(); lp.constraints.len()];
            farkas[i] = y;
            return LpOutcome::Infeasible { farkas };
        }
    };
    let m = sf.rows.len();
    let nc = sf.num_cols;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, b)) in sf.rows.iter().zip(&sf.rhs).enumerate() {
        let mut full = row.clone();
        full.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        full.push(b.clone());
        rows.push(full);
    }
    let mut t = Tableau {
        rows,
        obj: Vec::new(),
        basis: (nc..nc + m).collect(),
        num_cols: nc,
    };

    // phase I: minimize the sum of artificials
    let w = t.width();
    let mut obj = vec![Rational::zero(); w];
    for row in &t.rows {
        for j in (0..nc).chain(std::iter::once(w - 1)) {
            if !row[j].is_zero() {
                obj[j] -= &row[j];
            }
        }
    }
    t.obj = obj;
    t.run(rule);
    let infeasibility = -t.obj[w - 1].clone();
    if infeasibility.is_positive() {
        let pi = t.artificial_duals(&Rational::one());
        return LpOutcome::Infeasible {
            farkas: map_row_multipliers(lp, &sf, &pi, false),
        };
    }

    // drive zero-level artificials out where possible
    for i in 0..m {
        if t.basis[i] >= nc {
            if let Some(j) = (0..nc).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            }
        }
    }

    t.set_objective(&sf.cost);
    let step = t.run(rule);
    let point_std = basic_solution(&t);
    let point = to_original(lp, &sf, &point_std, true);
    match step {
        Step::Unbounded(c) => {
            let mut dir = vec![Rational::zero(); nc];
            dir[c] = Rational::one();
            for (i, &b) in t.basis.iter().enumerate() {
                if b < nc {
                    dir[b] = -t.rows[i][c].clone();
                }
            }
            LpOutcome::Unbounded {
                point,
                ray: to_original(lp, &sf, &dir, false),
            }
        }
        Step::Optimal => {
            let pi = t.artificial_duals(&Rational::zero());
            let duals = map_row_multipliers(lp, &sf, &pi, lp.direction == Direction::Maximize);
            let mut basis: Vec<usize> = t
                .basis
                .iter()
                .filter(|&&b| b < sf.structural.len())
                .map(|&b| sf.structural[b].0)
                .collect();
            basis.sort_unstable();
            basis.dedup();
            let value = lp.objective_value(&point);
            LpOutcome::Optimal {
                solution: point,
                value,
                basis,
                duals,
            }
        }
    }
}

fn basic_solution(t: &Tableau) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); t.num_cols];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < t.num_cols {
            x[b] = t.rhs(i).clone();
        }
    }
    x
}

fn to_original(lp: &LinearProgram, sf: &StandardForm, x: &[Rational], shifted: bool) -> Vec<Rational> {
    let mut out = if shifted {
        sf.shift.clone()
    } else {
        vec![Rational::zero(); lp.num_vars()]
    };
    for (col, &(j, positive)) in sf.structural.iter().enumerate() {
        if x[col].is_zero() {
            continue;
        }
        if positive {
            out[j] += &x[col];
        } else {
            out[j] -= &x[col];
        }
    }
    out
}

fn map_row_multipliers(lp: &LinearProgram, sf: &StandardForm, pi: &[Rational], negate: bool) -> Vec<Rational> {
    let mut y = vec![Rational::zero(); lp.constraints.len()];
    for (k, origin) in sf.origin.iter().enumerate() {
        if let RowOrigin::Original(i, flipped) = *origin {
            let v = if flipped != negate { -&pi[k] } else { pi[k].clone() };
            y[i] = v;
        }
    }
    y
}
