//! Exact rational linear programming.
//!
//! Problems are stated naturally (row senses, free or boxed variables,
//! minimize or maximize) and converted to standard form internally. Every
//! outcome carries an exact certificate: a primal/dual pair for
//! [`LpOutcome::Optimal`], a Farkas multiplier for
//! [`LpOutcome::Infeasible`], and an improving ray for
//! [`LpOutcome::Unbounded`]. The `verify_*` functions check those
//! certificates against the original problem without trusting the solver.

mod simplex;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;

pub use simplex::PivotRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

/// Variable bounds; `None` is an infinite bound on that side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl Bound {
    pub fn nonnegative() -> Self {
        Self {
            lower: Some(Rational::zero()),
            upper: None,
        }
    }

    pub fn free() -> Self {
        Self { lower: None, upper: None }
    }

    pub fn boxed(lower: Rational, upper: Rational) -> Self {
        Self {
            lower: Some(lower),
            upper: Some(upper),
        }
    }

    fn contains(&self, x: &Rational) -> bool {
        self.lower.as_ref().is_none_or(|l| x >= l) && self.upper.as_ref().is_none_or(|u| x <= u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub sense: Sense,
    pub rhs: Rational,
}

/// `direction c.x` subject to `a_i.x (sense_i) b_i` and `l <= x <= u`.
/// Variables default to `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub direction: Direction,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bound>,
}

impl LinearProgram {
    pub fn new(direction: Direction, objective: Vec<Rational>) -> Self {
        let bounds = vec![Bound::nonnegative(); objective.len()];
        Self {
            direction,
            objective,
            constraints: Vec::new(),
            bounds,
        }
    }

    pub fn minimize(objective: Vec<Rational>) -> Self {
        Self::new(Direction::Minimize, objective)
    }

    pub fn maximize(objective: Vec<Rational>) -> Self {
        Self::new(Direction::Maximize, objective)
    }

    /// Feasibility problem over `vars` nonnegative variables.
    pub fn feasibility(vars: usize) -> Self {
        Self::minimize(vec![Rational::zero(); vars])
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn subject_to(mut self, coefficients: Vec<Rational>, sense: Sense, rhs: Rational) -> Self {
        self.constraints.push(Constraint {
            coefficients,
            sense,
            rhs,
        });
        self
    }

    pub fn with_bound(mut self, var: usize, bound: Bound) -> Self {
        self.bounds[var] = bound;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::MalformedLp(format!(
                "{} bounds for {} variables",
                self.bounds.len(),
                n
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coefficients.len() != n {
                return Err(Error::MalformedLp(format!(
                    "row {i} has {} coefficients, expected {n}",
                    c.coefficients.len()
                )));
            }
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if let (Some(l), Some(u)) = (&b.lower, &b.upper) {
                if l > u {
                    return Err(Error::MalformedLp(format!("empty bound interval for variable {j}")));
                }
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        solution: Vec<Rational>,
        value: Rational,
        /// Original variables whose standard-form column is basic.
        basis: Vec<usize>,
        /// One multiplier per constraint row; see [`verify_optimal`].
        duals: Vec<Rational>,
    },
    Infeasible {
        /// One multiplier per constraint row; see [`verify_farkas`].
        farkas: Vec<Rational>,
    },
    Unbounded {
        /// A feasible point and an improving recession direction.
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }
}

/// Solves with Bland's rule.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    solve_with(lp, PivotRule::Bland)
}

pub fn solve_with(lp: &LinearProgram, rule: PivotRule) -> Result<LpOutcome> {
    lp.validate()?;
    Ok(simplex::solve(lp, rule))
}

/// Phase-I driver: a basic feasible point of the constraints or a Farkas
/// certificate. Objective and direction of `lp` are ignored.
pub fn feasible_point(lp: &LinearProgram) -> Result<LpOutcome> {
    let mut stripped = lp.clone();
    stripped.direction = Direction::Minimize;
    stripped.objective = vec![Rational::zero(); lp.num_vars()];
    solve(&stripped)
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Exact check that `x` satisfies every row and bound.
pub fn is_feasible(lp: &LinearProgram, x: &[Rational]) -> bool {
    if x.len() != lp.num_vars() {
        return false;
    }
    lp.bounds.iter().zip(x).all(|(b, v)| b.contains(v))
        && lp.constraints.iter().all(|c| {
            let lhs = dot(&c.coefficients, x);
            match c.sense {
                Sense::Le => lhs <= c.rhs,
                Sense::Eq => lhs == c.rhs,
                Sense::Ge => lhs >= c.rhs,
            }
        })
}

/// `r = c - A^T y`.
fn reduced_costs(lp: &LinearProgram, y: &[Rational]) -> Vec<Rational> {
    let mut r = lp.objective.clone();
    for (c, yi) in lp.constraints.iter().zip(y) {
        if yi.is_zero() {
            continue;
        }
        for (rj, a) in r.iter_mut().zip(&c.coefficients) {
            *rj -= a * yi;
        }
    }
    r
}

/// Row multipliers must have the sign that makes `y_i (a_i x - b_i)` valid
/// in the direction of optimization.
fn dual_sign_ok(sense: Sense, y: &Rational, direction: Direction) -> bool {
    let y = match direction {
        Direction::Minimize => y.clone(),
        Direction::Maximize => -y,
    };
    match sense {
        Sense::Ge => !y.is_negative(),
        Sense::Le => !y.is_positive(),
        Sense::Eq => true,
    }
}

/// Value of the dual objective `y.b + sum_j bound contribution of r_j`, or
/// `None` if `y` is not dual feasible.
pub fn dual_value(lp: &LinearProgram, y: &[Rational]) -> Option<Rational> {
    if y.len() != lp.constraints.len() {
        return None;
    }
    if !lp
        .constraints
        .iter()
        .zip(y)
        .all(|(c, yi)| dual_sign_ok(c.sense, yi, lp.direction))
    {
        return None;
    }
    let r = reduced_costs(lp, y);
    let mut value: Rational = lp.constraints.iter().zip(y).map(|(c, yi)| &c.rhs * yi).sum();
    for (rj, b) in r.iter().zip(&lp.bounds) {
        if rj.is_zero() {
            continue;
        }
        // minimize: r_j > 0 pushes x_j to its lower bound; maximize mirrors it
        let use_lower = rj.is_positive() == (lp.direction == Direction::Minimize);
        let bound = if use_lower { &b.lower } else { &b.upper };
        value += rj * bound.as_ref()?;
    }
    Some(value)
}

/// Checks primal feasibility, dual feasibility and equal objective values.
pub fn verify_optimal(lp: &LinearProgram, x: &[Rational], y: &[Rational]) -> bool {
    is_feasible(lp, x) && dual_value(lp, y).is_some_and(|d| d == lp.objective_value(x))
}

/// Checks a Farkas certificate: with the sign conventions of a minimization
/// dual, `y.A x >= y.b` holds for every feasible `x`, and the maximum of
/// `(y.A) x` over the variable box is strictly below `y.b`.
pub fn verify_farkas(lp: &LinearProgram, y: &[Rational]) -> bool {
    if y.len() != lp.constraints.len() {
        return false;
    }
    if !lp
        .constraints
        .iter()
        .zip(y)
        .all(|(c, yi)| dual_sign_ok(c.sense, yi, Direction::Minimize))
    {
        return false;
    }
    let n = lp.num_vars();
    let mut d = vec![Rational::zero(); n];
    for (c, yi) in lp.constraints.iter().zip(y) {
        for (dj, a) in d.iter_mut().zip(&c.coefficients) {
            *dj += a * yi;
        }
    }
    let beta: Rational = lp.constraints.iter().zip(y).map(|(c, yi)| &c.rhs * yi).sum();
    let mut sup = Rational::zero();
    for (dj, b) in d.iter().zip(&lp.bounds) {
        if dj.is_positive() {
            match &b.upper {
                Some(u) => sup += dj * u,
                None => return false,
            }
        } else if dj.is_negative() {
            match &b.lower {
                Some(l) => sup += dj * l,
                None => return false,
            }
        }
    }
    sup < beta
}

/// Checks that `point` is feasible and `point + t * ray` stays feasible for
/// all `t >= 0` while strictly improving the objective.
pub fn verify_ray(lp: &LinearProgram, point: &[Rational], ray: &[Rational]) -> bool {
    if !is_feasible(lp, point) || ray.len() != lp.num_vars() {
        return false;
    }
    let rows_ok = lp.constraints.iter().all(|c| {
        let s = dot(&c.coefficients, ray);
        match c.sense {
            Sense::Le => !s.is_positive(),
            Sense::Eq => s.is_zero(),
            Sense::Ge => !s.is_negative(),
        }
    });
    let bounds_ok = lp.bounds.iter().zip(ray).all(|(b, r)| {
        (b.lower.is_none() || !r.is_negative()) && (b.upper.is_none() || !r.is_positive())
    });
    let slope = dot(&lp.objective, ray);
    let improving = match lp.direction {
        Direction::Minimize => slope.is_negative(),
        Direction::Maximize => slope.is_positive(),
    };
    rows_ok && bounds_ok && improving
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    fn check(lp: &LinearProgram, out: &LpOutcome) {
        match out {
            LpOutcome::Optimal {
                solution,
                value,
                duals,
                ..
            } => {
                assert!(is_feasible(lp, solution), "infeasible solution {solution:?}");
                assert_eq!(&lp.objective_value(solution), value);
                assert!(verify_optimal(lp, solution, duals), "bad duals {duals:?}");
            }
            LpOutcome::Infeasible { farkas } => assert!(verify_farkas(lp, farkas), "bad farkas {farkas:?}"),
            LpOutcome::Unbounded { point, ray } => assert!(verify_ray(lp, point, ray)),
        }
    }

    #[test]
    fn lower_bound_only() {
        // min x s.t. x >= 3
        let lp = LinearProgram::minimize(vec![int(1)]).subject_to(vec![int(1)], Sense::Ge, int(3));
        let out = solve(&lp).unwrap();
        check(&lp, &out);
        let LpOutcome::Optimal { value, .. } = out else { panic!() };
        assert_eq!(value, int(3));
    }

    #[test]
    fn contradictory_rows() {
        // x <= 0, x >= 1
        let lp = LinearProgram::minimize(vec![int(1)])
            .with_bound(0, Bound::free())
            .subject_to(vec![int(1)], Sense::Le, int(0))
            .subject_to(vec![int(1)], Sense::Ge, int(1));
        for rule in [PivotRule::Bland, PivotRule::Lexicographic] {
            let out = solve_with(&lp, rule).unwrap();
            assert!(out.is_infeasible());
            check(&lp, &out);
        }
        assert!(feasible_point(&lp).unwrap().is_infeasible());
    }

    #[test]
    fn identity_game_value() {
        // max lambda s.t. y in simplex, I y >= lambda e
        let lp = LinearProgram::maximize(vec![int(0), int(0), int(1)])
            .with_bound(2, Bound::free())
            .subject_to(vec![int(1), int(1), int(0)], Sense::Eq, int(1))
            .subject_to(vec![int(1), int(0), int(-1)], Sense::Ge, int(0))
            .subject_to(vec![int(0), int(1), int(-1)], Sense::Ge, int(0));
        for rule in [PivotRule::Bland, PivotRule::Lexicographic] {
            let out = solve_with(&lp, rule).unwrap();
            check(&lp, &out);
            let LpOutcome::Optimal { solution, value, .. } = out else { panic!() };
            assert_eq!(value, frac(1, 2));
            assert_eq!(solution, vec![frac(1, 2), frac(1, 2), frac(1, 2)]);
        }
    }

    #[test]
    fn unbounded_direction() {
        // max x + y s.t. x - y <= 1
        let lp = LinearProgram::maximize(vec![int(1), int(1)])
            .subject_to(vec![int(1), int(-1)], Sense::Le, int(1));
        let out = solve(&lp).unwrap();
        assert!(matches!(out, LpOutcome::Unbounded { .. }));
        check(&lp, &out);
    }

    #[test]
    fn empty_problem_is_feasible() {
        let lp = LinearProgram::feasibility(0);
        let out = feasible_point(&lp).unwrap();
        let LpOutcome::Optimal { solution, .. } = out else { panic!() };
        assert!(solution.is_empty());
    }

    #[test]
    fn zero_rows() {
        let ok = LinearProgram::feasibility(2).subject_to(vec![int(0), int(0)], Sense::Le, int(1));
        assert!(solve(&ok).unwrap().is_optimal());
        let bad = LinearProgram::feasibility(2).subject_to(vec![int(0), int(0)], Sense::Eq, int(1));
        let out = solve(&bad).unwrap();
        assert!(out.is_infeasible());
        check(&bad, &out);
    }

    #[test]
    fn malformed_input() {
        let lp = LinearProgram::minimize(vec![int(1)]).subject_to(vec![int(1), int(2)], Sense::Le, int(1));
        assert!(matches!(solve(&lp), Err(Error::MalformedLp(_))));
        let lp = LinearProgram::minimize(vec![int(1)]).with_bound(0, Bound::boxed(int(2), int(1)));
        assert!(matches!(solve(&lp), Err(Error::MalformedLp(_))));
    }

    #[test]
    fn mixed_bounds() {
        // min -x0 + 2 x1 - x2, x0 in [-2, 3], x1 <= 4 (free below), x2 free,
        // x0 + x1 + x2 = 1, x1 - x2 >= -5, x2 <= 2
        let lp = LinearProgram::minimize(vec![int(-1), int(2), int(-1)])
            .with_bound(0, Bound::boxed(int(-2), int(3)))
            .with_bound(1, Bound { lower: None, upper: Some(int(4)) })
            .with_bound(2, Bound::free())
            .subject_to(vec![int(1), int(1), int(1)], Sense::Eq, int(1))
            .subject_to(vec![int(0), int(1), int(-1)], Sense::Ge, int(-5))
            .subject_to(vec![int(0), int(0), int(1)], Sense::Le, int(2));
        for rule in [PivotRule::Bland, PivotRule::Lexicographic] {
            let out = solve_with(&lp, rule).unwrap();
            check(&lp, &out);
        }
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the textbook Dantzig rule
        let lp = LinearProgram::minimize(vec![frac(-3, 4), int(150), frac(-1, 50), int(6)])
            .subject_to(vec![frac(1, 4), int(-60), frac(-1, 25), int(9)], Sense::Le, int(0))
            .subject_to(vec![frac(1, 2), int(-90), frac(-1, 50), int(3)], Sense::Le, int(0))
            .subject_to(vec![int(0), int(0), int(1), int(0)], Sense::Le, int(1));
        for rule in [PivotRule::Bland, PivotRule::Lexicographic] {
            let out = solve_with(&lp, rule).unwrap();
            check(&lp, &out);
            let LpOutcome::Optimal { value, .. } = out else { panic!() };
            assert_eq!(value, frac(-1, 20));
        }
    }
}
