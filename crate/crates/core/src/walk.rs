//! Simplex-type walk on the vertices of the Ryshkov-type polyhedron.
//!
//! Starting from `P = Q_{A_n} / 2`, each iteration either certifies
//! `A in V(P)` (a cp-factorization), finds a copositive matrix `W` with
//! `<W, A> < 0` (a witness that `A` is not completely positive), or moves
//! along an edge to a contiguous vertex with smaller `<A, P>`.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::{
    caratheodory_reduce, make_vertex, membership, vertex_from_parts, Factorization, Membership, PerfectVertex,
    DEFAULT_RAY_LIMIT,
};
use crate::copositive_min::{copositive_minimum, enumerate_below};
use crate::copositivity::{is_copositive, is_strictly_copositive};
use crate::error::{Error, Result};
use crate::linalg::{gram_an, int, quad_form, sym_inner, Rational, SymMatrix};

/// Bisection/doubling rounds allowed when locating a contiguous vertex.
pub const MAX_SEARCH_ROUNDS: usize = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    /// Most negative `<A, R / |R|>`.
    #[default]
    NormalizedGreedy,
    /// Uniform among the violated rays, from a seeded generator.
    Random,
    /// First violated ray in the vertex's ray order.
    FirstIndex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkConfig {
    pub pivot_rule: PivotRule,
    pub rng_seed: u64,
    pub max_iterations: usize,
    pub emit_trace: bool,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            pivot_rule: PivotRule::NormalizedGreedy,
            rng_seed: 0,
            max_iterations: 10_000,
            emit_trace: false,
        }
    }
}

impl WalkConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Factorization(Factorization),
    Witness(SymMatrix),
    IterationLimit,
}

/// One iteration of the walk: the vertex visited, `<A, P>` there, and the
/// pivot taken from it (absent on the final iteration).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub iteration: usize,
    pub vertex: SymMatrix,
    pub objective: Rational,
    pub pivot_index: Option<usize>,
    pub pivot: Option<SymMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkReport {
    pub certificate: Certificate,
    /// Iterations performed, counting from 1.
    pub iterations: usize,
    /// Seed of the run that produced the certificate.
    pub seed: u64,
    pub trace: Vec<TraceEvent>,
}

/// The vertex `Q_{A_n} / 2`.
pub fn initial_vertex(n: usize) -> Result<PerfectVertex> {
    make_vertex(&gram_an(n)?)
}

/// Picks one of `candidates` (indices into the vertex's dual rays, all with
/// `<A, R> < 0`).
pub fn select_pivot<G: Rng>(
    a: &SymMatrix,
    vertex: &PerfectVertex,
    candidates: &[usize],
    rule: PivotRule,
    rng: &mut G,
) -> Result<usize> {
    if candidates.is_empty() {
        return Err(Error::NoCandidates);
    }
    let rays = vertex.dual_rays();
    match rule {
        PivotRule::FirstIndex => Ok(*candidates.iter().min().expect("nonempty")),
        PivotRule::Random => Ok(candidates[rng.gen_range(0..candidates.len())]),
        PivotRule::NormalizedGreedy => {
            // <A,R> < 0 throughout, so a larger <A,R>^2 / <R,R> is a more
            // negative normalized value
            let score = |i: usize| {
                let ip = sym_inner(a, &rays[i]).expect("same dimension");
                (&ip * &ip) / rays[i].norm_sq()
            };
            let best = candidates
                .iter()
                .map(|&i| (score(i), i))
                .max_by(|(s1, i1), (s2, i2)| {
                    s1.cmp(s2)
                        .then_with(|| rays[*i2].entries().cmp(rays[*i1].entries()))
                })
                .expect("nonempty");
            Ok(best.1)
        }
    }
}

/// The neighbour `N = P + lambda R` of `vertex` along the dual ray `r`.
pub fn contiguous_vertex(vertex: &PerfectVertex, r: &SymMatrix) -> Result<PerfectVertex> {
    let p = vertex.matrix();
    if is_copositive(r) {
        return Err(Error::CopositiveDirection);
    }
    let mut l = Rational::zero();
    let mut u = Rational::one();
    let mut below = None;
    for _ in 0..MAX_SEARCH_ROUNDS {
        let q = p.add_scaled(&u, r)?;
        if !is_strictly_copositive(&q) {
            u = (&l + &u) / int(2);
            continue;
        }
        let s = enumerate_below(&q, &int(1), true)?;
        if s.is_empty() {
            l = u.clone();
            u *= int(2);
            continue;
        }
        below = Some(s);
        break;
    }
    let s = below.ok_or(Error::SearchLimit(MAX_SEARCH_ROUNDS))?;
    let lambda = s
        .iter()
        .map(|v| {
            let rv = quad_form(r, v).expect("same dimension");
            (int(1) - quad_form(p, v).expect("same dimension")) / rv
        })
        .min()
        .expect("nonempty");
    if !lambda.is_positive() {
        return Err(Error::EdgeContract(format!("step length {lambda} is not positive")));
    }
    let n = p.add_scaled(&lambda, r)?;
    let (min, min_vectors) = copositive_minimum(&n)?;
    if !min.is_one() {
        return Err(Error::EdgeContract(format!("minC(N) = {min}, expected 1")));
    }
    if min_vectors.iter().all(|v| vertex.min_vectors().binary_search(v).is_ok()) {
        return Err(Error::EdgeContract("MinC(N) is contained in MinC(P)".into()));
    }
    vertex_from_parts(n, min_vectors, DEFAULT_RAY_LIMIT)
}

/// Runs the walk for `A` and returns a certificate for `A in CP` or
/// `A not in CP`, or gives up after `cfg.max_iterations`.
pub fn factorize(a: &SymMatrix, cfg: &WalkConfig) -> Result<WalkReport> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut vertex = initial_vertex(a.dim())?;
    let mut trace = Vec::new();
    for iteration in 1..=cfg.max_iterations {
        let objective = sym_inner(vertex.matrix(), a)?;
        let mut event = TraceEvent {
            iteration,
            vertex: vertex.matrix().clone(),
            objective: objective.clone(),
            pivot_index: None,
            pivot: None,
        };
        let done = |certificate, mut trace: Vec<TraceEvent>, event| {
            if cfg.emit_trace {
                trace.push(event);
            }
            Ok(WalkReport {
                certificate,
                iterations: iteration,
                seed: cfg.rng_seed,
                trace,
            })
        };
        if objective.is_negative() {
            return done(Certificate::Witness(vertex.matrix().clone()), trace, event);
        }
        let candidates = match membership(a, &vertex)? {
            Membership::Member(f) => {
                let f = caratheodory_reduce(&f)?.sorted();
                return done(Certificate::Factorization(f), trace, event);
            }
            Membership::Violations(c) => c,
        };
        let idx = select_pivot(a, &vertex, &candidates, cfg.pivot_rule, &mut rng)?;
        let r = vertex.dual_rays()[idx].clone();
        event.pivot_index = Some(idx);
        event.pivot = Some(r.clone());
        if is_copositive(&r) {
            return done(Certificate::Witness(r), trace, event);
        }
        let next = contiguous_vertex(&vertex, &r)?;
        if cfg.emit_trace {
            trace.push(event);
        }
        vertex = next;
    }
    Ok(WalkReport {
        certificate: Certificate::IterationLimit,
        iterations: cfg.max_iterations,
        seed: cfg.rng_seed,
        trace,
    })
}

/// Retries with seeds `cfg.rng_seed, cfg.rng_seed + 1, ..` (for `attempts`
/// runs in total) until a run ends with a certificate.
pub fn factorize_with_restarts(a: &SymMatrix, cfg: &WalkConfig, attempts: usize) -> Result<WalkReport> {
    let mut last = None;
    for k in 0..attempts.max(1) {
        let run = WalkConfig {
            rng_seed: cfg.rng_seed.wrapping_add(k as u64),
            ..cfg.clone()
        };
        let report = factorize(a, &run)?;
        if report.certificate != Certificate::IterationLimit {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.expect("at least one attempt"))
}

/// Exact check of `A = sum alpha_i v_i v_i^T` with nonnegative data.
pub fn verify_factorization(a: &SymMatrix, f: &Factorization) -> bool {
    f.verify(a)
}

/// `W` is copositive and `<W, A> < 0`.
pub fn verify_witness(a: &SymMatrix, w: &SymMatrix) -> bool {
    a.dim() == w.dim() && sym_inner(w, a).is_ok_and(|v| v.is_negative()) && is_copositive(w)
}

/// The matrix `P` in the frame `2R` used for hand computation: `2P`.
pub fn doubled_frame(p: &SymMatrix) -> SymMatrix {
    p.scale(&int(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, rank1, LatticeVector};

    fn lv(c: &[u64]) -> LatticeVector {
        LatticeVector::from_u64s(c)
    }

    fn m(rows: &[&[i64]]) -> SymMatrix {
        SymMatrix::from_integers(rows).unwrap()
    }

    fn run(a: &SymMatrix) -> WalkReport {
        let cfg = WalkConfig {
            emit_trace: true,
            ..WalkConfig::default()
        };
        factorize(a, &cfg).unwrap()
    }

    #[test]
    fn initial_vertices() {
        assert_eq!(initial_vertex(1).unwrap().matrix(), &m(&[&[1]]));
        assert_eq!(initial_vertex(1).unwrap().min_vectors(), &[lv(&[1])]);
        let v = initial_vertex(2).unwrap();
        assert_eq!(v.matrix(), &SymMatrix::from_rows(vec![vec![int(1), frac(-1, 2)], vec![frac(-1, 2), int(1)]]).unwrap());
        assert_eq!(v.min_vectors().len(), 3);
        assert_eq!(initial_vertex(3).unwrap().min_vectors().len(), 6);
    }

    #[test]
    fn diagonal_finishes_immediately() {
        let a = m(&[&[3, 0], &[0, 5]]);
        let report = run(&a);
        assert_eq!(report.iterations, 1);
        match report.certificate {
            Certificate::Factorization(f) => assert!(verify_factorization(&a, &f)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_offdiagonal_gives_swap_witness() {
        let a = m(&[&[1, -1], &[-1, 4]]);
        let report = run(&a);
        assert_eq!(report.iterations, 1);
        assert_eq!(report.certificate, Certificate::Witness(m(&[&[0, 1], &[1, 0]])));
    }

    #[test]
    fn one_dimensional() {
        let a = m(&[&[7]]);
        match run(&a).certificate {
            Certificate::Factorization(f) => assert_eq!(f.terms(), &[(int(7), lv(&[1]))]),
            other => panic!("{other:?}"),
        }
        assert_eq!(run(&m(&[&[-2]])).certificate, Certificate::Witness(m(&[&[1]])));
    }

    #[test]
    fn first_pivot_in_two_dimensions() {
        // the unique violated ray at Q_{A_2}/2 for A = (1,2)(1,2)^T
        let a = rank1(&lv(&[1, 2]));
        let v = initial_vertex(2).unwrap();
        let Membership::Violations(c) = membership(&a, &v).unwrap() else {
            panic!("A is not in the initial cone");
        };
        assert_eq!(c.len(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let idx = select_pivot(&a, &v, &c, PivotRule::NormalizedGreedy, &mut rng).unwrap();
        let n = contiguous_vertex(&v, &v.dual_rays()[idx]).unwrap();
        assert_eq!(doubled_frame(n.matrix()), m(&[&[6, -3], &[-3, 2]]));
        let a = rank1(&lv(&[2, 1]));
        let Membership::Violations(c) = membership(&a, &v).unwrap() else {
            panic!("A is not in the initial cone");
        };
        let n = contiguous_vertex(&v, &v.dual_rays()[c[0]]).unwrap();
        assert_eq!(doubled_frame(n.matrix()), m(&[&[2, -3], &[-3, 6]]));
    }

    #[test]
    fn copositive_direction_is_rejected() {
        let v = initial_vertex(2).unwrap();
        assert_eq!(contiguous_vertex(&v, &m(&[&[0, 1], &[1, 0]])).unwrap_err(), Error::CopositiveDirection);
    }

    #[test]
    fn pivot_rules() {
        let v = initial_vertex(3).unwrap();
        let a = m(&[&[1, -1, 0], &[-1, 1, -1], &[0, -1, 1]]);
        let Membership::Violations(c) = membership(&a, &v).unwrap() else {
            panic!("A has negative entries");
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(select_pivot(&a, &v, &c, PivotRule::FirstIndex, &mut rng).unwrap(), *c.iter().min().unwrap());
        for _ in 0..10 {
            assert!(c.contains(&select_pivot(&a, &v, &c, PivotRule::Random, &mut rng).unwrap()));
        }
        assert_eq!(select_pivot(&a, &v, &c[..1], PivotRule::NormalizedGreedy, &mut rng).unwrap(), c[0]);
        assert_eq!(select_pivot(&a, &v, &[], PivotRule::FirstIndex, &mut rng), Err(Error::NoCandidates));
    }

    #[test]
    fn objective_decreases_along_trace() {
        let a = rank1(&lv(&[5, 3])).add(&rank1(&lv(&[1, 4]))).unwrap();
        let report = run(&a);
        match &report.certificate {
            Certificate::Factorization(f) => assert!(verify_factorization(&a, f)),
            other => panic!("{other:?}"),
        }
        assert_eq!(report.trace.len(), report.iterations);
        for w in report.trace.windows(2) {
            assert!(w[1].objective < w[0].objective);
        }
    }

    #[test]
    fn zero_iterations_rejected() {
        let cfg = WalkConfig {
            max_iterations: 0,
            ..WalkConfig::default()
        };
        assert!(factorize(&m(&[&[1]]), &cfg).is_err());
    }

    #[test]
    fn iteration_limit_is_reported() {
        let a = rank1(&lv(&[99, 70]));
        let cfg = WalkConfig {
            max_iterations: 3,
            ..WalkConfig::default()
        };
        let report = factorize(&a, &cfg).unwrap();
        assert_eq!(report.certificate, Certificate::IterationLimit);
        assert_eq!(report.iterations, 3);
    }

    #[test]
    fn witness_checks() {
        let a = m(&[&[1, -1], &[-1, 1]]);
        assert!(verify_witness(&a, &m(&[&[0, 1], &[1, 0]])));
        // A is completely positive here, so no witness can exist
        let cp = m(&[&[2, 1], &[1, 2]]);
        assert!(!verify_witness(&cp, &m(&[&[0, 1], &[1, 0]])));
        assert!(!verify_witness(&cp, &m(&[&[1, -2], &[-2, 1]])));
    }
}
