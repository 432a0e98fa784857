mod common;

use common::{dot, lp_brute_force, polyhedron_vertices, product_surface_min, vertex_min};
use condgrad::certify::{self, ReferenceMethod};
use condgrad::linalg::{self, Matrix};
use condgrad::lp::{self, LpOutcome, StandardFormLp};
use condgrad::objectives::{LogSumExp, Quadratic, RegularizedNorm, SqrtQuadratic};
use condgrad::oracles::{self, Unboundedness};
use condgrad::solver::{self, SolverConfig, Termination};
use condgrad::{DynObjective64, Matrix64, Objective, OracleOutcome, Set64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
enum SetSpec {
    Simplex(usize),
    Product(usize),
    Polyhedron(usize, Vec<f64>, Vec<f64>),
    Monotone(usize),
    Orthant(usize),
}

impl SetSpec {
    fn build(&self) -> Set64 {
        match self {
            Self::Simplex(n) => Set64::halfspace_simplex(*n),
            Self::Product(n) => Set64::product_set(*n),
            Self::Polyhedron(n, a, b) => Set64::polyhedron(
                Matrix::from_row_major(b.len(), *n, a.clone()).unwrap(),
                b.clone(),
            ),
            Self::Monotone(n) => Set64::monotone_cone(*n),
            Self::Orthant(n) => Set64::orthant(*n),
        }
        .unwrap()
    }
}

fn polyhedron_spec(n: usize) -> impl Strategy<Value = SetSpec> {
    (1..=3usize).prop_flat_map(move |m| {
        (
            prop::collection::vec(0.1f64..5.0, m * n),
            prop::collection::vec(0.1f64..5.0, m),
        )
            .prop_map(move |(a, b)| SetSpec::Polyhedron(n, a, b))
    })
}

fn set_spec(max_n: usize) -> impl Strategy<Value = SetSpec> {
    (1..=max_n).prop_flat_map(|n| {
        prop_oneof![
            Just(SetSpec::Simplex(n)),
            Just(SetSpec::Product(n)),
            polyhedron_spec(n),
            Just(SetSpec::Monotone(n)),
            Just(SetSpec::Orthant(n)),
        ]
    })
}

fn positive_vec(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.1f64..10.0, n)
}

/// Minimum of `cᵀx` over the set computed without the library oracles.
fn brute_force_min(set: &Set64, c: &[f64]) -> f64 {
    let n = c.len();
    match set {
        Set64::HalfspaceSimplex { .. } => {
            let ones = Matrix::from_row_major(1, n, vec![1.0; n]).unwrap();
            vertex_min(c, &polyhedron_vertices(&ones, &[1.0]))
        }
        Set64::ProductSet { .. } => product_surface_min(c),
        Set64::Polyhedron(p) => vertex_min(c, &polyhedron_vertices(p.matrix(), p.rhs())),
        Set64::MonotoneNonnegCone { .. } | Set64::NonnegOrthant { .. } => 0.0,
    }
}

#[derive(Debug, Clone)]
enum ObjectiveSpec {
    Quadratic(Vec<f64>, Vec<f64>),
    RegularizedNorm(Vec<f64>),
    Sqrt(Vec<f64>, f64),
    LogSumExp(usize),
}

impl ObjectiveSpec {
    fn build(&self) -> DynObjective64 {
        match self {
            Self::Quadratic(a, d) => {
                let n = a.len();
                let mut q = vec![0.0; n * n];
                for i in 0..n {
                    q[i * n + i] = d[i];
                    if i + 1 < n {
                        q[i * n + i + 1] = 0.25 * d[i].min(d[i + 1]);
                    }
                }
                Box::new(
                    Quadratic::new(a.clone(), Matrix::from_row_major(n, n, q).unwrap()).unwrap(),
                )
            }
            Self::RegularizedNorm(a) => {
                Box::new(RegularizedNorm::new(a.clone(), 1.0, 0.1).unwrap())
            }
            Self::Sqrt(a, beta) => Box::new(SqrtQuadratic::new(a.clone(), *beta).unwrap()),
            Self::LogSumExp(n) => Box::new(LogSumExp::new(*n).unwrap()),
        }
    }
}

fn objective_spec(n: usize) -> impl Strategy<Value = ObjectiveSpec> {
    prop_oneof![
        (positive_vec(n), prop::collection::vec(0.5f64..3.0, n))
            .prop_map(|(a, d)| ObjectiveSpec::Quadratic(a, d)),
        positive_vec(n).prop_map(ObjectiveSpec::RegularizedNorm),
        (positive_vec(n), 0.1f64..2.0).prop_map(|(a, b)| ObjectiveSpec::Sqrt(a, b)),
        Just(ObjectiveSpec::LogSumExp(n)),
    ]
}

fn problem() -> impl Strategy<Value = (ObjectiveSpec, SetSpec, u64)> {
    set_spec(4).prop_flat_map(|s| {
        let n = s.build().dim();
        (objective_spec(n), Just(s), any::<u64>())
    })
}

fn start_point(set: &Set64, seed: u64) -> Vec<f64> {
    set.sample_point(&mut ChaCha8Rng::seed_from_u64(seed), 10.0)
}

/// The oracle value relative to `x` plus `cᵀx`, i.e. the absolute minimum.
fn oracle_min(set: &Set64, c: &[f64]) -> f64 {
    let x = vec![0.0; c.len()];
    oracles::lo_oracle(set, c, &x)
        .unwrap()
        .value()
        .expect("positive cost has an attained minimum")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_matches_brute_force(spec in set_spec(5), seed in any::<u64>()) {
        let set = spec.build();
        let c: Vec<f64> = {
            use rand::Rng;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..set.dim()).map(|_| rng.gen_range(0.1..10.0)).collect()
        };
        let got = oracle_min(&set, &c);
        let want = brute_force_min(&set, &c);
        prop_assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "{got} vs {want}");
        let out = oracles::lo_oracle(&set, &c, &vec![0.0; c.len()]).unwrap();
        prop_assert!(set.contains(out.point().unwrap()));
    }

    #[test]
    fn translation_identity(spec in set_spec(5), seed in any::<u64>()) {
        let set = spec.build();
        let n = set.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c: Vec<f64> = {
            use rand::Rng;
            (0..n).map(|_| rng.gen_range(0.1..10.0)).collect()
        };
        let x = set.sample_point(&mut rng, 10.0);
        let at_x = oracles::lo_oracle(&set, &c, &x).unwrap().value().unwrap();
        let at_0 = oracle_min(&set, &c);
        let want = at_0 - dot(&c, &x);
        prop_assert!((at_x - want).abs() <= 1e-12 * want.abs().max(1.0));
    }

    #[test]
    fn unbounded_certificates_are_valid(
        spec in set_spec(5),
        seed in any::<u64>(),
        base in positive_vec(5),
        pos in 0usize..5,
    ) {
        let set = spec.build();
        let n = set.dim();
        let pos = pos % n;
        let mut c = base[..n].to_vec();
        // Make the prefix sum through `pos` negative, which also makes `c[pos]`
        // negative; outside the dual of every recession cone used here.
        let prefix: f64 = c[..pos].iter().sum();
        c[pos] = -prefix - 1.0;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = set.sample_point(&mut rng, 10.0);
        match oracles::lo_oracle(&set, &c, &x).unwrap() {
            OracleOutcome::Unbounded { direction, reason } => {
                prop_assert_eq!(reason, Unboundedness::DescentRay);
                prop_assert!(dot(&c, &direction) < 0.0);
                for _ in 0..5 {
                    let y = set.sample_point(&mut rng, 10.0);
                    for t in [1.0, 10.0, 100.0] {
                        prop_assert!(set.contains(&linalg::add_scaled(&y, t, &direction)));
                    }
                }
            }
            other => prop_assert!(false, "expected a certificate, got {:?}", other),
        }
    }

    #[test]
    fn lp_matches_basis_enumeration(
        (m, n) in (1..=4usize).prop_flat_map(|m| (Just(m), m..=6usize)),
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<f64> = (0..m * n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let a = Matrix64::from_row_major(m, n, a).unwrap();
        let witness: Vec<f64> = (0..n)
            .map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..2.0) })
            .collect();
        let b = a.mul_vec(&witness);
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..5.0)).collect();
        let lp = StandardFormLp::new(a.clone(), b.clone(), c.clone()).unwrap();
        match lp::solve_lp(&lp).unwrap() {
            LpOutcome::Optimal { x, value } => {
                prop_assert!((value - dot(&c, &x)).abs() <= 1e-10 * value.abs().max(1.0));
                prop_assert!(x.iter().all(|&v| v >= -1e-9));
                let scale = b.iter().fold(1.0f64, |s, v| s.max(v.abs()));
                for (ax, bi) in a.mul_vec(&x).iter().zip(&b) {
                    prop_assert!((ax - bi).abs() <= 1e-8 * scale);
                }
                let brute = lp_brute_force(&a, &b, &c).expect("feasible by construction");
                prop_assert!((value - brute).abs() <= 1e-8 * brute.abs().max(1.0), "{value} vs {brute}");
            }
            LpOutcome::Unbounded { ray } => {
                prop_assert!(ray.iter().all(|&v| v >= 0.0));
                prop_assert!(dot(&c, &ray) < 0.0);
                let scale = linalg::norm(&ray).max(1.0);
                for v in a.mul_vec(&ray) {
                    prop_assert!(v.abs() <= 1e-9 * scale);
                }
            }
            LpOutcome::Infeasible => prop_assert!(false, "feasible by construction"),
        }
    }

    #[test]
    fn solver_invariants((obj, spec, seed) in problem()) {
        let f = obj.build();
        let set = spec.build();
        let x0 = start_point(&set, seed);
        let config = SolverConfig { max_iterations: 300, ..SolverConfig::default() };
        let trace = solver::solve(&f, &set, &x0, &config).unwrap();
        let unbounded = matches!(trace.termination, Termination::OracleUnbounded { .. });
        prop_assert!(!unbounded);
        let lip = f.lipschitz();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for (i, r) in trace.records.iter().enumerate() {
            prop_assert_eq!(r.k, i);
            prop_assert!(r.gap <= 0.0);
            if r.gap < 0.0 {
                prop_assert!(r.lambda > 0.0 && r.lambda <= 1.0);
                prop_assert!(r.p != r.x);
            }
            prop_assert!(set.contains(&r.x) && set.contains(&r.p));
            let dist_sq = r.dist_px * r.dist_px;
            for _ in 0..20 {
                use rand::Rng;
                let t: f64 = rng.gen_range(0.0..=1.0);
                let y = linalg::lerp(&r.x, &r.p, t);
                let bound = r.f_value + r.gap * t + 0.5 * lip * dist_sq * t * t;
                prop_assert!(f.value(&y) <= bound + 1e-12 * r.f_value.abs().max(1.0));
            }
        }
        prop_assert!(solver::check_sufficient_decrease(&trace));
        for w in trace.records.windows(2) {
            prop_assert!(w[1].f_value <= w[0].f_value + 1e-12);
        }
        if trace.termination == Termination::GapBelowTolerance {
            let last = trace.last().unwrap();
            let residual = certify::stationarity_residual(&f, &set, &last.x).unwrap();
            prop_assert!(residual <= config.gap_tolerance);
        }
        let again = solver::solve(&f, &set, &x0, &config).unwrap();
        prop_assert_eq!(again, trace);
    }

    #[test]
    fn rate_certificate_on_cone_problems(
        obj in (1..=4usize).prop_flat_map(objective_spec),
        monotone in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let f = obj.build();
        let n = f.dim();
        let set = if monotone { Set64::monotone_cone(n) } else { Set64::orthant(n) }.unwrap();
        let x0 = start_point(&set, seed);
        let trace = solver::solve(&f, &set, &x0, &SolverConfig::default()).unwrap();
        let reference = certify::reference_solution(&f, &set, ReferenceMethod::Analytic).unwrap();
        let a: Vec<f64> = trace.records.iter().map(|r| r.f_value - reference.f_star).collect();
        for w in a.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-12);
        }
        if let Ok(cert) = certify::rate_constants(&trace, f.lipschitz()) {
            prop_assert!(cert.sigma > 0.0 && cert.gamma > 0.0 && cert.big_gamma > 0.0);
            let cert = certify::verify_rate(&trace, reference.f_star, &cert).unwrap();
            prop_assert!(cert.rate_ok());
        }
    }

    #[test]
    fn gradients_match_finite_differences((obj, spec, seed) in problem()) {
        let f = obj.build();
        let set = spec.build();
        let x = start_point(&set, seed);
        prop_assert!(condgrad::objectives::gradient_relative_error(&f, &x) <= 1e-6);
        prop_assert!(f.gradient(&x).iter().all(|&g| g > 0.0));
    }

    #[test]
    fn strong_convexity_secant((obj, spec, seed) in problem()) {
        let f = obj.build();
        let modulus = f.strong_convexity();
        prop_assume!(modulus > 0.0);
        let set = spec.build();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..50 {
            let x = set.sample_point(&mut rng, 10.0);
            let y = set.sample_point(&mut rng, 10.0);
            let lower = f.value(&x)
                + dot(&f.gradient(&x), &linalg::sub(&y, &x))
                + 0.5 * modulus * linalg::dist_sq(&x, &y);
            prop_assert!(f.value(&y) >= lower - 1e-10 * f.value(&y).abs().max(1.0));
        }
    }

    #[test]
    fn oracle_outputs_stay_bounded((obj, spec, seed) in problem()) {
        let f = obj.build();
        let set = spec.build();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let norms: Vec<f64> = (0..200)
            .map(|_| {
                let x = set.sample_point(&mut rng, 10.0);
                let out = oracles::lo_oracle(&set, &f.gradient(&x), &x).unwrap();
                linalg::norm(out.point().expect("gradient in the dual interior"))
            })
            .collect();
        let first = norms[..100].iter().fold(0.0f64, |m, &v| m.max(v));
        let all = norms.iter().fold(0.0f64, |m, &v| m.max(v));
        prop_assert!(all.is_finite());
        // Sample maxima of a bounded output can still jump when a rare corner
        // of the region is first hit; growth beyond 10x would signal no bound.
        prop_assert!(all <= 10.0 * first + 1e-12);
    }

    #[test]
    fn dual_margin_ignores_generator_scale(spec in set_spec(5), scale in 0.01f64..100.0) {
        let set = spec.build();
        for g in set.recession_generators() {
            let unit = linalg::normalized(&g).unwrap();
            let scaled = linalg::normalized(&linalg::scale(&g, scale)).unwrap();
            for (u, s) in unit.iter().zip(&scaled) {
                prop_assert!((u - s).abs() <= 1e-15);
            }
        }
    }
}

#[test]
fn product_set_zero_cost_is_not_attained() {
    let set = Set64::product_set(3).unwrap();
    let c = [1.0, 0.0, 2.0];
    match oracles::lo_oracle(&set, &c, &[1.0, 1.0, 1.0]).unwrap() {
        OracleOutcome::Unbounded { direction, reason } => {
            assert_eq!(reason, Unboundedness::InfimumNotAttained);
            assert_eq!(dot(&c, &direction), 0.0);
            for t in [1.0, 10.0, 100.0] {
                assert!(set.contains(&linalg::add_scaled(&[1.0, 1.0, 1.0], t, &direction)));
            }
        }
        other => panic!("expected non-attainment, got {other:?}"),
    }
}
