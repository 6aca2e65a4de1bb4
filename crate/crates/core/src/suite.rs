//! Seeded randomized suites over the exact identities and the structural
//! statements about representations. Every suite is deterministic in its
//! configuration; cases are generated from `ChaCha8` seeded per case.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactla::{Mat, Scalar, Vector};
use crate::fibrep::{
    binomial_plan, check_mn_equivalence, check_sum_identities, construct, construct_alternating,
    injectivity_check, injectivity_sides, invariant_subspace_witness, norm_bound_check_with,
    range_check, recursion_iterates, shifted_representation, uniqueness_check, verify,
    ConstructOutcome, ExtensionPolicy, Part,
};
use crate::frames::{
    check_kernel_identity, check_sf_identity, check_union_frame, CheckResult, Witness,
};
use crate::sequences::{DerivedSpec, RandomKind, SequenceWindow, Sign, TailPolicy};

/// How many failures a summary keeps verbatim.
const KEPT_FAILURES: usize = 10;

/// A single negated coefficient in the closed form for `f_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Mutation {
    pub n: usize,
    pub term: usize,
    pub part: Part,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SuiteConfig {
    /// Number of random cases for the identity suite; the other suites scale from it.
    pub seeds: u64,
    pub base_seed: u64,
    pub max_n: usize,
    pub max_dim: usize,
    pub tolerance: f64,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seeds: 200,
            base_seed: 0,
            max_n: 10,
            max_dim: 10,
            tolerance: 1e-9,
            mutation: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SuiteFailure {
    pub seed: u64,
    pub case: String,
    pub check: CheckResult,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SuiteSummary {
    pub name: String,
    pub cases: usize,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub counters: BTreeMap<String, usize>,
    pub failures: Vec<SuiteFailure>,
}

impl SuiteSummary {
    fn new(name: &str) -> Self {
        SuiteSummary {
            name: name.to_string(),
            cases: 0,
            checks: 0,
            passed: 0,
            failed: 0,
            skipped: 0,
            counters: BTreeMap::new(),
            failures: Vec::new(),
        }
    }

    fn record(&mut self, seed: u64, case: &str, check: CheckResult) {
        self.checks += 1;
        if check.is_pass() {
            self.passed += 1;
        } else if check.is_skipped() {
            self.skipped += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(SuiteFailure {
                    seed,
                    case: case.to_string(),
                    check,
                });
            }
        }
    }

    fn count(&mut self, key: &str) {
        *self.counters.entry(key.to_string()).or_default() += 1;
    }

    pub fn counter(&self, key: &str) -> usize {
        self.counters.get(key).copied().unwrap_or(0)
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

fn rational(rng: &mut ChaCha8Rng, range: i64) -> Scalar {
    Scalar::ratio(rng.gen_range(-range..=range), rng.gen_range(1..=2))
}

fn random_vector(rng: &mut ChaCha8Rng, d: usize) -> Vector {
    Vector::new((0..d).map(|_| rational(rng, 5)).collect())
}

fn random_matrix(rng: &mut ChaCha8Rng, d: usize, range: i64) -> Mat {
    Mat::from_rows(
        (0..d)
            .map(|_| (0..d).map(|_| rational(rng, range)).collect())
            .collect(),
    )
}

fn combination(rng: &mut ChaCha8Rng, w: &SequenceWindow) -> Vector {
    let mut g = Vector::zeros(w.dim);
    for f in &w.vectors {
        g.axpy(&Scalar::from_int(rng.gen_range(-2..=2)), f);
    }
    g
}

fn failure(name: &str, note: impl Into<String>) -> CheckResult {
    CheckResult::fail_exact(name, 0.0, Witness::Index(0)).with_note(note)
}

/// Random window for the identity suite: `3 <= N <= max_n`, `1 <= d <= max_dim`.
pub fn identity_case(cfg: &SuiteConfig, seed: u64) -> Result<SequenceWindow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=cfg.max_n.max(3));
    let d = rng.gen_range(1..=cfg.max_dim.max(1));
    let kind = if n <= d && rng.gen_bool(0.5) {
        RandomKind::Independent
    } else {
        RandomKind::Dependent
    };
    let inner: u64 = rng.gen();
    if rng.gen_bool(0.3) {
        SequenceWindow::random_complex(n, d, inner, kind)
    } else {
        SequenceWindow::random(n, d, inner, kind)
    }
}

/// Identities on random windows: the alternating and span identities and
/// their independence consequences, the frame-operator identity, the
/// kernel identity (hypothesis-gated), the `M u N` operator identity, and
/// for every constructed representation, verification, the `M`/`N`
/// equivalence, the range statement and the invariant-subspace witness.
pub fn identity_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("identities");
    for seed in cfg.base_seed..cfg.base_seed + cfg.seeds {
        let w = identity_case(cfg, seed)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let case = w.label.clone();
        s.cases += 1;
        for r in check_sum_identities(&w)? {
            s.record(seed, &case, r);
        }
        let f = random_vector(&mut rng, w.dim);
        s.record(seed, &case, check_sf_identity(&w, &f)?);
        s.record(seed, &case, check_kernel_identity(&w)?);
        let alpha = Scalar::from_int(rng.gen_range(1..=3));
        let beta = rational(&mut rng, 3);
        s.record(
            seed,
            &case,
            check_union_frame(&w, &DerivedSpec::new(alpha, beta, Sign::Plus))?,
        );

        let unknown = w.with_tail(TailPolicy::Unknown);
        let sums_independent =
            crate::exactla::rank(&unknown.derive(&DerivedSpec::sum())?.synthesis()) == w.len() - 1;
        match construct(&w, &ExtensionPolicy::Zero)? {
            ConstructOutcome::Operator(t) => {
                s.count("represented");
                s.record(seed, &case, verify(&w, &t)?);
                s.record(seed, &case, check_mn_equivalence(&w, &t)?);
                s.record(seed, &case, range_check(&w, &t)?);
                if let Some(v) = invariant_subspace_witness(&w, &t)? {
                    let r = if v.contains_window {
                        CheckResult::pass_exact("invariant_subspace")
                    } else {
                        failure(
                            "invariant_subspace",
                            format!("V_{} misses a window vector", v.l),
                        )
                    };
                    s.record(seed, &case, r);
                }
            }
            ConstructOutcome::Inconsistent(cert) => {
                s.count("certificates");
                let r = if !cert.holds_for(&w) {
                    failure("certificate", "witness does not satisfy its equations")
                } else if sums_independent {
                    failure("certificate", "independent sums but no representation")
                } else {
                    CheckResult::pass_exact("certificate")
                };
                s.record(seed, &case, r);
            }
        }
    }
    Ok(s)
}

/// Random `(T, f_1, f_2)` with `d <= max_dim`.
pub fn closed_form_case(seed: u64, max_dim: usize) -> (Mat, Vector, Vector) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(1..=max_dim.max(1));
    let t = random_matrix(&mut rng, d, 3);
    (t, random_vector(&mut rng, d), random_vector(&mut rng, d))
}

/// First `(seed, n)` where the (possibly mutated) closed form differs from
/// the recursion, over `cases` random instances and `4 <= n <= max_n`.
pub fn closed_form_mismatch(
    base_seed: u64,
    cases: u64,
    max_dim: usize,
    max_n: usize,
    mutation: Option<Mutation>,
) -> Result<Option<(u64, usize)>> {
    for seed in base_seed..base_seed + cases {
        let (t, f1, f2) = closed_form_case(seed, max_dim);
        let rec = recursion_iterates(&t, &f1, &f2, max_n)?;
        for n in 4..=max_n {
            if mutation.is_some_and(|m| m.n != n) {
                continue;
            }
            let mut plan = binomial_plan(n)?;
            if let Some(m) = mutation {
                plan = plan.with_flipped_sign(m.term, m.part);
            }
            if plan.evaluate(&t, &f1, &f2) != rec[n - 1] {
                return Ok(Some((seed, n)));
            }
        }
    }
    Ok(None)
}

/// Closed form against the recursion for `4 <= n <= 16` on `seeds / 2`
/// random instances with `d <= min(6, max_dim)`.
pub fn closed_form_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("closed_form");
    let cases = (cfg.seeds / 2).max(1);
    let max_dim = cfg.max_dim.clamp(1, 6);
    for seed in cfg.base_seed..cfg.base_seed + cases {
        s.cases += 1;
        let (t, f1, f2) = closed_form_case(seed, max_dim);
        let rec = recursion_iterates(&t, &f1, &f2, 16)?;
        for n in 4..=16 {
            let mut plan = binomial_plan(n)?;
            if let Some(m) = cfg.mutation.filter(|m| m.n == n) {
                plan = plan.with_flipped_sign(m.term, m.part);
            }
            let diff = plan.evaluate(&t, &f1, &f2).sub(&rec[n - 1]);
            let r = if diff.is_zero() {
                CheckResult::pass_exact("closed_form")
            } else {
                CheckResult::fail_exact("closed_form", diff.max_abs(), Witness::Index(n))
            };
            s.record(seed, &format!("d={} n={n}", t.rows()), r);
        }
    }
    Ok(s)
}

/// Every single-coefficient sign flip for `4 <= n <= 16`, each of which
/// must be caught by the closed-form comparison.
pub fn mutation_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("mutations");
    let cases = (cfg.seeds / 2).max(1);
    let max_dim = cfg.max_dim.clamp(1, 6);
    for n in 4..=16 {
        let plan = binomial_plan(n)?;
        for (term, part) in plan.nonzero_coefficients() {
            s.cases += 1;
            let m = Mutation { n, term, part };
            let r = match closed_form_mismatch(cfg.base_seed, cases, max_dim, 16, Some(m))? {
                Some(_) => CheckResult::pass_exact("mutation_detected"),
                None => failure(
                    "mutation_detected",
                    format!("flip at n={n} term={term} {part:?} undetected"),
                ),
            };
            s.record(n as u64, &format!("n={n} term={term} {part:?}"), r);
        }
    }
    Ok(s)
}

/// Norm-bound instances: mostly independent windows with `N = d` (so the
/// sums are complete and the kernel inclusion holds), the rest dependent.
pub fn norm_bound_case(seed: u64) -> Result<SequenceWindow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(3..=6);
    let inner: u64 = rng.gen();
    if rng.gen_bool(0.75) {
        SequenceWindow::random(d, d, inner, RandomKind::Independent)
    } else {
        let n = rng.gen_range(d..=d + 3);
        SequenceWindow::random(n, d, inner, RandomKind::Dependent)
    }
}

pub fn norm_bound_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("norm_bound");
    for seed in cfg.base_seed..cfg.base_seed + cfg.seeds {
        s.cases += 1;
        let w = norm_bound_case(seed)?;
        let Some(t) = construct(&w, &ExtensionPolicy::Zero)?.operator() else {
            s.count("no_representation");
            continue;
        };
        let r = norm_bound_check_with(&w, &t, cfg.tolerance)?;
        if r.is_pass() || r.is_fail() {
            s.count("inclusion_holds");
        }
        s.record(seed, &w.label, r);
    }
    Ok(s)
}

/// Injectivity instances: windows generated by the recursion from a random
/// `T`, made singular in every other case.
pub fn injectivity_case(seed: u64) -> Result<SequenceWindow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(2..=5);
    let mut t = random_matrix(&mut rng, d, 2);
    if seed % 2 == 1 {
        // Column j becomes a combination of the others.
        let j = rng.gen_range(0..d);
        let mut col = Vector::zeros(d);
        for k in (0..d).filter(|&k| k != j) {
            col.axpy(&Scalar::from_int(rng.gen_range(-1..=1)), &t.column(k));
        }
        for i in 0..d {
            t[(i, j)] = col[i].clone();
        }
    }
    let f1 = random_vector(&mut rng, d);
    let f2 = random_vector(&mut rng, d);
    let vectors = recursion_iterates(&t, &f1, &f2, d + 3)?;
    SequenceWindow::new(
        d,
        vectors,
        TailPolicy::Zero,
        format!("orbit d={d} seed={seed}"),
    )
}

pub fn injectivity_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("injectivity");
    for seed in cfg.base_seed..cfg.base_seed + cfg.seeds {
        s.cases += 1;
        let w = injectivity_case(seed)?;
        let Some(t) = construct(&w, &ExtensionPolicy::Zero)?.operator() else {
            s.record(
                seed,
                &w.label,
                failure("injectivity", "orbit window has no representation"),
            );
            continue;
        };
        let (injective, _, _) = injectivity_sides(&w, &t)?;
        s.count(if injective {
            "injective"
        } else {
            "non_injective"
        });
        s.record(seed, &w.label, injectivity_check(&w, &t)?);
    }
    Ok(s)
}

/// Pairs of representations of one independent window: a pinned
/// construction against the family `S f_i = T f_i + (-1)^i g` with equal or
/// distinct `Tf_1`.
pub fn uniqueness_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("uniqueness");
    let pairs = (cfg.seeds / 2).max(1);
    for seed in cfg.base_seed..cfg.base_seed + pairs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(3..=6);
        let n = rng.gen_range(3..=d);
        let w = SequenceWindow::random(n, d, rng.gen(), RandomKind::Independent)?;
        let base = construct_alternating(&w)?;
        let g = combination(&mut rng, &w);
        let pinned = match construct(&w, &ExtensionPolicy::Pinned(g.clone()))? {
            ConstructOutcome::Operator(t) => t,
            ConstructOutcome::Inconsistent(_) => {
                s.record(
                    seed,
                    &w.label,
                    failure("uniqueness", "independent window without representation"),
                );
                continue;
            }
        };

        s.cases += 1;
        let same = shifted_representation(&w, &base, &base.tf1.sub(&g))?;
        let mut r = uniqueness_check(&w, &pinned, &same)?;
        if r.is_pass() && pinned.mat != same.mat {
            r = failure("uniqueness", "equal Tf1 but matrices differ");
        }
        if r.is_pass() {
            s.count("equal_pairs_identical");
        }
        s.record(seed, &w.label, r);

        s.cases += 1;
        let k = rng.gen_range(1..=n);
        let other = g.add(w.f(k));
        let distinct = shifted_representation(&w, &base, &base.tf1.sub(&other))?;
        let r = uniqueness_check(&w, &pinned, &distinct)?;
        if r.is_pass() {
            s.count("distinct_pairs_distinct");
        }
        s.record(seed, &w.label, r);
    }
    Ok(s)
}

/// All suites in a fixed order.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<SuiteSummary>> {
    Ok(vec![
        identity_suite(cfg)?,
        closed_form_suite(cfg)?,
        norm_bound_suite(cfg)?,
        injectivity_suite(cfg)?,
        uniqueness_suite(cfg)?,
    ])
}
