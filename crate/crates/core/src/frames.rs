//! Frame-theoretic analysis of windows: synthesis and frame operators, optimal
//! bounds, completeness and independence, kernels of synthesis maps, and
//! checks of the identities relating `F`, `M = {alpha f_n + beta f_{n+1}}` and
//! `N = {alpha f_n - beta f_{n+1}}`.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rref, KernelSpace, Mat, Scalar, Subspace, Vector};
use crate::sequences::{DerivedSpec, FloatWindow, SequenceWindow, Sign, TailPolicy};
use crate::spectral::{self, frame_bounds, SpectralSummary};

/// Relative slack for float inequality checks.
pub const FLOAT_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// A hypothesis of the checked statement does not hold; the witness shows why.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// A coefficient vector, e.g. a kernel element.
    Coefficients(Vector),
    /// A 1-based sequence index.
    Index(usize),
    /// A vector of the ambient space.
    Vector(Vector),
    /// A violated float inequality `lhs <= rhs`.
    Bound {
        lhs: f64,
        rhs: f64,
        relation: String,
    },
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CheckResult {
    pub name: String,
    pub outcome: Outcome,
    pub passed: bool,
    pub exact: bool,
    pub residual: f64,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl CheckResult {
    pub fn pass_exact(name: &str) -> Self {
        CheckResult::build(name, Outcome::Pass, true, 0.0, None)
    }

    pub fn fail_exact(name: &str, residual: f64, witness: Witness) -> Self {
        CheckResult::build(name, Outcome::Fail, true, residual, Some(witness))
    }

    pub fn pass_float(name: &str, residual: f64) -> Self {
        CheckResult::build(name, Outcome::Pass, false, residual, None)
    }

    pub fn fail_float(name: &str, residual: f64, witness: Witness) -> Self {
        CheckResult::build(name, Outcome::Fail, false, residual, Some(witness))
    }

    pub fn skipped(name: &str, witness: Witness, note: impl Into<String>) -> Self {
        CheckResult::build(name, Outcome::Skipped, true, 0.0, Some(witness)).with_note(note)
    }

    fn build(
        name: &str,
        outcome: Outcome,
        exact: bool,
        residual: f64,
        witness: Option<Witness>,
    ) -> Self {
        CheckResult {
            name: name.to_string(),
            outcome,
            passed: outcome == Outcome::Pass,
            exact,
            residual,
            witness,
            note: String::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn is_pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    pub fn is_skipped(&self) -> bool {
        self.outcome == Outcome::Skipped
    }

    /// Combines sub-checks: the first failure wins, otherwise the first skip,
    /// otherwise a pass with the largest residual.
    pub fn all(name: &str, parts: Vec<CheckResult>) -> CheckResult {
        if let Some(f) = parts.iter().find(|c| c.is_fail()) {
            return CheckResult {
                name: name.to_string(),
                ..f.clone()
            }
            .with_note(format!("{}: {}", f.name, f.note));
        }
        if let Some(s) = parts.iter().find(|c| c.is_skipped()) {
            return CheckResult {
                name: name.to_string(),
                ..s.clone()
            };
        }
        let exact = parts.iter().all(|c| c.exact);
        let residual = parts.iter().map(|c| c.residual).fold(0.0, f64::max);
        CheckResult::build(name, Outcome::Pass, exact, residual, None)
    }
}

/// `a <= b` up to [`FLOAT_SLACK`] relative to `|b|`.
fn within(a: f64, b: f64) -> bool {
    a <= b + FLOAT_SLACK * b.abs().max(f64::MIN_POSITIVE)
}

fn inequality(name: &str, lhs: f64, rhs: f64, relation: &str) -> CheckResult {
    if within(lhs, rhs) {
        CheckResult::pass_float(name, (lhs - rhs).max(0.0))
    } else {
        CheckResult::fail_float(
            name,
            lhs - rhs,
            Witness::Bound {
                lhs,
                rhs,
                relation: relation.to_string(),
            },
        )
    }
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct FrameReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    pub rank: usize,
    pub complete: bool,
    pub linearly_independent: bool,
    pub kernel_dim: usize,
    /// Exact kernel basis; absent for float windows.
    pub kernel: Option<KernelSpace>,
    pub bounds: SpectralSummary,
    pub is_frame_for_H: bool,
    pub exact: bool,
}

pub fn analyze(w: &SequenceWindow) -> FrameReport {
    let f = w.synthesis();
    let rank = rref(&f).rank();
    let kernel = kernel_basis(&f);
    let bounds = frame_bounds(w);
    let complete = rank == w.dim;
    FrameReport {
        n: w.len(),
        d: w.dim,
        rank,
        complete,
        linearly_independent: rank == w.len(),
        kernel_dim: kernel.dim(),
        kernel: Some(kernel),
        bounds,
        is_frame_for_H: complete && bounds.lambda_min > bounds.tolerance,
        exact: true,
    }
}

/// Spectral analysis of a float window; rank uses the relative eigenvalue cutoff.
pub fn analyze_float(w: &FloatWindow) -> FrameReport {
    let f = w.to_cmat();
    let rank = spectral::float_rank(&f);
    let bounds = spectral::frame_bounds_float(&f);
    let complete = rank == w.dim;
    FrameReport {
        n: w.len(),
        d: w.dim,
        rank,
        complete,
        linearly_independent: rank == w.len(),
        kernel_dim: w.len() - rank,
        kernel: None,
        bounds,
        is_frame_for_H: complete && bounds.lambda_min > bounds.tolerance,
        exact: false,
    }
}

/// `S_F f = sum_n <f, f_n> f_n`, exact.
pub fn frame_operator_apply(w: &SequenceWindow, f: &Vector) -> Result<Vector> {
    if f.dim() != w.dim {
        return Err(Error::DimMismatch {
            expected: w.dim,
            found: f.dim(),
        });
    }
    let mut out = Vector::zeros(w.dim);
    for v in &w.vectors {
        out.axpy(&f.inner(v), v);
    }
    Ok(out)
}

/// Frame operator `S_F = T_F T_F^*` as an exact matrix.
pub fn frame_operator(w: &SequenceWindow) -> Mat {
    let f = w.synthesis();
    f.mul(&f.adjoint())
}

fn require_zero_tail(w: &SequenceWindow, what: &'static str) -> Result<()> {
    if w.tail != TailPolicy::Zero {
        return Err(Error::RequiresZeroTail(what));
    }
    Ok(())
}

/// `4 S_F f = S_M f + S_N f + 2 <f, f_1> f_1` with `M, N = {f_n +- f_{n+1}}`.
pub fn check_sf_identity(w: &SequenceWindow, f: &Vector) -> Result<CheckResult> {
    const NAME: &str = "frame_operator_identity";
    require_zero_tail(w, "the frame-operator identity")?;
    let m = w.derive(&DerivedSpec::sum())?;
    let n = w.derive(&DerivedSpec::difference())?;
    let mut r = frame_operator_apply(w, f)?.scale(&Scalar::from_int(4));
    r = r.sub(&frame_operator_apply(&m, f)?);
    r = r.sub(&frame_operator_apply(&n, f)?);
    let f1 = w.f(1);
    r.axpy(&(Scalar::from_int(-2) * f.inner(f1)), f1);
    Ok(if r.is_zero() {
        CheckResult::pass_exact(NAME)
    } else {
        CheckResult::fail_exact(NAME, r.max_abs(), Witness::Vector(r))
    })
}

fn concat(a: &SequenceWindow, b: &SequenceWindow, label: &str) -> SequenceWindow {
    let mut vectors = a.vectors.clone();
    vectors.extend(b.vectors.iter().cloned());
    SequenceWindow {
        dim: a.dim,
        vectors,
        tail: a.tail,
        label: label.to_string(),
    }
}

fn nonzero(s: &Scalar, what: &'static str) -> Result<()> {
    if s.is_zero() {
        return Err(Error::ZeroScalar(what));
    }
    Ok(())
}

/// Bessel-bound transfer between `F` and `M, N` with optimal bounds:
/// `lambda_max(S_M + S_N) <= 4 mu B_F`, each of `B_M, B_N <= 4 mu B_F`, and
/// `2 |alpha|^2 B_F <= B_M + B_N`.
pub fn check_bessel_transfer(w: &SequenceWindow, spec: &DerivedSpec) -> Result<CheckResult> {
    nonzero(&spec.alpha, "alpha")?;
    nonzero(&spec.beta, "beta")?;
    require_zero_tail(w, "the Bessel transfer check")?;
    let m = w.derive(&spec.with_sign(Sign::Plus))?;
    let n = w.derive(&spec.with_sign(Sign::Minus))?;
    let b_f = frame_bounds(w).lambda_max;
    let b_m = frame_bounds(&m).lambda_max;
    let b_n = frame_bounds(&n).lambda_max;
    let b_union = frame_bounds(&concat(&m, &n, "M u N")).lambda_max;
    let cap = 4.0 * spec.mu() * b_f;
    let alpha2 = spec.alpha.abs_f64().powi(2);
    Ok(CheckResult::all(
        "bessel_transfer",
        vec![
            inequality("union", b_union, cap, "B_(M u N) <= 4 mu B_F"),
            inequality("upper_m", b_m, cap, "B_M <= 4 mu B_F"),
            inequality("upper_n", b_n, cap, "B_N <= 4 mu B_F"),
            inequality(
                "lower",
                2.0 * alpha2 * b_f,
                b_m + b_n,
                "2 |alpha|^2 B_F <= B_M + B_N",
            ),
        ],
    ))
}

/// Frame bounds of `M u N` against those of `F`, plus the exact operator identity
/// `S_M + S_N = 2|alpha|^2 S_F + 2|beta|^2 S_(shift(F,1))`.
pub fn check_union_frame(w: &SequenceWindow, spec: &DerivedSpec) -> Result<CheckResult> {
    nonzero(&spec.alpha, "alpha")?;
    require_zero_tail(w, "the M u N frame check")?;
    let m = w.derive(&spec.with_sign(Sign::Plus))?;
    let n = w.derive(&spec.with_sign(Sign::Minus))?;
    let union = concat(&m, &n, "M u N");

    let lhs = frame_operator(&union);
    let shifted = match w.shift(1) {
        Ok(s) => frame_operator(&s),
        Err(_) => Mat::zeros(w.dim, w.dim),
    };
    let two = Scalar::from_int(2);
    let a2 = Scalar::from(spec.alpha.norm_sqr()) * &two;
    let b2 = Scalar::from(spec.beta.norm_sqr()) * &two;
    let rhs = frame_operator(w).scale(&a2).add(&shifted.scale(&b2));
    let diff = lhs.sub(&rhs);
    let identity = if diff.is_zero() {
        CheckResult::pass_exact("operator_identity")
    } else {
        let j = (0..diff.cols())
            .find(|&j| !diff.column(j).is_zero())
            .expect("nonzero column");
        CheckResult::fail_exact(
            "operator_identity",
            diff.max_abs(),
            Witness::Vector(diff.column(j)),
        )
    };

    let bf = frame_bounds(w);
    let bu = frame_bounds(&union);
    let alpha2 = spec.alpha.abs_f64().powi(2);
    Ok(CheckResult::all(
        "union_frame",
        vec![
            identity,
            inequality(
                "lower",
                alpha2 * bf.lambda_min,
                bu.lambda_min,
                "|alpha|^2 A_F <= A_(M u N)",
            ),
            inequality(
                "upper",
                bu.lambda_max,
                4.0 * spec.mu() * bf.lambda_max,
                "B_(M u N) <= 4 mu B_F",
            ),
        ],
    ))
}

/// Kernel identity `ker T_F = ker T_M n ker T_N` for `M, N = {f_n +- f_{n+1}}`,
/// gated on windowed right-shift invariance of `ker T_F`.
///
/// Let `K' = {c in ker T_F : c_N = 0}`. The hypothesis is that every `c` in `K'`
/// shifted right, `(0, c_1, .., c_(N-1))`, is again in `ker T_F`. Under it, `K'`
/// (read on its first `N-1` coordinates) must equal the intersection of the
/// kernels of the `N-1` vectors `f_n +- f_{n+1}` that the window determines.
pub fn check_kernel_identity(w: &SequenceWindow) -> Result<CheckResult> {
    const NAME: &str = "kernel_identity";
    require_zero_tail(w, "the kernel identity")?;
    let n = w.len();
    if n < 2 {
        return Err(Error::WindowTooShort { needed: 2, got: n });
    }
    let tf = w.synthesis();
    let k_prime = kernel_basis(&tf).with_zero_coords(&[n - 1]);
    for c in &k_prime.basis {
        let mut shifted = vec![Scalar::zero()];
        shifted.extend(c.coords()[..n - 1].iter().cloned());
        if !tf.mul_vec(&Vector::new(shifted)).is_zero() {
            return Ok(CheckResult::skipped(
                NAME,
                Witness::Coefficients(c.clone()),
                "kernel of T_F is not invariant under the right shift",
            ));
        }
    }
    let unknown = w.with_tail(TailPolicy::Unknown);
    let m = unknown.derive(&DerivedSpec::sum())?.synthesis();
    let nn = unknown.derive(&DerivedSpec::difference())?.synthesis();
    let both = kernel_basis(&m.vstack(&nn));
    let truncated: Vec<Vector> = k_prime
        .basis
        .iter()
        .map(|c| Vector::new(c.coords()[..n - 1].to_vec()))
        .collect();
    let lhs = Subspace::span(n - 1, &truncated);
    if let Some(c) = lhs
        .first_outside(&both)
        .or_else(|| both.first_outside(&lhs))
    {
        return Ok(CheckResult::fail_exact(
            NAME,
            c.max_abs(),
            Witness::Coefficients(c.clone()),
        ));
    }
    Ok(CheckResult::pass_exact(NAME))
}

/// Smallest `m >= 2` with `f_m` in `span{f_1..f_(m-1)}` and `f_(m+1)` outside
/// `span{f_1..f_m}`, or `None` if the window has no such index.
pub fn find_breakpoint(w: &SequenceWindow) -> Result<Option<usize>> {
    if w.len() < 3 {
        return Err(Error::WindowTooShort {
            needed: 3,
            got: w.len(),
        });
    }
    if w.f(1).is_zero() {
        return Err(Error::ZeroFirstVector);
    }
    // f_k is new exactly when column k-1 is a pivot.
    let pivots = rref(&w.synthesis()).pivots;
    let new = |k: usize| pivots.contains(&(k - 1));
    Ok((2..w.len()).find(|&m| !new(m) && new(m + 1)))
}

/// Smallest `m >= 0` such that the sums `f_(m+n) + f_(m+n+1)` left in the
/// window are linearly independent. At least two sums must remain, so a lone
/// trailing sum never counts as an independent family.
pub fn tail_independence_index(w: &SequenceWindow) -> Result<Option<usize>> {
    let n = w.len();
    if n < 4 {
        return Err(Error::WindowTooShort { needed: 4, got: n });
    }
    let sums = w
        .with_tail(TailPolicy::Unknown)
        .derive(&DerivedSpec::sum())?;
    Ok((0..=n - 3).find(|&m| {
        let rest = &sums.vectors[m..];
        rref(&Mat::from_columns(w.dim, rest)).rank() == rest.len()
    }))
}

/// For a zero-tail window and `alpha != 0`, `M = {alpha f_n + beta f_{n+1}}` spans
/// the same space as `F`, so the ranks agree.
pub fn check_rank_transfer(w: &SequenceWindow, spec: &DerivedSpec) -> Result<CheckResult> {
    nonzero(&spec.alpha, "alpha")?;
    require_zero_tail(w, "the rank transfer check")?;
    let m = w.derive(spec)?;
    let span_f = Subspace::span(w.dim, &w.vectors);
    let span_m = Subspace::span(w.dim, &m.vectors);
    if span_f == span_m {
        return Ok(CheckResult::pass_exact("rank_transfer"));
    }
    let v = span_f
        .first_outside(&span_m)
        .or_else(|| span_m.first_outside(&span_f))
        .expect("spans differ");
    Ok(CheckResult::fail_exact(
        "rank_transfer",
        v.max_abs(),
        Witness::Vector(v.clone()),
    ))
}

/// `sigma_min` of the zero-tail window `{alpha e_n + beta e_(n+1)}_(n<=N)` for each `N`.
pub fn decay_profile(
    alpha: &Scalar,
    beta: &Scalar,
    ns: RangeInclusive<usize>,
) -> Vec<(usize, f64)> {
    let spec = DerivedSpec::new(alpha.clone(), beta.clone(), Sign::Plus);
    ns.map(|n| {
        let onb = SequenceWindow::canonical("onb", n, n).expect("onb exists for every N");
        let m = onb.derive(&spec).expect("nonempty");
        (n, frame_bounds(&m).sigma_min)
    })
    .collect()
}

/// Successive ratios `sigma_min(N+1) / sigma_min(N)` of [`decay_profile`].
pub fn decay_ratios(alpha: &Scalar, beta: &Scalar, ns: RangeInclusive<usize>) -> Vec<(usize, f64)> {
    let profile = decay_profile(alpha, beta, ns);
    profile
        .windows(2)
        .map(|p| (p[1].0, p[1].1 / p[0].1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(d: usize, k: usize) -> Vector {
        Vector::basis(d, k)
    }

    fn window(dim: usize, vs: Vec<Vector>) -> SequenceWindow {
        SequenceWindow::new(dim, vs, TailPolicy::Zero, "test").unwrap()
    }

    #[test]
    fn analyze_examples() {
        let r = analyze(&SequenceWindow::canonical("onb", 4, 4).unwrap());
        assert!(r.complete && r.linearly_independent && r.is_frame_for_H);
        assert!(
            (r.bounds.lambda_min - 1.0).abs() < 1e-12 && (r.bounds.lambda_max - 1.0).abs() < 1e-12
        );

        let r = analyze(&window(2, vec![e(2, 1), e(2, 1), e(2, 2)]));
        assert!(r.complete && !r.linearly_independent);
        assert!(
            (r.bounds.lambda_min - 1.0).abs() < 1e-12 && (r.bounds.lambda_max - 2.0).abs() < 1e-12
        );

        let r = analyze(&SequenceWindow::canonical("ex_norep", 5, 4).unwrap());
        assert!(r.complete && !r.linearly_independent);
        assert_eq!(r.kernel_dim, 1);
        assert_eq!(
            r.kernel.unwrap().basis,
            vec![Vector::from_ints(&[1, 0, -1, 0, 0])]
        );
    }

    #[test]
    fn frame_operator_examples() {
        let onb = SequenceWindow::canonical("onb", 3, 3).unwrap();
        let f = Vector::from_ints(&[2, -1, 5]);
        assert_eq!(frame_operator_apply(&onb, &f).unwrap(), f);
        let w = window(2, vec![e(2, 1), e(2, 1), e(2, 2)]);
        assert_eq!(
            frame_operator_apply(&w, &e(2, 1)).unwrap(),
            Vector::from_ints(&[2, 0])
        );
        let empty = window(2, vec![]);
        assert!(frame_operator_apply(&empty, &e(2, 1)).unwrap().is_zero());
        assert!(matches!(
            frame_operator_apply(&w, &e(3, 1)),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn sf_identity_examples() {
        let w = window(2, vec![e(2, 1), e(2, 2)]);
        let m = w.derive(&DerivedSpec::sum()).unwrap();
        assert_eq!(
            frame_operator_apply(&m, &e(2, 1)).unwrap(),
            Vector::from_ints(&[1, 1])
        );
        assert!(check_sf_identity(&w, &e(2, 1)).unwrap().is_pass());
        assert!(check_sf_identity(&w, &Vector::zeros(2)).unwrap().is_pass());
        assert!(matches!(
            check_sf_identity(&w.with_tail(TailPolicy::Unknown), &e(2, 1)),
            Err(Error::RequiresZeroTail(_))
        ));
    }

    #[test]
    fn bessel_transfer_on_onb() {
        let w = SequenceWindow::canonical("onb", 12, 12).unwrap();
        let r = check_bessel_transfer(&w, &DerivedSpec::sum()).unwrap();
        assert!(r.is_pass(), "{r:?}");
        let m = w.derive(&DerivedSpec::sum()).unwrap();
        let n = w.derive(&DerivedSpec::difference()).unwrap();
        let b_union = frame_bounds(&concat(&m, &n, "u")).lambda_max;
        assert!((b_union - 4.0).abs() < 1e-12);
        let zero_beta = DerivedSpec::new(Scalar::one(), Scalar::zero(), Sign::Plus);
        assert!(matches!(
            check_bessel_transfer(&w, &zero_beta),
            Err(Error::ZeroScalar("beta"))
        ));
    }

    #[test]
    fn union_frame_examples() {
        let w = SequenceWindow::canonical("onb", 4, 4).unwrap();
        assert!(check_union_frame(&w, &DerivedSpec::sum())
            .unwrap()
            .is_pass());
        // beta = 0: M u N is two copies of alpha F.
        let spec = DerivedSpec::new(Scalar::from_int(3), Scalar::zero(), Sign::Plus);
        let w = window(2, vec![e(2, 1), e(2, 1), e(2, 2)]);
        assert!(check_union_frame(&w, &spec).unwrap().is_pass());
        let m = w.derive(&spec).unwrap();
        let b = frame_bounds(&concat(&m, &m, "u"));
        assert!((b.lambda_min - 18.0).abs() < 1e-9 && (b.lambda_max - 36.0).abs() < 1e-9);
    }

    #[test]
    fn kernel_identity_examples() {
        let onb = SequenceWindow::canonical("onb", 4, 4).unwrap();
        assert!(check_kernel_identity(&onb).unwrap().is_pass());

        let ones = window(1, vec![e(1, 1); 4]);
        assert!(check_kernel_identity(&ones).unwrap().is_pass());

        let norep = SequenceWindow::canonical("ex_norep", 5, 4).unwrap();
        let r = check_kernel_identity(&norep).unwrap();
        assert!(r.is_skipped());
        assert_eq!(
            r.witness,
            Some(Witness::Coefficients(Vector::from_ints(&[1, 0, -1, 0, 0])))
        );
    }

    #[test]
    fn breakpoints() {
        let w = SequenceWindow::canonical("ex_e123e1", 6, 5).unwrap();
        assert_eq!(find_breakpoint(&w).unwrap(), Some(4));
        let w = SequenceWindow::canonical("ex_e2e2", 8, 6).unwrap();
        assert_eq!(find_breakpoint(&w).unwrap(), Some(5));
        let w = SequenceWindow::canonical("onb", 5, 5).unwrap();
        assert_eq!(find_breakpoint(&w).unwrap(), None);
        let w = window(2, vec![Vector::zeros(2), e(2, 1), e(2, 2)]);
        assert!(matches!(find_breakpoint(&w), Err(Error::ZeroFirstVector)));
    }

    #[test]
    fn tail_indices() {
        let w = SequenceWindow::canonical("onb", 6, 6).unwrap();
        assert_eq!(tail_independence_index(&w).unwrap(), Some(0));
        let w = SequenceWindow::canonical("ex_norep", 5, 4).unwrap();
        assert_eq!(tail_independence_index(&w).unwrap(), Some(1));
        let w = window(1, vec![e(1, 1); 6]);
        assert_eq!(tail_independence_index(&w).unwrap(), None);
    }

    #[test]
    fn rank_transfer_on_examples() {
        let spec = DerivedSpec::new(Scalar::ratio(1, 2), Scalar::from_int(3), Sign::Minus);
        for name in ["onb", "ex_e1e1", "ex_norep"] {
            let w = SequenceWindow::canonical(name, 5, 5).unwrap();
            assert!(check_rank_transfer(&w, &spec).unwrap().is_pass(), "{name}");
        }
    }

    #[test]
    fn decay_ratio_approaches_alpha_over_beta() {
        let ratios = decay_ratios(&Scalar::one(), &Scalar::from_int(2), 8..=14);
        for (n, r) in ratios {
            assert!((r - 0.5).abs() < 0.05, "N={n} ratio {r}");
        }
    }
}
