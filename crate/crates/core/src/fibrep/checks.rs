//! Structural checks on a verified representation: the `M`/`N` equivalence,
//! uniqueness from `Tf_1`, range and containment statements, invariant
//! subspaces, the norm bound and the injectivity criterion.

use crate::error::{Error, Result};
use crate::exactla::{inverse, kernel_basis, Mat, Scalar, Subspace, Vector};
use crate::frames::{find_breakpoint, CheckResult, Witness, FLOAT_SLACK};
use crate::sequences::{DerivedSpec, SequenceWindow, TailPolicy};
use crate::spectral::{frame_bounds, operator_norm};

use super::operator::{verify, FibOperator};

fn span_of(w: &SequenceWindow, from: usize, to: usize) -> Subspace {
    if from > to || from > w.len() {
        return Subspace::zero(w.dim);
    }
    Subspace::span(w.dim, &w.vectors[from - 1..to.min(w.len())])
}

/// Runs `verify` and passes its result through when it does not pass.
fn verified(w: &SequenceWindow, t: &FibOperator, name: &str) -> Result<Option<CheckResult>> {
    let v = verify(w, t)?;
    Ok((!v.is_pass()).then(|| {
        CheckResult {
            name: name.to_string(),
            ..v
        }
        .with_note("representation fails")
    }))
}

/// `T((f_n + f_{n+1}) + (f_{n+1} + f_{n+2})) = f_{n+2} + f_{n+3}` and the
/// analogue for differences, for `n <= N-3`.
pub fn check_mn_equivalence(w: &SequenceWindow, t: &FibOperator) -> Result<CheckResult> {
    const NAME: &str = "mn_equivalence";
    if let Some(fail) = verified(w, t, NAME)? {
        return Ok(fail);
    }
    let f = |k: usize| w.f(k);
    for n in 1..=w.len().saturating_sub(3) {
        let m_in = f(n).add(f(n + 1)).add(&f(n + 1).add(f(n + 2)));
        let n_in = f(n).sub(f(n + 1)).add(&f(n + 1).sub(f(n + 2)));
        let m_diff = t.apply(&m_in)?.sub(&f(n + 2).add(f(n + 3)));
        let n_diff = t.apply(&n_in)?.sub(&f(n + 2).sub(f(n + 3)));
        for diff in [m_diff, n_diff] {
            if !diff.is_zero() {
                return Ok(CheckResult::fail_exact(
                    NAME,
                    diff.max_abs(),
                    Witness::Index(n),
                ));
            }
        }
    }
    Ok(CheckResult::pass_exact(NAME))
}

/// Equal `Tf_1` forces equal operators. The window constrains `T` on
/// `f_1..f_(N-1)` only, so agreement is checked there; when the values of
/// `Tf_1` differ the operators must differ.
pub fn uniqueness_check(
    w: &SequenceWindow,
    t: &FibOperator,
    s: &FibOperator,
) -> Result<CheckResult> {
    const NAME: &str = "uniqueness";
    for op in [t, s] {
        if let Some(fail) = verified(w, op, NAME)? {
            return Ok(fail);
        }
    }
    let identical = t.mat == s.mat;
    if t.tf1 != s.tf1 {
        return Ok(if identical {
            CheckResult::fail_exact(NAME, 0.0, Witness::Vector(t.tf1.sub(&s.tf1)))
                .with_note("distinct Tf1 but identical matrices")
        } else {
            CheckResult::pass_exact(NAME).with_note("distinct Tf1, distinct operators")
        });
    }
    for n in 1..w.len() {
        let diff = t.apply(w.f(n))?.sub(&s.apply(w.f(n))?);
        if !diff.is_zero() {
            return Ok(CheckResult::fail_exact(
                NAME,
                diff.max_abs(),
                Witness::Index(n),
            ));
        }
    }
    let note = if identical {
        "equal Tf1, identical matrices"
    } else {
        "equal Tf1, operators differ only at f_N"
    };
    Ok(CheckResult::pass_exact(NAME).with_note(note))
}

/// Compares the range with `R3 = span{f_3..f_N}`.
///
/// `R3` is always inside `T(span{f_1..f_(N-1)})`. Equality of the two is
/// asserted when the window has a breakpoint or when `Tf_1` lies in `R3`;
/// when `f_N` depends on its predecessors that image is all of `ran T`.
pub fn range_check(w: &SequenceWindow, t: &FibOperator) -> Result<CheckResult> {
    const NAME: &str = "range";
    if let Some(fail) = verified(w, t, NAME)? {
        return Ok(fail);
    }
    let n = w.len();
    let r3 = span_of(w, 3, n);
    let images: Vec<Vector> = (1..n).map(|k| t.apply(w.f(k))).collect::<Result<_>>()?;
    let inner = Subspace::span(w.dim, &images);
    let full = t.range();
    if let Some(v) = r3.first_outside(&inner) {
        return Ok(
            CheckResult::fail_exact(NAME, v.max_abs(), Witness::Vector(v.clone()))
                .with_note("R3 not in range"),
        );
    }
    let breakpoint = if w.f(1).is_zero() {
        None
    } else {
        find_breakpoint(w)?
    };
    let claim = breakpoint.is_some() || r3.contains(&t.tf1);
    let equal_inner = inner == r3;
    let equal_full = full == r3;
    if claim && !equal_inner {
        let v = inner.first_outside(&r3).expect("strictly larger");
        return Ok(
            CheckResult::fail_exact(NAME, v.max_abs(), Witness::Vector(v.clone()))
                .with_note("range exceeds R3 although equality is forced"),
        );
    }
    let status = match (claim, equal_full) {
        (true, true) => "ran T = R3",
        (true, false) => "T(span f_1..f_(N-1)) = R3; f_N adds an edge direction",
        (false, true) => "R3 in ran T; equality holds, not forced",
        (false, false) => "R3 in ran T; containment only",
    };
    Ok(CheckResult::pass_exact(NAME).with_note(status))
}

/// `f_m` in `span{f_1..f_(m-1)}` and `f_(m+1)` outside it.
fn is_breakpoint(w: &SequenceWindow, m: usize) -> bool {
    m >= 2
        && m < w.len()
        && span_of(w, 1, m - 1).contains(w.f(m))
        && !span_of(w, 1, m - 1).contains(w.f(m + 1))
}

/// At a breakpoint `m`: `Tf_i` in `span{f_3..f_(m+1)}` for `i <= m`, and
/// `Tf_(m+i)` in `span{f_3..f_(m+i+1)}` for `m+i <= N-1`.
pub fn containment_check(w: &SequenceWindow, t: &FibOperator, m: usize) -> Result<CheckResult> {
    const NAME: &str = "containment";
    if !is_breakpoint(w, m) {
        return Err(Error::NoBreakpoint);
    }
    if let Some(fail) = verified(w, t, NAME)? {
        return Ok(fail);
    }
    for i in 1..w.len() {
        let target = span_of(w, 3, (i + 1).max(m + 1));
        let image = t.apply(w.f(i))?;
        if !target.contains(&image) {
            return Ok(CheckResult::fail_exact(
                NAME,
                image.max_abs(),
                Witness::Index(i),
            ));
        }
    }
    Ok(CheckResult::pass_exact(NAME))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct InvariantSubspace {
    pub l: usize,
    pub basis: Subspace,
    /// Every `f_n` of the window lies in `V`.
    pub contains_window: bool,
}

/// When the sums `f_n + f_{n+1}` are dependent, the smallest `l` such that
/// `V = span{f_1..f_l}` contains `f_(l+1)` and satisfies `TV ⊆ V`. Under a
/// zero tail `l = N` qualifies through `f_(N+1) = 0`.
pub fn invariant_subspace_witness(
    w: &SequenceWindow,
    t: &FibOperator,
) -> Result<Option<InvariantSubspace>> {
    let sums = w
        .with_tail(TailPolicy::Unknown)
        .derive(&DerivedSpec::sum())?;
    if kernel_basis(&sums.synthesis()).is_trivial() {
        return Ok(None);
    }
    let n = w.len();
    let top = if w.tail == TailPolicy::Zero { n } else { n - 1 };
    for l in 1..=top {
        let v = span_of(w, 1, l);
        if l < n && !v.contains(w.f(l + 1)) {
            continue;
        }
        let mut invariant = true;
        for k in 1..=l {
            if !v.contains(&t.apply(w.f(k))?) {
                invariant = false;
                break;
            }
        }
        if invariant {
            let contains_window = w.vectors.iter().all(|f| v.contains(f));
            return Ok(Some(InvariantSubspace {
                l,
                basis: v,
                contains_window,
            }));
        }
    }
    Ok(None)
}

/// Norm bound `||T|| <= sqrt(B_F / A_M)` for `M = {f_n + f_{n+1}}`.
///
/// With a zero tail, `T_0(f_n + f_{n+1}) = f_{n+2}` for every `n <= N`
/// defines `T_0` on `span M` exactly when `ker T_M ⊆ ker T_G`,
/// `G = {f_3, .., f_N, 0, 0}`. When `M` is complete, `T_0 = T_G T_M^+`; its
/// operator norm is compared with the bound.
pub fn norm_bound_check(w: &SequenceWindow, t: &FibOperator) -> Result<CheckResult> {
    norm_bound_check_with(w, t, FLOAT_SLACK)
}

pub fn norm_bound_check_with(
    w: &SequenceWindow,
    t: &FibOperator,
    tolerance: f64,
) -> Result<CheckResult> {
    const NAME: &str = "norm_bound";
    if w.tail != TailPolicy::Zero {
        return Err(Error::RequiresZeroTail("the norm bound"));
    }
    if let Some(fail) = verified(w, t, NAME)? {
        return Ok(fail);
    }
    let m = w.derive(&DerivedSpec::sum())?;
    let tm = m.synthesis();
    let orth = kernel_basis(&tm.adjoint());
    if let Some(v) = orth.basis.first() {
        return Ok(CheckResult::skipped(
            NAME,
            Witness::Vector(v.clone()),
            "M is not complete",
        ));
    }
    let n = w.len();
    let mut g_cols: Vec<Vector> = (3..=n).map(|k| w.f(k).clone()).collect();
    g_cols.resize(n, Vector::zeros(w.dim));
    let tg = Mat::from_columns(w.dim, &g_cols);
    if let Some(c) = kernel_basis(&tm)
        .basis
        .iter()
        .find(|c| !tg.mul_vec(c).is_zero())
    {
        return Ok(CheckResult::skipped(
            NAME,
            Witness::Coefficients(c.clone()),
            "ker T_M is not inside ker T_G",
        ));
    }
    let gram_inv =
        inverse(&tm.mul(&tm.adjoint())).expect("complete M has invertible frame operator");
    let t0 = tg.mul(&tm.adjoint()).mul(&gram_inv);

    let agrees = w
        .vectors
        .iter()
        .all(|f| t.apply(f).map(|y| y == t0.mul_vec(f)).unwrap_or(false));
    let norm = operator_norm(&t0.to_cmat());
    let b_f = frame_bounds(w).lambda_max;
    let a_m = frame_bounds(&m).lambda_min;
    let bound = (b_f / a_m).sqrt();
    let note = if agrees {
        "T agrees with T_0"
    } else {
        "T differs from T_0 at the window edge"
    };
    Ok(if norm <= bound * (1.0 + tolerance) {
        CheckResult::pass_float(NAME, (norm - bound).max(0.0)).with_note(note)
    } else {
        let relation = "||T_0|| <= sqrt(B_F / A_M)".to_string();
        CheckResult::fail_float(
            NAME,
            norm - bound,
            Witness::Bound {
                lhs: norm,
                rhs: bound,
                relation,
            },
        )
        .with_note(note)
    })
}

/// `T` injective on `span M'` iff `ker T_G ⊆ ker T_M'`, with
/// `M' = {f_n + f_{n+1}}` and `G = {f_{n+2}}` over `n <= N-2`, the pairs the
/// window determines. Both sides are computed exactly and must agree.
pub fn injectivity_check(w: &SequenceWindow, t: &FibOperator) -> Result<CheckResult> {
    const NAME: &str = "injectivity";
    if let Some(fail) = verified(w, t, NAME)? {
        return Ok(fail);
    }
    let (lhs, rhs, note) = injectivity_sides(w, t)?;
    Ok(if lhs == rhs {
        CheckResult::pass_exact(NAME).with_note(note)
    } else {
        CheckResult::fail_exact(NAME, 1.0, Witness::Index(w.len())).with_note(note)
    })
}

/// `(T injective on span M', ker T_G ⊆ ker T_M', description)`.
pub fn injectivity_sides(w: &SequenceWindow, t: &FibOperator) -> Result<(bool, bool, String)> {
    let n = w.len();
    let sums: Vec<Vector> = (1..=n - 2).map(|k| w.f(k).add(w.f(k + 1))).collect();
    let shifted: Vec<Vector> = (3..=n).map(|k| w.f(k).clone()).collect();
    let span_m = Subspace::span(w.dim, &sums);
    let images: Vec<Vector> = span_m
        .basis
        .iter()
        .map(|v| t.apply(v))
        .collect::<Result<_>>()?;
    let injective = Subspace::span(w.dim, &images).dim() == span_m.dim();

    let tm = Mat::from_columns(w.dim, &sums);
    let tg = Mat::from_columns(w.dim, &shifted);
    let inclusion = kernel_basis(&tg)
        .basis
        .iter()
        .all(|c| tm.mul_vec(c).is_zero());

    let full_kernel = kernel_basis(&t.mat).dim();
    let note = format!(
        "injective on span M' (dim {}): {injective}; kernel inclusion: {inclusion}; dim ker T on span F: {full_kernel}",
        span_m.dim()
    );
    Ok((injective, inclusion, note))
}

/// The representation family `S f_i = T f_i + (-1)^i g` on an independent
/// window, with the edge column `S f_N = 0` kept.
pub fn shifted_representation(
    w: &SequenceWindow,
    t: &FibOperator,
    g: &Vector,
) -> Result<FibOperator> {
    let gx = t.coords_of(g).ok_or(Error::PinOutsideSpan)?;
    if t.rank() != w.len() {
        return Err(Error::NotIndependent);
    }
    let n = w.len();
    let mut mat = t.mat.clone();
    for i in 0..n - 1 {
        let sign = Scalar::from_int(if (i + 1) % 2 == 0 { 1 } else { -1 });
        for r in 0..t.rank() {
            let delta = &sign * &gx[r];
            mat[(r, i)] += &delta;
        }
    }
    let mut s = t.clone();
    s.mat = mat;
    s.tf1 = s.basis.mul_vec(&s.mat.mul_vec(&s.f1_coords));
    Ok(s)
}
