//! Exact identities relating a window to its sums `f_n + f_{n+1}`.

use crate::error::Result;
use crate::exactla::{kernel_basis, Mat, Scalar, Subspace, Vector};
use crate::frames::{CheckResult, Witness};
use crate::sequences::{DerivedSpec, SequenceWindow, TailPolicy};

/// `f_n = sum_{i=0}^{m-1} (-1)^i (f_{n-i-1} + f_{n-i}) + (-1)^m f_{n-m}` for
/// every `2 <= n <= N` and `1 <= m <= n-1`.
pub fn check_alternating_identity(w: &SequenceWindow) -> CheckResult {
    const NAME: &str = "alternating_identity";
    for n in 2..=w.len() {
        for m in 1..n {
            let mut acc = Vector::zeros(w.dim);
            for i in 0..m {
                let s = Scalar::from_int(if i % 2 == 0 { 1 } else { -1 });
                acc.axpy(&s, &w.f(n - i - 1).add(w.f(n - i)));
            }
            let s = Scalar::from_int(if m % 2 == 0 { 1 } else { -1 });
            acc.axpy(&s, w.f(n - m));
            let diff = acc.sub(w.f(n));
            if !diff.is_zero() {
                return CheckResult::fail_exact(NAME, diff.max_abs(), Witness::Index(n))
                    .with_note(format!("m = {m}"));
            }
        }
    }
    CheckResult::pass_exact(NAME)
}

fn sums(w: &SequenceWindow) -> Result<SequenceWindow> {
    w.with_tail(TailPolicy::Unknown).derive(&DerivedSpec::sum())
}

/// `span{f_n} = span({f_1} u {f_n + f_{n+1}})`, the sums taken over the
/// pairs inside the window.
pub fn check_span_identity(w: &SequenceWindow) -> Result<CheckResult> {
    const NAME: &str = "span_identity";
    let lhs = Subspace::span(w.dim, &w.vectors);
    let mut gens = sums(w)?.vectors;
    gens.push(w.f(1).clone());
    let rhs = Subspace::span(w.dim, &gens);
    Ok(
        match lhs.first_outside(&rhs).or_else(|| rhs.first_outside(&lhs)) {
            None => CheckResult::pass_exact(NAME),
            Some(v) => CheckResult::fail_exact(NAME, v.max_abs(), Witness::Vector(v.clone())),
        },
    )
}

/// If the window is independent, so are its sums.
pub fn check_sums_independent(w: &SequenceWindow) -> Result<CheckResult> {
    const NAME: &str = "sums_independent";
    if let Some(c) = kernel_basis(&w.synthesis()).basis.first() {
        return Ok(CheckResult::skipped(
            NAME,
            Witness::Coefficients(c.clone()),
            "window is dependent",
        ));
    }
    Ok(match kernel_basis(&sums(w)?.synthesis()).basis.first() {
        None => CheckResult::pass_exact(NAME),
        Some(c) => CheckResult::fail_exact(NAME, c.max_abs(), Witness::Coefficients(c.clone())),
    })
}

/// If `{f_1} u {f_n + f_{n+1}}` is independent, so is the window.
pub fn check_independence_from_sums(w: &SequenceWindow) -> Result<CheckResult> {
    const NAME: &str = "independence_from_sums";
    let mut gens = vec![w.f(1).clone()];
    gens.extend(sums(w)?.vectors);
    if let Some(c) = kernel_basis(&Mat::from_columns(w.dim, &gens)).basis.first() {
        return Ok(CheckResult::skipped(
            NAME,
            Witness::Coefficients(c.clone()),
            "f_1 and the sums are dependent",
        ));
    }
    Ok(match kernel_basis(&w.synthesis()).basis.first() {
        None => CheckResult::pass_exact(NAME),
        Some(c) => CheckResult::fail_exact(NAME, c.max_abs(), Witness::Coefficients(c.clone())),
    })
}

/// All four identities on one window.
pub fn check_sum_identities(w: &SequenceWindow) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_alternating_identity(w),
        check_span_identity(w)?,
        check_sums_independent(w)?,
        check_independence_from_sums(w)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::RandomKind;

    #[test]
    fn on_named_windows() {
        let onb = SequenceWindow::canonical("onb", 6, 6).unwrap();
        assert!(check_sum_identities(&onb)
            .unwrap()
            .iter()
            .all(CheckResult::is_pass));
        let norep = SequenceWindow::canonical("ex_norep", 5, 4).unwrap();
        let r = check_sum_identities(&norep).unwrap();
        assert!(r[0].is_pass() && r[1].is_pass());
        assert!(r[2].is_skipped() && r[3].is_skipped());
    }

    #[test]
    fn on_random_windows() {
        for seed in 0..20 {
            let w = SequenceWindow::random_complex(5, 4, seed, RandomKind::Dependent).unwrap();
            for r in check_sum_identities(&w).unwrap() {
                assert!(!r.is_fail(), "seed {seed}: {r:?}");
            }
        }
    }

    #[test]
    fn single_vector_window() {
        let w = SequenceWindow::new(
            2,
            vec![Vector::from_ints(&[1, 2])],
            TailPolicy::Unknown,
            "t",
        )
        .unwrap();
        assert!(check_sum_identities(&w)
            .unwrap()
            .iter()
            .all(CheckResult::is_pass));
    }
}
