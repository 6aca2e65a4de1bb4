use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fibrep_core::exactla::{kernel_basis, Mat, Subspace};
use fibrep_core::fibrep::{
    check_mn_equivalence, construct, construct_alternating, construct_half_f3, example,
    range_check, uniqueness_check, verify, ExampleOutcome, Extension, ExtensionPolicy,
    EXAMPLE_NAMES,
};
use fibrep_core::{ConstructOutcome, RandomKind, SequenceWindow, Vector};

fn seeded_window(seed: u64) -> SequenceWindow {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=9);
    let d = rng.gen_range(1..=7);
    let kind = if n <= d && rng.gen_bool(0.4) {
        RandomKind::Independent
    } else {
        RandomKind::Dependent
    };
    if rng.gen_bool(0.3) {
        SequenceWindow::random_complex(n, d, seed, kind).unwrap()
    } else {
        SequenceWindow::random(n, d, seed, kind).unwrap()
    }
}

fn constrained_sums(w: &SequenceWindow) -> Vec<Vector> {
    (1..=w.len() - 2).map(|k| w.f(k).add(w.f(k + 1))).collect()
}

#[test]
fn constructed_operators_verify_and_certificates_hold() {
    let (mut ops, mut certs) = (0, 0);
    for seed in 0..500 {
        let w = seeded_window(seed);
        match construct(&w, &ExtensionPolicy::Zero).unwrap() {
            ConstructOutcome::Operator(t) => {
                assert!(verify(&w, &t).unwrap().is_pass(), "seed {seed}");
                assert!(
                    check_mn_equivalence(&w, &t).unwrap().is_pass(),
                    "seed {seed}"
                );
                assert!(!range_check(&w, &t).unwrap().is_fail(), "seed {seed}");
                ops += 1;
            }
            ConstructOutcome::Inconsistent(cert) => {
                assert!(cert.holds_for(&w), "seed {seed}");
                certs += 1;
            }
        }
    }
    assert!(
        ops > 50 && certs > 50,
        "{ops} operators, {certs} certificates"
    );
}

#[test]
fn independent_sums_always_represented() {
    let mut seen = 0;
    for seed in 0..500 {
        let w = seeded_window(seed);
        let sums = constrained_sums(&w);
        if !kernel_basis(&Mat::from_columns(w.dim, &sums))
            .basis
            .is_empty()
        {
            continue;
        }
        seen += 1;
        assert!(
            !construct(&w, &ExtensionPolicy::Zero)
                .unwrap()
                .is_inconsistent(),
            "seed {seed}"
        );
    }
    assert!(seen > 20, "only {seen} windows with independent sums");
}

#[test]
fn forced_tf1_makes_policies_agree() {
    let mut seen = 0;
    for seed in 0..500 {
        let w = seeded_window(seed);
        if w.len() < 4 {
            continue;
        }
        let span = Subspace::span(w.dim, &constrained_sums(&w));
        if !span.contains(w.f(1)) {
            continue;
        }
        let Some(zero) = construct(&w, &ExtensionPolicy::Zero).unwrap().operator() else {
            continue;
        };
        let half = construct(&w, &ExtensionPolicy::HalfF3)
            .unwrap()
            .operator()
            .unwrap();
        assert_eq!(zero.extension, Extension::Determined, "seed {seed}");
        assert_eq!(zero.mat, half.mat, "seed {seed}");
        seen += 1;
    }
    assert!(seen > 20, "only {seen} windows with forced Tf1");
}

#[test]
fn formulas_agree_with_constraints_on_independent_windows() {
    for seed in 0..40 {
        let n = 3 + (seed as usize % 6);
        let w = SequenceWindow::random(n, n + 1, seed, RandomKind::Independent).unwrap();
        let alt = construct_alternating(&w).unwrap();
        let half = construct_half_f3(&w).unwrap();
        for t in [&alt, &half] {
            assert!(verify(&w, t).unwrap().is_pass(), "seed {seed}");
        }
        let built = construct(&w, &ExtensionPolicy::HalfF3)
            .unwrap()
            .operator()
            .unwrap();
        assert!(
            uniqueness_check(&w, &built, &half).unwrap().is_pass(),
            "seed {seed}"
        );
        assert_eq!(built.mat, half.mat, "seed {seed}");
    }
}

#[test]
fn named_examples() {
    for n in [5, 8, 11] {
        for name in EXAMPLE_NAMES {
            match example(name, n).unwrap() {
                ExampleOutcome::Operators(ops) => {
                    for (label, w, t) in ops {
                        let r = verify(&w, &t).unwrap();
                        assert!(r.is_pass() && r.residual == 0.0, "{name} {label} N={n}");
                    }
                }
                ExampleOutcome::Inconsistent(w, ConstructOutcome::Inconsistent(cert)) => {
                    assert_eq!(*name, "ex_norep");
                    assert!(cert.holds_for(&w));
                }
                ExampleOutcome::Inconsistent(..) => panic!("{name} N={n}: no certificate"),
            }
        }
    }
}
