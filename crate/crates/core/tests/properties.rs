use num_complex::Complex64;
use proptest::prelude::*;

use fibrep_core::exactla::{kernel_basis, rank, solve, Mat, Scalar, Vector};
use fibrep_core::fibrep::{
    binomial_plan, check_sum_identities, construct, recursion_iterates, transport, verify,
    ExtensionPolicy,
};
use fibrep_core::sequences::{parse_window, write_window};
use fibrep_core::spectral::{eigh, CMat};
use fibrep_core::{DerivedSpec, LoadedWindow, RandomKind, SequenceWindow, Sign, TailPolicy};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=3).prop_map(|(p, q)| Scalar::ratio(p, q))
}

fn complex_scalar() -> impl Strategy<Value = Scalar> {
    (scalar(), scalar()).prop_map(|(re, im)| Scalar::complex(re, im))
}

fn matrix(max: usize) -> impl Strategy<Value = Mat> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(complex_scalar(), c), r)
            .prop_map(Mat::from_rows)
    })
}

fn low_rank_matrix(max: usize) -> impl Strategy<Value = Mat> {
    (1..=max, 1..=max, 1..=max).prop_flat_map(|(r, c, k)| {
        let left =
            prop::collection::vec(prop::collection::vec(scalar(), k), r).prop_map(Mat::from_rows);
        let right =
            prop::collection::vec(prop::collection::vec(scalar(), c), k).prop_map(Mat::from_rows);
        (left, right).prop_map(|(a, b)| a.mul(&b))
    })
}

fn window() -> impl Strategy<Value = SequenceWindow> {
    (
        3usize..=8,
        1usize..=6,
        any::<u64>(),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(n, d, seed, dep, complex)| {
            let (kind, d) = if dep || n > d {
                (RandomKind::Dependent, d)
            } else {
                (RandomKind::Independent, d)
            };
            if complex {
                SequenceWindow::random_complex(n, d, seed, kind).unwrap()
            } else {
                SequenceWindow::random(n, d, seed, kind).unwrap()
            }
        })
}

fn hermitian(max: usize) -> impl Strategy<Value = CMat> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), n * n).prop_map(move |xs| {
            let a = CMat::from_fn(n, n, |i, j| {
                Complex64::new(xs[i * n + j].0, xs[i * n + j].1)
            });
            let h = a.mul(&a.adjoint());
            CMat::from_fn(n, n, |i, j| {
                h[(i, j)]
                    - if i == j {
                        Complex64::new(3.0, 0.0)
                    } else {
                        0.0.into()
                    }
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(m in prop_oneof![matrix(12), low_rank_matrix(12)]) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.dim(), m.cols());
        for v in &k.basis {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_reproduces_rhs(m in matrix(8), x in prop::collection::vec(complex_scalar(), 8)) {
        let x = Vector::new(x[..m.cols()].to_vec());
        let b = m.mul_vec(&x);
        let y = solve(&m, &b).expect("b is in the range");
        prop_assert_eq!(m.mul_vec(&y), b.clone());
        let mut off = b;
        off[0] += &Scalar::one();
        if let Ok(z) = solve(&m, &off) {
            prop_assert_eq!(m.mul_vec(&z), off);
        } else {
            prop_assert!(rank(&m) < m.rows());
        }
    }

    #[test]
    fn eigh_trace_and_residuals(g in hermitian(8)) {
        let e = eigh(&g).unwrap();
        let scale = g.max_abs().max(1.0);
        let trace: f64 = e.values.iter().sum();
        prop_assert!((trace - g.trace().re).abs() <= 1e-10 * scale * g.rows() as f64);
        prop_assert!(e.values.windows(2).all(|p| p[0] <= p[1]));
        for k in 0..g.rows() {
            let v = e.vectors.column(k);
            let gv = g.mul_vec(&v);
            let r: f64 = gv.iter().zip(&v).map(|(a, b)| (a - b * e.values[k]).norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(r <= 1e-9 * scale, "residual {r}");
        }
    }

    #[test]
    fn plus_and_minus_sum_to_twice_alpha(w in window(), a in scalar(), b in scalar()) {
        let m = w.derive(&DerivedSpec::new(a.clone(), b.clone(), Sign::Plus)).unwrap();
        let n = w.derive(&DerivedSpec::new(a.clone(), b, Sign::Minus)).unwrap();
        let two_a = &a + &a;
        for k in 1..=w.len() {
            prop_assert_eq!(m.f(k).add(n.f(k)), w.f(k).scale(&two_a));
        }
    }

    #[test]
    fn closed_form_equals_recursion(
        d in 1usize..=4,
        entries in prop::collection::vec(scalar(), 16),
        v in prop::collection::vec(complex_scalar(), 8),
    ) {
        let t = Mat::from_rows((0..d).map(|i| entries[i * d..(i + 1) * d].to_vec()).collect());
        let f1 = Vector::new(v[..d].to_vec());
        let f2 = Vector::new(v[4..4 + d].to_vec());
        let rec = recursion_iterates(&t, &f1, &f2, 14).unwrap();
        for n in 4..=14 {
            prop_assert_eq!(binomial_plan(n).unwrap().evaluate(&t, &f1, &f2), rec[n - 1].clone(), "n = {}", n);
        }
    }

    #[test]
    fn sum_identities_hold(w in window()) {
        for r in check_sum_identities(&w).unwrap() {
            prop_assert!(!r.is_fail(), "{:?}", r);
        }
    }

    #[test]
    fn file_round_trip(w in window(), unknown in any::<bool>()) {
        let w = if unknown { w.with_tail(TailPolicy::Unknown) } else { w };
        let loaded = LoadedWindow::Exact(w);
        prop_assert_eq!(parse_window(&write_window(&loaded)).unwrap(), loaded);
    }

    #[test]
    fn transport_preserves_representations(
        n in 3usize..=6,
        seed in any::<u64>(),
        extra in 0usize..=2,
        entries in prop::collection::vec(-3i64..=3, 64),
    ) {
        let w = SequenceWindow::random(n, n, seed, RandomKind::Independent).unwrap();
        let t = construct(&w, &ExtensionPolicy::HalfF3).unwrap().operator().unwrap();
        let rows = n + extra;
        let k = Mat::from_rows(
            (0..rows).map(|i| (0..n).map(|j| Scalar::from_int(entries[i * n + j])).collect()).collect(),
        );
        prop_assume!(rank(&k) == n);
        let out = transport(&w, &t, &k).unwrap();
        prop_assert!(verify(&out.window, &out.operator).unwrap().is_pass());
        prop_assert_eq!(&out.operator.mat, &t.mat);
        prop_assert_eq!(out.operator.tf1, k.mul_vec(&t.tf1));
    }
}
