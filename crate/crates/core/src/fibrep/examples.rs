//! Explicit operators for the named windows, written as matrices on the
//! ambient basis `e_1..e_d`.
//!
//! Each column is given by a formula in the basis vectors, projected onto
//! `span{e_1..e_d}`: terms in `e_k` with `k > d` are dropped. Every constraint
//! `T(f_n + f_{n+1}) = f_{n+2}` has its image inside the window, so the
//! projected operator still satisfies all of them.

use crate::error::Result;
use crate::exactla::{Mat, Scalar, Vector};
use crate::sequences::{RandomKind, SequenceWindow};

use super::operator::{
    construct, construct_half_f3, ConstructOutcome, ExtensionPolicy, FibOperator, Method,
};

/// A sparse combination of basis vectors, 1-based.
type Combo = Vec<(usize, Scalar)>;

fn int(v: i64) -> Scalar {
    Scalar::from_int(v)
}

fn half(sign: i64) -> Scalar {
    Scalar::ratio(sign, 2)
}

fn alt(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn to_vector(d: usize, c: &Combo) -> Vector {
    let mut v = Vector::zeros(d);
    for (k, s) in c.iter().filter(|(k, _)| (1..=d).contains(k)) {
        v[k - 1] += s;
    }
    v
}

/// Ambient matrix from per-column formulas, projected onto the first `d` coordinates.
fn ambient(d: usize, column: impl Fn(usize) -> Combo) -> Mat {
    let cols: Vec<Vector> = (1..=d).map(|k| to_vector(d, &column(k))).collect();
    Mat::from_columns(d, &cols)
}

/// `Te_1 = e_2/2`, `Te_n = sum_{i=0}^{n-2} (-1)^i e_{n-i+1} + (-1)^{n+1} e_2/2`.
pub fn e1e1_operator(d: usize) -> Mat {
    ambient(d, |n| {
        if n == 1 {
            return vec![(2, half(1))];
        }
        let mut c: Combo = (0..=n - 2).map(|i| (n - i + 1, int(alt(i)))).collect();
        c.push((2, half(alt(n + 1))));
        c
    })
}

/// `Te_1 = (e_4 + e_3 - e_1)/2`, `Te_2 = (-e_4 + e_3 + e_1)/2`,
/// `Te_3 = (e_4 - e_3 + e_1)/2`, `Te_4 = e_5 - Te_1`, `Te_n = e_{n+1} - Te_{n-1}`.
pub fn e123e1_operator(d: usize) -> Mat {
    let seeds: [Combo; 3] = [
        vec![(4, half(1)), (3, half(1)), (1, half(-1))],
        vec![(4, half(-1)), (3, half(1)), (1, half(1))],
        vec![(4, half(1)), (3, half(-1)), (1, half(1))],
    ];
    let mut cols: Vec<Vector> = Vec::with_capacity(d);
    for n in 1..=d {
        let col = match n {
            1..=3 => to_vector(d, &seeds[n - 1]),
            // The recursion restarts from Te_1 at the repeated e_1.
            _ => {
                let prev = if n == 4 { &cols[0] } else { &cols[n - 2] };
                to_vector(d, &vec![(n + 1, int(1))]).sub(prev)
            }
        };
        cols.push(col);
    }
    Mat::from_columns(d, &cols)
}

/// `Te_1 = e_3 - e_4/2`, `Te_2 = e_4/2`, `Te_3 = e_2 - e_4/2`,
/// `Te_n = sum_{i=0}^{n-4} (-1)^i e_{n-i+1} + (-1)^{n-3} e_4/2`.
pub fn e2e2_operator(d: usize) -> Mat {
    ambient(d, |n| match n {
        1 => vec![(3, int(1)), (4, half(-1))],
        2 => vec![(4, half(1))],
        3 => vec![(2, int(1)), (4, half(-1))],
        _ => {
            let mut c: Combo = (0..=n - 4).map(|i| (n - i + 1, int(alt(i)))).collect();
            c.push((4, half(alt(n - 3))));
            c
        }
    })
}

/// `Te_1 = Te_2 = e_3/2`, `Te_n = sum_{i=0}^{n-3} (-1)^i e_{n+1-i} + (-1)^n e_3/2`.
pub fn half_f3_operator(d: usize) -> Mat {
    ambient(d, |n| {
        if n <= 2 {
            return vec![(3, half(1))];
        }
        let mut c: Combo = (0..=n - 3).map(|i| (n + 1 - i, int(alt(i)))).collect();
        c.push((3, half(alt(n))));
        c
    })
}

/// `Se_1 = 0`, `Se_2 = e_3`, `Se_3 = e_4 - e_3`,
/// `Se_n = (-1)^n e_3 - sum_{i=4}^{n+1} (-1)^{n+i} e_i`.
pub fn companion_operator(d: usize) -> Mat {
    ambient(d, |n| match n {
        1 => vec![],
        2 => vec![(3, int(1))],
        3 => vec![(4, int(1)), (3, int(-1))],
        _ => {
            let mut c: Combo = (4..=n + 1).map(|i| (i, int(-alt(n + i)))).collect();
            c.push((3, int(alt(n))));
            c
        }
    })
}

/// The onb operator pair exactly as typeset: `Te_n` carries `(-1)^n/n` on
/// `e_3` (with `Te_3` taken from the half-f3 formula, as it is not listed),
/// and `Se_n` carries `e_3` with no sign. Both fail verification; kept to
/// document the corrections in [`half_f3_operator`] and [`companion_operator`].
pub fn literal_onb_pair(d: usize) -> (Mat, Mat) {
    let t = ambient(d, |n| match n {
        1 | 2 => vec![(3, half(1))],
        3 => vec![(4, int(1)), (3, half(-1))],
        _ => {
            let mut c: Combo = (4..=n + 1).map(|i| (i, int(-alt(n + i)))).collect();
            c.push((3, Scalar::ratio(alt(n), n as i64)));
            c
        }
    });
    let s = ambient(d, |n| match n {
        1 => vec![],
        2 => vec![(3, int(1))],
        3 => vec![(4, int(1)), (3, int(-1))],
        _ => {
            let mut c: Combo = (4..=n + 1).map(|i| (i, int(-alt(n + i)))).collect();
            c.push((3, int(1)));
            c
        }
    });
    (t, s)
}

/// Result of running one named example.
#[derive(Clone, Debug)]
pub enum ExampleOutcome {
    Operators(Vec<(String, SequenceWindow, FibOperator)>),
    Inconsistent(SequenceWindow, ConstructOutcome),
}

/// The named example windows with their operators. `n` is the window length;
/// the ambient dimension is the smallest that holds the window.
pub fn example(name: &str, n: usize) -> Result<ExampleOutcome> {
    let dim_for = |name: &str| match name {
        "ex_e1e1" | "ex_e123e1" | "ex_norep" => n - 1,
        "ex_e2e2" => n - 2,
        _ => n,
    };
    let d = dim_for(name);
    let window = |w: &str| SequenceWindow::canonical(w, n, d);
    let op = |label: &str,
              w: &SequenceWindow,
              m: &Mat|
     -> Result<(String, SequenceWindow, FibOperator)> {
        Ok((
            label.to_string(),
            w.clone(),
            FibOperator::from_ambient(w, m, Method::Explicit)?,
        ))
    };
    Ok(match name {
        "ex_e1e1" => {
            let w = window(name)?;
            ExampleOutcome::Operators(vec![op("T", &w, &e1e1_operator(d))?])
        }
        "ex_e123e1" => {
            let w = window(name)?;
            ExampleOutcome::Operators(vec![op("T", &w, &e123e1_operator(d))?])
        }
        "ex_e2e2" => {
            let w = window(name)?;
            ExampleOutcome::Operators(vec![op("T", &w, &e2e2_operator(d))?])
        }
        "onb_pair" => {
            let w = window("onb")?;
            ExampleOutcome::Operators(vec![
                op("T", &w, &half_f3_operator(d))?,
                op("S", &w, &companion_operator(d))?,
            ])
        }
        "half_f3" => {
            // The formula in terms of f_n, on a generic independent window.
            let w = SequenceWindow::random(n, n, 1, RandomKind::Independent)?;
            ExampleOutcome::Operators(vec![("T".to_string(), w.clone(), construct_half_f3(&w)?)])
        }
        "ex_norep" => {
            let w = window(name)?;
            let out = construct(&w, &ExtensionPolicy::Zero)?;
            ExampleOutcome::Inconsistent(w, out)
        }
        other => return Err(crate::error::Error::UnknownName(other.to_string())),
    })
}

/// Names accepted by [`example`].
pub const EXAMPLE_NAMES: &[&str] = &[
    "ex_e1e1",
    "ex_e123e1",
    "onb_pair",
    "ex_e2e2",
    "half_f3",
    "ex_norep",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibrep::verify;
    use crate::frames::Witness;

    fn e(d: usize, k: usize) -> Vector {
        Vector::basis(d, k)
    }

    #[test]
    fn explicit_operators_verify() {
        for n in [6, 9, 12] {
            for name in ["ex_e1e1", "ex_e123e1", "ex_e2e2", "onb_pair", "half_f3"] {
                let ExampleOutcome::Operators(ops) = example(name, n).unwrap() else {
                    panic!()
                };
                for (label, w, t) in ops {
                    let r = verify(&w, &t).unwrap();
                    assert!(r.is_pass(), "{name} {label} N={n}: {r:?}");
                    assert_eq!(r.residual, 0.0);
                }
            }
        }
    }

    #[test]
    fn norep_has_certificate() {
        let ExampleOutcome::Inconsistent(w, ConstructOutcome::Inconsistent(cert)) =
            example("ex_norep", 6).unwrap()
        else {
            panic!("expected a certificate")
        };
        assert_eq!(
            cert.witness.coords()[..3],
            Vector::from_ints(&[1, -1, 0]).coords()[..]
        );
        assert!(cert.holds_for(&w));
    }

    #[test]
    fn displayed_columns() {
        let d = 7;
        let t = e1e1_operator(d);
        assert_eq!(t.column(0), e(d, 2).scale(&half(1)));
        let t = e123e1_operator(d);
        assert_eq!(
            t.column(0),
            Vector::new(vec![
                half(-1),
                int(0),
                half(1),
                half(1),
                int(0),
                int(0),
                int(0)
            ])
        );
        assert_eq!(t.column(3), e(d, 5).sub(&t.column(0)));
        let t = e2e2_operator(d);
        assert_eq!(t.column(0), e(d, 3).sub(&e(d, 4).scale(&half(1))));
        assert_eq!(t.column(2), e(d, 2).sub(&e(d, 4).scale(&half(1))));
        let t = half_f3_operator(d);
        assert_eq!(t.column(2), e(d, 4).sub(&e(d, 3).scale(&half(1))));
        let s = companion_operator(d);
        assert!(s.column(0).is_zero());
        assert_eq!(s.column(2), e(d, 4).sub(&e(d, 3)));
    }

    #[test]
    fn literal_pair_fails() {
        let d = 8;
        let w = SequenceWindow::canonical("onb", d, d).unwrap();
        let (t, s) = literal_onb_pair(d);
        let rt = verify(
            &w,
            &FibOperator::from_ambient(&w, &t, Method::Explicit).unwrap(),
        )
        .unwrap();
        let rs = verify(
            &w,
            &FibOperator::from_ambient(&w, &s, Method::Explicit).unwrap(),
        )
        .unwrap();
        assert_eq!(rt.witness, Some(Witness::Index(5)));
        assert_eq!(rs.witness, Some(Witness::Index(6)));
    }

    #[test]
    fn unknown_example() {
        assert!(example("nope", 6).is_err());
    }
}
