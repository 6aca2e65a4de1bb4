//! Moving a representation along an injective linear map: if `T` represents
//! `{f_n}` then `K T K^+` represents `{K f_n}`.

use crate::error::{Error, Result};
use crate::exactla::{rank, solve, Mat, Vector};
use crate::sequences::SequenceWindow;

use super::operator::{span_coords, verify, FibOperator, Method};

/// The window `{K f_n}` together with its transported representation.
#[derive(Clone, Debug)]
pub struct Transported {
    pub window: SequenceWindow,
    pub operator: FibOperator,
}

/// `K T K^+` on `span{K f_n}`, with `K^+` the left inverse of `K` on its range.
pub fn transport(w: &SequenceWindow, t: &FibOperator, k: &Mat) -> Result<Transported> {
    if k.cols() != w.dim {
        return Err(Error::DimMismatch {
            expected: w.dim,
            found: k.cols(),
        });
    }
    if rank(k) != k.cols() {
        return Err(Error::NotInjective);
    }
    let label = format!("{} mapped", w.label);
    let window = w.map(k, label)?;
    let sc = span_coords(&window);
    let cols: Vec<Vector> = sc
        .pivots
        .iter()
        .map(|&p| {
            let y = window.f(p + 1);
            let x = solve(k, y).expect("y lies in the range of K");
            let image = k.mul_vec(&t.apply(&x)?);
            Ok(solve(&sc.basis, &image).expect("K maps span{f_n} onto span{K f_n}"))
        })
        .collect::<Result<_>>()?;
    let r = sc.pivots.len();
    let mat = Mat::from_columns(r, &cols);
    let operator = FibOperator::assemble(sc, mat, Method::Transported, t.extension);
    let check = verify(&window, &operator)?;
    assert!(
        check.is_pass() || !verify(w, t)?.is_pass(),
        "transport broke a valid representation"
    );
    Ok(Transported { window, operator })
}

/// Transport along `K*`; injective exactly when `K` is surjective.
pub fn transport_adjoint(w: &SequenceWindow, t: &FibOperator, k: &Mat) -> Result<Transported> {
    require_square(k)?;
    transport(w, t, &k.adjoint())
}

/// Transport along `K K*`; invertible exactly when `K` is surjective.
pub fn transport_gram(w: &SequenceWindow, t: &FibOperator, k: &Mat) -> Result<Transported> {
    require_square(k)?;
    transport(w, t, &k.mul(&k.adjoint()))
}

fn require_square(k: &Mat) -> Result<()> {
    if !k.is_square() {
        return Err(Error::NotSquare {
            rows: k.rows(),
            cols: k.cols(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Scalar;
    use crate::fibrep::{construct, ExtensionPolicy};

    fn setup() -> (SequenceWindow, FibOperator) {
        let w = SequenceWindow::canonical("onb", 4, 4).unwrap();
        let t = construct(&w, &ExtensionPolicy::HalfF3)
            .unwrap()
            .operator()
            .unwrap();
        (w, t)
    }

    #[test]
    fn identity_and_scaling() {
        let (w, t) = setup();
        let same = transport(&w, &t, &Mat::identity(4)).unwrap();
        assert_eq!(same.operator.mat, t.mat);
        assert_eq!(
            same.window,
            SequenceWindow {
                label: same.window.label.clone(),
                ..w.clone()
            }
        );
        let doubled = transport(&w, &t, &Mat::identity(4).scale(&Scalar::from_int(2))).unwrap();
        assert!(verify(&doubled.window, &doubled.operator)
            .unwrap()
            .is_pass());
        assert_eq!(doubled.operator.tf1, t.tf1.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn tall_injective_map() {
        let (w, t) = setup();
        let k = Mat::from_int_rows(&[
            &[1, 0, 0, 0],
            &[1, 1, 0, 0],
            &[0, 2, 1, 0],
            &[0, 0, 1, 3],
            &[1, 0, 0, 1],
        ]);
        let out = transport(&w, &t, &k).unwrap();
        assert_eq!(out.window.dim, 5);
        assert!(verify(&out.window, &out.operator).unwrap().is_pass());
        assert_eq!(out.operator.mat, t.mat);
    }

    #[test]
    fn rejects_non_injective() {
        let (w, t) = setup();
        let k = Mat::from_int_rows(&[&[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(matches!(transport(&w, &t, &k), Err(Error::NotInjective)));
        assert!(matches!(
            transport_adjoint(&w, &t, &k),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn adjoint_variants() {
        let (w, t) = setup();
        let k = Mat::from_int_rows(&[&[1, 2, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, -1], &[0, 0, 1, 1]]);
        for out in [
            transport_adjoint(&w, &t, &k).unwrap(),
            transport_gram(&w, &t, &k).unwrap(),
        ] {
            assert!(verify(&out.window, &out.operator).unwrap().is_pass());
        }
        let singular =
            Mat::from_int_rows(&[&[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(matches!(
            transport_gram(&w, &t, &singular),
            Err(Error::NotInjective)
        ));
    }
}
