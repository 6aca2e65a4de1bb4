//! Exact linear algebra over Gaussian rationals.
//!
//! Every independence, kernel and construction decision in the crate goes
//! through this layer; floating point never decides a rank.

mod matrix;
mod rref;
mod scalar;

pub use matrix::{Mat, Vector};
pub use rref::{kernel_basis, rank, rref, solve, Inconsistent, KernelSpace, Rref, Subspace};
pub use scalar::{Rational, Scalar};

/// Exact Moore-Penrose pseudo-inverse, via a rank factorization `m = C R`.
///
/// `C` holds the pivot columns of `m` and `R` the nonzero rows of its reduced
/// form, so `m^+ = R^* (R R^*)^{-1} (C^* C)^{-1} C^*`.
pub fn pseudo_inverse(m: &Mat) -> Mat {
    let red = rref(m);
    let r = red.rank();
    if r == 0 {
        return Mat::zeros(m.cols(), m.rows());
    }
    let c = m.select_columns(&red.pivots);
    let rows: Vec<Vec<Scalar>> = (0..r).map(|i| red.reduced.row(i).to_vec()).collect();
    let rr = Mat::from_rows(rows);
    let cc_inv = inverse(&c.adjoint().mul(&c)).expect("C*C is invertible");
    let rr_inv = inverse(&rr.mul(&rr.adjoint())).expect("RR* is invertible");
    rr.adjoint().mul(&rr_inv).mul(&cc_inv).mul(&c.adjoint())
}

/// Exact inverse of a square matrix, `None` if singular.
pub fn inverse(m: &Mat) -> Option<Mat> {
    assert!(m.is_square());
    let n = m.rows();
    let red = rref(&m.hstack(&Mat::identity(n)));
    if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
        return None;
    }
    let idx: Vec<usize> = (n..2 * n).collect();
    Some(red.reduced.select_columns(&idx))
}
