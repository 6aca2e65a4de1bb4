//! Row reduction over Gaussian rationals and the subspace machinery built on it.
//!
//! Pivot policy: scan columns left to right, take the first row (at or below the
//! current one) with a nonzero entry, scale the pivot to 1 and clear the column
//! both above and below. The reduced form is unique, so everything derived from
//! it (kernels, particular solutions, witnesses) is reproducible.

use super::{Mat, Scalar, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(m: &Mat) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].inv().expect("pivot is nonzero");
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let delta = &factor * &a[(r, j)];
                a[(i, j)] -= &delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { reduced: a, pivots }
}

pub fn rank(m: &Mat) -> usize {
    rref(m).rank()
}

/// `b` is not in the column span of the system matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("linear system is inconsistent")]
pub struct Inconsistent;

/// Particular solution of `m x = b` with every free variable set to zero.
pub fn solve(m: &Mat, b: &Vector) -> Result<Vector, Inconsistent> {
    assert_eq!(m.rows(), b.dim(), "right-hand side has wrong length");
    let aug = m.hstack(&Mat::from_columns(b.dim(), std::slice::from_ref(b)));
    let red = rref(&aug);
    if red.pivots.last() == Some(&m.cols()) {
        return Err(Inconsistent);
    }
    let mut x = Vector::zeros(m.cols());
    for (i, &p) in red.pivots.iter().enumerate() {
        x[p] = red.reduced[(i, m.cols())].clone();
    }
    Ok(x)
}

/// An exact subspace of F^n held as its unique reduced-row-echelon basis.
///
/// Because the basis is canonical, two `Subspace`s compare equal exactly when
/// they are the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Subspace {
    pub ambient_len: usize,
    pub basis: Vec<Vector>,
    #[serde(skip)]
    pivots: Vec<usize>,
}

/// Kernel of a synthesis map: coefficient vectors c with sum c_n f_n = 0.
pub type KernelSpace = Subspace;

impl Subspace {
    pub fn zero(ambient_len: usize) -> Self {
        Subspace {
            ambient_len,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span(ambient_len: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient_len);
        }
        let rows = Mat::from_columns(ambient_len, vectors).transpose();
        let red = rref(&rows);
        let basis = (0..red.rank())
            .map(|i| Vector::new(red.reduced.row(i).to_vec()))
            .collect();
        Subspace {
            ambient_len,
            basis,
            pivots: red.pivots,
        }
    }

    /// Column span of `m`.
    pub fn column_space(m: &Mat) -> Self {
        Subspace::span(m.rows(), &m.columns())
    }

    pub fn full(ambient_len: usize) -> Self {
        let basis: Vec<Vector> = (1..=ambient_len)
            .map(|k| Vector::basis(ambient_len, k))
            .collect();
        Subspace::span(ambient_len, &basis)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    /// Remainder of `v` after eliminating against the basis; zero iff `v` is in the subspace.
    pub fn residual(&self, v: &Vector) -> Vector {
        assert_eq!(v.dim(), self.ambient_len);
        let mut r = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let coef = -&r[p];
                r.axpy(&coef, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.residual(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// First basis vector of `self` that `other` does not contain.
    pub fn first_outside(&self, other: &Subspace) -> Option<&Vector> {
        self.basis.iter().find(|b| !other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_len, &all)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_len, other.ambient_len);
        if self.is_trivial() || other.is_trivial() {
            return Subspace::zero(self.ambient_len);
        }
        // x = U a = W b  <=>  [U | -W] (a, b) = 0
        let u = Mat::from_columns(self.ambient_len, &self.basis);
        let neg_w: Vec<Vector> = other
            .basis
            .iter()
            .map(|w| w.scale(&Scalar::from_int(-1)))
            .collect();
        let joint = u.hstack(&Mat::from_columns(self.ambient_len, &neg_w));
        let ker = kernel_basis(&joint);
        let k = self.dim();
        let vecs: Vec<Vector> = ker
            .basis
            .iter()
            .map(|ab| u.mul_vec(&Vector::new(ab.coords()[..k].to_vec())))
            .collect();
        Subspace::span(self.ambient_len, &vecs)
    }

    /// Vectors of `self` whose coordinates at positions `idx` vanish.
    pub fn with_zero_coords(&self, idx: &[usize]) -> Subspace {
        let mut constraint = Mat::zeros(idx.len(), self.ambient_len);
        for (r, &i) in idx.iter().enumerate() {
            constraint[(r, i)] = Scalar::one();
        }
        self.intersect(&kernel_basis(&constraint))
    }
}

/// Canonical basis of `{c : m c = 0}`.
pub fn kernel_basis(m: &Mat) -> KernelSpace {
    let red = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !red.pivots.contains(c)).collect();
    let vectors: Vec<Vector> = free
        .iter()
        .map(|&f| {
            let mut v = Vector::zeros(n);
            v[f] = Scalar::one();
            for (i, &p) in red.pivots.iter().enumerate() {
                v[p] = -&red.reduced[(i, f)];
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors)
}
