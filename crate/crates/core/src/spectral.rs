//! Floating-point Hermitian spectral routines: eigenvalues by cyclic complex
//! Jacobi rotations, operator norms, and optimal frame bounds.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exactla::{pseudo_inverse, rref};
use crate::sequences::SequenceWindow;

/// Asymmetry above this (relative to the largest entry) is rejected outright.
pub const HERMITIAN_TOLERANCE: f64 = 1e-9;
/// Jacobi stops once the off-diagonal Frobenius norm drops below this times `max(1, ||A||_F)`.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-13;
/// Float windows treat eigenvalues below this fraction of `lambda_max` as outside the span.
pub const SPAN_CUTOFF: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        CMat::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMat { rows, cols, data }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        CMat::from_fn(rows.len(), c, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, cols: &[Vec<Complex64>]) -> Self {
        CMat::from_fn(dim, cols.len(), |i, j| cols[j][i])
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        CMat::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    s += self[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and the
/// matching orthonormal eigenvectors as columns of `vectors`.
#[derive(Clone, Debug)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

fn check_hermitian(g: &CMat) -> Result<CMat> {
    if g.rows != g.cols {
        return Err(Error::NotSquare {
            rows: g.rows,
            cols: g.cols,
        });
    }
    let n = g.rows;
    let scale = g.max_abs().max(1.0);
    let mut asym: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            asym = asym.max((g[(i, j)] - g[(j, i)].conj()).norm());
        }
    }
    if asym > HERMITIAN_TOLERANCE * scale {
        return Err(Error::NonHermitian(asym));
    }
    Ok(CMat::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(g[(i, i)].re, 0.0)
        } else {
            (g[(i, j)] + g[(j, i)].conj()) * 0.5
        }
    }))
}

/// Cyclic Jacobi on a Hermitian matrix. Sweeps visit pairs (p, q), p < q, in
/// row order, so the result is bit-for-bit reproducible.
pub fn eigh(g: &CMat) -> Result<Eigh> {
    let mut a = check_hermitian(g)?;
    let n = a.rows;
    let mut v = CMat::identity(n);
    let threshold = OFF_DIAGONAL_TOLERANCE * a.frobenius().max(1.0);
    let mut converged = a.off_diagonal_norm() < threshold;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = a.off_diagonal_norm() < threshold;
    }
    if !converged {
        return Err(Error::NoConvergence);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMat::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(Eigh { values, vectors })
}

/// One rotation annihilating `a[p][q]`: a phase makes the pair real, then a
/// real Jacobi rotation finishes. `U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]`.
fn rotate(a: &mut CMat, v: &mut CMat, p: usize, q: usize) {
    let g = a[(p, q)];
    let mag = g.norm();
    if mag == 0.0 {
        return;
    }
    let phase = Complex64::from_polar(1.0, -g.arg());
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = if theta >= 0.0 { 1.0 } else { -1.0 } / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let (upp, upq) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0));
    let (uqp, uqq) = (-phase * s, phase * c);
    let n = a.rows;
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * upp + akq * uqp;
        a[(k, q)] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
        a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigs(g: &CMat) -> Result<Vec<f64>> {
    Ok(eigh(g)?.values)
}

/// Largest singular value.
pub fn operator_norm(t: &CMat) -> f64 {
    if t.rows == 0 || t.cols == 0 {
        return 0.0;
    }
    let gram = t.adjoint().mul(t);
    let vals = hermitian_eigs(&gram).expect("t*t is Hermitian");
    vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Norm of `t` restricted to the column span of `d` (columns of `d` independent).
///
/// With `G = d* d = V L V*`, the restricted norm squared is the largest eigenvalue
/// of `G^{-1/2} (t d)* (t d) G^{-1/2}`.
pub fn restricted_norm(t: &CMat, d: &CMat) -> f64 {
    if d.cols == 0 {
        return 0.0;
    }
    let g = eigh(&d.adjoint().mul(d)).expect("Gram matrix is Hermitian");
    let k = d.cols;
    let inv_sqrt = CMat::from_fn(k, k, |i, j| {
        (0..k)
            .map(|l| {
                g.vectors[(i, l)] * g.vectors[(j, l)].conj()
                    / g.values[l].max(f64::MIN_POSITIVE).sqrt()
            })
            .sum()
    });
    let td = t.mul(d).mul(&inv_sqrt);
    operator_norm(&td)
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct SpectralSummary {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub sigma_min: f64,
    pub tolerance: f64,
}

impl SpectralSummary {
    fn zero(tolerance: f64) -> Self {
        SpectralSummary {
            lambda_min: 0.0,
            lambda_max: 0.0,
            sigma_min: 0.0,
            tolerance,
        }
    }
}

fn smaller_gram(f: &CMat) -> CMat {
    if f.rows <= f.cols {
        f.mul(&f.adjoint())
    } else {
        f.adjoint().mul(f)
    }
}

/// Optimal frame-sequence bounds of an exact window.
///
/// The span is identified by exact rank, so the bounds are the extreme nonzero
/// eigenvalues of `F F*`. `sigma_min` comes from the exact pseudo-inverse as
/// `1 / ||F^+||`, which stays accurate when `sigma_min^2` is far below machine
/// epsilon.
pub fn frame_bounds(w: &SequenceWindow) -> SpectralSummary {
    let f = w.synthesis();
    let r = rref(&f).rank();
    let vals = hermitian_eigs(&smaller_gram(&f.to_cmat())).expect("Gram matrix is Hermitian");
    let lambda_max = vals.last().copied().unwrap_or(0.0).max(0.0);
    let tolerance = SPAN_CUTOFF * lambda_max;
    if r == 0 {
        return SpectralSummary::zero(tolerance);
    }
    let lambda_min = vals[vals.len() - r].max(0.0);
    let sigma_min = 1.0 / operator_norm(&pseudo_inverse(&f).to_cmat());
    SpectralSummary {
        lambda_min,
        lambda_max,
        sigma_min,
        tolerance,
    }
}

/// Frame-sequence bounds of a float synthesis matrix, separating the span from
/// its complement with the relative cutoff [`SPAN_CUTOFF`].
pub fn frame_bounds_float(f: &CMat) -> SpectralSummary {
    let vals = hermitian_eigs(&smaller_gram(f)).expect("Gram matrix is Hermitian");
    let lambda_max = vals.last().copied().unwrap_or(0.0).max(0.0);
    let tolerance = SPAN_CUTOFF * lambda_max;
    let Some(&lambda_min) = vals.iter().find(|&&v| v > tolerance) else {
        return SpectralSummary::zero(tolerance);
    };
    SpectralSummary {
        lambda_min,
        lambda_max,
        sigma_min: lambda_min.sqrt(),
        tolerance,
    }
}

/// Number of eigenvalues of `F F*` above the float span cutoff.
pub fn float_rank(f: &CMat) -> usize {
    let vals = hermitian_eigs(&smaller_gram(f)).expect("Gram matrix is Hermitian");
    let lambda_max = vals.last().copied().unwrap_or(0.0);
    vals.iter()
        .filter(|&&v| v > SPAN_CUTOFF * lambda_max && v > 0.0)
        .count()
}
