//! Fibonacci representation operators: exact construction from the window
//! constraints `T(f_n + f_{n+1}) = f_{n+2}`, the two explicit formulas for
//! independent windows, and verification.
//!
//! Operators live on `span{f_n}` and are stored in the basis formed by the
//! pivot columns of the synthesis matrix.

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rref, solve, Mat, Scalar, Subspace, Vector};
use crate::frames::{CheckResult, Witness};
use crate::sequences::SequenceWindow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Solved from the window constraints.
    Constraint,
    /// `Tf_n = sum_{i=0}^{n} (-1)^i f_{n+1-i}`.
    Alternating,
    /// `Tf_1 = Tf_2 = f_3 / 2`, continued by the alternating recursion.
    HalfF3,
    /// `K T K^+` on the image window `{K f_n}`.
    Transported,
    /// Given directly as a matrix on the ambient space.
    Explicit,
}

/// How the value of `Tf_1` was fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extension {
    /// `f_1` lies in the span of the constrained sums, so the window forces `Tf_1`.
    Determined,
    Zero,
    HalfF3,
    Pinned,
    /// Fixed by an explicit formula or inherited from another operator.
    Formula,
}

/// Choice of `Tf_1` when the window constraints leave it free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionPolicy {
    Zero,
    HalfF3,
    Pinned(Vector),
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FibOperator {
    /// Pivot columns (0-based) of the synthesis matrix; the basis of `span{f_n}`.
    pub span_basis: Vec<usize>,
    /// The basis vectors themselves, as columns.
    #[serde(skip)]
    pub basis: Mat,
    /// `T` in the span basis: `T(B x) = B (mat x)`.
    pub mat: Mat,
    pub method: Method,
    pub extension: Extension,
    pub tf1: Vector,
    /// Coordinates of `f_1` in the span basis.
    #[serde(skip)]
    pub f1_coords: Vector,
}

/// Certificate that no representation exists: `sum c_n (f_n + f_{n+1}) = 0`
/// while `sum c_n f_{n+2} != 0`, with `n` running over `1..=N-2`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Inconsistency {
    pub witness: Vector,
    pub combination: Vector,
    pub image: Vector,
}

impl Inconsistency {
    /// Re-checks both defining equations against the window.
    pub fn holds_for(&self, w: &SequenceWindow) -> bool {
        let k = self.witness.dim();
        if k + 2 > w.len() {
            return false;
        }
        let mut sum = Vector::zeros(w.dim);
        let mut image = Vector::zeros(w.dim);
        for (i, c) in self.witness.coords().iter().enumerate() {
            sum.axpy(c, w.f(i + 1));
            sum.axpy(c, w.f(i + 2));
            image.axpy(c, w.f(i + 3));
        }
        sum.is_zero() && !image.is_zero() && sum == self.combination && image == self.image
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConstructOutcome {
    Operator(FibOperator),
    Inconsistent(Inconsistency),
}

impl ConstructOutcome {
    pub fn operator(self) -> Option<FibOperator> {
        match self {
            ConstructOutcome::Operator(t) => Some(t),
            ConstructOutcome::Inconsistent(_) => None,
        }
    }

    pub fn is_inconsistent(&self) -> bool {
        matches!(self, ConstructOutcome::Inconsistent(_))
    }
}

/// Span basis of a window plus the coordinates of every `f_n` in it.
pub(crate) struct SpanCoords {
    pub pivots: Vec<usize>,
    pub basis: Mat,
    /// `r x N`; column `n-1` holds the coordinates of `f_n`.
    pub coords: Mat,
}

pub(crate) fn span_coords(w: &SequenceWindow) -> SpanCoords {
    let f = w.synthesis();
    let red = rref(&f);
    let r = red.rank();
    let rows: Vec<Vec<Scalar>> = (0..r).map(|i| red.reduced.row(i).to_vec()).collect();
    let coords = if r == 0 {
        Mat::zeros(0, w.len())
    } else {
        Mat::from_rows(rows)
    };
    SpanCoords {
        basis: f.select_columns(&red.pivots),
        pivots: red.pivots,
        coords,
    }
}

impl FibOperator {
    pub fn rank(&self) -> usize {
        self.span_basis.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of `v` in the span basis, if `v` lies in the span.
    pub fn coords_of(&self, v: &Vector) -> Option<Vector> {
        solve(&self.basis, v).ok()
    }

    /// `T v` for `v` in the span.
    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        let x = self.coords_of(v).ok_or(Error::NotInSpan)?;
        Ok(self.basis.mul_vec(&self.mat.mul_vec(&x)))
    }

    /// Images of the basis vectors, as ambient vectors.
    pub fn basis_images(&self) -> Vec<Vector> {
        self.basis.mul(&self.mat).columns()
    }

    /// `ran T` as a subspace of the ambient space.
    pub fn range(&self) -> Subspace {
        Subspace::span(self.dim(), &self.basis_images())
    }

    /// `T` on a window, from a matrix acting on the whole ambient space.
    pub fn from_ambient(w: &SequenceWindow, t: &Mat, method: Method) -> Result<FibOperator> {
        if !t.is_square() || t.rows() != w.dim {
            return Err(Error::DimMismatch {
                expected: w.dim,
                found: t.rows(),
            });
        }
        let sc = span_coords(w);
        let mut cols = Vec::with_capacity(sc.pivots.len());
        for &p in &sc.pivots {
            let image = t.mul_vec(w.f(p + 1));
            let x =
                solve(&sc.basis, &image).map_err(|_| Error::ImageOutsideSpan { index: p + 1 })?;
            cols.push(x);
        }
        let mat = Mat::from_columns(sc.pivots.len(), &cols);
        Ok(FibOperator::assemble(sc, mat, method, Extension::Formula))
    }

    pub(crate) fn assemble(
        sc: SpanCoords,
        mat: Mat,
        method: Method,
        extension: Extension,
    ) -> FibOperator {
        let f1_coords = if sc.coords.cols() == 0 {
            Vector::zeros(sc.pivots.len())
        } else {
            sc.coords.column(0)
        };
        let tf1 = sc.basis.mul_vec(&mat.mul_vec(&f1_coords));
        FibOperator {
            span_basis: sc.pivots,
            basis: sc.basis,
            mat,
            method,
            extension,
            tf1,
            f1_coords,
        }
    }

    /// Same operator with one matrix entry increased by one; used to exercise failure paths.
    pub fn perturbed(&self, i: usize, j: usize) -> FibOperator {
        let mut t = self.clone();
        t.mat[(i, j)] += &Scalar::one();
        t.tf1 = t.basis.mul_vec(&t.mat.mul_vec(&t.f1_coords));
        t
    }
}

fn window_too_short(w: &SequenceWindow) -> Result<()> {
    if w.len() < 3 {
        return Err(Error::WindowTooShort {
            needed: 3,
            got: w.len(),
        });
    }
    Ok(())
}

/// Solves `mat * cols = targets` for `mat` when `cols` has full row rank.
fn solve_right(cols: &Mat, targets: &Mat) -> Mat {
    let r = cols.rows();
    let ct = cols.transpose();
    let rows: Vec<Vec<Scalar>> = (0..targets.rows())
        .map(|i| {
            let rhs = Vector::new(targets.row(i).to_vec());
            solve(&ct, &rhs)
                .expect("constraints are consistent")
                .into_coords()
        })
        .collect();
    if rows.is_empty() {
        Mat::zeros(0, r)
    } else {
        Mat::from_rows(rows)
    }
}

/// Builds a representation from the window constraints
/// `T(f_n + f_{n+1}) = f_{n+2}`, `n = 1..N-2`.
///
/// The constraints fix `T` on `S = span{f_n + f_{n+1} : n <= N-2}`. The
/// remaining freedom is at most two directions: `f_1` (set by `policy`) and,
/// when `f_N` is new, `f_N` itself, whose image would involve `f_{N+1}`; it is
/// set to zero.
pub fn construct(w: &SequenceWindow, policy: &ExtensionPolicy) -> Result<ConstructOutcome> {
    window_too_short(w)?;
    let n = w.len();
    let sc = span_coords(w);
    let r = sc.pivots.len();
    let x = |k: usize| sc.coords.column(k - 1);

    let sums: Vec<Vector> = (1..=n - 2).map(|k| x(k).add(&x(k + 1))).collect();
    let images: Vec<Vector> = (1..=n - 2).map(|k| x(k + 2)).collect();
    let a = Mat::from_columns(r, &sums);
    let y = Mat::from_columns(r, &images);

    if let Some(c) = kernel_basis(&a)
        .basis
        .iter()
        .find(|c| !y.mul_vec(c).is_zero())
    {
        let combination = sc.basis.mul_vec(&a.mul_vec(c));
        let image = sc.basis.mul_vec(&y.mul_vec(c));
        return Ok(ConstructOutcome::Inconsistent(Inconsistency {
            witness: c.clone(),
            combination,
            image,
        }));
    }

    // Keep an independent subset of the constraints, then extend to a basis.
    let piv = rref(&a).pivots;
    let mut cols: Vec<Vector> = piv.iter().map(|&j| sums[j].clone()).collect();
    let mut targets: Vec<Vector> = piv.iter().map(|&j| images[j].clone()).collect();
    let s = Subspace::span(r, &cols);

    let pinned = match policy {
        ExtensionPolicy::Pinned(g) => {
            let gx = solve(&sc.basis, g).map_err(|_| Error::PinOutsideSpan)?;
            Some(gx)
        }
        _ => None,
    };

    let x1 = x(1);
    let extension = if s.contains(&x1) {
        Extension::Determined
    } else {
        let value = match policy {
            ExtensionPolicy::Zero => Vector::zeros(r),
            ExtensionPolicy::HalfF3 => x(3).scale(&Scalar::ratio(1, 2)),
            ExtensionPolicy::Pinned(_) => pinned.clone().expect("pinned coordinates"),
        };
        cols.push(x1.clone());
        targets.push(value);
        match policy {
            ExtensionPolicy::Zero => Extension::Zero,
            ExtensionPolicy::HalfF3 => Extension::HalfF3,
            ExtensionPolicy::Pinned(_) => Extension::Pinned,
        }
    };
    let covered = Subspace::span(r, &cols);
    let xn = x(n);
    if !covered.contains(&xn) {
        cols.push(xn);
        targets.push(Vector::zeros(r));
    }
    debug_assert_eq!(Subspace::span(r, &cols).dim(), r);

    let mat = solve_right(
        &Mat::from_columns(r, &cols),
        &Mat::from_columns(r, &targets),
    );
    let t = FibOperator::assemble(sc, mat, Method::Constraint, extension);

    if let Some(gx) = pinned {
        let forced = t.mat.mul_vec(&x1);
        if forced != gx {
            return Err(Error::PinConflict);
        }
    }
    let check = verify(w, &t)?;
    assert!(
        check.is_pass(),
        "constructed operator fails verification: {check:?}"
    );
    Ok(ConstructOutcome::Operator(t))
}

fn require_independent(w: &SequenceWindow) -> Result<SpanCoords> {
    let sc = span_coords(w);
    if sc.pivots.len() != w.len() {
        return Err(Error::NotIndependent);
    }
    Ok(sc)
}

/// Operator on an independent window given column by column: `images[k]` is
/// the coordinate vector of `Tf_{k+1}`, with `None` standing for the edge
/// column set to zero.
fn from_formula(sc: SpanCoords, images: Vec<Option<Vector>>, method: Method) -> FibOperator {
    let r = sc.pivots.len();
    let cols: Vec<Vector> = images
        .into_iter()
        .map(|v| v.unwrap_or_else(|| Vector::zeros(r)))
        .collect();
    FibOperator::assemble(sc, Mat::from_columns(r, &cols), method, Extension::Formula)
}

/// `Tf_n = sum_{i=0}^{n} (-1)^i f_{n+1-i}` for `n <= N-1`; `Tf_N = 0`, since
/// the formula would need `f_{N+1}`.
pub fn construct_alternating(w: &SequenceWindow) -> Result<FibOperator> {
    let sc = require_independent(w)?;
    let n = w.len();
    let images = (1..=n)
        .map(|k| {
            (k < n).then(|| {
                let mut v = Vector::zeros(n);
                for i in 0..=k {
                    v[k - i] = Scalar::from_int(if i % 2 == 0 { 1 } else { -1 });
                }
                v
            })
        })
        .collect();
    Ok(from_formula(sc, images, Method::Alternating))
}

/// `Tf_1 = Tf_2 = f_3/2` and `Tf_n = sum_{i=0}^{n-3} (-1)^i f_{n+1-i} + (-1)^n f_3 / 2`
/// for `3 <= n <= N-1`; `Tf_N = 0`. The range lies in `span{f_3..f_N}`.
pub fn construct_half_f3(w: &SequenceWindow) -> Result<FibOperator> {
    window_too_short(w)?;
    let sc = require_independent(w)?;
    let n = w.len();
    let half = Scalar::ratio(1, 2);
    let images = (1..=n)
        .map(|k| {
            (k < n).then(|| {
                let mut v = Vector::zeros(n);
                if k >= 3 {
                    for i in 0..=k - 3 {
                        v[k - i] = Scalar::from_int(if i % 2 == 0 { 1 } else { -1 });
                    }
                }
                let sign = if k >= 3 && k % 2 == 1 {
                    -&half
                } else {
                    half.clone()
                };
                v[2] += &sign;
                v
            })
        })
        .collect();
    Ok(from_formula(sc, images, Method::HalfF3))
}

/// Exact check of `T(f_{n-2} + f_{n-1}) = f_n` for `3 <= n <= N`.
pub fn verify(w: &SequenceWindow, t: &FibOperator) -> Result<CheckResult> {
    const NAME: &str = "representation";
    let sc = span_coords(w);
    if sc.pivots != t.span_basis || sc.basis != t.basis {
        return Err(Error::BasisMismatch);
    }
    for n in 3..=w.len() {
        let input = sc.coords.column(n - 3).add(&sc.coords.column(n - 2));
        let diff = t.mat.mul_vec(&input).sub(&sc.coords.column(n - 1));
        if !diff.is_zero() {
            let residual = sc.basis.mul_vec(&diff);
            return Ok(CheckResult::fail_exact(
                NAME,
                residual.max_abs(),
                Witness::Index(n),
            ));
        }
    }
    Ok(CheckResult::pass_exact(NAME))
}
