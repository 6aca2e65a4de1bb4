use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{rank, Mat, Scalar, Vector};
use crate::spectral::CMat;

/// How a finite window stands in for an infinite sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailPolicy {
    /// `f_n = 0` for every `n > N`; infinite sums become finite and exact.
    Zero,
    /// Nothing is known past `f_N`; only identities the window justifies are evaluated.
    Unknown,
}

impl fmt::Display for TailPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TailPolicy::Zero => "zero",
            TailPolicy::Unknown => "unknown",
        })
    }
}

/// A finite prefix `f_1..f_N` of a sequence in an exact `dim`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceWindow {
    pub dim: usize,
    pub vectors: Vec<Vector>,
    pub tail: TailPolicy,
    pub label: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Parameters of the derived sequence `{alpha f_n + sign * beta f_{n+1}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSpec {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub sign: Sign,
}

impl DerivedSpec {
    pub fn new(alpha: Scalar, beta: Scalar, sign: Sign) -> Self {
        DerivedSpec { alpha, beta, sign }
    }

    /// `{f_n + f_{n+1}}`
    pub fn sum() -> Self {
        DerivedSpec::new(Scalar::one(), Scalar::one(), Sign::Plus)
    }

    /// `{f_n - f_{n+1}}`
    pub fn difference() -> Self {
        DerivedSpec::new(Scalar::one(), Scalar::one(), Sign::Minus)
    }

    pub fn with_sign(&self, sign: Sign) -> Self {
        DerivedSpec {
            sign,
            ..self.clone()
        }
    }

    /// `max(|alpha|^2, |beta|^2)`
    pub fn mu(&self) -> f64 {
        self.alpha
            .abs_f64()
            .powi(2)
            .max(self.beta.abs_f64().powi(2))
    }

    fn signed_beta(&self) -> Scalar {
        match self.sign {
            Sign::Plus => self.beta.clone(),
            Sign::Minus => -&self.beta,
        }
    }
}

impl fmt::Display for DerivedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "({}) f_n {} ({}) f_(n+1)", self.alpha, op, self.beta)
    }
}

/// Names accepted by [`SequenceWindow::canonical`].
pub const CANONICAL_NAMES: &[&str] = &[
    "onb",
    "ex_e1e1",
    "ex_e123e1",
    "ex_norep",
    "ex_e2e2",
    "sum_pairs",
];

/// Position-by-position listing of a named window as 1-based basis indices.
fn canonical_pattern(name: &str, n: usize) -> Option<Vec<Vec<usize>>> {
    let single = |f: fn(usize) -> usize| Some((1..=n).map(|k| vec![f(k)]).collect());
    match name {
        "onb" => single(|k| k),
        "ex_e1e1" => single(|k| if k == 1 { 1 } else { k - 1 }),
        "ex_e123e1" => single(|k| match k {
            1..=3 => k,
            4 => 1,
            _ => k - 1,
        }),
        "ex_norep" => single(|k| match k {
            1 | 2 => k,
            3 => 1,
            _ => k - 1,
        }),
        "ex_e2e2" => single(|k| match k {
            1..=3 => k,
            4 | 5 => 2,
            _ => k - 2,
        }),
        "sum_pairs" => Some((1..=n).map(|k| vec![k, k + 1]).collect()),
        _ => None,
    }
}

/// Distribution of random windows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RandomKind {
    Independent,
    Dependent,
}

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let num = rng.gen_range(-9..=9);
    let den = [1, 2, 3][rng.gen_range(0..3)];
    Scalar::ratio(num, den)
}

fn random_entry(rng: &mut ChaCha8Rng, complex: bool) -> Scalar {
    let re = random_rational(rng);
    if complex {
        Scalar::complex(re, random_rational(rng))
    } else {
        re
    }
}

fn random_vectors(rng: &mut ChaCha8Rng, n: usize, d: usize, complex: bool) -> Vec<Vector> {
    (0..n)
        .map(|_| Vector::new((0..d).map(|_| random_entry(rng, complex)).collect()))
        .collect()
}

impl SequenceWindow {
    pub fn new(
        dim: usize,
        vectors: Vec<Vector>,
        tail: TailPolicy,
        label: impl Into<String>,
    ) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
        Ok(SequenceWindow {
            dim,
            vectors,
            tail,
            label: label.into(),
        })
    }

    /// One of the named windows from [`CANONICAL_NAMES`], with zero tail.
    pub fn canonical(name: &str, n: usize, d: usize) -> Result<Self> {
        let pattern =
            canonical_pattern(name, n).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        let needed = pattern.iter().flatten().copied().max().unwrap_or(0).max(1);
        if d < needed {
            return Err(Error::DimTooSmall { needed, got: d });
        }
        let vectors = pattern
            .iter()
            .map(|idx| {
                idx.iter()
                    .fold(Vector::zeros(d), |acc, &k| acc.add(&Vector::basis(d, k)))
            })
            .collect();
        SequenceWindow::new(d, vectors, TailPolicy::Zero, format!("{name} N={n} d={d}"))
    }

    /// Seeded random window with entries `p/q`, `p` in [-9, 9], `q` in {1, 2, 3}.
    pub fn random(n: usize, d: usize, seed: u64, kind: RandomKind) -> Result<Self> {
        Self::random_impl(n, d, seed, kind, false)
    }

    /// As [`SequenceWindow::random`] with independent random imaginary parts.
    pub fn random_complex(n: usize, d: usize, seed: u64, kind: RandomKind) -> Result<Self> {
        Self::random_impl(n, d, seed, kind, true)
    }

    fn random_impl(n: usize, d: usize, seed: u64, kind: RandomKind, complex: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyWindow);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vectors = match kind {
            RandomKind::Independent => {
                if n > d {
                    return Err(Error::DimTooSmall { needed: n, got: d });
                }
                loop {
                    let vs = random_vectors(&mut rng, n, d, complex);
                    if rank(&Mat::from_columns(d, &vs)) == n {
                        break vs;
                    }
                }
            }
            RandomKind::Dependent => {
                let mut vs = random_vectors(&mut rng, n, d, complex);
                // f_j is replaced by a combination of its predecessors.
                let j = rng.gen_range(0..n);
                let mut planted = Vector::zeros(d);
                for v in &vs[..j] {
                    let c = Scalar::from_int(rng.gen_range(-2..=2));
                    planted.axpy(&c, v);
                }
                vs[j] = planted;
                vs
            }
        };
        let kind_name = match kind {
            RandomKind::Independent => "independent",
            RandomKind::Dependent => "dependent",
        };
        let field = if complex { " complex" } else { "" };
        SequenceWindow::new(
            d,
            vectors,
            TailPolicy::Zero,
            format!("random {kind_name}{field} N={n} d={d} seed={seed}"),
        )
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `f_n`, 1-based.
    pub fn f(&self, n: usize) -> &Vector {
        &self.vectors[n - 1]
    }

    pub fn with_tail(&self, tail: TailPolicy) -> Self {
        SequenceWindow {
            tail,
            ..self.clone()
        }
    }

    /// Synthesis matrix `T_F` (columns `f_1..f_N`).
    pub fn synthesis(&self) -> Mat {
        Mat::from_columns(self.dim, &self.vectors)
    }

    pub fn to_cmat(&self) -> CMat {
        self.synthesis().to_cmat()
    }

    /// Sub-window `f_from..f_to` (1-based, inclusive), keeping the tail policy.
    pub fn slice(&self, from: usize, to: usize) -> SequenceWindow {
        SequenceWindow {
            dim: self.dim,
            vectors: self.vectors[from - 1..to].to_vec(),
            tail: self.tail,
            label: format!("{}[{from}..{to}]", self.label),
        }
    }

    /// `{alpha f_n + sign * beta f_{n+1}}`. A zero tail keeps all `N` vectors
    /// (with `f_{N+1} = 0`); an unknown tail drops the last one.
    pub fn derive(&self, spec: &DerivedSpec) -> Result<SequenceWindow> {
        if self.is_empty() {
            return Err(Error::EmptyWindow);
        }
        let n = self.len();
        let count = match self.tail {
            TailPolicy::Zero => n,
            TailPolicy::Unknown => n - 1,
        };
        let b = spec.signed_beta();
        let vectors = (0..count)
            .map(|i| {
                let mut v = self.vectors[i].scale(&spec.alpha);
                if i + 1 < n {
                    v.axpy(&b, &self.vectors[i + 1]);
                }
                v
            })
            .collect();
        Ok(SequenceWindow {
            dim: self.dim,
            vectors,
            tail: self.tail,
            label: format!("{} derived {spec}", self.label),
        })
    }

    /// Drops the first `k` vectors: `{f_{k+1}, ..., f_N}`.
    pub fn shift(&self, k: usize) -> Result<SequenceWindow> {
        if k >= self.len() {
            return Err(Error::OutOfRange { k, len: self.len() });
        }
        Ok(SequenceWindow {
            dim: self.dim,
            vectors: self.vectors[k..].to_vec(),
            tail: self.tail,
            label: format!("{} shifted {k}", self.label),
        })
    }

    /// Applies a linear map to every vector.
    pub fn map(&self, k: &Mat, label: impl Into<String>) -> Result<SequenceWindow> {
        if k.cols() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: k.cols(),
            });
        }
        let vectors = self.vectors.iter().map(|v| k.mul_vec(v)).collect();
        SequenceWindow::new(k.rows(), vectors, self.tail, label)
    }
}

/// A window with binary64 entries; supports spectral analysis only.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatWindow {
    pub dim: usize,
    pub vectors: Vec<Vec<Complex64>>,
    pub tail: TailPolicy,
    pub label: String,
}

impl FloatWindow {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn to_cmat(&self) -> CMat {
        CMat::from_columns(self.dim, &self.vectors)
    }
}
