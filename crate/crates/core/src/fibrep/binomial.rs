//! Closed form of `f_n` in terms of powers of `T` applied to `f_1` and `f_2`:
//!
//! `f_n = sum_{i=a_n}^{2 a_n} C(i+b_n, 2i-2a_n+b_n) T^{i+b_n} f_2
//!                          + C(i+b_n, 2i-2a_n+b_n+1) T^{i+b_n+1} f_1`
//!
//! with `a_n = floor((n-1)/2)`, `b_n = n - 2 a_n - 2`, and `C(n, k) = 0`
//! whenever `k < 0` or `k > n`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{Mat, Scalar, Vector};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BinomialTerm {
    pub i: i64,
    #[serde(serialize_with = "as_string")]
    pub coeff_f2: BigInt,
    pub power_f2: u32,
    #[serde(serialize_with = "as_string")]
    pub coeff_f1: BigInt,
    pub power_f1: u32,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BinomialPlan {
    pub n: usize,
    pub a_n: i64,
    pub b_n: i64,
    pub terms: Vec<BinomialTerm>,
}

/// Which of the two coefficients of a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Part {
    F1,
    F2,
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

pub fn binomial_plan(n: usize) -> Result<BinomialPlan> {
    if n < 4 {
        return Err(Error::NTooSmall(n));
    }
    let a = ((n - 1) / 2) as i64;
    let b = n as i64 - 2 * a - 2;
    let terms = (a..=2 * a)
        .filter_map(|i| {
            let coeff_f2 = binomial(i + b, 2 * i - 2 * a + b);
            let coeff_f1 = binomial(i + b, 2 * i - 2 * a + b + 1);
            if coeff_f2.is_zero() && coeff_f1.is_zero() {
                return None;
            }
            Some(BinomialTerm {
                i,
                coeff_f2,
                power_f2: (i + b) as u32,
                coeff_f1,
                power_f1: (i + b + 1) as u32,
            })
        })
        .collect();
    Ok(BinomialPlan {
        n,
        a_n: a,
        b_n: b,
        terms,
    })
}

impl BinomialPlan {
    pub fn max_power(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.power_f1.max(t.power_f2))
            .max()
            .unwrap_or(0)
    }

    /// Positions `(term, part)` of every nonzero coefficient.
    pub fn nonzero_coefficients(&self) -> Vec<(usize, Part)> {
        let mut out = Vec::new();
        for (k, t) in self.terms.iter().enumerate() {
            if !t.coeff_f2.is_zero() {
                out.push((k, Part::F2));
            }
            if !t.coeff_f1.is_zero() {
                out.push((k, Part::F1));
            }
        }
        out
    }

    /// The same plan with one coefficient negated.
    pub fn with_flipped_sign(&self, term: usize, part: Part) -> BinomialPlan {
        let mut p = self.clone();
        let c = match part {
            Part::F1 => &mut p.terms[term].coeff_f1,
            Part::F2 => &mut p.terms[term].coeff_f2,
        };
        *c = -c.clone();
        p
    }

    /// Evaluates the plan. Each power `T^k f_1`, `T^k f_2` is computed once,
    /// by repeated application, and shared across terms.
    pub fn evaluate(&self, t: &Mat, f1: &Vector, f2: &Vector) -> Vector {
        let top = self.max_power() as usize;
        let mut p1 = Vec::with_capacity(top + 1);
        let mut p2 = Vec::with_capacity(top + 1);
        p1.push(f1.clone());
        p2.push(f2.clone());
        for k in 1..=top {
            p1.push(t.mul_vec(&p1[k - 1]));
            p2.push(t.mul_vec(&p2[k - 1]));
        }
        let mut acc = Vector::zeros(f1.dim());
        for term in &self.terms {
            acc.axpy(
                &Scalar::from_bigint(term.coeff_f2.clone()),
                &p2[term.power_f2 as usize],
            );
            acc.axpy(
                &Scalar::from_bigint(term.coeff_f1.clone()),
                &p1[term.power_f1 as usize],
            );
        }
        acc
    }
}

impl fmt::Display for BinomialPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |c: &BigInt, p: u32, v: &str| {
            if c.is_zero() {
                return;
            }
            let coeff = if c.is_one() {
                String::new()
            } else {
                c.to_string()
            };
            let power = match p {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{p}"),
            };
            parts.push(format!("{coeff}{power}{v}"));
        };
        for t in &self.terms {
            push(&t.coeff_f2, t.power_f2, "f2");
            push(&t.coeff_f1, t.power_f1, "f1");
        }
        // Order by power, f1 before f2, to read like a polynomial in T.
        parts.sort_by_key(|s| {
            let power = s
                .split("T^")
                .nth(1)
                .and_then(|r| r[..r.len() - 2].parse::<u32>().ok());
            let power = power.unwrap_or(if s.contains('T') { 1 } else { 0 });
            (power, s.ends_with("f2"))
        });
        write!(f, "f{} = {}", self.n, parts.join(" + "))
    }
}

fn check_dims(t: &Mat, f1: &Vector, f2: &Vector) -> Result<()> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    for v in [f1, f2] {
        if v.dim() != t.cols() {
            return Err(Error::DimMismatch {
                expected: t.cols(),
                found: v.dim(),
            });
        }
    }
    Ok(())
}

/// `f_n` from `T`, `f_1`, `f_2` via the closed form (`n >= 4`) or directly (`n <= 3`).
pub fn closed_form_iterate(t: &Mat, f1: &Vector, f2: &Vector, n: usize) -> Result<Vector> {
    check_dims(t, f1, f2)?;
    match n {
        0 => Err(Error::NTooSmall(0)),
        1 => Ok(f1.clone()),
        2 => Ok(f2.clone()),
        3 => Ok(t.mul_vec(&f1.add(f2))),
        _ => Ok(binomial_plan(n)?.evaluate(t, f1, f2)),
    }
}

/// `f_1, ..., f_n` from the recursion `f_k = T(f_{k-2} + f_{k-1})`.
pub fn recursion_iterates(t: &Mat, f1: &Vector, f2: &Vector, n: usize) -> Result<Vec<Vector>> {
    check_dims(t, f1, f2)?;
    let mut out = vec![f1.clone(), f2.clone()];
    while out.len() < n {
        let k = out.len();
        let next = t.mul_vec(&out[k - 2].add(&out[k - 1]));
        out.push(next);
    }
    out.truncate(n);
    Ok(out)
}
