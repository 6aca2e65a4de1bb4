//! Sequence files: a JSON object `{dim, tail, label, vectors}` whose vectors
//! are lists of scalar strings. Exact files use the `p/q[+-r/s i]` grammar;
//! float files use decimal literals throughout. Mixing the two is an error.

use std::path::Path;

use num_complex::Complex64;

use super::{FloatWindow, SequenceWindow, TailPolicy};
use crate::error::{ParseError, Result};
use crate::exactla::{Scalar, Vector};

#[derive(Debug, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    dim: usize,
    tail: String,
    label: String,
    vectors: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoadedWindow {
    Exact(SequenceWindow),
    Float(FloatWindow),
}

impl LoadedWindow {
    pub fn len(&self) -> usize {
        match self {
            LoadedWindow::Exact(w) => w.len(),
            LoadedWindow::Float(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        match self {
            LoadedWindow::Exact(w) => w.dim,
            LoadedWindow::Float(w) => w.dim,
        }
    }
}

fn is_decimal(s: &str) -> bool {
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    !body.is_empty()
        && body.bytes().any(|b| b.is_ascii_digit())
        && body
            .bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'-' | b'+'))
        && body.parse::<f64>().is_ok()
}

/// Decimal literal, or `re+im i` / `re-im i` with decimal parts.
pub fn parse_float_scalar(s: &str) -> std::result::Result<Complex64, ParseError> {
    let bad = || ParseError::Float(s.to_string());
    if let Some(body) = s.strip_suffix(" i") {
        // Split at the last sign that is not part of an exponent.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
            .ok_or_else(bad)?;
        let (re, im) = body.split_at(split);
        let im_digits = &im[1..];
        if !is_decimal(re) || !is_decimal(im_digits) || im_digits.starts_with(['+', '-']) {
            return Err(bad());
        }
        let sign = if im.starts_with('-') { -1.0 } else { 1.0 };
        return Ok(Complex64::new(
            re.parse().map_err(|_| bad())?,
            sign * im_digits.parse::<f64>().map_err(|_| bad())?,
        ));
    }
    if !is_decimal(s) {
        return Err(bad());
    }
    Ok(Complex64::new(s.parse().map_err(|_| bad())?, 0.0))
}

fn format_float(z: &Complex64) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else if z.im.is_sign_negative() {
        format!("{:?}-{:?} i", z.re, -z.im)
    } else {
        format!("{:?}+{:?} i", z.re, z.im)
    }
}

fn parse_tail(s: &str) -> std::result::Result<TailPolicy, ParseError> {
    match s {
        "zero" => Ok(TailPolicy::Zero),
        "unknown" => Ok(TailPolicy::Unknown),
        other => Err(ParseError::Tail(other.to_string())),
    }
}

/// Parses a sequence document, choosing exact or float mode from its entries.
pub fn parse_window(text: &str) -> std::result::Result<LoadedWindow, ParseError> {
    let raw: RawFile =
        serde_json::from_str(text).map_err(|e| ParseError::Document(e.to_string()))?;
    if raw.dim == 0 {
        return Err(ParseError::Document("dim must be positive".into()));
    }
    let tail = parse_tail(&raw.tail)?;
    for (index, v) in raw.vectors.iter().enumerate() {
        if v.len() != raw.dim {
            return Err(ParseError::VectorLength {
                index: index + 1,
                found: v.len(),
                dim: raw.dim,
            });
        }
    }
    let entries = || raw.vectors.iter().flatten();
    let any_exact = entries().any(|s| s.contains('/'));
    let any_float = entries().any(|s| !s.contains('/'));
    if any_exact && any_float {
        // Report an entry that is malformed in both grammars before calling it mixed.
        if let Some(s) =
            entries().find(|s| s.parse::<Scalar>().is_err() && parse_float_scalar(s).is_err())
        {
            return Err(ParseError::Scalar(s.clone()));
        }
        return Err(ParseError::MixedModes);
    }
    if any_float {
        let vectors = raw
            .vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|s| parse_float_scalar(s))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        return Ok(LoadedWindow::Float(FloatWindow {
            dim: raw.dim,
            vectors,
            tail,
            label: raw.label,
        }));
    }
    let vectors = raw
        .vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|s| s.parse::<Scalar>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Vector::new)
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(LoadedWindow::Exact(SequenceWindow {
        dim: raw.dim,
        vectors,
        tail,
        label: raw.label,
    }))
}

/// Serializes a window to the sequence-file format (pretty JSON, trailing newline).
pub fn write_window(w: &LoadedWindow) -> String {
    let raw = match w {
        LoadedWindow::Exact(w) => RawFile {
            dim: w.dim,
            tail: w.tail.to_string(),
            label: w.label.clone(),
            vectors: w
                .vectors
                .iter()
                .map(|v| v.coords().iter().map(Scalar::to_string).collect())
                .collect(),
        },
        LoadedWindow::Float(w) => RawFile {
            dim: w.dim,
            tail: w.tail.to_string(),
            label: w.label.clone(),
            vectors: w
                .vectors
                .iter()
                .map(|v| v.iter().map(format_float).collect())
                .collect(),
        },
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("sequence file serializes");
    s.push('\n');
    s
}

pub fn load_window(path: &Path) -> Result<LoadedWindow> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_window(&text)?)
}

pub fn save_window(path: &Path, w: &LoadedWindow) -> Result<()> {
    std::fs::write(path, write_window(w))?;
    Ok(())
}
