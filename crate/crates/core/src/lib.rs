//! Fibonacci representations of sequences on finite windows.
//!
//! A sequence `{f_n}` is represented by an operator `T` on `span{f_n}` when
//! `f_{n+2} = T(f_n + f_{n+1})` for every `n`. This crate builds such operators
//! on finite windows, certifies when none exists, and checks the surrounding
//! frame-theoretic identities and bounds. Every rank, kernel and construction
//! decision is made in exact Gaussian-rational arithmetic; only spectral
//! quantities (frame bounds, norms) use floating point.

pub mod error;
pub mod exactla;
pub mod fibrep;
pub mod frames;
pub mod sequences;
pub mod spectral;
pub mod suite;

pub use error::{Error, ParseError, Result};
pub use exactla::{KernelSpace, Mat, Rational, Scalar, Subspace, Vector};
pub use fibrep::{
    construct, verify, BinomialPlan, ConstructOutcome, ExtensionPolicy, FibOperator, Inconsistency,
    Method,
};
pub use frames::{CheckResult, FrameReport, Outcome, Witness};
pub use sequences::{
    DerivedSpec, FloatWindow, LoadedWindow, RandomKind, SequenceWindow, Sign, TailPolicy,
};
pub use spectral::{CMat, SpectralSummary};
