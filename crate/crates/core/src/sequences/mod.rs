//! Sequence windows: named examples, seeded random generators, the derived
//! sequences `{alpha f_n +- beta f_{n+1}}`, and the on-disk file format.

mod format;
mod window;

pub use format::{
    load_window, parse_float_scalar, parse_window, save_window, write_window, LoadedWindow,
};
pub use window::{
    DerivedSpec, FloatWindow, RandomKind, SequenceWindow, Sign, TailPolicy, CANONICAL_NAMES,
};
