//! Analysis of discrete biological models as polynomial dynamical systems over prime
//! fields.
//!
//! Boolean networks, multi-valued logical models and probabilistic networks are
//! translated into polynomial dynamical systems `f: F_p^n -> F_p^n`. Steady states and
//! limit cycles are found by solving `f^m(x) = x` with lexicographic Gröbner bases;
//! small systems can also be enumerated exhaustively.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod ffpoly;
pub mod groebner;
pub mod model;
pub mod translate;

pub use error::{Error, Result};
