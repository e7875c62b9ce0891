//! Representations of quantum elementary abelian groups
//! `A = k[X_1..X_n]/(X_i^ell) ⋊ (Z/ell)^n` over finite fields: modules,
//! Heller shifts, and rank varieties computed by exhaustive point scans.

pub mod error;
pub mod homol;
pub mod hopf;
pub mod io;
pub mod rep;
pub mod scalars;
pub mod suites;
pub mod variety;

pub use error::{Error, Result};
pub use hopf::{AlgebraElement, AntipodeConvention, HopfAlgebra, Monomial};
pub use rep::{Char, ModuleRep, RModule, RqModule};
pub use scalars::{Fe, Field, FieldCtx, Mat};
pub use variety::{PPoint, VarietySet};
