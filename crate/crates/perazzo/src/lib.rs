//! Perazzo forms and their Artinian Gorenstein algebras.
//!
//! A Perazzo form is a homogeneous polynomial
//! `F = X_0 p_0 + … + X_n p_n + G` with the `p_i` in a smaller set of
//! U-variables, linearly independent but algebraically dependent. The
//! associated algebra `A_F` is the quotient of the dual polynomial ring by
//! the annihilator of `F` under the differentiation action. This crate
//! builds such forms, computes their Hilbert functions by exact matrix
//! ranks, decides weak/strong Lefschetz properties from multiplication-map
//! ranks, and computes graded Betti numbers through Koszul homology, all
//! over a large prime field or exact rationals, never floating point.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod comb;
pub mod form;
pub mod formdoc;
pub mod hilbert;
pub mod lefschetz;
pub mod linalg;
pub mod poly;
pub mod resolution;
mod seed;

pub use algebra::{check_exact_sequence, AlgebraModel, LinearForm, ModuleModel};
pub use form::{CanonicalKind, FormError, PerazzoForm, ValidationReport};
pub use formdoc::FormDocument;
pub use hilbert::{ExtremesReport, HVector};
pub use lefschetz::{LefschetzMode, LefschetzVerdict};
pub use linalg::{ExactMatrix, Field, FieldSpec, PrimeField, RationalField, DEFAULT_PRIME};
pub use poly::{Monomial, Polynomial, VarLayout};
pub use resolution::BettiTable;
