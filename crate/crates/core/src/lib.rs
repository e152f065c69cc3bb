//! Verification workbench for the Heegaard-type quantum 3-spheres.
//!
//! The crate is organised around five layers:
//!
//! * [`ncpoly`] - presented *-algebras (quantum spheres, quantum disc) with
//!   rewriting to canonical linear bases,
//! * [`repn`] - truncated Hilbert-space representations as sparse complex
//!   matrices, relation residuals and numerical independence ranks,
//! * [`isomap`] - the mutually inverse maps between the `(p, q)` and the
//!   `(0, 0)` parameter regimes, realised on representations,
//! * [`crossed`] - Toeplitz crossed products, the noncommutative torus, the
//!   fiber product and the matrix-unit embeddings,
//! * [`ktheory`] - finitely generated abelian groups, Smith normal form and
//!   six-term exact sequence solving.
//!
//! [`suite`] ties them into reproducible verification runs.

pub mod crossed;
pub mod error;
pub mod isomap;
pub mod ktheory;
pub mod ncpoly;
pub mod repn;
pub mod suite;

pub use num_complex::Complex64;

pub use crate::crossed::{
    CrossedElement, CrossedPresentation, FiberPair, MatrixUnitElement, Summand, TorusElement,
    TorusPresentation,
};
pub use crate::error::{Error, Result};
pub use crate::ktheory::{FGAbelianGroup, GroupHom, IntMatrix, SixTermData};
pub use crate::ncpoly::{
    AlgebraKind, DiscElement, DiscPresentation, Element, Letter, NCElement, Presentation,
    SphereMonomial, SpherePresentation, Tag,
};
pub use crate::repn::{Cutoff, RepKind, RepSpec, TruncatedOperator};
pub use crate::suite::{SuiteConfig, SuiteName, VerificationReport};
