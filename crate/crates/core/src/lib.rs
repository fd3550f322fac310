//! Exact-arithmetic classification of topological fixed point data for
//! semifree Hamiltonian circle actions on six-dimensional monotone
//! symplectic manifolds with two-dimensional extremal fixed components,
//! together with a toric verifier for the Fano realizations.
//!
//! The pipeline:
//!
//! * [`lattice`] - integer second-cohomology lattices of the reduced spaces
//!   with intersection pairing, first Chern class, and blow-up functoriality;
//! * [`exceptional`] - enumeration of exceptional classes (the vanishing-
//!   cycle candidates) and the ruled/P2-stack basis identifications;
//! * [`dh`] - Duistermaat-Heckman evolution of the reduced symplectic class
//!   and the Euler class across walls;
//! * [`localization`] - closed-form equivariant integrals and the linear
//!   constraint identities they impose;
//! * [`splitting`] - adjunction-driven decomposition of level-zero fixed
//!   classes into connected components;
//! * [`classifier`] - the case tree, producing the canonical 21-row table;
//! * [`toric`] - Delzant polytopes, circle subgroups, and the matcher that
//!   confirms each example realizes the record the classification predicts;
//! * [`emit`] - versioned JSON, markdown, and TSV renderings.

pub mod classifier;
pub mod dh;
pub mod emit;
pub mod error;
pub mod exceptional;
pub mod lattice;
pub mod localization;
pub mod splitting;
pub mod toric;

pub use classifier::{classify_all, Classification, TFDRecord};
pub use error::{Error, Result};
pub use lattice::{BasisLabel, CohClass, Int, SurfaceModel};
