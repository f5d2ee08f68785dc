//! Exact computation with automorphisms of rooted `d`-ary trees.
//!
//! Automorphisms are represented as finite invertible Mealy transducers and,
//! where applicable, as affine transformations `x ↦ b + x·A` of the tree
//! boundary viewed as the vector space of infinite sequences over `Z_d`.
//! Everything is exact arithmetic over finite rings; there are no floats and
//! no approximate comparisons anywhere in the crate.
//!
//! The main pieces:
//!
//! * [`zd`] — residues, polynomials, rational power series, eventually
//!   periodic sequences and diagonally periodic upper-triangular matrices
//!   over `Z_d`.
//! * [`mealy`] — Mealy transducers as tree automorphisms: action, sections,
//!   composition, inversion, minimization, the word problem, portraits and
//!   the boundary action.
//! * [`affine`] — the algebra of affine automorphisms: composition,
//!   inversion, sections, automaton conversion both ways, and detection of
//!   affineness of a given finite-state automorphism.
//! * [`lamplighter`] — a fixed 4-state binary automaton group isomorphic to
//!   the index-2 extension of the rank-2 lamplighter group, with mechanical
//!   verification of its structural identities.
//! * [`virtual_endo`] — state-closed representations of the lamplighter
//!   group `Z2 ≀ Z` generated from a similarity pair.
//! * [`cli`] — the command-line surface used by the `affine-trees` binary.

pub mod affine;
pub mod cli;
pub mod error;
pub mod lamplighter;
pub mod mealy;
pub mod virtual_endo;
pub mod zd;

pub use error::{Error, Result};
