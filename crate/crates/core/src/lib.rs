//! Computational group theory over small finite fields.
//!
//! The crate is organised bottom-up: [`gf`] supplies exact linear algebra,
//! [`groupcore`] permutation and matrix groups with Schreier–Sims,
//! [`presentations`] coset enumeration, [`modrep`] the MeatAxe and invariant
//! forms, and the higher modules build symplectic-type groups and their
//! Weil representations, Clifford decompositions, second cohomology, and
//! the invariants `P(G)`, `n_G`, `n'_G`.

pub mod error;
pub mod gf;
pub mod groupcore;
pub mod modrep;
pub mod presentations;
pub mod symtype;
pub mod clifford;
pub mod cohomology;
pub mod invariants;

pub use error::{Error, Result};
