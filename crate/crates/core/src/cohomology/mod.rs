//! Second cohomology with coefficients in a GF(p)-module, split extensions
//! and minimality of extensions.
//!
//! Modules act on the right: an element `x` acts on row vectors by `ρ(x)`.
//! A normalised 2-cochain `α` is a cocycle when
//! `α(x, y)·z + α(xy, z) = α(x, yz) + α(y, z)`, which is the associativity
//! of `(m, x)(m', y) = (m·y + m' + α(x, y), xy)` on `M × S`.
//! Cochains are stored flat with `(x, y, c)` at `(x·|S| + y)·dim M + c`.

mod extension;
mod stable;
mod sylow;

pub use extension::{
    minimal_extension_check, split_check, ElementaryAbelian, ExtensionInstance, ExtensionSpec, MinimalityCertificate,
    SplitCertificate, EXHAUSTIVE_MINIMALITY_LIMIT,
};
pub use stable::{double_coset_reps, h2, stable_subspace, H2Report};
pub use sylow::{h2_full_bar, h2_sylow, BarDims, CocycleSpace, H2_SYLOW_LIMIT};

use crate::gf::{bit_get, BitEchelon, FieldRef, Matrix, Span};

/// Row space accumulated one equation at a time; memory stays proportional
/// to the rank. GF(2) rows are bit-packed.
pub(crate) enum RowSpace {
    Bits(BitEchelon),
    Generic(Span),
}

impl RowSpace {
    pub(crate) fn new(field: &FieldRef, cols: usize) -> Self {
        if field.q() == 2 {
            RowSpace::Bits(BitEchelon::new(cols))
        } else {
            RowSpace::Generic(Span::new(field, cols))
        }
    }

    pub(crate) fn insert(&mut self, row: &[u32]) {
        match self {
            RowSpace::Bits(b) => {
                let mut words = vec![0u64; b.words()];
                for (j, &x) in row.iter().enumerate() {
                    if x & 1 == 1 {
                        words[j / 64] |= 1 << (j % 64);
                    }
                }
                b.insert(words);
            }
            RowSpace::Generic(s) => {
                s.insert(row);
            }
        }
    }

    pub(crate) fn rank(&self) -> usize {
        match self {
            RowSpace::Bits(b) => b.rank(),
            RowSpace::Generic(s) => s.len(),
        }
    }

    /// Basis of `{x : row·x = 0 for every inserted row}`.
    pub(crate) fn nullspace(&self, field: &FieldRef, cols: usize) -> Vec<Vec<u32>> {
        if self.rank() == 0 {
            return (0..cols).map(|i| crate::gf::vector::unit(cols, i)).collect();
        }
        match self {
            RowSpace::Bits(b) => {
                b.nullspace().iter().map(|w| (0..cols).map(|j| bit_get(w, j) as u32).collect()).collect()
            }
            RowSpace::Generic(s) => Matrix::from_rows(field, s.basis()).expect("rows").nullspace(),
        }
    }
}

#[cfg(test)]
mod tests;
