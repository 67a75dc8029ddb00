//! Finite presentations, coset enumeration and low-index subgroups.

mod fox;
mod lowindex;
mod pres;
mod tc;
mod word;

pub use fox::{evaluate_word, fox_coefficients};
pub use lowindex::{low_index_subgroups, LowIndexOptions, LowIndexResult};
pub use pres::Presentation;
pub use tc::{todd_coxeter, CosetTable};
pub use word::{Letter, Word};

use crate::error::Result;
use crate::groupcore::{Action, Group};

/// Default bound on simultaneously alive cosets.
pub const DEFAULT_COSET_CAP: usize = 1_000_000;

/// True iff the generators of `reference` satisfy the relators and the
/// presented group has the same order, so the presentation defines `reference`.
pub fn verify_presentation<E: Action>(p: &Presentation, reference: &Group<E>, cap: usize) -> Result<bool> {
    if reference.generators().len() != p.num_gens() {
        return Ok(false);
    }
    for r in &p.rels {
        if !evaluate_word(r, reference.generators(), reference.one())?.is_one() {
            return Ok(false);
        }
    }
    let t = todd_coxeter(p, &[], cap)?;
    Ok(t.index() as u64 == reference.order()?)
}
