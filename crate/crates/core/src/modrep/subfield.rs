//! Writing a module over a subfield of its field of definition.

use std::collections::HashMap;

use super::meataxe::{find_singular, MeataxeOptions};
use super::module::GModule;
use crate::error::{Error, Result};
use crate::gf::{Field, Matrix, Span};

/// Conjugates `m` (over GF(p^e)) so all entries lie in GF(p^f) and returns
/// the module over GF(p^f), or `None` when that is impossible.
///
/// Uses an algebra element with coefficients in GF(p^f) whose kernel is
/// one-dimensional: in any basis realizing the module over the subfield such
/// an element has a rational kernel vector, so spinning that vector yields
/// a basis in which the generators are rational. Requires an absolutely
/// irreducible module; otherwise no such element exists and the call fails
/// with a budget error.
pub fn write_over_subfield(m: &GModule, f: u32) -> Result<Option<GModule>> {
    let big = m.field().clone();
    if f == 0 || big.e() % f != 0 {
        return Err(Error::invalid(format!("GF({}^{f}) is not a subfield of {big}", big.p())));
    }
    let small = Field::get(big.p(), f)?;
    let embed = big.embedding_from(&small)?;
    if f == big.e() {
        return Ok(Some(m.clone()));
    }
    let back: HashMap<u32, u32> = embed.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
    let to_small = |g: &Matrix| -> Option<Matrix> {
        let data: Option<Vec<u32>> = g.data().iter().map(|x| back.get(x).copied()).collect();
        data.map(|d| Matrix::new(&small, g.rows(), g.cols(), d).expect("shape"))
    };
    if let Some(gens) = m.generators().iter().map(to_small).collect::<Option<Vec<_>>>() {
        return Ok(Some(GModule::from_parts_unchecked(&small, m.dim(), gens).with_name(m.name(), m.group_name())));
    }
    let coeffs: Vec<u32> = embed[1..].to_vec();
    let opts = MeataxeOptions::default();
    let w = find_singular(m, &opts, &coeffs, 1)?;
    if w.kernel.len() != 1 {
        return Err(Error::Budget("no subfield algebra element with one-dimensional kernel".into()));
    }
    let span = spin_ordered(m, &w.kernel[0]);
    if span.len() != m.dim() {
        return Err(Error::Precondition("module is reducible".into()));
    }
    let conj = m.change_basis(&Matrix::from_rows(&big, &span.vectors)?)?;
    Ok(conj
        .generators()
        .iter()
        .map(to_small)
        .collect::<Option<Vec<_>>>()
        .map(|gens| GModule::from_parts_unchecked(&small, m.dim(), gens).with_name(m.name(), m.group_name())))
}

struct Ordered {
    vectors: Vec<Vec<u32>>,
}

impl Ordered {
    fn len(&self) -> usize {
        self.vectors.len()
    }
}

/// Spin keeping the raw images (not echelonised) so they stay rational multiples.
fn spin_ordered(m: &GModule, v: &[u32]) -> Ordered {
    let mut span = Span::new(m.field(), m.dim());
    span.insert(v);
    let mut vectors = vec![v.to_vec()];
    let mut i = 0;
    while i < vectors.len() && vectors.len() < m.dim() {
        for g in m.generators() {
            let w = g.vec_mul(&vectors[i]);
            if span.insert(&w).is_some() {
                vectors.push(w);
            }
        }
        i += 1;
    }
    Ordered { vectors }
}
