//! Recognising symplectic-type groups among small r-groups.

use std::collections::HashMap;

use super::form::{FormData, Kind};
use crate::error::{Error, Result};
use crate::gf::{Field, Matrix};
use crate::groupcore::{is_power_of, Action, Group};

/// Orders above this are refused.
pub const CLASSIFY_LIMIT: u64 = 1 << 14;

/// Structure found by [`classify_r`].
#[derive(Clone, Debug)]
pub struct Classification<E> {
    pub kind: Kind,
    pub n: usize,
    /// Elements whose images form a basis of `G/Z(G)`.
    pub basis: Vec<E>,
    /// Centre elements, identity first.
    pub center: Vec<E>,
    /// Commutator (and, for `r = 2` with centre of order 2, squaring) data on `G/Z(G)`.
    pub form: FormData,
    /// A generator of the order-`r` subgroup of the centre, identifying it with GF(r).
    pub central_generator: E,
}

/// Whether `g` is one of `r^{1+2n}`, `2^{1+2n}_±`, `4∘2^{1+2n}`, returning its
/// kind and `n`.
///
/// Checks the equivalent structural conditions: the centre is cyclic of
/// order `r` (or 4 when `r = 2`), `G/Z(G)` is elementary abelian, the
/// commutator pairing on it is nondegenerate, and for odd `r` the exponent is `r`.
pub fn classify_r<E: Action>(g: &Group<E>, r: u64) -> Result<Option<Classification<E>>> {
    let order = g.order()?;
    if order > CLASSIFY_LIMIT {
        return Err(Error::CapExceeded(format!("order {order} above the classification limit {CLASSIFY_LIMIT}")));
    }
    if !is_power_of(order, r) || order < r * r * r || g.is_abelian() {
        return Ok(None);
    }
    let center = g.center()?;
    let zorder = center.order()?;
    let mut zelems = center.elements()?;
    zelems.sort_by_key(|x| !x.is_one());
    let central_generator = if zorder == r {
        zelems.iter().find(|x| !x.is_one()).cloned().expect("nontrivial centre")
    } else if r == 2 && zorder == 4 {
        match zelems.iter().find(|x| x.order_capped(4) == Some(4)) {
            Some(x) => x.mul(x),
            None => return Ok(None),
        }
    } else {
        return Ok(None);
    };
    let zset: std::collections::HashSet<E> = zelems.iter().cloned().collect();
    let gens = g.generators();
    for (i, a) in gens.iter().enumerate() {
        if !zset.contains(&a.pow(r as i64)) {
            return Ok(None);
        }
        for b in &gens[i + 1..] {
            if !zset.contains(&a.comm(b)) {
                return Ok(None);
            }
        }
    }
    // ⟨c⟩ ≅ GF(r)
    let mut log: HashMap<E, u32> = HashMap::new();
    let mut c = g.one().clone();
    for j in 0..r as u32 {
        log.insert(c.clone(), j);
        c = c.mul(&central_generator);
    }
    // basis of G/Z from the generators
    let mut basis: Vec<E> = Vec::new();
    let mut sub_order = zorder;
    for x in gens {
        let mut cand: Vec<E> = center.generators().to_vec();
        cand.extend(basis.iter().cloned());
        cand.push(x.clone());
        let o = g.subgroup(cand).order()?;
        if o > sub_order {
            sub_order = o;
            basis.push(x.clone());
        }
    }
    if sub_order != order || basis.len() % 2 == 1 {
        return Ok(None);
    }
    let d = basis.len();
    let field = Field::get(r as u32, 1)?;
    let mut f = Matrix::zero(&field, d, d);
    for i in 0..d {
        for j in 0..d {
            let Some(&v) = log.get(&basis[i].comm(&basis[j])) else { return Ok(None) };
            f.set(i, j, v);
        }
    }
    let (kind, q) = if r != 2 {
        if basis.iter().any(|x| !x.pow(r as i64).is_one()) {
            return Ok(None);
        }
        (Kind::Odd, None)
    } else if zorder == 2 {
        let mut u = Matrix::zero(&field, d, d);
        for i in 0..d {
            let Some(&v) = log.get(&basis[i].mul(&basis[i])) else { return Ok(None) };
            u.set(i, i, v);
            for j in i + 1..d {
                u.set(i, j, f.get(i, j));
            }
        }
        (Kind::Plus, Some(u))
    } else {
        (Kind::Central4, None)
    };
    if !f.is_invertible() {
        return Ok(None);
    }
    // for 4∘2^{1+2n} squares are not GF(2)-valued on G/Z; record the hyperbolic form of f instead
    let q = match kind {
        Kind::Central4 => {
            let mut u = Matrix::zero(&field, d, d);
            for i in 0..d {
                for j in i + 1..d {
                    u.set(i, j, f.get(i, j));
                }
            }
            Some(u)
        }
        _ => q,
    };
    let form = FormData::new(f, q)?;
    let kind = if kind == Kind::Central4 { Kind::Central4 } else { form.kind() };
    Ok(Some(Classification { kind, n: d / 2, basis, center: zelems, form, central_generator }))
}
