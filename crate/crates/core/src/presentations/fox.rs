use super::word::Word;
use crate::error::{Error, Result};
use crate::gf::Matrix;
use crate::groupcore::GroupElement;

/// Product of `images` along `w`; the empty word gives `one`.
pub fn evaluate_word<E: GroupElement>(w: &Word, images: &[E], one: &E) -> Result<E> {
    if let Some(l) = w.letters().iter().find(|l| l.gen >= images.len()) {
        return Err(Error::invalid(format!("word uses generator {} but only {} images given", l.gen, images.len())));
    }
    Ok(w.evaluate(images, one))
}

/// Fox derivatives of `r` evaluated in a right module.
///
/// If each generator lift `x̃ᵢ` is replaced by `x̃ᵢ·δᵢ` with `δᵢ` in an abelian
/// normal subgroup `M` (acted on by `images`), the value of `r` changes by
/// `Σᵢ δᵢ·Cᵢ`. With `r = y₁⋯y_L` and `sⱼ = y_{j+1}⋯y_L`:
/// `Cᵢ = Σ_{yⱼ = xᵢ} ρ(sⱼ) − Σ_{yⱼ = xᵢ⁻¹} ρ(xᵢ⁻¹·sⱼ)`.
pub fn fox_coefficients(r: &Word, images: &[Matrix]) -> Result<Vec<Matrix>> {
    let first = images.first().ok_or_else(|| Error::invalid("no generator images"))?;
    let f = first.field().clone();
    let d = first.rows();
    if images.iter().any(|m| m.rows() != d || m.cols() != d || !m.field().same(&f)) {
        return Err(Error::DimensionMismatch("module images must share size and field".into()));
    }
    if let Some(l) = r.letters().iter().find(|l| l.gen >= images.len()) {
        return Err(Error::invalid(format!("relator uses generator {} without an image", l.gen)));
    }
    let inverses: Vec<Matrix> = images.iter().map(|m| m.inv()).collect();
    let mut coeffs = vec![Matrix::zero(&f, d, d); images.len()];
    let mut suffix = Matrix::identity(&f, d);
    for l in r.letters().iter().rev() {
        let g = l.gen;
        if l.inverse {
            let term = inverses[g].mul_unchecked(&suffix);
            coeffs[g] = coeffs[g].sub(&term)?;
            suffix = inverses[g].mul_unchecked(&suffix);
        } else {
            coeffs[g] = coeffs[g].add(&suffix)?;
            suffix = images[g].mul_unchecked(&suffix);
        }
    }
    Ok(coeffs)
}
