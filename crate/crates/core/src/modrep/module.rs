use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{parse_field_token, vector, FieldRef, Matrix, Span};
use crate::groupcore::Perm;

/// A right module: generator `i` acts on row vectors by `v ↦ v·gens[i]`.
#[derive(Clone, PartialEq, Eq)]
pub struct GModule {
    name: String,
    group: String,
    field: FieldRef,
    dim: usize,
    gens: Vec<Matrix>,
}

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GModule({} dim {} over {} with {} gens)", self.name, self.dim, self.field, self.gens.len())
    }
}

impl GModule {
    /// Checks that all generators are invertible `dim × dim` matrices over `field`.
    pub fn new(field: &FieldRef, dim: usize, gens: Vec<Matrix>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("module dimension must be positive"));
        }
        for (i, g) in gens.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch(format!("generator {i} is {}x{}, expected {dim}x{dim}", g.rows(), g.cols())));
            }
            if !g.field().same(field) {
                return Err(Error::FieldMismatch(format!("generator {i} is over {}, expected {field}", g.field())));
            }
            if !g.is_invertible() {
                return Err(Error::invalid(format!("generator {i} is singular")));
            }
        }
        Ok(GModule { name: "M".into(), group: "G".into(), field: field.clone(), dim, gens })
    }

    /// Module from generator matrices; at least one generator is required.
    pub fn from_matrices(gens: Vec<Matrix>) -> Result<Self> {
        let first = gens.first().ok_or_else(|| Error::invalid("no generator matrices"))?;
        let (f, d) = (first.field().clone(), first.rows());
        Self::new(&f, d, gens)
    }

    pub(crate) fn from_parts_unchecked(field: &FieldRef, dim: usize, gens: Vec<Matrix>) -> Self {
        GModule { name: "M".into(), group: "G".into(), field: field.clone(), dim, gens }
    }

    pub fn trivial(field: &FieldRef, dim: usize, num_gens: usize) -> Self {
        Self::from_parts_unchecked(field, dim, vec![Matrix::identity(field, dim); num_gens])
    }

    /// Permutation module: basis vector `e_i` goes to `e_{i^p}`.
    pub fn permutation_module(field: &FieldRef, perms: &[Perm]) -> Result<Self> {
        let n = perms.first().ok_or_else(|| Error::invalid("no permutations"))?.degree();
        if perms.iter().any(|p| p.degree() != n) {
            return Err(Error::DimensionMismatch("permutations of different degrees".into()));
        }
        Ok(Self::from_parts_unchecked(field, n, perms.iter().map(|p| crate::groupcore::perm_matrix(field, p)).collect()))
    }

    pub fn with_name(mut self, name: impl Into<String>, group: impl Into<String>) -> Self {
        self.name = name.into();
        self.group = group.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group_name(&self) -> &str {
        &self.group
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    /// Matrix of the product `gens[w₀]·gens[w₁]⋯`.
    pub fn word_matrix(&self, word: &[usize]) -> Matrix {
        word.iter().fold(Matrix::identity(&self.field, self.dim), |acc, &g| acc.mul_unchecked(&self.gens[g]))
    }

    fn compatible(&self, other: &GModule) -> Result<()> {
        if !self.field.same(&other.field) {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        if self.gens.len() != other.gens.len() {
            return Err(Error::invalid(format!("{} vs {} generators", self.gens.len(), other.gens.len())));
        }
        Ok(())
    }

    /// Contragredient module, acting by `(g⁻¹)ᵀ`.
    pub fn dual(&self) -> GModule {
        let gens = self.gens.iter().map(|g| g.inverse().expect("invertible").transpose()).collect();
        Self::from_parts_unchecked(&self.field, self.dim, gens).with_name(format!("{}*", self.name), self.group.clone())
    }

    pub fn tensor(&self, other: &GModule) -> Result<GModule> {
        self.compatible(other)?;
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.kron(b)).collect();
        Ok(Self::from_parts_unchecked(&self.field, self.dim * other.dim, gens)
            .with_name(format!("{}x{}", self.name, other.name), self.group.clone()))
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        self.compatible(other)?;
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Self::from_parts_unchecked(&self.field, self.dim + other.dim, gens)
            .with_name(format!("{}+{}", self.name, other.name), self.group.clone()))
    }

    /// Action on `Λ²V` with basis `e_i ∧ e_j`, `i < j`, in lexicographic order.
    pub fn exterior_square(&self) -> Result<GModule> {
        let d = self.dim;
        if d < 2 {
            return Err(Error::invalid("exterior square needs dimension at least 2"));
        }
        let f = &*self.field;
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        let n = pairs.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut m = Matrix::zero(&self.field, n, n);
                for (r, &(i, j)) in pairs.iter().enumerate() {
                    for (c, &(k, l)) in pairs.iter().enumerate() {
                        let v = f.sub(f.mul(g.get(i, k), g.get(j, l)), f.mul(g.get(i, l), g.get(j, k)));
                        m.set(r, c, v);
                    }
                }
                m
            })
            .collect();
        Ok(Self::from_parts_unchecked(&self.field, n, gens).with_name(format!("L2({})", self.name), self.group.clone()))
    }

    /// The module in the basis given by the rows of `p`: generators become `p·g·p⁻¹`.
    pub fn change_basis(&self, p: &Matrix) -> Result<GModule> {
        let pinv = p.inverse().ok_or_else(|| Error::invalid("change of basis matrix is singular"))?;
        let gens = self.gens.iter().map(|g| p.mul_unchecked(g).mul_unchecked(&pinv)).collect();
        Ok(Self::from_parts_unchecked(&self.field, self.dim, gens).with_name(self.name.clone(), self.group.clone()))
    }

    /// Extension of scalars along the canonical embedding into `target`.
    pub fn extend_field(&self, target: &FieldRef) -> Result<GModule> {
        let map = target.embedding_from(&self.field)?;
        let gens = self.gens.iter().map(|g| g.map_field(target, &map)).collect();
        Ok(Self::from_parts_unchecked(target, self.dim, gens).with_name(self.name.clone(), self.group.clone()))
    }

    /// Restriction of scalars to the prime field: dimension multiplies by `e`.
    pub fn restrict_to_prime_field(&self) -> Result<GModule> {
        let f = &*self.field;
        let e = f.e() as usize;
        if e == 1 {
            return Ok(self.clone());
        }
        let prime = crate::gf::Field::get(f.p(), 1)?;
        // power basis 1, x, x², … of GF(p^e) over GF(p) in the digit encoding
        let basis: Vec<u32> = (0..e as u32).map(|k| f.p().pow(k)).collect();
        let d = self.dim;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut m = Matrix::zero(&prime, d * e, d * e);
                for i in 0..d {
                    for (k, &bk) in basis.iter().enumerate() {
                        // image of bk·e_i is Σ_j bk·g_ij e_j
                        for j in 0..d {
                            let digits = f.digits(f.mul(bk, g.get(i, j)));
                            for (l, &c) in digits.iter().enumerate() {
                                m.set(i * e + k, j * e + l, c);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        Ok(Self::from_parts_unchecked(&prime, d * e, gens).with_name(self.name.clone(), self.group.clone()))
    }

    /// Galois twist: every entry raised to the power `p^k`.
    pub fn frobenius_twist(&self, k: u32) -> GModule {
        let f = &*self.field;
        let map: Vec<u32> = (0..f.q()).map(|a| f.frobenius(a, k)).collect();
        let gens = self.gens.iter().map(|g| g.map_field(&self.field, &map)).collect();
        Self::from_parts_unchecked(&self.field, self.dim, gens).with_name(format!("{}^F{k}", self.name), self.group.clone())
    }

    /// Smallest submodule containing `seeds`.
    pub fn spin(&self, seeds: &[Vec<u32>]) -> Span {
        let mut span = Span::new(&self.field, self.dim);
        let mut queue = Vec::new();
        for s in seeds {
            if let Some(r) = span.insert(s) {
                queue.push(r);
            }
        }
        while let Some(v) = queue.pop() {
            for g in &self.gens {
                if span.len() == self.dim {
                    return span;
                }
                if let Some(r) = span.insert(&g.vec_mul(&v)) {
                    queue.push(r);
                }
            }
        }
        span
    }

    /// Whether the row space of `basis` is invariant.
    pub fn is_invariant_subspace(&self, basis: &[Vec<u32>]) -> bool {
        let mut span = Span::new(&self.field, self.dim);
        for v in basis {
            span.insert(v);
        }
        span.basis().iter().all(|v| self.gens.iter().all(|g| span.contains(&g.vec_mul(v))))
    }

    /// Sub- and quotient module for an invariant subspace spanned by `basis`.
    ///
    /// The quotient is taken with respect to the complement spanned by the
    /// non-pivot standard basis vectors of the echelonised subspace.
    pub fn split_by(&self, basis: &[Vec<u32>]) -> Result<(GModule, GModule)> {
        let mut span = Span::new(&self.field, self.dim);
        for v in basis {
            span.insert(v);
        }
        let k = span.len();
        if k == 0 || k == self.dim {
            return Err(Error::invalid("subspace must be proper and nonzero"));
        }
        let pivots = span.pivots().to_vec();
        let comp: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let mut sub = Vec::new();
        let mut quo = Vec::new();
        for g in &self.gens {
            let mut s = Matrix::zero(&self.field, k, k);
            for (i, v) in span.basis().iter().enumerate() {
                let coords = span
                    .coordinates(&g.vec_mul(v))
                    .ok_or_else(|| Error::invalid("subspace is not invariant"))?;
                for (j, c) in coords.into_iter().enumerate() {
                    s.set(i, j, c);
                }
            }
            sub.push(s);
            let mut q = Matrix::zero(&self.field, comp.len(), comp.len());
            for (i, &c) in comp.iter().enumerate() {
                let img = span.reduce(g.row(c));
                // reduce clears the pivot columns, leaving complement coordinates
                for (j, &cc) in comp.iter().enumerate() {
                    q.set(i, j, img[cc]);
                }
            }
            quo.push(q);
        }
        Ok((
            Self::from_parts_unchecked(&self.field, k, sub).with_name(format!("{}.sub", self.name), self.group.clone()),
            Self::from_parts_unchecked(&self.field, self.dim - k, quo).with_name(format!("{}.quo", self.name), self.group.clone()),
        ))
    }

    /// Fixed points of the whole group.
    pub fn fixed_points(&self) -> Vec<Vec<u32>> {
        if self.gens.is_empty() {
            return (0..self.dim).map(|i| vector::unit(self.dim, i)).collect();
        }
        let id = Matrix::identity(&self.field, self.dim);
        let mut stacked = Matrix::zero(&self.field, self.dim, self.dim * self.gens.len());
        for (k, g) in self.gens.iter().enumerate() {
            let m = g.sub(&id).expect("same shape");
            for i in 0..self.dim {
                for j in 0..self.dim {
                    stacked.set(i, k * self.dim + j, m.get(i, j));
                }
            }
        }
        stacked.left_nullspace()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("module {} dim {} over {} group {}\n", self.name, self.dim, self.field, self.group);
        for g in &self.gens {
            s.push_str(&g.to_text());
        }
        s
    }

    /// Parses the `.mod` format; the number of generators is the number of matrix blocks.
    pub fn parse(text: &str) -> Result<GModule> {
        let lines: Vec<&str> = text.lines().collect();
        let mut pos = 0;
        while pos < lines.len() && (lines[pos].trim().is_empty() || lines[pos].trim_start().starts_with('#')) {
            pos += 1;
        }
        let header = lines.get(pos).ok_or_else(|| Error::parse(1, 1, "empty module file"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 8 || toks[0] != "module" || toks[2] != "dim" || toks[4] != "over" || toks[6] != "group" {
            return Err(Error::parse(pos + 1, 1, "expected `module <name> dim <d> over <p>^<e> group <group>`"));
        }
        let dim: usize = toks[3].parse().map_err(|_| Error::parse(pos + 1, 1, format!("bad dimension `{}`", toks[3])))?;
        let field = parse_field_token(toks[5]).map_err(|e| Error::parse(pos + 1, 1, e.to_string()))?;
        let (name, group) = (toks[1].to_string(), toks[7].to_string());
        pos += 1;
        let mut gens = Vec::new();
        loop {
            while pos < lines.len() && (lines[pos].trim().is_empty() || lines[pos].trim_start().starts_with('#')) {
                pos += 1;
            }
            if pos >= lines.len() {
                break;
            }
            let line_no = pos + 1;
            let m = Matrix::parse_block(&lines, &mut pos, 1)?;
            if !m.field().same(&field) || m.rows() != dim || m.cols() != dim {
                return Err(Error::parse(line_no, 1, "matrix block does not match the module header"));
            }
            gens.push(m);
        }
        Ok(GModule::new(&field, dim, gens)?.with_name(name, group))
    }

    /// Whether `v ↦ v·p` is a module map `self → other`.
    pub fn is_hom_to(&self, other: &GModule, p: &Matrix) -> bool {
        p.rows() == self.dim
            && p.cols() == other.dim
            && self.gens.iter().zip(&other.gens).all(|(a, b)| a.mul_unchecked(p) == p.mul_unchecked(b))
    }

    /// Every vector of the module in encoding order; only sensible for tiny modules.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let q = self.field.q();
        let n = (q as u64).checked_pow(self.dim as u32).unwrap_or(u64::MAX);
        (0..n).map(move |c| vector::decode(q, self.dim, c))
    }
}
