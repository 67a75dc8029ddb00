//! Form data `(V, f, Q)` over GF(r) for symplectic-type groups.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{vector, Field, FieldRef, Matrix};
use crate::modrep::{BilinearForm, QuadraticForm};

/// The three configurations with cyclic centre, the `r = 2` nondegenerate
/// case split by the sign of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    /// `r^{1+2n}`, `r` odd, `f` nondegenerate.
    Odd,
    /// `2^{1+2n}_+`.
    Plus,
    /// `2^{1+2n}_-`.
    Minus,
    /// `4∘2^{1+2n}`: `f` has a one-dimensional radical on which `Q` is nonzero.
    Central4,
}

impl Kind {
    pub fn parse(s: &str) -> Result<Kind> {
        match s {
            "odd" | "extraspecial" => Ok(Kind::Odd),
            "plus" | "+" => Ok(Kind::Plus),
            "minus" | "-" => Ok(Kind::Minus),
            "central4" | "4" => Ok(Kind::Central4),
            _ => Err(Error::invalid(format!("unknown kind `{s}` (odd, plus, minus, central4)"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Odd => "odd",
            Kind::Plus => "plus",
            Kind::Minus => "minus",
            Kind::Central4 => "central4",
        }
    }

    /// Notation such as `2^{1+4}_-`.
    pub fn label(self, r: u32, n: usize) -> String {
        match self {
            Kind::Odd => format!("{r}^{{1+{}}}", 2 * n),
            Kind::Plus => format!("2^{{1+{}}}_+", 2 * n),
            Kind::Minus => format!("2^{{1+{}}}_-", 2 * n),
            Kind::Central4 => format!("4o2^{{1+{}}}", 2 * n),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A vector space over GF(r) with an alternating form and, for `r = 2`, a
/// quadratic form polarising to it. Construction checks that the centre of
/// the associated group is cyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormData {
    field: FieldRef,
    f: Matrix,
    /// Upper-triangular matrix of `Q`, present iff `r = 2`.
    q: Option<Matrix>,
    kind: Kind,
    n: usize,
}

impl FormData {
    pub fn new(f: Matrix, q: Option<Matrix>) -> Result<FormData> {
        let field = f.field().clone();
        if field.e() != 1 {
            return Err(Error::invalid("form data lives over a prime field"));
        }
        if !f.is_square() || !(BilinearForm { gram: f.clone() }).is_alternating() {
            return Err(Error::invalid("f must be a square alternating matrix"));
        }
        let d = f.rows();
        let rad = f.left_nullspace();
        let r = field.p();
        let kind = if r != 2 {
            if q.is_some() {
                return Err(Error::invalid("a quadratic form is only used for r = 2"));
            }
            if !rad.is_empty() {
                return Err(Error::invalid("for odd r the form must be nondegenerate"));
            }
            Kind::Odd
        } else {
            let u = q.as_ref().ok_or_else(|| Error::invalid("r = 2 requires a quadratic form"))?;
            let qf = QuadraticForm::new(u.clone())?;
            if qf.upper.rows() != d || qf.polarization().gram != f {
                return Err(Error::invalid("Q does not polarise to f"));
            }
            match rad.len() {
                0 => {
                    if qf.sign()? == 1 {
                        Kind::Plus
                    } else {
                        Kind::Minus
                    }
                }
                1 if qf.eval(&rad[0]) == 1 => Kind::Central4,
                _ => return Err(Error::invalid("Q must be nondegenerate with radical of f of dimension at most 1")),
            }
        };
        let n = (d - rad.len()) / 2;
        let q = match q {
            Some(u) => Some(QuadraticForm::new(u)?.upper),
            None => None,
        };
        Ok(FormData { field, f, q, kind, n })
    }

    /// Standard data: hyperbolic pairs `(e_i, f_i)` in adjacent coordinates;
    /// for `Minus` the last pair is anisotropic; for `Central4` a final
    /// radical vector `z` with `Q(z) = 1`.
    pub fn standard(kind: Kind, r: u32, n: usize) -> Result<FormData> {
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        match (kind, r) {
            (Kind::Odd, 2) => return Err(Error::invalid("kind odd needs an odd prime r")),
            (Kind::Plus | Kind::Minus | Kind::Central4, r) if r != 2 => {
                return Err(Error::invalid(format!("kind {kind} needs r = 2")))
            }
            _ => {}
        }
        let field = Field::get(r, 1)?;
        let d = 2 * n + usize::from(kind == Kind::Central4);
        let mut f = Matrix::zero(&field, d, d);
        for i in 0..n {
            f.set(2 * i, 2 * i + 1, 1);
            f.set(2 * i + 1, 2 * i, field.neg(1));
        }
        let q = (r == 2).then(|| {
            let mut u = Matrix::zero(&field, d, d);
            for i in 0..n {
                u.set(2 * i, 2 * i + 1, 1);
            }
            if kind == Kind::Minus {
                u.set(2 * n - 2, 2 * n - 2, 1);
                u.set(2 * n - 1, 2 * n - 1, 1);
            }
            if kind == Kind::Central4 {
                u.set(2 * n, 2 * n, 1);
            }
            u
        });
        let fd = FormData::new(f, q)?;
        debug_assert_eq!(fd.kind, kind);
        Ok(fd)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn r(&self) -> u32 {
        self.field.p()
    }

    /// Dimension of `V`, radical included.
    pub fn dim(&self) -> usize {
        self.f.rows()
    }

    /// Half the dimension of `V/rad V`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn gram(&self) -> &Matrix {
        &self.f
    }

    pub fn quadratic(&self) -> Option<&Matrix> {
        self.q.as_ref()
    }

    pub fn f(&self, u: &[u32], v: &[u32]) -> u32 {
        vector::dot(&self.field, &self.f.vec_mul(u), v)
    }

    /// `Q(v)` for `r = 2`; zero otherwise.
    pub fn q(&self, v: &[u32]) -> u32 {
        match &self.q {
            Some(u) => vector::dot(&self.field, &u.vec_mul(v), v),
            None => 0,
        }
    }

    pub fn radical(&self) -> Vec<Vec<u32>> {
        self.f.left_nullspace()
    }

    /// Whether `x` (acting on row vectors) preserves `f`, `Q` and fixes the radical pointwise.
    pub fn is_isometry(&self, x: &Matrix) -> bool {
        if x.rows() != self.dim() || !x.is_square() || !x.field().same(&self.field) || !x.is_invertible() {
            return false;
        }
        if x.mul_unchecked(&self.f).mul_unchecked(&x.transpose()) != self.f {
            return false;
        }
        if let Some(u) = &self.q {
            if !(QuadraticForm { upper: u.clone() }).is_invariant_under(x) {
                return false;
            }
        }
        self.radical().iter().all(|z| x.vec_mul(z) == *z)
    }

    /// Rows `e_1, f_1, …, e_n, f_n` of a symplectic basis (`f(e_i, f_i) = 1`)
    /// followed by a basis of the radical.
    pub fn symplectic_basis(&self) -> Matrix {
        symplectic_basis(&self.f)
    }

}

/// Rows `e_1, f_1, …, e_n, f_n` of a symplectic basis for the alternating
/// Gram matrix `gram` (`f(e_i, f_i) = 1`, other pairings zero), followed by
/// a basis of its radical. Greedy from the standard basis, so the standard
/// form with adjacent pairs yields the identity.
pub fn symplectic_basis(gram: &Matrix) -> Matrix {
    let fld = gram.field().clone();
    let d = gram.rows();
    let form = |u: &[u32], v: &[u32]| vector::dot(&fld, &gram.vec_mul(u), v);
    let rad = gram.left_nullspace();
    let mut span = crate::gf::Span::new(&fld, d);
    for z in &rad {
        span.insert(z);
    }
    let mut pool: Vec<Vec<u32>> = Vec::new();
    for i in 0..d {
        let e = vector::unit(d, i);
        if span.insert(&e).is_some() {
            pool.push(e);
        }
    }
    pool.reverse();
    let mut rows = Vec::with_capacity(d);
    while let Some(e) = pool.pop() {
        let k = pool.iter().position(|w| form(&e, w) != 0).expect("form is nondegenerate on the complement");
        let w = pool.remove(k);
        let fv = vector::scale(&fld, &w, fld.inv(form(&e, &w)));
        for w in pool.iter_mut() {
            let a = form(w, &fv);
            let b = form(w, &e);
            vector::axpy(&fld, w, fld.neg(a), &e);
            vector::axpy(&fld, w, b, &fv);
        }
        rows.push(e);
        rows.push(fv);
    }
    rows.extend(rad);
    Matrix::from_rows(&fld, &rows).expect("shape")
}
