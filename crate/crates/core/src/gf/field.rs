use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Largest field order supported.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Above this order multiplication falls back to polynomial arithmetic.
const LOG_TABLE_LIMIT: u64 = 1 << 16;

/// Below this order addition uses a full table.
const ADD_TABLE_LIMIT: u64 = 256;

/// A finite field GF(p^e) with a fixed defining polynomial.
///
/// Elements are encoded as integers `0..q`: the coefficient vector
/// `(c_0, .., c_{e-1})` of a polynomial in the generator `x` maps to
/// `c_0 + c_1 p + .. + c_{e-1} p^{e-1}`. Zero encodes as 0 and one as 1.
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    /// Monic defining polynomial, coefficients low to high, length e + 1.
    poly: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Vec<u32>,
    neg_table: Vec<u32>,
}

pub type FieldRef = Arc<Field>;

static FIELDS: Lazy<Mutex<HashMap<(u32, u32), FieldRef>>> = Lazy::new(|| Mutex::new(HashMap::new()));

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, e)` when `q = p^e` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p as u32, e))
}

impl Field {
    /// The field GF(p^e) with the lexicographically least irreducible
    /// defining polynomial. Instances are cached and shared.
    pub fn get(p: u32, e: u32) -> Result<FieldRef> {
        let mut cache = FIELDS.lock().unwrap();
        if let Some(f) = cache.get(&(p, e)) {
            return Ok(f.clone());
        }
        let f = Arc::new(Field::build(p, e)?);
        cache.insert((p, e), f.clone());
        Ok(f)
    }

    /// Field of order `q`.
    pub fn of_order(q: u64) -> Result<FieldRef> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        Field::get(p, e)
    }

    fn build(p: u32, e: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::invalid(format!("characteristic {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::invalid("extension degree must be at least 1"));
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_FIELD_ORDER);
        let q = q.ok_or_else(|| Error::invalid(format!("field {p}^{e} exceeds 2^20 elements")))? as u32;
        let poly = least_irreducible(p, e);
        let mut f = Field {
            p,
            e,
            q,
            poly,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: Vec::new(),
            neg_table: Vec::new(),
        };
        f.neg_table = (0..q).map(|a| f.neg_slow(a)).collect();
        if (q as u64) <= ADD_TABLE_LIMIT && p != 2 && e > 1 {
            let mut t = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = f.add_slow(a, b);
                }
            }
            f.add_table = t;
        }
        f.primitive = f.find_primitive();
        if (q as u64) <= LOG_TABLE_LIMIT {
            let mut exp = vec![0u32; q as usize];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u32;
            for i in 0..(q - 1) {
                exp[i as usize] = x;
                log[x as usize] = i;
                x = f.mul_poly(x, f.primitive);
            }
            exp[(q - 1) as usize] = 1;
            f.exp = exp;
            f.log = log;
        }
        Ok(f)
    }

    fn find_primitive(&self) -> u32 {
        let n = (self.q - 1) as u64;
        let mut factors = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        for g in 1..self.q {
            if factors.iter().all(|&r| self.pow_poly(g, n / r) != 1) {
                return g;
            }
        }
        1
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Number of elements.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn poly(&self) -> &[u32] {
        &self.poly
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    pub fn same(&self, other: &Field) -> bool {
        self.p == other.p && self.e == other.e
    }

    pub fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            v.push(a % self.p);
            a /= self.p;
        }
        v
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut r = 0;
        let mut pw = 1;
        for _ in 0..self.e {
            r += ((a % self.p + b % self.p) % self.p) * pw;
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        r
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).into_iter().map(|c| (self.p - c) % self.p).collect();
        self.from_digits(&d)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            a ^ b
        } else if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if !self.add_table.is_empty() {
            self.add_table[(a * self.q + b) as usize]
        } else {
            self.add_slow(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg_table[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.e == 1 && !self.log.is_empty() && self.q < 64 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        if self.log.is_empty() {
            return self.mul_poly(a, b);
        }
        let s = self.log[a as usize] + self.log[b as usize];
        let m = self.q - 1;
        self.exp[(if s >= m { s - m } else { s }) as usize]
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        if self.log.is_empty() {
            return self.pow_poly(a, (self.q - 2) as u64);
        }
        let l = self.log[a as usize];
        self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, mut n: u64) -> u32 {
        if a == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        if !self.log.is_empty() {
            n %= (self.q - 1) as u64;
            let l = (self.log[a as usize] as u64 * n) % (self.q - 1) as u64;
            return self.exp[l as usize];
        }
        self.pow_poly(a, n)
    }

    /// Discrete logarithm to the base `primitive()`.
    pub fn log(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if !self.log.is_empty() {
            return Some(self.log[a as usize]);
        }
        let mut x = 1;
        for i in 0..self.q - 1 {
            if x == a {
                return Some(i);
            }
            x = self.mul_poly(x, self.primitive);
        }
        None
    }

    /// `primitive()^k`.
    pub fn exp(&self, k: u64) -> u32 {
        self.pow(self.primitive, k)
    }

    /// Embeds an integer via the prime field.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// A primitive n-th root of unity, if one exists.
    pub fn root_of_unity(&self, n: u64) -> Option<u32> {
        let m = (self.q - 1) as u64;
        (n > 0 && m % n == 0).then(|| self.exp(m / n))
    }

    /// x ↦ x^(p^k).
    pub fn frobenius(&self, a: u32, k: u32) -> u32 {
        self.pow(a, (self.p as u64).pow(k % self.e))
    }

    /// Whether `a` lies in the subfield of order p^f.
    pub fn in_subfield(&self, a: u32, f: u32) -> bool {
        self.e % f == 0 && self.frobenius(a, f) == a
    }

    fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let e = self.e as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * e];
        for i in 0..e {
            if da[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for k in (e..2 * e).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                let t = (c * self.poly[i] as u64) % p;
                prod[k - e + i] = (prod[k - e + i] + p - t) % p;
            }
        }
        let d: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        self.from_digits(&d)
    }

    fn pow_poly(&self, a: u32, mut n: u64) -> u32 {
        let mut r = 1;
        let mut b = a;
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul_poly(r, b);
            }
            b = self.mul_poly(b, b);
            n >>= 1;
        }
        r
    }

    /// Images of the elements of `small` under a field embedding into `self`.
    /// Prime-field elements map to themselves.
    pub fn embedding_from(&self, small: &Field) -> Result<Vec<u32>> {
        if small.p != self.p || self.e % small.e != 0 {
            return Err(Error::FieldMismatch(format!(
                "GF({}^{}) does not embed in GF({}^{})",
                small.p, small.e, self.p, self.e
            )));
        }
        // image of the generator of `small`: a root of its defining polynomial
        let root = (0..self.q)
            .find(|&x| {
                let mut acc = 0;
                for &c in small.poly.iter().rev() {
                    acc = self.add(self.mul(acc, x), c);
                }
                acc == 0
            })
            .ok_or_else(|| Error::invalid("no root of defining polynomial"))?;
        let mut map = vec![0u32; small.q as usize];
        for a in 0..small.q {
            let mut acc = 0;
            for &c in small.digits(a).iter().rev() {
                acc = self.add(self.mul(acc, root), c);
            }
            map[a as usize] = acc;
        }
        Ok(map)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.e)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.e)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Field {}

/// Monic polynomial of degree `e` over GF(p) with the least encoding
/// `c_0 + c_1 p + ..` among irreducibles.
fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(e);
    for code in 0..count {
        let mut c = code;
        let mut poly = Vec::with_capacity(e as usize + 1);
        for _ in 0..e {
            poly.push((c % p as u64) as u32);
            c /= p as u64;
        }
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db] as u64, p);
    for k in (db..r.len()).rev() {
        let c = (r[k] * lead_inv) % p;
        if c == 0 {
            continue;
        }
        for i in 0..=db {
            r[k - db + i] = (r[k - db + i] + p * p - c * b[i] as u64) % p;
        }
    }
    r.truncate(db);
    r.into_iter().map(|c| c as u32).collect()
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut n = p - 2;
    while n > 0 {
        if n & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        n >>= 1;
    }
    r
}

/// Irreducibility over GF(p) by trial division with every monic
/// polynomial of degree at most half.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut c = code;
            let mut div = Vec::with_capacity(d + 1);
            for _ in 0..d {
                div.push((c % p as u64) as u32);
                c /= p as u64;
            }
            div.push(1);
            if poly_rem(poly, &div, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_polynomials_are_least() {
        assert_eq!(Field::get(2, 2).unwrap().poly(), &[1, 1, 1]);
        // x^2 + 1 is irreducible over GF(3) and has the smallest encoding
        assert_eq!(Field::get(3, 2).unwrap().poly(), &[1, 0, 1]);
        assert_eq!(Field::get(2, 3).unwrap().poly(), &[1, 1, 0, 1]);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(!is_irreducible(&[2, 0, 1], 3));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Field::get(4, 1).is_err());
        assert!(Field::get(2, 21).is_err());
        assert!(Field::get(3, 0).is_err());
    }

    #[test]
    fn primitive_has_full_order() {
        for (p, e) in [(2, 1), (2, 2), (3, 2), (5, 1), (7, 1), (2, 4), (17, 1), (5, 2)] {
            let f = Field::get(p, e).unwrap();
            assert_eq!(f.element_order(f.primitive()), (f.q() - 1) as u64);
        }
    }

    #[test]
    fn large_field_uses_polynomial_path() {
        let f = Field::get(2, 17).unwrap();
        let a = 12345;
        assert_eq!(f.mul(a, f.inv(a)), 1);
        assert_eq!(f.pow(a, (f.q() - 1) as u64), 1);
    }

    #[test]
    fn embedding_gf4_into_gf16() {
        let small = Field::get(2, 2).unwrap();
        let big = Field::get(2, 4).unwrap();
        let m = big.embedding_from(&small).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(m[small.mul(a, b) as usize], big.mul(m[a as usize], m[b as usize]));
                assert_eq!(m[small.add(a, b) as usize], big.add(m[a as usize], m[b as usize]));
            }
        }
    }

    #[test]
    fn subfield_membership() {
        let f = Field::get(3, 2).unwrap();
        let sub: Vec<u32> = (0..9).filter(|&a| f.in_subfield(a, 1)).collect();
        assert_eq!(sub, vec![0, 1, 2]);
    }
}
