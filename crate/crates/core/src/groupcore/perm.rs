use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}`. Products compose left to right:
/// `x^(p·q) = (x^p)^q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { img: (0..n as u32).collect() }
    }

    pub fn from_images(img: Vec<u32>) -> Result<Self> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &x in &img {
            if x as usize >= n || seen[x as usize] {
                return Err(Error::invalid("image array is not a bijection"));
            }
            seen[x as usize] = true;
        }
        Ok(Perm { img })
    }

    /// Builds from disjoint cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let y = c[(i + 1) % c.len()];
                if x as usize >= n || y as usize >= n {
                    return Err(Error::invalid(format!("point out of range in cycle {c:?}")));
                }
                img[x as usize] = y;
            }
        }
        Perm::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.img
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { img: self.img.iter().map(|&x| other.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { img: inv }
    }

    pub fn is_id(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.img.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.img[s] as usize == s {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x as u32);
                x = self.img[x] as usize;
            }
            out.push(c);
        }
        out
    }

    /// +1 or -1.
    pub fn sign(&self) -> i32 {
        let even = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend(&self, n: usize) -> Perm {
        let mut img = self.img.clone();
        img.extend(self.img.len() as u32..n as u32);
        Perm { img }
    }

    /// Acts on `offset..offset+self.degree()` inside a permutation of degree `n`.
    pub fn shifted(&self, offset: usize, n: usize) -> Perm {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for (i, &x) in self.img.iter().enumerate() {
            img[offset + i] = offset as u32 + x;
        }
        Perm { img }
    }

    /// Cycle notation with 0-based points, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cs = self.cycles();
        if cs.is_empty() {
            return "()".into();
        }
        cs.iter()
            .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect()
    }

    /// Parses cycle notation such as `(0,1,2)(3,4)`; commas or spaces separate points.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Perm> {
        let s = s.trim();
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| Error::invalid(format!("expected `(` in `{s}`")))?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::invalid(format!("unexpected text in `{s}`")));
            }
            let close = rest.find(')').ok_or_else(|| Error::invalid(format!("unbalanced cycle in `{s}`")))?;
            let body = &rest[open + 1..close];
            let pts: std::result::Result<Vec<u32>, _> =
                body.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(str::parse).collect();
            let pts = pts.map_err(|_| Error::invalid(format!("bad point in `{body}`")))?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = rest[close + 1..].trim_start();
        }
        let mut seen = vec![false; n];
        for c in &cycles {
            for &x in c {
                if x as usize >= n || seen[x as usize] {
                    return Err(Error::invalid(format!("cycles in `{s}` are not disjoint or out of range")));
                }
                seen[x as usize] = true;
            }
        }
        let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(n, &refs)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.compose(&b).image(0), 2);
        assert!(a.compose(&a.inverse()).is_id());
    }

    #[test]
    fn cycle_strings_round_trip() {
        let p = Perm::parse_cycles(6, "(0,3,5)(1 2)").unwrap();
        assert_eq!(p.to_cycle_string(), "(0,3,5)(1,2)");
        assert_eq!(Perm::parse_cycles(6, &p.to_cycle_string()).unwrap(), p);
        assert_eq!(p.order(), 6);
        assert_eq!(p.sign(), -1);
        assert!(Perm::parse_cycles(3, "(0,1)(1,2)").is_err());
        assert!(Perm::parse_cycles(3, "(0,5)").is_err());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }
}
