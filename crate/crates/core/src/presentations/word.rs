use std::fmt;

use crate::error::{Error, Result};
use crate::groupcore::{is_identifier, GroupElement};

/// A letter: generator index and sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A freely reduced word in the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Word {
        Word(vec![Letter { gen: g, inverse: false }])
    }

    /// From signed 1-based indices: `2` is the second generator, `-2` its inverse.
    pub fn from_signed(s: &[i32]) -> Word {
        Word::new(s.iter().map(|&x| Letter { gen: x.unsigned_abs() as usize - 1, inverse: x < 0 }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn inv(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Cyclically reduced conjugate.
    pub fn cyclic_reduce(&self) -> Word {
        let l = &self.0;
        let mut a = 0;
        let mut b = l.len();
        while b > a + 1 && l[a] == l[b - 1].inv() {
            a += 1;
            b -= 1;
        }
        Word(l[a..b].to_vec())
    }

    /// Product of `images` along the word.
    pub fn evaluate<E: GroupElement>(&self, images: &[E], one: &E) -> E {
        self.0.iter().fold(one.clone(), |acc, l| {
            let x = &images[l.gen];
            if l.inverse {
                acc.mul(&x.inv())
            } else {
                acc.mul(x)
            }
        })
    }

    /// Prints with run-length powers, e.g. `a^2 b^-1`.
    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut k = 1;
            while i + k < self.0.len() && self.0[i + k] == l {
                k += 1;
            }
            let e = if l.inverse { -(k as i64) } else { k as i64 };
            parts.push(if e == 1 { names[l.gen].clone() } else { format!("{}^{}", names[l.gen], e) });
            i += k;
        }
        parts.join(" ")
    }

    /// Parses juxtaposed factors: identifiers, parenthesised words, `^k`
    /// powers (k may be negative), and a `-` suffix for inversion. `1` is the empty word.
    pub fn parse(s: &str, names: &[String], line: usize) -> Result<Word> {
        let mut p = Parser { chars: s.char_indices().collect(), pos: 0, names, line };
        let w = p.word()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(w)
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    names: &'a [String],
    line: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        let col = self.chars.get(self.pos).map(|&(i, _)| i + 1).unwrap_or(self.chars.len() + 1);
        Error::parse(self.line, col, msg.to_string())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Word::empty();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') => return Ok(w),
                _ => {
                    let f = self.factor()?;
                    w = w.mul(&f);
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let mut w = self.atom()?;
        loop {
            match self.peek() {
                Some('^') => {
                    self.pos += 1;
                    let k = self.integer()?;
                    w = w.pow(k);
                }
                Some('-') => {
                    self.pos += 1;
                    w = w.inv();
                }
                _ => return Ok(w),
            }
        }
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::empty())
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                match self.names.iter().position(|n| *n == name) {
                    Some(g) => Ok(Word::gen(g)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown generator `{name}`")))
                    }
                }
            }
            _ => Err(self.err("expected a generator or `(`")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer exponent")
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.0.iter().map(|l| l.gen + 1).max().unwrap_or(0)).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

/// Validates a list of generator names.
pub fn check_names(names: &[String]) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        if !is_identifier(n) {
            return Err(Error::invalid(format!("`{n}` is not an identifier")));
        }
        if names[..i].contains(n) {
            return Err(Error::invalid(format!("duplicate generator `{n}`")));
        }
    }
    Ok(())
}
