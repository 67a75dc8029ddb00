use super::word::{check_names, Word};
use crate::error::{Error, Result};

/// A finite presentation `⟨gens | rels⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub gens: Vec<String>,
    pub rels: Vec<Word>,
    /// Order recorded in the file, if any; not trusted until verified.
    pub order: Option<u64>,
}

impl Presentation {
    pub fn new(name: &str, gens: &[&str], rels: Vec<Word>) -> Result<Self> {
        let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        check_names(&gens)?;
        if rels.iter().any(|r| r.is_empty()) {
            return Err(Error::invalid("relators must be nonempty after free reduction"));
        }
        if rels.iter().flat_map(|r| r.letters()).any(|l| l.gen >= gens.len()) {
            return Err(Error::invalid("relator uses an undeclared generator"));
        }
        Ok(Presentation { name: name.to_string(), gens, rels, order: None })
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    /// Parses the line-oriented `.pres` format.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut name = None;
        let mut gens: Option<Vec<String>> = None;
        let mut rels = Vec::new();
        let mut order = None;
        for (i, raw) in text.lines().enumerate() {
            let lno = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let indent = raw.len() - raw.trim_start().len();
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest_col = indent + kw.len() + 2;
            match kw {
                "group" => {
                    let n = rest.trim();
                    if n.is_empty() || n.contains(char::is_whitespace) {
                        return Err(Error::parse(lno, rest_col, "expected a single group name"));
                    }
                    name = Some(n.to_string());
                }
                "gens" => {
                    if gens.is_some() {
                        return Err(Error::parse(lno, 1, "duplicate `gens` line"));
                    }
                    let g: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    if g.is_empty() {
                        return Err(Error::parse(lno, rest_col, "no generators given"));
                    }
                    check_names(&g).map_err(|e| Error::parse(lno, rest_col, e.to_string()))?;
                    gens = Some(g);
                }
                "rel" => {
                    let g = gens.as_ref().ok_or_else(|| Error::parse(lno, 1, "`rel` before `gens`"))?;
                    let offset = raw.find(rest).unwrap_or(0);
                    let w = Word::parse(rest, g, lno).map_err(|e| shift_col(e, offset))?;
                    if w.is_empty() {
                        return Err(Error::parse(lno, rest_col, "relator reduces to the empty word"));
                    }
                    rels.push(w);
                }
                "order" => {
                    let n: u64 =
                        rest.trim().parse().map_err(|_| Error::parse(lno, rest_col, "expected a positive integer"))?;
                    order = Some(n);
                }
                _ => return Err(Error::parse(lno, indent + 1, format!("unknown keyword `{kw}`"))),
            }
        }
        let gens = gens.ok_or_else(|| Error::parse(1, 1, "missing `gens` line"))?;
        Ok(Presentation { name: name.unwrap_or_else(|| "G".into()), gens, rels, order })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("group {}\ngens {}\n", self.name, self.gens.join(" "));
        for r in &self.rels {
            s.push_str(&format!("rel {}\n", r.display(&self.gens)));
        }
        if let Some(n) = self.order {
            s.push_str(&format!("order {n}\n"));
        }
        s
    }

    /// Generators `g` with `g^2` among the relators.
    pub fn involutions(&self) -> Vec<bool> {
        let mut inv = vec![false; self.gens.len()];
        for r in &self.rels {
            let l = r.cyclic_reduce();
            if l.len() == 2 && l.letters()[0] == l.letters()[1] {
                inv[l.letters()[0].gen] = true;
            }
        }
        inv
    }
}

fn shift_col(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { line, col, msg } => Error::Parse { line, col: col + offset, msg },
        other => other,
    }
}
