//! `.grp` files.
//!
//! ```text
//! group A5 kind perm degree 5
//! gen a (0,1)(2,3)
//! gen b (0,2,4)
//! ```
//!
//! Matrix kinds put a `matrix` block after each `gen <name>` line.
//! Blank lines and lines starting with `#` are ignored.

use super::element::{max_encodable_dim, ProjMat};
use super::group::Group;
use super::perm::Perm;
use crate::error::{Error, Result};
use crate::gf::{parse_field_token, FieldRef, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Perm,
    Mat,
    ProjMat,
}

impl GroupKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupKind::Perm => "perm",
            GroupKind::Mat => "mat",
            GroupKind::ProjMat => "projmat",
        }
    }
}

/// A group of any supported element kind.
#[derive(Clone, Debug)]
pub enum AnyGroup {
    Perm(Group<Perm>),
    Mat(Group<Matrix>),
    ProjMat(Group<ProjMat>),
}

impl AnyGroup {
    pub fn kind(&self) -> GroupKind {
        match self {
            AnyGroup::Perm(_) => GroupKind::Perm,
            AnyGroup::Mat(_) => GroupKind::Mat,
            AnyGroup::ProjMat(_) => GroupKind::ProjMat,
        }
    }

    pub fn order(&self) -> Result<u64> {
        match self {
            AnyGroup::Perm(g) => g.order(),
            AnyGroup::Mat(g) => g.order(),
            AnyGroup::ProjMat(g) => g.order(),
        }
    }

    pub fn num_generators(&self) -> usize {
        match self {
            AnyGroup::Perm(g) => g.generators().len(),
            AnyGroup::Mat(g) => g.generators().len(),
            AnyGroup::ProjMat(g) => g.generators().len(),
        }
    }

    pub fn with_cap(self, cap: u64) -> Self {
        match self {
            AnyGroup::Perm(g) => AnyGroup::Perm(g.with_cap(cap)),
            AnyGroup::Mat(g) => AnyGroup::Mat(g.with_cap(cap)),
            AnyGroup::ProjMat(g) => AnyGroup::ProjMat(g.with_cap(cap)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub field: Option<FieldRef>,
    pub gen_names: Vec<String>,
    pub group: AnyGroup,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<GroupFile> {
        let lines: Vec<&str> = text.lines().collect();
        let mut pos = 0;
        skip_blank(&lines, &mut pos);
        let header = *lines.get(pos).ok_or_else(|| Error::parse(1, 1, "empty group file"))?;
        let hline = pos + 1;
        pos += 1;
        let t: Vec<&str> = header.split_whitespace().collect();
        let bad = |msg: &str| Error::parse(hline, 1, msg.to_string());
        if t.len() < 6 || t[0] != "group" || t[2] != "kind" || t[4] != "degree" {
            return Err(bad("expected `group <name> kind <perm|mat|projmat> degree <n> [over p^e]`"));
        }
        let name = t[1].to_string();
        let kind = match t[3] {
            "perm" => GroupKind::Perm,
            "mat" => GroupKind::Mat,
            "projmat" => GroupKind::ProjMat,
            k => return Err(bad(&format!("unknown kind `{k}`"))),
        };
        let degree: usize = t[5].parse().map_err(|_| bad("degree must be a nonnegative integer"))?;
        let field = match (kind, t.get(6), t.get(7)) {
            (GroupKind::Perm, None, _) => None,
            (GroupKind::Perm, Some(_), _) => return Err(bad("permutation groups take no field")),
            (_, Some(&"over"), Some(tok)) => Some(parse_field_token(tok).map_err(|e| bad(&e.to_string()))?),
            _ => return Err(bad("matrix kinds need `over p^e`")),
        };
        if let Some(f) = &field {
            if degree > max_encodable_dim(f.q()) {
                return Err(bad("matrix degree too large for point encoding"));
            }
        }
        let mut gen_names = Vec::new();
        let mut perms = Vec::new();
        let mut mats = Vec::new();
        loop {
            skip_blank(&lines, &mut pos);
            let Some(line) = lines.get(pos) else { break };
            let lno = pos + 1;
            pos += 1;
            let rest = line.trim().strip_prefix("gen").filter(|r| r.starts_with(char::is_whitespace));
            let rest = rest.ok_or_else(|| Error::parse(lno, 1, "expected `gen <name> ...`"))?.trim();
            let (gname, body) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            if !is_identifier(gname) {
                return Err(Error::parse(lno, 5, format!("bad generator name `{gname}`")));
            }
            if gen_names.iter().any(|n| n == gname) {
                return Err(Error::parse(lno, 5, format!("duplicate generator `{gname}`")));
            }
            gen_names.push(gname.to_string());
            match kind {
                GroupKind::Perm => {
                    let p = Perm::parse_cycles(degree, body).map_err(|e| Error::parse(lno, 1, e.to_string()))?;
                    perms.push(p);
                }
                _ => {
                    if !body.trim().is_empty() {
                        return Err(Error::parse(lno, 1, "matrix generators take a following matrix block"));
                    }
                    let m = Matrix::parse_block(&lines, &mut pos, 1)?;
                    let f = field.as_ref().expect("matrix kinds have a field");
                    if m.rows() != degree || m.cols() != degree || !m.field().same(f) {
                        return Err(Error::parse(lno, 1, format!("generator `{gname}` has the wrong shape or field")));
                    }
                    if !m.is_invertible() {
                        return Err(Error::parse(lno, 1, format!("generator `{gname}` is singular")));
                    }
                    mats.push(m);
                }
            }
        }
        let group = match kind {
            GroupKind::Perm => AnyGroup::Perm(Group::new(perms, Perm::identity(degree))),
            GroupKind::Mat => {
                let f = field.as_ref().expect("field");
                AnyGroup::Mat(Group::new(mats, Matrix::identity(f, degree)))
            }
            GroupKind::ProjMat => {
                let f = field.as_ref().expect("field");
                let gens = mats.into_iter().map(ProjMat::new).collect();
                AnyGroup::ProjMat(Group::new(gens, ProjMat::new(Matrix::identity(f, degree))))
            }
        };
        Ok(GroupFile { name, degree, field, gen_names, group })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("group {} kind {} degree {}", self.name, self.group.kind().as_str(), self.degree);
        if let Some(f) = &self.field {
            s.push_str(&format!(" over {f}"));
        }
        s.push('\n');
        match &self.group {
            AnyGroup::Perm(g) => {
                for (n, p) in self.gen_names.iter().zip(g.generators()) {
                    s.push_str(&format!("gen {n} {}\n", p.to_cycle_string()));
                }
            }
            AnyGroup::Mat(g) => {
                for (n, m) in self.gen_names.iter().zip(g.generators()) {
                    s.push_str(&format!("gen {n}\n{}", m.to_text()));
                }
            }
            AnyGroup::ProjMat(g) => {
                for (n, m) in self.gen_names.iter().zip(g.generators()) {
                    s.push_str(&format!("gen {n}\n{}", m.matrix().to_text()));
                }
            }
        }
        s
    }
}

fn skip_blank(lines: &[&str], pos: &mut usize) {
    while *pos < lines.len() && (lines[*pos].trim().is_empty() || lines[*pos].trim_start().starts_with('#')) {
        *pos += 1;
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
