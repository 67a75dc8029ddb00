//! Derives the bundled asset directory: group realizations (`.grp`),
//! presentations (`.pres`), modules (`.mod`) and `manifest.json`.
//!
//! Presentations are curated data. For each group a generating pair is
//! chosen in a concrete realization; relators are either the classical
//! ones or found by adding `w^ord(w)` for short words `w` until coset
//! enumeration returns the group order, after which redundant relators
//! are dropped. Every presentation is re-verified against its realization.
//!
//! ```text
//! cargo run --release -p grpx --example derive_assets -- assets
//! ```

use std::collections::HashMap;
use std::path::Path;

use grpx::gf::{vector, Field, FieldRef, Matrix};
use grpx::groupcore::{action_on_orbit, Action, AnyGroup, Group, GroupFile, Perm, ProjMat};
use grpx::modrep::{all_irreducibles_up_to_dim, invariant_alternating_form, GModule, IrreducibleOptions, MeataxeOptions};
use grpx::presentations::{todd_coxeter, verify_presentation, Letter, Presentation, Word};
use grpx::symtype::{
    construct_r, default_weil_field, isometry_group_generators, symplectic_basis, weil_rep, FormData, Kind,
};
use serde_json::json;
use sha2::{Digest, Sha256};

const COSET_CAP: usize = 300_000;

struct Out<'a> {
    dir: &'a Path,
    entries: Vec<(String, String)>,
}

impl Out<'_> {
    fn write(&mut self, rel: &str, text: &str, provenance: &str) {
        let path = self.dir.join(rel);
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, text).unwrap();
        self.entries.push((rel.to_string(), provenance.to_string()));
        eprintln!("wrote {rel}");
    }

    fn manifest(&self) {
        let mut assets = Vec::new();
        for (rel, prov) in &self.entries {
            let bytes = std::fs::read(self.dir.join(rel)).unwrap();
            let digest = hex::encode(Sha256::digest(&bytes));
            assets.push(json!({ "path": rel, "sha256": digest, "provenance": prov }));
        }
        let m = json!({ "schema_version": 1, "assets": assets });
        std::fs::write(self.dir.join("manifest.json"), serde_json::to_string_pretty(&m).unwrap() + "\n").unwrap();
    }
}

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "assets".into());
    let dir = Path::new(&dir);
    std::fs::create_dir_all(dir).unwrap();
    let mut out = Out { dir, entries: Vec::new() };

    let s3 = perm_group(3, &["(0,1)", "(0,1,2)"]);
    emit_fixed(&mut out, "s3", &s3, &["a^2", "b^3", "(a b)^2"], "S3 on 3 points; Coxeter relators.");
    let a5 = perm_group(5, &["(0,1)(2,3)", "(0,2,4)"]);
    emit_fixed(&mut out, "a5", &a5, &["a^2", "b^3", "(a b)^5"], "A5 on 5 points; (2,3,5) triangle relators.");

    let sl = sl2_5();
    emit_fixed(
        &mut out,
        "sl2_5",
        &sl,
        &["a^2 b^-3", "a^2 (a b)^-5", "a^4"],
        "SL(2,5) on the 24 nonzero vectors of GF(5)^2; generators s, t with s^2 = t^3 = (st)^5 = -1.",
    );

    let sp4 = sp4_2();
    emit_searched(&mut out, "sp4_2", &sp4, 21, "Sp(4,2) preserving the alternating form with adjacent hyperbolic pairs.");
    for (kind, name) in [(Kind::Plus, "o4p_2"), (Kind::Minus, "o4m_2")] {
        let fd = FormData::standard(kind, 2, 2).unwrap();
        let g = isometry_group_generators(&fd).unwrap();
        let prov = format!("Isometry group of the standard {} quadratic form on GF(2)^4 (Q = x1x2 + x3x4{}).", kind, if kind == Kind::Minus { " + x3^2 + x4^2" } else { "" });
        emit_searched(&mut out, name, &g, 22, &prov);
    }

    let psl = psl2_17();
    let (la, lb) = emit_searched_orders(&mut out, "psl2_17", &psl, (2, 3, 17), 11, "PSL(2,17) on the 18 points of the projective line over GF(17).");
    let psp = psp4_3();
    emit_searched_orders(&mut out, "psp4_3", &psp, (2, 5, 9), 12, "PSp(4,3) on the 40 points of projective 3-space over GF(3).");
    let psu = psu3_3();
    let (pa, pb) = emit_searched_orders(
        &mut out,
        "psu3_3",
        &psu,
        (2, 6, 7),
        13,
        "PSU(3,3) on the 28 isotropic points of the Hermitian form with antidiagonal Gram matrix over GF(9).",
    );

    // modules over GF(2)
    let f2 = Field::get(2, 1).unwrap();
    let psl_pair = Group::from_gens(vec![la, lb]).unwrap();
    let m8 = irreducible_of_dim(&psl_pair, &f2, 8);
    out.write(
        "psl2_17_m8.mod",
        &m8.with_name("M8", "psl2_17").to_text(),
        "An 8-dimensional irreducible GF(2)-module of PSL(2,17): composition factor of the permutation module on 18 points, generators a, b of psl2_17.grp.",
    );
    let psu_pair = Group::from_gens(vec![pa, pb]).unwrap();
    let m6 = irreducible_of_dim(&psu_pair, &f2, 6);
    let sp = to_standard_symplectic(&m6);
    out.write(
        "psu3_3_m6.mod",
        &sp.clone().with_name("M6", "psu3_3").to_text(),
        "The 6-dimensional irreducible GF(2)-module of PSU(3,3), written in a basis where the invariant alternating form has adjacent hyperbolic pairs.",
    );
    let sp_group = Group::from_gens(sp.generators().to_vec()).unwrap();
    assert_eq!(sp_group.order().unwrap(), 6048);
    let pres = Presentation::parse(&std::fs::read_to_string(dir.join("psu3_3.pres")).unwrap()).unwrap();
    assert!(verify_presentation(&pres, &sp_group, COSET_CAP).unwrap());
    let gf = GroupFile {
        name: "psu3_3_sp6".into(),
        degree: 6,
        field: Some(f2.clone()),
        gen_names: vec!["a".into(), "b".into()],
        group: AnyGroup::Mat(sp_group),
    };
    out.write(
        "psu3_3_sp6.grp",
        &gf.to_text(),
        "PSU(3,3) inside Sp(6,2): the generators of psu3_3_m6.mod, preserving the alternating form with adjacent hyperbolic pairs; satisfies psu3_3.pres.",
    );

    // symplectic-type groups and their Weil modules
    let mut kinds: Vec<(Kind, u32, usize, u32)> = Vec::new();
    for n in 1..=3 {
        for kind in [Kind::Plus, Kind::Minus, Kind::Central4] {
            kinds.push((kind, 2, n, default_weil_field(2, kind)));
        }
        kinds.push((Kind::Odd, 3, n, default_weil_field(3, Kind::Odd)));
    }
    kinds.push((Kind::Central4, 2, 3, 9));
    for (kind, r, n, q) in kinds {
        let fd = FormData::standard(kind, r, n).unwrap();
        let g = construct_r(&fd);
        let w = weil_rep(&g, q).unwrap();
        let rep = w.report().unwrap();
        assert!(rep.faithful && rep.irreducible);
        let stem = format!("symtype/{}_r{r}_n{n}_q{q}", kind.as_str());
        let label = kind.label(r, n);
        let module = w.module().clone().with_name(format!("weil_{}_n{n}", kind.as_str()), format!("{}_r{r}_n{n}", kind.as_str()));
        let gens = module.generators().to_vec();
        let names: Vec<String> = (0..gens.len()).map(|i| if i + 1 == gens.len() { "c".into() } else { format!("x{}", i + 1) }).collect();
        let gf = GroupFile {
            name: format!("{}_r{r}_n{n}", kind.as_str()),
            degree: w.dim(),
            field: Some(w.field().clone()),
            gen_names: names,
            group: AnyGroup::Mat(Group::new(gens, Matrix::identity(w.field(), w.dim()))),
        };
        let prov = format!(
            "{label} of order {} in its faithful irreducible representation of degree {} over GF({q}); generators are the standard basis vectors of V followed by the central generator.",
            g.order(),
            w.dim()
        );
        out.write(&format!("{stem}.grp"), &gf.to_text(), &prov);
        out.write(&format!("{stem}.mod"), &module.to_text(), &prov);
    }
    out.manifest();
}

fn perm_group(n: usize, cycles: &[&str]) -> Group<Perm> {
    Group::from_gens(cycles.iter().map(|c| Perm::parse_cycles(n, c).unwrap()).collect()).unwrap()
}

fn write_group<E: Action>(out: &mut Out, name: &str, g: &Group<E>, wrap: fn(Group<E>) -> (AnyGroup, usize, Option<FieldRef>), prov: &str) {
    let (any, degree, field) = wrap(g.clone());
    let gf = GroupFile { name: name.into(), degree, field, gen_names: vec!["a".into(), "b".into()], group: any };
    out.write(&format!("{name}.grp"), &gf.to_text(), prov);
}

trait Wrap: Action + Sized {
    fn wrap(g: Group<Self>) -> (AnyGroup, usize, Option<FieldRef>);
}

impl Wrap for Perm {
    fn wrap(g: Group<Perm>) -> (AnyGroup, usize, Option<FieldRef>) {
        let d = g.one().degree();
        (AnyGroup::Perm(g), d, None)
    }
}

impl Wrap for Matrix {
    fn wrap(g: Group<Matrix>) -> (AnyGroup, usize, Option<FieldRef>) {
        let d = g.one().rows();
        let f = g.one().field().clone();
        (AnyGroup::Mat(g), d, Some(f))
    }
}

fn emit_fixed<E: Wrap>(out: &mut Out, name: &str, g: &Group<E>, rels: &[&str], prov: &str) {
    let n = g.order().unwrap();
    let mut text = format!("group {name}\ngens a b\n");
    for r in rels {
        text += &format!("rel {r}\n");
    }
    text += &format!("order {n}\n");
    let p = Presentation::parse(&text).unwrap();
    assert!(verify_presentation(&p, g, COSET_CAP).unwrap(), "{name}: fixed relators do not define the group");
    write_group(out, name, g, E::wrap, prov);
    out.write(&format!("{name}.pres"), &text, &format!("Presentation on the generators of {name}.grp, verified by coset enumeration; {prov}"));
}

/// Pair search with prescribed orders `(|a|, |b|, |ab|)`.
fn emit_searched_orders<E: Wrap>(out: &mut Out, name: &str, g: &Group<E>, orders: (u64, u64, u64), seed: u64, prov: &str) -> (E, E) {
    let (a, b) = find_pair(g, |oa, ob, oab| (oa, ob, oab) == orders, seed);
    emit_pair(out, name, g, a, b, &format!("{prov} Generating pair of orders {orders:?}."))
}

/// Pair search preferring an involution `a`.
fn emit_searched<E: Wrap>(out: &mut Out, name: &str, g: &Group<E>, seed: u64, prov: &str) {
    let (a, b) = find_pair(g, |oa, _, _| oa == 2, seed);
    emit_pair(out, name, g, a, b, prov);
}

fn emit_pair<E: Wrap>(out: &mut Out, name: &str, g: &Group<E>, a: E, b: E, prov: &str) -> (E, E) {
    let n = g.order().unwrap();
    let pair = g.subgroup(vec![a.clone(), b.clone()]);
    assert_eq!(pair.order().unwrap(), n);
    let text = find_presentation(name, &[a.clone(), b.clone()], n);
    let p = Presentation::parse(&text).unwrap();
    assert!(verify_presentation(&p, &pair, COSET_CAP).unwrap());
    write_group(out, name, &pair, E::wrap, prov);
    out.write(
        &format!("{name}.pres"),
        &text,
        &format!("Relators w^ord(w) over short words, searched until coset enumeration returns |G| = {n}, then pruned; generators of {name}.grp."),
    );
    eprintln!("{name}: order {n}, {} relators", p.rels.len());
    (a, b)
}

fn find_pair<E: Action>(g: &Group<E>, accept: impl Fn(u64, u64, u64) -> bool, seed: u64) -> (E, E) {
    let n = g.order().unwrap();
    let ord = |x: &E| x.order_capped(1 << 20).unwrap();
    let mut stream = g.random_stream(seed);
    loop {
        let a = stream.next().unwrap();
        let b = stream.next().unwrap();
        let (oa, ob) = (ord(&a), ord(&b));
        if a.is_one() || b.is_one() || !accept(oa, ob, ord(&a.mul(&b))) {
            continue;
        }
        if g.subgroup(vec![a.clone(), b.clone()]).order().unwrap() == n {
            return (a, b);
        }
    }
}

/// Words `a b^e₁ ⋯ a b^e_k` with `0 < |eᵢ| ≤ ord(b)/2`, one per rotation/inversion class.
fn syllable_words(max_syllables: usize, ob: i64) -> Vec<Word> {
    let exps: Vec<i64> = (-(ob - 1) / 2..=ob / 2).filter(|&e| e != 0).collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..max_syllables {
        let mut next = Vec::new();
        for w in &frontier {
            for &e in &exps {
                let mut v = w.clone();
                v.push(e);
                let word = v.iter().fold(Word::empty(), |acc, &e| acc.mul(&Word::gen(0)).mul(&Word::gen(1).pow(e)));
                if seen.insert(canonical(&word)) {
                    out.push(word);
                }
                next.push(v);
            }
        }
        frontier = next;
    }
    out
}

fn canonical(w: &Word) -> Vec<Letter> {
    let l = w.letters();
    let inv: Vec<Letter> = w.inv().letters().to_vec();
    let mut best: Option<Vec<Letter>> = None;
    for s in [l.to_vec(), inv] {
        for k in 0..s.len() {
            let r: Vec<Letter> = s[k..].iter().chain(&s[..k]).copied().collect();
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

/// Relators `wᵏ`, kept as `(w, k)` so the file shows the power.
fn find_presentation<E: Action>(name: &str, gens: &[E], order: u64) -> String {
    let one = gens[0].one_like();
    let ord = |x: &E| x.order_capped(1 << 20).unwrap() as i64;
    let (oa, ob) = (ord(&gens[0]), ord(&gens[1]));
    let power = |w: &Word| (w.clone(), ord(&w.evaluate(gens, &one)));
    let mut rels = vec![(Word::gen(0), oa), (Word::gen(1), ob)];
    let mut cands: Vec<(Word, i64)> = syllable_words(6, ob).iter().map(power).collect();
    cands.sort_by_key(|(w, k)| w.len() * *k as usize);
    let defines = |rels: &[(Word, i64)]| {
        let p = Presentation::new(name, &["a", "b"], rels.iter().map(|(w, k)| w.pow(*k)).collect()).unwrap();
        todd_coxeter(&p, &[], COSET_CAP).is_ok_and(|t| t.index() as u64 == order)
    };
    for r in cands {
        rels.push(r);
        if rels.len() >= 4 && defines(&rels) {
            break;
        }
    }
    assert!(defines(&rels), "{name}: no presentation among the candidates");
    // drop redundant relators, longest first
    let mut i = rels.len();
    while i > 3 {
        i -= 1;
        let mut trial = rels.clone();
        trial.remove(i);
        if defines(&trial) {
            rels = trial;
        }
    }
    let names = ["a".to_string(), "b".to_string()];
    let mut text = format!("group {name}\ngens a b\n");
    for (w, k) in &rels {
        if *k == 1 {
            text += &format!("rel {}\n", w.display(&names));
        } else if w.len() == 1 {
            text += &format!("rel {}^{k}\n", w.display(&names));
        } else {
            text += &format!("rel ({})^{k}\n", w.display(&names));
        }
    }
    text += &format!("order {order}\n");
    text
}

/// A composition factor of dimension `d` of the permutation module.
fn irreducible_of_dim(g: &Group<Perm>, f: &FieldRef, d: usize) -> GModule {
    let perm = GModule::permutation_module(f, g.generators()).unwrap();
    let search = all_irreducibles_up_to_dim(&perm, &IrreducibleOptions::new(d)).unwrap();
    search.modules.into_iter().find(|m| m.dim() == d).expect("irreducible of the requested dimension")
}

/// Rewrites a module with an invariant alternating form so that the form
/// becomes the standard one with adjacent hyperbolic pairs.
fn to_standard_symplectic(m: &GModule) -> GModule {
    let form = invariant_alternating_form(m, &MeataxeOptions::default()).unwrap().expect("alternating form");
    let t = symplectic_basis(&form.gram);
    let t_inv = t.inverse().unwrap();
    let gens: Vec<Matrix> = m.generators().iter().map(|g| t.mul_unchecked(g).mul_unchecked(&t_inv)).collect();
    GModule::new(m.field(), m.dim(), gens).unwrap()
}

fn perm_image(gens: Vec<ProjMat>) -> Group<Perm> {
    let g = Group::from_gens(gens).unwrap();
    let start = g.one().base_candidates()[0];
    let (_, perms) = action_on_orbit(&g, start);
    Group::from_gens(perms).unwrap()
}

fn psl2_17() -> Group<Perm> {
    let f = Field::get(17, 1).unwrap();
    let gens = vec![Matrix::from_ints(&f, &[&[1, 1], &[0, 1]]), Matrix::from_ints(&f, &[&[0, 1], &[-1, 0]])];
    perm_image(gens.into_iter().map(ProjMat::new).collect())
}

/// SL(2,5) on nonzero vectors, generated by `s`, `t` with `s² = t³ = (st)⁵ = −1`.
fn sl2_5() -> Group<Perm> {
    let f = Field::get(5, 1).unwrap();
    let mats: Vec<Matrix> = (0..625u64)
        .map(|c| Matrix::new(&f, 2, 2, vector::decode(5, 4, c)).unwrap())
        .filter(|m| m.det() == 1)
        .collect();
    let minus = Matrix::scalar(&f, 2, 4);
    let (s, t) = mats
        .iter()
        .flat_map(|s| mats.iter().map(move |t| (s, t)))
        .find(|(s, t)| s.pow(2) == minus && t.pow(3) == minus && s.mul_unchecked(t).pow(5) == minus)
        .expect("binary icosahedral generators");
    let pts: Vec<u64> = (1..25).collect();
    let index: HashMap<u64, usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let perms = [s, t].iter().map(|m| grpx::groupcore::perm_on_points(*m, &pts, &index)).collect();
    let g = Group::from_gens(perms).unwrap();
    assert_eq!(g.order().unwrap(), 120);
    g
}

/// Sp(4,2) generated by all symplectic transvections.
fn sp4_2() -> Group<Matrix> {
    let f = Field::get(2, 1).unwrap();
    let mut j = Matrix::zero(&f, 4, 4);
    for i in 0..2 {
        j.set(2 * i, 2 * i + 1, 1);
        j.set(2 * i + 1, 2 * i, 1);
    }
    let gens: Vec<Matrix> = (1..16u64)
        .map(|c| {
            let w = vector::decode(2, 4, c);
            let col = j.mul_vec(&w);
            let mut t = Matrix::identity(&f, 4);
            for a in 0..4 {
                for b in 0..4 {
                    t.set(a, b, f.add(t.get(a, b), f.mul(col[a], w[b])));
                }
            }
            t
        })
        .collect();
    let g = Group::from_gens(gens).unwrap();
    assert_eq!(g.order().unwrap(), 720);
    g
}

/// Symplectic transvections `x ↦ x + f(x,v)·v` for the form `x1y3 + x2y4 − x3y1 − x4y2` on GF(q)^4.
fn sp4_transvections(f: &FieldRef) -> Vec<Matrix> {
    let n = 4;
    let form = |a: &[u32], b: &[u32]| {
        let t1 = f.add(f.mul(a[0], b[2]), f.mul(a[1], b[3]));
        let t2 = f.add(f.mul(a[2], b[0]), f.mul(a[3], b[1]));
        f.sub(t1, t2)
    };
    let mut gens = Vec::new();
    for code in [1u64, 3, 9, 27, 4, 10, 28, 13] {
        let v = vector::decode(f.q(), n, code);
        let mut m = Matrix::identity(f, n);
        for i in 0..n {
            let c = form(&vector::unit(n, i), &v);
            for j in 0..n {
                m.set(i, j, f.add(m.get(i, j), f.mul(c, v[j])));
            }
        }
        gens.push(m);
    }
    gens
}

fn psp4_3() -> Group<Perm> {
    let f = Field::get(3, 1).unwrap();
    perm_image(sp4_transvections(&f).into_iter().map(ProjMat::new).collect())
}

/// SU(3,3) for the Hermitian form with antidiagonal Gram matrix, acting on isotropic points.
fn psu3_3() -> Group<Perm> {
    use rand::{Rng, SeedableRng};
    let f = Field::get(3, 2).unwrap();
    let mut j = Matrix::zero(&f, 3, 3);
    for i in 0..3 {
        j.set(i, 2 - i, 1);
    }
    let conj_t = |m: &Matrix| {
        let mut t = m.transpose();
        for i in 0..3 {
            for k in 0..3 {
                t.set(i, k, f.frobenius(t.get(i, k), 1));
            }
        }
        t
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let mut gens: Vec<Matrix> = Vec::new();
    loop {
        let data = (0..9).map(|_| rng.gen_range(0..9)).collect();
        let m = Matrix::new(&f, 3, 3, data).unwrap();
        if m.det() != 1 || m.mul(&j).unwrap().mul(&conj_t(&m)).unwrap() != j {
            continue;
        }
        gens.push(m);
        let g = Group::from_gens(gens.clone()).unwrap();
        if g.order().unwrap() == 6048 {
            break;
        }
    }
    let g = Group::from_gens(gens).unwrap();
    let iso: Vec<u64> = (1..729u64)
        .filter(|&c| {
            let v = vector::decode(9, 3, c);
            let mut s = 0;
            for i in 0..3 {
                s = f.add(s, f.mul(v[i], f.frobenius(v[2 - i], 1)));
            }
            s == 0 && v.iter().find(|&&x| x != 0) == Some(&1)
        })
        .collect();
    assert_eq!(iso.len(), 28);
    let index: HashMap<u64, usize> = iso.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let perms = g
        .generators()
        .iter()
        .map(|m| grpx::groupcore::perm_on_points(&ProjMat::new(m.clone()), &iso, &index))
        .collect();
    Group::from_gens(perms).unwrap()
}
