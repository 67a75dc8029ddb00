//! Permutation and matrix groups with Schreier–Sims.

mod bsgs;
mod element;
mod group;
mod hom;
mod io;
mod perm;
mod random;

pub use bsgs::{Bsgs, BuildOptions, Level};
pub use element::{max_encodable_dim, Action, GroupElement, Pair, ProjMat, PAIR_TAG};
pub use group::{factorize, is_power_of, is_prime_power, minimal_generators, naive_closure, Group, DEFAULT_CAP};
pub use hom::Homomorphism;
pub use io::{is_identifier, AnyGroup, GroupFile, GroupKind};
pub use perm::{gcd, lcm, Perm};
pub use random::ProductReplacement;

use crate::gf::{vector, FieldRef, Matrix};

/// Permutation action of a matrix group on a finite set of vectors closed
/// under it (e.g. an orbit); returns the permutation induced by `m`.
pub fn perm_on_points<E: Action>(m: &E, points: &[u64], index: &std::collections::HashMap<u64, usize>) -> Perm {
    let img = points.iter().map(|&p| index[&m.act(p)] as u32).collect();
    Perm::from_images(img).expect("point set is invariant")
}

/// Permutation representation on an orbit, for each generator.
pub fn action_on_orbit<E: Action>(g: &Group<E>, start: u64) -> (Vec<u64>, Vec<Perm>) {
    let orbit = g.orbit(start);
    let index = orbit.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let perms = g.generators().iter().map(|x| perm_on_points(x, &orbit, &index)).collect();
    (orbit, perms)
}

/// Projective points of `GF(q)^n`, as normalised vector codes, in increasing order.
pub fn projective_points(field: &FieldRef, n: usize) -> Vec<u64> {
    let q = field.q() as u64;
    let total = q.pow(n as u32);
    (1..total)
        .filter(|&c| {
            let v = vector::decode(field.q(), n, c);
            v.iter().find(|&&x| x != 0) == Some(&1)
        })
        .collect()
}

/// The permutation matrix `P` with `e_i P = e_{i^p}`.
pub fn perm_matrix(field: &FieldRef, p: &Perm) -> Matrix {
    let n = p.degree();
    let mut m = Matrix::zero(field, n, n);
    for i in 0..n {
        m.set(i, p.image(i), 1);
    }
    m
}

#[cfg(test)]
mod tests {
    use std::collections::{HashMap, HashSet};

    use super::*;
    use crate::gf::Field;

    fn s3() -> Group<Perm> {
        Group::from_gens(vec![Perm::parse_cycles(3, "(0,1)").unwrap(), Perm::parse_cycles(3, "(0,1,2)").unwrap()])
            .unwrap()
    }

    fn a5() -> Group<Perm> {
        Group::from_gens(vec![Perm::parse_cycles(5, "(0,1,2)").unwrap(), Perm::parse_cycles(5, "(0,1,2,3,4)").unwrap()])
            .unwrap()
    }

    fn s4() -> Group<Perm> {
        Group::from_gens(vec![Perm::parse_cycles(4, "(0,1)").unwrap(), Perm::parse_cycles(4, "(0,1,2,3)").unwrap()])
            .unwrap()
    }

    fn sl25() -> Group<Matrix> {
        let f = Field::get(5, 1).unwrap();
        Group::from_gens(vec![Matrix::from_ints(&f, &[&[1, 1], &[0, 1]]), Matrix::from_ints(&f, &[&[1, 0], &[1, 1]])])
            .unwrap()
    }

    /// Sp4(2) generated by all symplectic transvections for the form x1y3+x2y4+x3y1+x4y2.
    fn sp42() -> Group<Matrix> {
        let f = Field::get(2, 1).unwrap();
        let form = |a: &[u32], b: &[u32]| (a[0] * b[2] + a[1] * b[3] + a[2] * b[0] + a[3] * b[1]) % 2;
        let mut gens = Vec::new();
        for code in 1..16u64 {
            let v = vector::decode(2, 4, code);
            let mut m = Matrix::identity(&f, 4);
            for i in 0..4 {
                let mut e = vec![0; 4];
                e[i] = 1;
                if form(&e, &v) == 1 {
                    for j in 0..4 {
                        m.set(i, j, m.get(i, j) ^ v[j]);
                    }
                }
            }
            gens.push(m);
        }
        Group::from_gens(gens).unwrap()
    }

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(s3().order().unwrap(), 6);
        assert_eq!(s4().order().unwrap(), 24);
        assert_eq!(a5().order().unwrap(), 60);
        assert_eq!(sl25().order().unwrap(), 120);
        let sp = sp42();
        assert_eq!(sp.order().unwrap(), 720);
        let naive = naive_closure(sp.generators(), sp.one(), 10_000).unwrap();
        assert_eq!(naive.len(), 720);
    }

    #[test]
    fn bsgs_enumeration_matches_closure() {
        for g in [s4(), a5()] {
            let a: HashSet<Perm> = g.elements().unwrap().into_iter().collect();
            let b: HashSet<Perm> = naive_closure(g.generators(), g.one(), 1000).unwrap().into_iter().collect();
            assert_eq!(a, b);
        }
        let g = sl25();
        let b = g.bsgs().unwrap();
        for x in g.elements().unwrap() {
            let idx = b.factor(&x).unwrap();
            assert_eq!(b.element_at(&idx), x);
        }
    }

    #[test]
    fn membership() {
        let g = a5();
        assert!(g.contains(&Perm::identity(5)).unwrap());
        assert!(g.contains(&g.generators()[0]).unwrap());
        assert!(!g.contains(&Perm::parse_cycles(5, "(0,1)").unwrap()).unwrap());
    }

    #[test]
    fn projective_group_order() {
        let f = Field::get(5, 1).unwrap();
        let gens = sl25().generators().iter().cloned().map(ProjMat::new).collect();
        let g = Group::new(gens, ProjMat::new(Matrix::identity(&f, 2)));
        assert_eq!(g.order().unwrap(), 60);
    }

    #[test]
    fn normal_closure_and_derived() {
        let s5 = Group::from_gens(vec![
            Perm::parse_cycles(5, "(0,1)").unwrap(),
            Perm::parse_cycles(5, "(0,1,2,3,4)").unwrap(),
        ])
        .unwrap();
        assert_eq!(s5.normal_closure(&[Perm::identity(5)]).unwrap().order().unwrap(), 1);
        let n = s5.normal_closure(&[Perm::parse_cycles(5, "(0,1,2)").unwrap()]).unwrap();
        assert_eq!(n.order().unwrap(), 60);
        assert!(n.is_normalized_by(s5.generators()).unwrap());
        assert_eq!(s5.derived_subgroup().unwrap().order().unwrap(), 60);
        assert_eq!(s4().derived_subgroup().unwrap().order().unwrap(), 12);
        assert!(s4().is_soluble().unwrap());
        assert!(!a5().is_soluble().unwrap());
    }

    /// All normal subgroups as element sets, by joining normal closures of single elements.
    fn normal_subgroups_oracle(g: &Group<Matrix>) -> Vec<HashSet<Matrix>> {
        let elems = g.elements().unwrap();
        let mut found: Vec<HashSet<Matrix>> = Vec::new();
        let mut gens_of: Vec<Vec<Matrix>> = Vec::new();
        for x in &elems {
            let n = g.normal_closure(std::slice::from_ref(x)).unwrap();
            let set: HashSet<Matrix> = n.elements().unwrap().into_iter().collect();
            if !found.contains(&set) {
                found.push(set);
                gens_of.push(vec![x.clone()]);
            }
        }
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let mut seeds = gens_of[i].clone();
                seeds.extend(gens_of[j].clone());
                let set: HashSet<Matrix> = g.normal_closure(&seeds).unwrap().elements().unwrap().into_iter().collect();
                if !found.contains(&set) {
                    found.push(set);
                    gens_of.push(seeds);
                }
            }
            i += 1;
        }
        found
    }

    #[test]
    fn soluble_radical_and_center() {
        assert_eq!(s4().soluble_radical().unwrap().order().unwrap(), 24);
        let g = sl25();
        let rad = g.soluble_radical().unwrap();
        assert_eq!(rad.order().unwrap(), 2);
        let best = normal_subgroups_oracle(&g)
            .into_iter()
            .filter(|s| {
                let gens: Vec<Matrix> = s.iter().cloned().collect();
                g.subgroup(gens).is_soluble().unwrap()
            })
            .max_by_key(|s| s.len())
            .unwrap();
        let rad_set: HashSet<Matrix> = rad.elements().unwrap().into_iter().collect();
        assert_eq!(rad_set, best);
        assert_eq!(g.center().unwrap().order().unwrap(), 2);
        assert_eq!(a5().center().unwrap().order().unwrap(), 1);
    }

    #[test]
    fn sylow_subgroups() {
        let p = s4().sylow_subgroup(2).unwrap();
        assert_eq!(p.order().unwrap(), 8);
        assert_eq!(a5().sylow_subgroup(5).unwrap().order().unwrap(), 5);
        assert_eq!(sl25().sylow_subgroup(2).unwrap().order().unwrap(), 8);
    }

    #[test]
    fn kernel_of_projection_to_psl() {
        let g = sl25();
        let f = Field::get(5, 1).unwrap();
        let pts = projective_points(&f, 2);
        let index: HashMap<u64, usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let proj = |m: &Matrix| perm_on_points(&ProjMat::new(m.clone()), &pts, &index);
        let images: Vec<Perm> = g.generators().iter().map(proj).collect();
        let target = Group::from_gens(images.clone()).unwrap();
        let h = Homomorphism::new(g.clone(), target, images).unwrap();
        assert!(h.is_well_defined().unwrap());
        let k = h.kernel().unwrap();
        assert_eq!(k.order().unwrap(), 2);
        assert_eq!(k.order().unwrap() * h.image_group().order().unwrap(), g.order().unwrap());
        for x in g.elements().unwrap().iter().take(40) {
            assert_eq!(h.image(x).unwrap(), proj(x));
            let y = h.preimage(&proj(x)).unwrap().unwrap();
            assert_eq!(proj(&y), proj(x));
        }
    }

    #[test]
    fn identity_map_has_trivial_kernel_and_bad_maps_are_detected() {
        let g = a5();
        let h = Homomorphism::new(g.clone(), g.clone(), g.generators().to_vec()).unwrap();
        assert_eq!(h.kernel().unwrap().order().unwrap(), 1);
        let swapped = vec![g.generators()[1].clone(), g.generators()[0].clone()];
        let bad = Homomorphism::new(g.clone(), g.clone(), swapped).unwrap();
        assert!(!bad.is_well_defined().unwrap());
    }

    #[test]
    fn random_elements_are_reproducible_and_cover_classes() {
        let g = s4();
        assert_eq!(g.random_element(42), g.random_element(42));
        let classes = g.conjugacy_classes().unwrap();
        assert_eq!(classes.len(), 5);
        let draws: Vec<Perm> = g.random_stream(9).take(200).collect();
        assert!(draws.iter().all(|x| g.contains(x).unwrap()));
        let hit = classes.iter().filter(|c| c.iter().any(|x| draws.contains(x))).count();
        assert!(hit * 10 >= classes.len() * 9);
    }

    #[test]
    fn cap_is_enforced() {
        let s8 = Group::from_gens(vec![
            Perm::parse_cycles(8, "(0,1)").unwrap(),
            Perm::parse_cycles(8, "(0,1,2,3,4,5,6,7)").unwrap(),
        ])
        .unwrap()
        .with_cap(1000);
        assert!(matches!(s8.order(), Err(crate::Error::CapExceeded(_))));
    }

    #[test]
    fn grp_file_round_trip() {
        let text = "group A5 kind perm degree 5\n# comment\ngen a (0,1,2)\ngen b (0,1,2,3,4)\n";
        let gf = GroupFile::parse(text).unwrap();
        assert_eq!(gf.group.order().unwrap(), 60);
        assert_eq!(GroupFile::parse(&gf.to_text()).unwrap().to_text(), gf.to_text());
        let mtext = "group SL25 kind mat degree 2 over 5^1\ngen a\nmatrix 2 2 over 5^1\n1 1\n0 1\ngen b\nmatrix 2 2 over 5^1\n1 0\n1 1\n";
        let m = GroupFile::parse(mtext).unwrap();
        assert_eq!(m.group.order().unwrap(), 120);
        assert_eq!(m.to_text(), mtext);
        let p = GroupFile::parse(&mtext.replace("kind mat", "kind projmat")).unwrap();
        assert_eq!(p.group.order().unwrap(), 60);
        assert!(GroupFile::parse("group X kind perm degree 3\ngen a (0,1)(1,2)\n").is_err());
        assert!(GroupFile::parse("group X kind blob degree 3\n").is_err());
    }
}
