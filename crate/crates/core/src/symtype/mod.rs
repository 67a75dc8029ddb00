//! Symplectic-type `r`-groups: the extraspecial groups `r^{1+2n}`,
//! `2^{1+2n}_±` and the central product `4∘2^{1+2n}`, their isometry
//! groups, Weil representations and normaliser extensions.

mod classify;
mod form;
mod isometry;
mod rgroup;
mod weil;

pub use classify::{classify_r, Classification, CLASSIFY_LIMIT};
pub use form::{symplectic_basis, FormData, Kind};
pub use isometry::{
    isometry_from_symplectic, isometry_group_generators, isometry_group_order, orthogonal_order_2, sp_order,
    RAutomorphism,
};
pub use rgroup::{construct_r, LawReport, RElt, SymplecticTypeGroup, EXHAUSTIVE_LAW_LIMIT};
pub use weil::{
    default_weil_field, lift_isometry, normalizer_extension, weil_rep, ExtensionCertificate, NormalizerExtension,
    WeilReport, WeilRep, FAITHFUL_CHECK_LIMIT,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcore::{Group, Perm};

    fn all_kinds() -> Vec<(Kind, u32, usize)> {
        let mut v = Vec::new();
        for n in 1..=3 {
            v.push((Kind::Plus, 2, n));
            v.push((Kind::Minus, 2, n));
            v.push((Kind::Central4, 2, n));
            v.push((Kind::Odd, 3, n));
        }
        v.push((Kind::Odd, 5, 1));
        v
    }

    #[test]
    fn laws_hold_for_every_kind() {
        for (kind, r, n) in all_kinds() {
            let fd = FormData::standard(kind, r, n).unwrap();
            assert_eq!(fd.kind(), kind);
            let g = construct_r(&fd);
            let rep = g.check_laws(2000, 7);
            assert!(rep.holds(), "{kind} r={r} n={n}: {rep:?}");
            assert_eq!(rep.exhaustive, g.order() <= EXHAUSTIVE_LAW_LIMIT);
        }
    }

    #[test]
    fn orders_and_centres() {
        let g = construct_r(&FormData::standard(Kind::Odd, 3, 1).unwrap());
        assert_eq!(g.order(), 27);
        assert!(g.elements().all(|x| g.pow(&x, 3) == g.one()));
        let p = construct_r(&FormData::standard(Kind::Plus, 2, 2).unwrap()).perm_group().unwrap();
        assert_eq!(p.order().unwrap(), 32);
        assert_eq!(p.center().unwrap().order().unwrap(), 2);
        let c = construct_r(&FormData::standard(Kind::Central4, 2, 2).unwrap()).perm_group().unwrap();
        assert_eq!(c.order().unwrap(), 64);
        assert_eq!(c.center().unwrap().order().unwrap(), 4);
    }

    #[test]
    fn symplectic_basis_is_symplectic() {
        let fd = FormData::standard(Kind::Central4, 2, 2).unwrap();
        let b = fd.symplectic_basis();
        for i in 0..2 {
            assert_eq!(fd.f(b.row(2 * i), b.row(2 * i + 1)), 1);
        }
        assert_eq!(b.row(4), &fd.radical()[0][..]);
    }

    #[test]
    fn isometry_group_orders() {
        let cases = [
            (Kind::Central4, 1, 6u64),
            (Kind::Plus, 1, 2),
            (Kind::Minus, 1, 6),
            (Kind::Central4, 2, 720),
            (Kind::Plus, 2, 72),
            (Kind::Minus, 2, 120),
        ];
        for (kind, n, order) in cases {
            let fd = FormData::standard(kind, 2, n).unwrap();
            let g = isometry_group_generators(&fd).unwrap();
            assert_eq!(g.order().unwrap(), order, "{kind} n={n}");
            assert!(g.generators().iter().all(|x| fd.is_isometry(x)));
        }
        let fd = FormData::standard(Kind::Odd, 3, 1).unwrap();
        assert_eq!(isometry_group_generators(&fd).unwrap().order().unwrap(), 24);
    }

    /// Oracle: count bases `(b_1, …, b_d)` whose Gram and `Q` values match
    /// the standard ones, by brute force over `V^d`.
    fn count_isometries(fd: &FormData) -> u64 {
        let fld = fd.field();
        let d = fd.dim();
        let q = fld.q();
        let vecs: Vec<Vec<u32>> = (0..(q as u64).pow(d as u32)).map(|c| crate::gf::vector::decode(q, d, c)).collect();
        let mut count = 0;
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        while let Some(rows) = stack.pop() {
            if rows.len() == d {
                let m = crate::gf::Matrix::from_rows(fld, &rows.iter().map(|&i| vecs[i].clone()).collect::<Vec<_>>()).unwrap();
                if fd.is_isometry(&m) {
                    count += 1;
                }
                continue;
            }
            let k = rows.len();
            let ek = crate::gf::vector::unit(d, k);
            for (i, v) in vecs.iter().enumerate() {
                if fd.q(v) == fd.q(&ek)
                    && (0..k).all(|j| fd.f(&vecs[rows[j]], v) == fd.f(&crate::gf::vector::unit(d, j), &ek))
                {
                    let mut next = rows.clone();
                    next.push(i);
                    stack.push(next);
                }
            }
        }
        count
    }

    #[test]
    fn isometry_orders_match_brute_force() {
        for kind in [Kind::Plus, Kind::Minus, Kind::Central4] {
            let fd = FormData::standard(kind, 2, 2).unwrap();
            assert_eq!(count_isometries(&fd) as u128, isometry_group_order(&fd), "{kind}");
        }
    }

    #[test]
    fn weil_examples() {
        for (kind, r, n, q) in [(Kind::Odd, 3, 1, 7), (Kind::Central4, 2, 2, 5), (Kind::Minus, 2, 2, 3)] {
            let g = construct_r(&FormData::standard(kind, r, n).unwrap());
            let w = weil_rep(&g, q).unwrap();
            let rep = w.report().unwrap();
            assert_eq!(rep.dim, (r as usize).pow(n as u32));
            assert!(rep.faithful && rep.faithful_exhaustive && rep.irreducible, "{rep:?}");
        }
    }

    #[test]
    fn weil_all_kinds_default_fields() {
        for (kind, r, n) in all_kinds() {
            let g = construct_r(&FormData::standard(kind, r, n).unwrap());
            let w = weil_rep(&g, default_weil_field(r, kind)).unwrap();
            let rep = w.report().unwrap();
            assert_eq!(rep.dim, (r as usize).pow(n as u32));
            assert!(rep.faithful && rep.irreducible, "{rep:?}");
            // the representation is a homomorphism on every element times every generator
            if g.order() <= 1 << 9 {
                for x in g.elements() {
                    for s in &g.generators() {
                        assert_eq!(w.image(&g.mul(&x, s)), w.image(&x).mul_unchecked(&w.image(s)));
                    }
                }
            }
        }
    }

    #[test]
    fn weil_rejects_small_fields() {
        let g = construct_r(&FormData::standard(Kind::Central4, 2, 1).unwrap());
        assert!(weil_rep(&g, 3).is_err());
        let g = construct_r(&FormData::standard(Kind::Odd, 3, 1).unwrap());
        assert!(weil_rep(&g, 5).is_err());
    }

    #[test]
    fn identity_lifts_to_identity() {
        let g = construct_r(&FormData::standard(Kind::Central4, 2, 2).unwrap());
        let w = weil_rep(&g, 5).unwrap();
        let p = lift_isometry(&w, &crate::gf::Matrix::identity(g.form_data().field(), 5)).unwrap();
        assert!(p.matrix().is_identity());
    }

    #[test]
    fn lifts_are_projective_homomorphism_for_odd_r() {
        let fd = FormData::standard(Kind::Odd, 3, 1).unwrap();
        let g = construct_r(&fd);
        let w = weil_rep(&g, 7).unwrap();
        let x = isometry_group_generators(&fd).unwrap();
        let elts = x.elements().unwrap();
        for (i, a) in elts.iter().enumerate().step_by(3) {
            let b = &elts[(i * 5 + 1) % elts.len()];
            let pab = lift_isometry(&w, &a.mul_unchecked(b)).unwrap();
            let pa = lift_isometry(&w, a).unwrap();
            let pb = lift_isometry(&w, b).unwrap();
            assert_eq!(pab, crate::groupcore::ProjMat::new(pa.matrix().mul_unchecked(pb.matrix())));
        }
    }

    #[test]
    fn lifts_are_projective_homomorphism_mod_r_for_r2() {
        let fd = FormData::standard(Kind::Central4, 2, 2).unwrap();
        let g = construct_r(&fd);
        let w = weil_rep(&g, 5).unwrap();
        let x = isometry_group_generators(&fd).unwrap();
        let rgroup: std::collections::HashSet<crate::groupcore::ProjMat> =
            g.elements().map(|e| crate::groupcore::ProjMat::new(w.image(&e))).collect();
        let elts = x.elements().unwrap();
        for i in 0..40 {
            let a = &elts[(i * 37) % elts.len()];
            let b = &elts[(i * 101 + 7) % elts.len()];
            let pab = lift_isometry(&w, &a.mul_unchecked(b)).unwrap();
            let prod = lift_isometry(&w, a).unwrap().matrix().mul_unchecked(lift_isometry(&w, b).unwrap().matrix());
            let defect = crate::groupcore::ProjMat::new(prod.inverse().unwrap().mul_unchecked(pab.matrix()));
            assert!(rgroup.contains(&defect));
        }
    }

    #[test]
    fn normalizer_extension_sp4_2() {
        let fd = FormData::standard(Kind::Central4, 2, 2).unwrap();
        let g = construct_r(&fd);
        let w = weil_rep(&g, 5).unwrap();
        let x = isometry_group_generators(&fd).unwrap();
        let ext = normalizer_extension(&w, x.generators()).unwrap();
        assert_eq!(ext.certificate.order, 11520);
        assert!(ext.certificate.holds(2, 2), "{:?}", ext.certificate);
        let triv = normalizer_extension(&w, &[]).unwrap();
        assert_eq!(triv.certificate.order, 16);
        assert!(triv.certificate.holds(2, 2));
    }

    #[test]
    fn normalizer_quotients_for_extraspecial_2_groups() {
        for (kind, order) in [(Kind::Plus, 72u64), (Kind::Minus, 120)] {
            let fd = FormData::standard(kind, 2, 2).unwrap();
            let g = construct_r(&fd);
            let w = weil_rep(&g, 3).unwrap();
            let x = isometry_group_generators(&fd).unwrap();
            let ext = normalizer_extension(&w, x.generators()).unwrap();
            assert_eq!(ext.certificate.quotient_order, order);
            assert!(ext.certificate.holds(2, 2), "{kind}: {:?}", ext.certificate);
        }
    }

    #[test]
    fn classify_round_trip() {
        for (kind, r, n) in all_kinds() {
            let g = construct_r(&FormData::standard(kind, r, n).unwrap());
            if g.order() > CLASSIFY_LIMIT {
                continue;
            }
            let c = classify_r(&g.perm_group().unwrap(), r as u64).unwrap().expect("recognised");
            assert_eq!((c.kind, c.n), (kind, n));
        }
    }

    #[test]
    fn classify_small_examples() {
        // D8 on the square's vertices
        let d8 = Group::from_gens(vec![Perm::parse_cycles(4, "(0,1,2,3)").unwrap(), Perm::parse_cycles(4, "(0,2)").unwrap()])
            .unwrap();
        let c = classify_r(&d8, 2).unwrap().unwrap();
        assert_eq!((c.kind, c.n), (Kind::Plus, 1));
        let q8 = construct_r(&FormData::standard(Kind::Minus, 2, 1).unwrap()).perm_group().unwrap();
        assert_eq!(classify_r(&q8, 2).unwrap().unwrap().kind, Kind::Minus);
        let e8 = Group::from_gens(vec![
            Perm::parse_cycles(6, "(0,1)").unwrap(),
            Perm::parse_cycles(6, "(2,3)").unwrap(),
            Perm::parse_cycles(6, "(4,5)").unwrap(),
        ])
        .unwrap();
        assert!(classify_r(&e8, 2).unwrap().is_none());
        // Z9 ⋊ Z3 (exponent 9) are rejected
        let z9z3 = Group::from_gens(vec![
            Perm::parse_cycles(9, "(0,1,2,3,4,5,6,7,8)").unwrap(),
            Perm::parse_cycles(9, "(1,4,7)(2,8,5)").unwrap(),
        ])
        .unwrap();
        assert_eq!(z9z3.order().unwrap(), 27);
        assert!(classify_r(&z9z3, 3).unwrap().is_none());
    }
}
