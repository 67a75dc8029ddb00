//! Modules of finite groups over finite fields.
//!
//! Conventions: modules are right modules on row vectors, and a module map
//! `a → b` is a matrix `P` with `a(g)·P = P·b(g)` for every generator.

mod forms;
mod irreducibles;
mod meataxe;
mod module;
mod subfield;

pub use forms::{
    invariant_alternating_form, invariant_bilinear_forms, invariant_quadratic_form, invariant_quadratic_forms,
    BilinearForm, QuadraticForm,
};
pub use irreducibles::{all_irreducibles_up_to_dim, CompletenessCertificate, IrreducibleOptions, IrreducibleSearch};
pub use meataxe::{
    chop, composition_factors, endo_field_degree, hom_from_irreducible, hom_space, is_irreducible, module_iso,
    AlgebraElement, Irreducibility, MeataxeOptions,
};
pub use module::GModule;
pub use subfield::write_over_subfield;

use crate::error::Result;
use crate::gf::{vector, Span};

/// Every submodule, by closing the cyclic submodules under sums.
/// Exponential; meant as an oracle for modules with at most a few thousand vectors.
pub fn all_submodules(m: &GModule) -> Vec<Span> {
    let q = m.field().q() as u64;
    let total = q.pow(m.dim() as u32);
    let mut subs: Vec<Span> = vec![Span::new(m.field(), m.dim())];
    let key = |s: &Span| -> Vec<Vec<u32>> {
        let (r, _, _) = s.to_matrix().rref();
        r.row_vecs()
    };
    let mut keys: std::collections::HashSet<Vec<Vec<u32>>> = subs.iter().map(key).collect();
    let mut cyclic = Vec::new();
    for c in 1..total {
        let v = vector::decode(m.field().q(), m.dim(), c);
        let s = m.spin(&[v]);
        if keys.insert(key(&s)) {
            cyclic.push(s.clone());
            subs.push(s);
        }
    }
    let mut i = 0;
    while i < subs.len() {
        for c in &cyclic {
            let mut s = subs[i].clone();
            for v in c.basis() {
                s.insert(v);
            }
            if keys.insert(key(&s)) {
                subs.push(s);
            }
        }
        i += 1;
    }
    subs
}

/// Composition factor dimensions read off a maximal chain of the submodule lattice.
pub fn composition_dims_by_enumeration(m: &GModule) -> Result<Vec<usize>> {
    let subs = all_submodules(m);
    let contains = |a: &Span, b: &Span| b.basis().iter().all(|v| a.contains(v));
    let mut dims = Vec::new();
    let mut current = Span::new(m.field(), m.dim());
    while current.len() < m.dim() {
        // a smallest submodule strictly containing the current one covers it
        let next = subs
            .iter()
            .filter(|s| s.len() > current.len() && contains(s, &current))
            .min_by_key(|s| s.len())
            .expect("the whole module contains every submodule")
            .clone();
        dims.push(next.len() - current.len());
        current = next;
    }
    dims.sort_unstable();
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Field, FieldRef, Matrix};
    use crate::groupcore::{Group, GroupElement, Perm};
    use rand::{Rng, SeedableRng};

    fn a5_perms() -> Vec<Perm> {
        vec![Perm::parse_cycles(5, "(0,1)(2,3)").unwrap(), Perm::parse_cycles(5, "(0,2,4)").unwrap()]
    }

    #[test]
    fn a5_generators_have_expected_orders() {
        let g = a5_perms();
        assert_eq!(Group::from_gens(g.clone()).unwrap().order().unwrap(), 60);
        assert_eq!(g[0].compose(&g[1]).order(), 5);
    }

    fn a5_perm_module() -> GModule {
        GModule::permutation_module(&Field::get(2, 1).unwrap(), &a5_perms()).unwrap()
    }

    /// The natural module of SL₂(4) ≅ A₅ on generators matching `a5_perms` (orders 2, 3; product of order 5).
    fn a5_over_gf4() -> GModule {
        let f = Field::get(2, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let rand_sl2 = |rng: &mut rand_chacha::ChaCha8Rng| loop {
            let m = Matrix::new(&f, 2, 2, (0..4).map(|_| rng.gen_range(0..4)).collect()).unwrap();
            if m.det() == 1 {
                return m;
            }
        };
        loop {
            let a = rand_sl2(&mut rng);
            let b = rand_sl2(&mut rng);
            let ord = |m: &Matrix| m.order_capped(100).unwrap();
            if ord(&a) == 2 && ord(&b) == 3 && ord(&a.mul(&b).unwrap()) == 5 {
                return GModule::from_matrices(vec![a, b]).unwrap();
            }
        }
    }

    fn gf2() -> FieldRef {
        Field::get(2, 1).unwrap()
    }

    #[test]
    fn trivial_module_is_irreducible() {
        let m = GModule::trivial(&gf2(), 1, 2);
        assert!(is_irreducible(&m, &MeataxeOptions::default()).unwrap().is_irreducible());
    }

    #[test]
    fn permutation_module_of_a5_splits() {
        let m = a5_perm_module();
        let opts = MeataxeOptions::default();
        match is_irreducible(&m, &opts).unwrap() {
            Irreducibility::Reducible(b) => {
                assert!(m.is_invariant_subspace(&b));
                let dim = m.spin(&b).len();
                assert!(dim == 1 || dim == 4, "witness of dimension {dim}");
            }
            Irreducibility::Irreducible => panic!("permutation module is reducible"),
        }
        // exhaustive oracle: the only proper nonzero submodules have dims 1 and 4
        let mut dims: Vec<usize> = all_submodules(&m).iter().map(|s| s.len()).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![0, 1, 4, 5]);
        let factors = chop(&m, &opts).unwrap();
        let shape: Vec<(usize, usize)> = factors.iter().map(|(x, k)| (x.dim(), *k)).collect();
        assert_eq!(shape, vec![(1, 1), (4, 1)]);
    }

    #[test]
    fn doubled_module_has_multiplicity_two() {
        let opts = MeataxeOptions::default();
        let m = a5_perm_module();
        let four = chop(&m, &opts).unwrap().pop().unwrap().0;
        let doubled = four.direct_sum(&four).unwrap();
        let factors = chop(&doubled, &opts).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].1, 2);
        assert!(module_iso(&factors[0].0, &four, &opts).unwrap().is_some());
    }

    #[test]
    fn isomorphism_recovers_conjugation() {
        let opts = MeataxeOptions::default();
        let m = a5_perm_module();
        let f = gf2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let p = loop {
            let p = Matrix::new(&f, 5, 5, (0..25).map(|_| rng.gen_range(0..2)).collect()).unwrap();
            if p.is_invertible() {
                break p;
            }
        };
        let conj = m.change_basis(&p).unwrap();
        let iso = module_iso(&m, &conj, &opts).unwrap().expect("isomorphic");
        assert!(m.is_hom_to(&conj, &iso));
        assert!(iso.is_invertible());
        assert!(module_iso(&m, &m, &opts).unwrap().is_some());
        let trivial = GModule::trivial(&f, 1, 2);
        let sign = GModule::from_matrices(vec![Matrix::scalar(&Field::get(3, 1).unwrap(), 1, 2); 2]).unwrap();
        assert!(module_iso(&trivial, &sign, &opts).unwrap().is_none());
        let trivial3 = GModule::trivial(&Field::get(3, 1).unwrap(), 1, 2);
        assert!(module_iso(&trivial3, &sign, &opts).unwrap().is_none());
    }

    #[test]
    fn a5_four_dim_forms() {
        let opts = MeataxeOptions::default();
        let four = chop(&a5_perm_module(), &opts).unwrap().pop().unwrap().0;
        let b = invariant_alternating_form(&four, &opts).unwrap().expect("A5 embeds in Sp4(2)");
        assert!(b.is_alternating() && b.is_nondegenerate());
        assert!(four.generators().iter().all(|g| b.is_invariant_under(g)));
        let q = invariant_quadratic_form(&four).unwrap().expect("A5 preserves a quadratic form");
        assert!(four.generators().iter().all(|g| q.is_invariant_under(g)));
        assert_eq!(q.sign().unwrap(), -1);
        // Arf by counting zeros: 2^{2n-1} + ε 2^{n-1}
        assert_eq!(q.zero_count(), 8 - 2);
        let trivial = GModule::trivial(&gf2(), 1, 2);
        assert!(invariant_alternating_form(&trivial, &opts).unwrap().is_none());
    }

    #[test]
    fn hyperbolic_form_has_plus_sign() {
        let q = QuadraticForm::hyperbolic(&gf2(), 2);
        assert_eq!(q.sign().unwrap(), 1);
        assert_eq!(q.zero_count(), 8 + 2);
        let m = GModule::trivial(&gf2(), 4, 1);
        assert!(m.generators().iter().all(|g| q.is_invariant_under(g)));
    }

    #[test]
    fn form_space_independent_of_generating_set() {
        let opts = MeataxeOptions::default();
        let four = chop(&a5_perm_module(), &opts).unwrap().pop().unwrap().0;
        let g = four.generators();
        let shuffled = GModule::from_matrices(vec![g[1].clone(), g[0].mul(&g[1]).unwrap(), g[0].clone()]).unwrap();
        let a = invariant_alternating_form(&four, &opts).unwrap().unwrap();
        let b = invariant_alternating_form(&shuffled, &opts).unwrap().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gf4_module_endomorphisms_and_subfields() {
        let opts = MeataxeOptions::default();
        let nat = a5_over_gf4();
        assert!(is_irreducible(&nat, &opts).unwrap().is_irreducible());
        assert_eq!(endo_field_degree(&nat, &opts).unwrap(), 2);
        assert!(write_over_subfield(&nat, 1).unwrap().is_none());
        let restricted = nat.restrict_to_prime_field().unwrap();
        assert_eq!(restricted.dim(), 4);
        assert!(is_irreducible(&restricted, &opts).unwrap().is_irreducible());
        assert_eq!(endo_field_degree(&restricted, &opts).unwrap(), 2);
        // a GF(2) module lifted to GF(4) and written back down
        let four = chop(&a5_perm_module(), &opts).unwrap().pop().unwrap().0;
        assert_eq!(endo_field_degree(&four, &opts).unwrap(), 1);
        let lifted = four.extend_field(&Field::get(2, 2).unwrap()).unwrap();
        let f4 = lifted.field().clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let p = loop {
            let p = Matrix::new(&f4, 4, 4, (0..16).map(|_| rng.gen_range(0..4)).collect()).unwrap();
            if p.is_invertible() {
                break p;
            }
        };
        let twisted = lifted.change_basis(&p).unwrap();
        let back = write_over_subfield(&twisted, 1).unwrap().expect("defined over GF(2)");
        assert!(module_iso(&back, &four, &opts).unwrap().is_some());
        assert_eq!(write_over_subfield(&four, 1).unwrap().unwrap(), four);
    }

    #[test]
    fn tensor_dual_exterior() {
        let opts = MeataxeOptions::default();
        let four = chop(&a5_perm_module(), &opts).unwrap().pop().unwrap().0;
        assert_eq!(four.tensor(&four).unwrap().dim(), 16);
        assert_eq!(four.exterior_square().unwrap().dim(), 6);
        assert!(module_iso(&four.dual().dual(), &four, &opts).unwrap().is_some());
        let ext = four.exterior_square().unwrap();
        let dims: Vec<usize> = composition_factors(&ext, &opts).unwrap().iter().map(|m| m.dim()).collect();
        assert_eq!(dims.iter().sum::<usize>(), 6);
    }

    #[test]
    fn a5_irreducibles_over_gf2() {
        let search = all_irreducibles_up_to_dim(&a5_perm_module(), &IrreducibleOptions::new(4)).unwrap();
        let dims: Vec<usize> = search.modules.iter().map(|m| m.dim()).collect();
        assert_eq!(dims, vec![1, 4, 4]);
        let opts = MeataxeOptions::default();
        let degrees: Vec<u32> = search.modules.iter().map(|m| endo_field_degree(m, &opts).unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
    }

    /// Chop against exhaustive submodule enumeration on small GF(2) modules of A₅ and S₃.
    #[test]
    fn chop_matches_exhaustive_enumeration() {
        let opts = MeataxeOptions::default();
        let s3 = vec![Perm::parse_cycles(3, "(0,1)").unwrap(), Perm::parse_cycles(3, "(0,1,2)").unwrap()];
        let mut cases = vec![a5_perm_module(), GModule::permutation_module(&gf2(), &s3).unwrap()];
        let s3m = GModule::permutation_module(&gf2(), &s3).unwrap();
        cases.push(s3m.direct_sum(&s3m).unwrap());
        cases.push(a5_over_gf4().restrict_to_prime_field().unwrap());
        let s4 = vec![Perm::parse_cycles(4, "(0,1)").unwrap(), Perm::parse_cycles(4, "(0,1,2,3)").unwrap()];
        cases.push(GModule::permutation_module(&gf2(), &s4).unwrap());
        let g6 = vec![Perm::parse_cycles(6, "(0,1)").unwrap(), Perm::parse_cycles(6, "(0,1,2,3,4,5)").unwrap()];
        cases.push(GModule::permutation_module(&gf2(), &g6).unwrap());
        let c6 = vec![Perm::parse_cycles(6, "(0,1,2,3,4,5)").unwrap()];
        cases.push(GModule::permutation_module(&gf2(), &c6).unwrap());
        for m in &cases {
            let mut dims: Vec<usize> = composition_factors(m, &opts).unwrap().iter().map(|x| x.dim()).collect();
            dims.sort_unstable();
            assert_eq!(dims, composition_dims_by_enumeration(m).unwrap(), "{m:?}");
        }
    }

    #[test]
    fn module_text_round_trip() {
        let m = a5_over_gf4().with_name("nat", "a5");
        let back = GModule::parse(&m.to_text()).unwrap();
        assert_eq!(back, m);
        assert!(GModule::parse("module x dim 2 over 2^1 group g\nmatrix 2 2 over 2^1\n1 1\n1 1\n").is_err());
    }
}
