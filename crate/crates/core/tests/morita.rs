use std::sync::Arc;

use morita_core::catalog::by_name;
use morita_core::cohomology::{Cochain, CoefModule};
use morita_core::cohomology::{coboundary, Budget};
use morita_core::group::find_isomorphism;
use morita_core::pointed::pullback;
use morita_core::morita::{
    dihedral_eight_sweep, dual_pair_general, dual_sweep, grothendieck_distinguishers,
    morita_equivalent, morita_equivalent_groups, metacyclic_family, verify_witness, FamilyParams, SearchOptions, Verdict,
};
use morita_core::qmodz::QmodZ;
use morita_core::{FiniteGroup, PointedCategory};

fn opts() -> SearchOptions {
    SearchOptions::default()
}

/// `(ℤ/2)²` with `ω((a,b),(c,d),(e,f)) = a·d·f / 2`, indices `a + 2b`.
fn klein_twisted() -> PointedCategory {
    let v4 = FiniteGroup::direct_product(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)]);
    let m = Arc::new(CoefModule::trivial(&v4));
    let w = Cochain::from_fn(&m, 3, |t, _| {
        let (a, d, f) = (t[0] % 2, t[1] / 2, t[2] / 2);
        QmodZ::new((a * d * f) as i64, 2)
    })
    .unwrap();
    PointedCategory::new(v4, w).unwrap()
}

#[test]
fn cyclic_four_is_equivalent_to_a_twisted_klein_group() {
    let z4 = PointedCategory::untwisted(&FiniteGroup::cyclic(4));
    let v4 = klein_twisted();
    let out = morita_equivalent(&z4, &v4, &opts()).unwrap();
    assert_eq!(out.verdict, Verdict::Equivalent);
    let w = out.witness.as_ref().unwrap();
    assert_eq!(w.subgroup.elements(), &[0, 2]);
    assert!(!w.dual.varpi.is_zero());
    verify_witness(&z4, &v4, w).unwrap();

    let back = morita_equivalent(&v4, &z4, &opts()).unwrap();
    assert_eq!(back.verdict, Verdict::Equivalent);
    verify_witness(&v4, &z4, back.witness.as_ref().unwrap()).unwrap();
}

#[test]
fn cyclic_four_and_untwisted_klein_are_not_equivalent() {
    let z4 = FiniteGroup::cyclic(4);
    let v4 = FiniteGroup::direct_product(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)]);
    let out = morita_equivalent_groups(&z4, &v4, &opts()).unwrap();
    assert_eq!(out.verdict, Verdict::NotEquivalent);
    assert!(out.notes.is_empty());
}

#[test]
fn different_orders_are_not_equivalent() {
    let out = morita_equivalent_groups(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(6), &opts()).unwrap();
    assert_eq!(out.verdict, Verdict::NotEquivalent);
}

#[test]
fn every_small_category_is_equivalent_to_itself() {
    for name in ["C6", "S3", "D8", "Q8", "C2xC4"] {
        let g = by_name(name).unwrap();
        let c = PointedCategory::untwisted(&g);
        let out = morita_equivalent(&c, &c, &opts()).unwrap();
        assert_eq!(out.verdict, Verdict::Equivalent, "{name}");
        verify_witness(&c, &c, out.witness.as_ref().unwrap()).unwrap();
    }
    let v4 = klein_twisted();
    assert_eq!(morita_equivalent(&v4, &v4, &opts()).unwrap().verdict, Verdict::Equivalent);
}

#[test]
fn dihedral_and_quaternion_groups_of_order_eight() {
    let d8 = by_name("D8").unwrap();
    let q8 = by_name("Q8").unwrap();
    let out = morita_equivalent_groups(&d8, &q8, &opts()).unwrap();
    assert_eq!(out.verdict, Verdict::NotEquivalent);
}

#[test]
fn parallel_search_agrees_with_sequential() {
    let z4 = PointedCategory::untwisted(&FiniteGroup::cyclic(4));
    let v4 = klein_twisted();
    let par = SearchOptions { jobs: 4, ..opts() };
    let a = morita_equivalent(&z4, &v4, &opts()).unwrap();
    let b = morita_equivalent(&z4, &v4, &par).unwrap();
    assert_eq!(a.verdict, b.verdict);
    assert_eq!(a.witness.unwrap().subgroup, b.witness.unwrap().subgroup);
}

#[test]
fn family_parameters_are_validated() {
    assert!(FamilyParams::new(7, 3, 2).is_ok());
    assert!(FamilyParams::new(7, 3, 4).is_ok());
    assert!(FamilyParams::new(7, 3, 3).is_err());
    assert!(FamilyParams::new(7, 5, 2).is_err());
    assert!(FamilyParams::new(9, 2, 8).is_err());
    assert!(FamilyParams::new(11, 5, 1).is_err());
}

#[test]
fn smallest_family_member() {
    let r = metacyclic_family(FamilyParams::new(7, 3, 2).unwrap(), &opts()).unwrap();
    assert_eq!(r.groups.0.order(), 147);
    assert_eq!(r.outcome.verdict, Verdict::Equivalent);
    let w = r.outcome.witness.as_ref().unwrap();
    assert_eq!(w.subgroup.order(), 7);
    assert!(w.dual.kappa.is_trivial());
    assert!(w.dual.varpi.is_zero());
    assert!(!r.isomorphic);
    assert_eq!(r.normal_order_p(), (8, 2));
    assert!(r.distinguishers.distinguished);
}

#[test]
fn witnesses_carry_certificates() {
    let z4 = PointedCategory::untwisted(&FiniteGroup::cyclic(4));
    let v4 = klein_twisted();
    let out = morita_equivalent(&z4, &v4, &opts()).unwrap();
    let w = out.witness.unwrap();
    let cert = w.certificate.as_ref().expect("certificate");
    let diff = pullback(&w.dual.varpi, &w.iso, v4.group()).unwrap().sub(v4.omega()).unwrap();
    assert_eq!(coboundary(cert), diff);
}

#[test]
fn dihedral_sweep_reports_where_the_elementary_abelian_dual_arises() {
    let sweep = dihedral_eight_sweep(&Budget::default()).unwrap();
    assert!(!sweep.elementary_twisted.is_empty());
    for &i in &sweep.elementary_twisted {
        let e = &sweep.entries[i];
        assert_eq!(e.subgroup.order(), 2);
        assert!(e.subgroup.elements().iter().all(|&x| by_name("D8").unwrap().center().contains(&x)));
    }
    let at_r: Vec<_> = sweep.entries.iter().filter(|e| e.subgroup == sweep.rotation_subgroup).collect();
    assert!(!at_r.is_empty());
    assert!(at_r.iter().all(|e| e.catalog_name != Some("C2xC2xC2")));
    assert!(sweep.discrepancy);
    let v = sweep.to_json();
    assert_eq!(v["discrepancy"], true);
}

#[test]
fn dual_pairs() {
    // trivial action
    let h = FiniteGroup::cyclic(3);
    let g0 = FiniteGroup::cyclic(2);
    let id: Vec<Vec<usize>> = vec![(0..3).collect(); 2];
    let (a, b) = dual_pair_general(&h, &g0, &id).unwrap();
    assert!(find_isomorphism(&a, &b).unwrap().is_some());
    assert!(a.is_abelian());

    // inversion on ℤ/8
    let h = FiniteGroup::cyclic(8);
    let inv: Vec<Vec<usize>> = vec![(0..8).collect(), (0..8).map(|x| (8 - x) % 8).collect()];
    let (a, b) = dual_pair_general(&h, &g0, &inv).unwrap();
    assert_eq!(a.order(), 16);
    assert!(find_isomorphism(&a, &b).unwrap().is_some());
    assert_eq!(morita_equivalent_groups(&a, &b, &opts()).unwrap().verdict, Verdict::Equivalent);

    // not by automorphisms
    let bad: Vec<Vec<usize>> = vec![(0..8).collect(), (0..8).map(|x| x * 2 % 8).collect()];
    assert!(dual_pair_general(&h, &g0, &bad).is_err());
}

#[test]
fn distinguishers() {
    let z4 = FiniteGroup::cyclic(4);
    let v4 = FiniteGroup::direct_product(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)]);
    let r = grothendieck_distinguishers(&z4, &v4).unwrap();
    assert!(r.distinguished);
    assert_eq!(r.census[0].normal_by_order[&2], 1);
    assert_eq!(r.census[1].normal_by_order[&2], 3);
    assert!(!grothendieck_distinguishers(&z4, &z4).unwrap().distinguished);
}

#[test]
fn other_family_residue() {
    assert!(FamilyParams::new(5, 3, 2).is_err());
    let r = metacyclic_family(FamilyParams::new(7, 3, 4).unwrap(), &opts()).unwrap();
    assert_eq!(r.outcome.verdict, Verdict::Equivalent);
    assert!(!r.isomorphic);
    assert_eq!(r.normal_order_p(), (8, 2));
    let [a, b] = &r.distinguishers.census;
    assert_eq!((a.abelianization_order, b.abelianization_order), (3, 3));
    assert_eq!((a.conjugacy_classes, b.conjugacy_classes), (19, 19));
}

#[test]
fn found_equivalences_also_hold_in_reverse() {
    let mut pairs = 0;
    for name in ["C4", "C2xC2", "C6", "S3", "D8", "Q8", "C2xC4"] {
        let g = by_name(name).unwrap();
        let c = PointedCategory::untwisted(&g);
        for e in dual_sweep(&c, &Budget::default()).unwrap() {
            if e.subgroup.order() == 1 {
                continue;
            }
            let other = PointedCategory::new(e.dual.group().clone(), e.dual.varpi.clone()).unwrap();
            let fwd = morita_equivalent(&c, &other, &opts()).unwrap();
            assert_eq!(fwd.verdict, Verdict::Equivalent, "{name} H = {:?}", e.subgroup.elements());
            let back = morita_equivalent(&other, &c, &opts()).unwrap();
            assert_eq!(back.verdict, Verdict::Equivalent, "{name} H = {:?} reversed", e.subgroup.elements());
            verify_witness(&other, &c, back.witness.as_ref().unwrap()).unwrap();
            pairs += 1;
        }
    }
    assert!(pairs > 10);
}
