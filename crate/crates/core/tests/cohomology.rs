use std::collections::HashSet;
use std::sync::Arc;

use morita_core::catalog::by_name;
use morita_core::cohomology::*;
use morita_core::group::{CosetSpace, FiniteGroup, Subgroup};
use morita_core::QmodZ;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn trivial(g: &FiniteGroup) -> Arc<CoefModule> {
    Arc::new(CoefModule::trivial(g))
}

fn random_cochain(module: &Arc<CoefModule>, degree: usize, modulus: u64, rng: &mut ChaCha8Rng) -> Cochain {
    let z = Cochain::zero(module, degree, modulus);
    let d = module.dim();
    let orders = module.orders().to_vec();
    let values = (0..z.residues().len())
        .map(|i| {
            let e = orders[i % d];
            if e == 0 {
                rng.gen_range(0..modulus)
            } else {
                rng.gen_range(0..e) * (modulus / e)
            }
        })
        .collect();
    Cochain::from_residues(module, degree, modulus, values).unwrap()
}

/// Every residue vector of the given length modulo `m`.
fn all_vectors(len: usize, m: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = (m as usize).pow(len as u32);
    (0..total).map(move |mut code| {
        (0..len)
            .map(|_| {
                let v = (code % m as usize) as u64;
                code /= m as usize;
                v
            })
            .collect()
    })
}

#[test]
fn coboundary_examples() {
    let z2 = FiniteGroup::cyclic(2);
    let m = trivial(&z2);
    assert!(coboundary(&Cochain::zero(&m, 2, 4)).is_zero());
    let chi = Cochain::from_fn(&m, 1, |_, _| QmodZ::new(1, 2)).unwrap();
    assert!(coboundary(&chi).is_zero());
    let omega = Cochain::from_fn(&m, 3, |_, _| QmodZ::new(1, 2)).unwrap();
    assert!(is_cocycle(&omega));
    assert!(is_coboundary(&omega).unwrap().is_none());
    // oracle: no normalized 2-cochain at modulus 4 has this coboundary
    for v in all_vectors(1, 4) {
        let f = Cochain::from_residues(&m, 2, 4, v).unwrap();
        assert_ne!(coboundary(&f), omega);
    }
    assert!(is_coboundary(&Cochain::zero(&m, 3, 2)).unwrap().unwrap().is_zero());
}

#[test]
fn non_cocycles_are_rejected() {
    let g = FiniteGroup::cyclic(3);
    let m = trivial(&g);
    let f = Cochain::from_fn(&m, 2, |t, _| if t == [1, 1] { QmodZ::new(1, 3) } else { QmodZ::ZERO }).unwrap();
    match is_coboundary(&f) {
        Err(morita_core::Error::NotCocycle(t)) => assert_eq!(t.len(), 3),
        other => panic!("expected a cocycle violation, got {other:?}"),
    }
}

#[test]
fn cyclic_schur_multipliers_vanish() {
    for n in 2..=12 {
        let h2 = cohomology_group(&trivial(&FiniteGroup::cyclic(n)), 2).unwrap();
        assert!(h2.factors().is_empty(), "n = {n}");
    }
}

#[test]
fn small_cohomology_groups() {
    let v4 = by_name("C2xC2").unwrap();
    assert_eq!(cohomology_group(&trivial(&v4), 2).unwrap().factors(), &[2]);
    assert_eq!(cohomology_group(&trivial(&FiniteGroup::cyclic(2)), 3).unwrap().factors(), &[2]);
    for n in 2..=6 {
        assert_eq!(cohomology_group(&trivial(&FiniteGroup::cyclic(n)), 3).unwrap().order(), n as u64);
    }
    assert_eq!(cohomology_group(&trivial(&FiniteGroup::cyclic(4)), 1).unwrap().factors(), &[4]);
    assert_eq!(cohomology_group(&trivial(&by_name("S3").unwrap()), 3).unwrap().factors(), &[6]);
    assert_eq!(cohomology_group(&trivial(&by_name("Q8").unwrap()), 2).unwrap().order(), 1);
    assert_eq!(cohomology_group(&trivial(&by_name("D8").unwrap()), 2).unwrap().factors(), &[2]);
}

/// Oracle for `H²(ℤ/2×ℤ/2, ℚ/ℤ)`: cocycles with values in ¼ℤ/ℤ modulo coboundaries of
/// arbitrary 1-cochains with values in (1/16)ℤ/ℤ.
#[test]
fn klein_schur_multiplier_by_brute_force() {
    let v4 = by_name("C2xC2").unwrap();
    let m = trivial(&v4);
    let mut cocycles = 0usize;
    for v in all_vectors(9, 4) {
        let f = Cochain::from_residues(&m, 2, 4, v).unwrap();
        if is_cocycle(&f) {
            cocycles += 1;
        }
    }
    let mut boundaries = HashSet::new();
    for v in all_vectors(3, 16) {
        let g = Cochain::from_residues(&m, 1, 16, v).unwrap();
        let dg = coboundary(&g);
        if dg.residues().iter().all(|&x| x % 4 == 0) {
            boundaries.insert(dg.residues().to_vec());
        }
    }
    assert_eq!(cocycles / boundaries.len(), 2);
    let h2 = cohomology_group(&m, 2).unwrap();
    assert_eq!(h2.order(), 2);
    let bich = abelian_h2(&m).unwrap();
    assert_eq!(bich.factors(), h2.factors());
    assert!(class_equal(&bich.representatives[0], &h2.representatives[0]).unwrap());
}

/// Closed-form generator `a·(b + c - [b + c])/n²` of `H³(ℤ/n, ℚ/ℤ)`.
#[test]
fn cyclic_three_cocycles_have_order_n() {
    for n in 2..=6u64 {
        let g = FiniteGroup::cyclic(n as usize);
        let m = trivial(&g);
        let omega = Cochain::from_fn(&m, 3, |t, _| {
            let (a, b, c) = (t[0] as u64, t[1] as u64, t[2] as u64);
            let carry = (b + c) - (b + c) % n;
            QmodZ::new((a * carry) as i64, n * n)
        })
        .unwrap();
        assert!(is_cocycle(&omega));
        for j in 1..=n {
            let trivial = is_coboundary(&omega.scale(j as i64)).unwrap().is_some();
            assert_eq!(trivial, j == n, "n={n} j={j}");
        }
    }
}

#[test]
fn representatives_are_distinct_classes() {
    for name in ["C2xC2", "C2xC4", "D8", "C2xC2xC2"] {
        let g = by_name(name).unwrap();
        let h2 = cohomology_group(&trivial(&g), 2).unwrap();
        let classes = h2.all_classes().unwrap();
        for i in 0..classes.len() {
            assert!(is_cocycle(&classes[i]));
            for j in 0..i {
                assert!(!class_equal(&classes[i], &classes[j]).unwrap(), "{name}");
            }
        }
    }
}

#[test]
fn abelian_bicharacters_match_elimination() {
    for name in ["C2xC2", "C2xC4", "C3xC3", "C2xC2xC2", "C2xC6", "C4xC4"] {
        let g = by_name(name).unwrap();
        let m = trivial(&g);
        let a = abelian_h2(&m).unwrap();
        let b = cohomology_group(&m, 2).unwrap();
        assert_eq!(a.factors(), b.factors(), "{name}");
    }
}

#[test]
fn decide_uses_sylow_restrictions() {
    let g = FiniteGroup::cyclic(6);
    let m = trivial(&g);
    let h3 = cohomology_group(&m, 3).unwrap();
    let gen = &h3.representatives[0];
    let tiny = Budget { max_entries: 10 };
    for j in 0..6 {
        let f = gen.scale(j);
        let dense = is_coboundary(&f).unwrap().is_some();
        let t = decide_trivial(&f, &tiny).unwrap();
        assert_eq!(t.is_trivial(), dense, "j={j}");
    }
}

#[test]
fn shapiro_examples() {
    let z4 = FiniteGroup::cyclic(4);
    let h = Subgroup::new(&z4, &[0, 2]).unwrap();
    let c = Coinduced::new(&z4, &h);
    let rho = |x: usize| if x == 2 { QmodZ::new(1, 2) } else { QmodZ::ZERO };
    let phi = c.phi1(rho).unwrap();
    assert_eq!(phi.value(&[2], 0), QmodZ::new(1, 2));
    assert!(is_cocycle(&phi));
    let back = c.psi1(&phi).unwrap();
    assert_eq!(back, vec![QmodZ::ZERO, QmodZ::new(1, 2)]);
    assert!(c.phi1(|_| QmodZ::ZERO).unwrap().is_zero());
}

#[test]
fn conjugation_examples() {
    let d8 = by_name("D8").unwrap();
    let r = Subgroup::generated(&d8, &[1]);
    let local = Arc::new(CoefModule::trivial(&r.as_group(&d8)));
    // ρ(r^k) = k/4
    let rho = Cochain::from_fn(&local, 1, |t, _| QmodZ::new(t[0] as i64, 4)).unwrap();
    let conj = conjugate_cocycle(&rho, &d8, &r, 4).unwrap();
    assert_eq!(conj, rho.neg());
    assert_eq!(conjugate_cocycle(&rho, &d8, &r, 0).unwrap(), rho);
    assert_eq!(conjugate_cocycle(&rho, &d8, &r, 1).unwrap(), rho);
    let s = Subgroup::generated(&d8, &[4]);
    let ls = Arc::new(CoefModule::trivial(&s.as_group(&d8)));
    let f = Cochain::zero(&ls, 1, 2);
    assert!(matches!(conjugate_cocycle(&f, &d8, &s, 1), Err(morita_core::Error::NotNormal)));
}

#[test]
fn invariant_class_examples() {
    let b = Budget::default();
    let z4 = FiniteGroup::cyclic(4);
    let h = Subgroup::new(&z4, &[0, 2]).unwrap();
    let h2 = cohomology_group(&trivial(&h.as_group(&z4)), 2).unwrap();
    assert_eq!(invariant_classes(&h2, &z4, &h, &b).unwrap().len(), 1);
    let d8 = by_name("D8").unwrap();
    // the normal Klein subgroup {1, r², s, r²s}
    let v = Subgroup::generated(&d8, &[2, 4]);
    assert!(v.is_normal(&d8));
    let h2 = cohomology_group(&trivial(&v.as_group(&d8)), 2).unwrap();
    let inv = invariant_classes(&h2, &d8, &v, &b).unwrap();
    // oracle: test the nonzero class against conjugation by r directly
    let mu = &h2.representatives[0];
    let moved = conjugate_cocycle(mu, &d8, &v, 1).unwrap();
    let fixed = class_equal(&moved, mu).unwrap();
    assert_eq!(inv.len(), if fixed { 2 } else { 1 });
    let g = by_name("C2xC2xC2").unwrap();
    let k = Subgroup::generated(&g, &[1, 2]);
    let h2 = cohomology_group(&trivial(&k.as_group(&g)), 2).unwrap();
    assert_eq!(invariant_classes(&h2, &g, &k, &b).unwrap().len(), 2);
}

#[test]
fn json_round_trip() {
    let d8 = by_name("D8").unwrap();
    let h = Subgroup::generated(&d8, &[4]);
    let c = Coinduced::new(&d8, &h);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = random_cochain(c.module(), 2, 8, &mut rng);
    let j = cochain_to_json(&f);
    assert_eq!(cochain_from_json(&j, c.module()).unwrap(), f);
    let m = trivial(&d8);
    let g = random_cochain(&m, 3, 6, &mut rng);
    let text = serde_json::to_string(&cochain_to_json(&g)).unwrap();
    let back = cochain_from_json(&serde_json::from_str(&text).unwrap(), &m).unwrap();
    assert_eq!(back, g);
    assert!(cochain_from_json(&serde_json::json!({"degree": 1, "values": {"0": "1/2"}}), &m).is_err());
}

fn coinduced_case(idx: usize) -> (FiniteGroup, Subgroup) {
    let cases: [(&str, &[usize]); 5] = [
        ("D8", &[4]),
        ("D8", &[1]),
        ("S3", &[3]),
        ("A4", &[1]),
        ("C2xC4", &[2]),
    ];
    let (n, gens) = cases[idx % cases.len()];
    let g = by_name(n).unwrap();
    let h = Subgroup::generated(&g, gens);
    (g, h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn delta_squared_vanishes(case in 0usize..5, degree in 0usize..3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = coinduced_case(case);
        let c = Coinduced::new(&g, &h);
        for module in [trivial(&g), c.module().clone()] {
            let f = random_cochain(&module, degree, 12, &mut rng);
            prop_assert!(coboundary(&coboundary(&f)).is_zero());
        }
    }

    #[test]
    fn coboundaries_are_recognized(case in 0usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = coinduced_case(case);
        let c = Coinduced::new(&g, &h);
        let module = c.module().clone();
        let a = random_cochain(&module, 1, 6, &mut rng);
        let f = coboundary(&a);
        let w = is_coboundary(&f).unwrap().expect("a coboundary");
        prop_assert_eq!(coboundary(&w), f.clone());
        let mu = random_cochain(&trivial(&g), 1, 4, &mut rng);
        let k = coboundary(&mu);
        prop_assert!(class_equal(&k, &Cochain::zero(&trivial(&g), 2, 1)).unwrap());
    }

    #[test]
    fn shapiro_round_trips(case in 0usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = coinduced_case(case);
        let c = Coinduced::new(&g, &h);
        let local = c.subgroup_module().clone();
        let mu = random_cochain(&local, 2, 12, &mut rng);
        prop_assert_eq!(c.psi(&c.phi(&mu).unwrap()).unwrap(), mu.clone());
        let mu = coboundary(&random_cochain(&local, 1, 12, &mut rng));
        let phi = c.phi(&mu).unwrap();
        prop_assert!(is_cocycle(&phi));
    }

    #[test]
    fn translation_is_a_right_action_commuting_with_delta(case in 0usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = coinduced_case(case);
        let c = Coinduced::new(&g, &h);
        let cs = CosetSpace::new(&g, &h);
        let stable = cs.stable_cosets(&g);
        let f = random_cochain(c.module(), 1, 6, &mut rng);
        prop_assert_eq!(c.translate(&f, 0).unwrap(), f.clone());
        for &x in &stable {
            for &y in &stable {
                let xy = cs.coset_mul(&g, x, y);
                let lhs = c.translate(&c.translate(&f, x).unwrap(), y).unwrap();
                let rhs = c.translate(&f, xy).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
            let a = coboundary(&c.translate(&f, x).unwrap());
            let b = c.translate(&coboundary(&f), x).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
