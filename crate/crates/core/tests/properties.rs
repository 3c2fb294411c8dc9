use gw_core::constructions::{
    cyclic, direct_product, regular_representation, wreath, wreath_base_parts,
};
use gw_core::counts::NormalSubgroupOracle;
use gw_core::*;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn guards() -> Guards {
    Guards::default()
}

fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

/// Random subgroups of S_2 … S_6 on one to three generators.
fn arb_group() -> impl Strategy<Value = PermGroup> {
    (2usize..=6).prop_flat_map(|d| {
        prop::collection::vec(arb_perm(d), 1..=3)
            .prop_map(move |gens| PermGroup::new(d, gens).unwrap())
    })
}

fn arb_group_with_perm() -> impl Strategy<Value = (PermGroup, Permutation)> {
    arb_group().prop_flat_map(|g| {
        let d = g.degree();
        (Just(g), arb_perm(d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn order_matches_enumeration(g in arb_group()) {
        let elements = g.elements(5040).unwrap();
        prop_assert_eq!(BigUint::from(elements.len()), g.order().clone());
        let mut sorted = elements.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), elements.len());
    }

    #[test]
    fn membership_is_congruent((g, x) in arb_group_with_perm()) {
        let elements = g.elements(5040).unwrap();
        prop_assert_eq!(g.contains(&x).unwrap(), elements.contains(&x));
        for a in g.generators() {
            for b in g.generators() {
                prop_assert!(g.contains(&a.compose(b)).unwrap());
                prop_assert!(g.contains(&a.inverse()).unwrap());
            }
        }
        if g.contains(&x).unwrap() {
            for a in g.generators() {
                prop_assert!(g.contains(&x.compose(a)).unwrap());
            }
        }
    }

    #[test]
    fn derived_subgroup_is_normal_and_holds_commutators(g in arb_group()) {
        let d = g.derived_subgroup();
        prop_assert!(g.is_subgroup(&d).unwrap());
        prop_assert!(g.is_normal(&d).unwrap());
        for a in g.generators() {
            for b in g.generators() {
                prop_assert!(d.contains(&Permutation::commutator(a, b)).unwrap());
            }
        }
        // G/G' is abelian: its order is the abelian invariants' product.
        prop_assert_eq!(g.index_of(&d).unwrap(), abelian_invariants(&g).order());
    }

    #[test]
    fn strong_generators_rebuild_the_group(g in arb_group()) {
        let sgs = g.chain().strong_generators().to_vec();
        let h = PermGroup::new(g.degree(), sgs).unwrap();
        prop_assert!(h.same_group(&g));
    }

    #[test]
    fn oracle_agrees_with_formula(g in arb_group(), n in 1u64..=12) {
        let formula = count_cyclic_quotients(&g, n).unwrap().value;
        let brute = brute_force_cyclic_quotients(&g, n, &guards()).unwrap().value;
        prop_assert_eq!(formula, brute);
    }

    #[test]
    fn no_cyclic_quotient_unless_n_divides_abelianization(g in arb_group(), n in 2u64..=12) {
        let ab = abelian_invariants(&g).order();
        if !(ab % n).is_zero() {
            prop_assert!(count_cyclic_quotients(&g, n).unwrap().value.is_zero());
        }
    }

    #[test]
    fn uniform_count_is_monotone_in_m(g in arb_group(), n in 2u64..=6) {
        let mut last = BigUint::zero();
        for m in 1..=6 {
            let v = uniform_count(&g, n, m, None, &guards()).unwrap().value;
            prop_assert!(v >= last);
            prop_assert!(v >= count_cyclic_quotients(&g, n).unwrap().value);
            last = v;
        }
    }

    #[test]
    fn group_expressions_round_trip(e in arb_expr()) {
        let printed = e.to_string();
        let back = parse_group_expr(&printed).unwrap();
        prop_assert_eq!(back, e);
    }
}

fn arb_leaf() -> impl Strategy<Value = GroupExpr> {
    prop_oneof![
        (1u64..20).prop_map(GroupExpr::Cyclic),
        (1u64..8).prop_map(GroupExpr::Alternating),
        (1u64..8).prop_map(GroupExpr::Symmetric),
        (prop::sample::select(vec![2u64, 3, 5, 7]), 1u64..4)
            .prop_map(|(p, k)| GroupExpr::ElemAbelian { p, k }),
        (2usize..6).prop_flat_map(|d| prop::collection::vec(
            Just((0..d as u32).collect::<Vec<u32>>()).prop_shuffle(),
            1..3
        )
        .prop_map(move |imgs| GroupExpr::Literal {
            degree: d as u64,
            generators: imgs
                .into_iter()
                .map(|i| Permutation::from_images(i).unwrap().cycles())
                .collect(),
        })),
    ]
}

fn arb_expr() -> impl Strategy<Value = GroupExpr> {
    arb_leaf().prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            (inner.clone(), 1u64..4).prop_map(|(e, k)| GroupExpr::Power(Box::new(e), k)),
            prop::collection::vec(inner.clone(), 2..4).prop_map(GroupExpr::Product),
            (inner.clone(), inner.clone())
                .prop_map(|(a, s)| GroupExpr::Wreath(Box::new(a), Box::new(s))),
            (inner.clone(), inner.clone()).prop_map(|(a, s)| GroupExpr::BZero(Box::new(
                GroupExpr::Wreath(Box::new(a), Box::new(s))
            ))),
            (inner.clone(), inner.clone()).prop_map(|(a, s)| GroupExpr::Base(Box::new(
                GroupExpr::Wreath(Box::new(a), Box::new(s))
            ))),
            inner.prop_map(|e| GroupExpr::Derived(Box::new(e))),
        ]
    })
}

/// Small regular groups for wreath products.
fn arb_regular() -> impl Strategy<Value = PermGroup> {
    prop_oneof![
        (1u64..=4).prop_map(|n| cyclic(n, &guards()).unwrap()),
        Just("S(3)").prop_map(|s| regular_representation(
            &eval_expr(&parse_group_expr(s).unwrap(), &guards()).unwrap(),
            &guards()
        )
        .unwrap()),
        Just("E(2,2)").prop_map(|s| regular_representation(
            &eval_expr(&parse_group_expr(s).unwrap(), &guards()).unwrap(),
            &guards()
        )
        .unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wreath_order_and_action(a in arb_regular(), s in arb_regular(), seed in any::<u64>()) {
        let w = wreath(&a, &s, &guards()).unwrap();
        let blocks = s.degree();
        let expected = num_traits::pow(a.order().clone(), blocks) * s.order();
        prop_assert_eq!(w.order().clone(), expected);

        let info = w.wreath_info().unwrap();
        let a_elems = a.elements(5040).unwrap();
        let f: Vec<Permutation> = (0..blocks)
            .map(|x| a_elems[(seed as usize).wrapping_add(x * 7) % a_elems.len()].clone())
            .collect();
        for sigma in s.generators() {
            let top = info.top_element(sigma);
            let conj = top.compose(&info.base_element(&f)).compose(&top.inverse());
            let shifted: Vec<Permutation> = (0..blocks).map(|x| f[sigma.image(x as u32) as usize].clone()).collect();
            prop_assert_eq!(conj, info.base_element(&shifted));
        }

        if a.is_abelian() {
            let (b, b0) = wreath_base_parts(&w).unwrap();
            prop_assert!(w.is_normal(&b0).unwrap());
            prop_assert!(w.is_normal(&b).unwrap());
            prop_assert_eq!(b.index_of(&b0).unwrap(), a.order().clone());
        }
    }
}

#[test]
fn normal_subgroups_of_products_are_counted() {
    let g = guards();
    let c2 = cyclic(2, &g).unwrap();
    let c3 = cyclic(3, &g).unwrap();
    let p = direct_product(&[c2.clone(), c3], &g).unwrap();
    let oracle = NormalSubgroupOracle::new(&p, 5000).unwrap();
    assert_eq!(oracle.normal_subgroups().len(), 4);
    let v = direct_product(&[c2.clone(), c2], &g).unwrap();
    let oracle = NormalSubgroupOracle::new(&v, 5000).unwrap();
    assert_eq!(oracle.normal_subgroups().len(), 5);
    assert_eq!(oracle.count_cyclic(2).to_u64(), Some(3));
}
