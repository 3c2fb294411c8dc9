use gw_core::constructions::{direct_product, wreath, wreath_base_parts};
use gw_core::lemmas::*;
use gw_core::*;
use num_bigint::BigUint;

fn grp(s: &str) -> PermGroup {
    eval_expr(&parse_group_expr(s).unwrap(), &Guards::default()).unwrap()
}

fn assert_pass(report: &CheckReport) {
    let failed: Vec<_> = report.failures().collect();
    assert!(report.overall, "{}: {failed:?}", report.check_id);
}

#[test]
fn rank_formula_examples() {
    let g = Guards::default();
    for (expr, p, count) in [
        ("pow(C(2), 2)", 2, "3"),
        ("A(5)", 2, "0"),
        ("S(4)", 2, "1"),
        ("pow(C(3), 2)", 3, "4"),
    ] {
        let r = check_rank_formula(&grp(expr), p, &g).unwrap();
        assert_pass(&r);
        assert_eq!(r.assertions[0].actual, count, "{expr}");
    }
    assert!(matches!(
        check_rank_formula(&grp("A(5)"), 4, &g),
        Err(GwError::NotPrime { value: 4 })
    ));
}

#[test]
fn rank_formula_respects_oracle_bound() {
    let tight = Guards {
        oracle_order: 50,
        ..Guards::default()
    };
    let e = check_rank_formula(&grp("A(5)"), 2, &tight).unwrap_err();
    assert!(e.to_string().contains("oracle-bound"), "{e}");
}

#[test]
fn prime_reduction_examples() {
    let r = check_prime_reduction_bound(&grp("pow(C(2), 2)"), 2).unwrap();
    assert_pass(&r);
    assert_eq!(r.assertions[0].expected, "<= 2^8");
    assert_eq!(r.assertions[0].actual, "3");

    let r = check_prime_reduction_bound(&grp("C(6)"), 6).unwrap();
    assert_pass(&r);
    assert_eq!(r.parameters["s"], "2");
    assert_eq!(r.assertions[0].expected, "<= 2^36");
    assert_eq!(r.assertions[0].actual, "1");

    let r = check_prime_reduction_bound(&grp("A(5)"), 4).unwrap();
    assert_pass(&r);
    assert_eq!(r.assertions[0].expected, "<= 2^1");
}

#[test]
fn simple_power_examples() {
    let g = Guards::default();
    let r = check_simple_power(&grp("A(5)"), 2, 6, 6, &g).unwrap();
    assert_pass(&r);
    let normals = r
        .assertions
        .iter()
        .find(|a| a.description.starts_with("number of normal"))
        .unwrap();
    assert_eq!(normals.actual, "4");

    let r = check_simple_power(&grp("A(5)"), 1, 6, 5, &g).unwrap();
    assert_pass(&r);
    assert_eq!(r.parameters["subgroups_of_index_at_most_m"], "6");
    // the five A4 point stabilizers have abelianization C3
    let i3 = r
        .assertions
        .iter()
        .find(|a| a.description.starts_with("I_G(3, 5)"))
        .unwrap();
    assert_eq!(i3.actual, "1");

    assert_pass(&check_simple_power(&grp("A(5)"), 1, 2, 1, &g).unwrap());
}

#[test]
fn simple_power_rejects_non_simple() {
    let r = check_simple_power(&grp("S(4)"), 1, 3, 2, &Guards::default()).unwrap();
    assert!(!r.overall);
}

#[test]
fn perfect_extension_a5_p2() {
    let g = Guards::default();
    let (ext, r) = build_perfect_extension(&grp("A(5)"), 2, 1, &g).unwrap();
    assert_pass(&r);
    assert_eq!(r.parameters["k"], "59");
    assert_eq!(ext.perfect.order(), &(BigUint::from(60u32) << 59usize));
    let (_, r) = build_perfect_extension(&grp("A(5)"), 2, 2, &g).unwrap();
    assert_pass(&r);
    assert_eq!(r.parameters["k"], "118");
    let (ext, r) = build_perfect_extension(&grp("A(5)"), 3, 1, &g).unwrap();
    assert_pass(&r);
    assert_eq!(
        ext.perfect.order(),
        &(num_traits::pow(BigUint::from(3u32), 59) * 60u32)
    );
}

#[test]
fn order_formula_alone_is_not_enough() {
    // C2 wr C3 contains B_0 ⋊ C3 ≅ A4 of order 2^2 * 3, which is not perfect.
    let g = Guards::default();
    let w = wreath(&grp("C(2)"), &grp("C(3)"), &g).unwrap();
    let (_, b0) = wreath_base_parts(&w).unwrap();
    let info = w.wreath_info().unwrap();
    let mut gens = b0.generators().to_vec();
    gens.push(info.top_element(&grp("C(3)").generators()[0]));
    let fake = w.subgroup(gens).unwrap();
    let r = assess_perfect_extension(&fake, &b0, &BigUint::from(3u32), 2, 1).unwrap();
    assert!(!r.overall);
    let failed: Vec<&str> = r.failures().map(|a| a.description.as_str()).collect();
    assert_eq!(failed, vec!["P is perfect"]);
}

#[test]
fn stagewise_gap_examples() {
    let g = Guards::default();
    let r = check_stagewise_gap(&grp("A(5)"), 2, &[1], &g).unwrap();
    assert_pass(&r);
    let w = r
        .assertions
        .iter()
        .find(|a| a.description.contains("I(H, 2)"))
        .unwrap();
    assert_eq!(
        w.actual,
        ((BigUint::from(1u32) << 59usize) - 1u32).to_string()
    );

    let r = check_stagewise_gap(&grp("A(5)"), 2, &[1, 2], &g).unwrap();
    assert_pass(&r);
    let w = r
        .assertions
        .iter()
        .rfind(|a| a.description.contains("I(H, 2)"))
        .unwrap();
    assert_eq!(
        w.actual,
        ((BigUint::from(1u32) << 118usize) - 1u32).to_string()
    );

    assert_pass(&check_stagewise_gap(&grp("A(5)"), 2, &[], &g).unwrap());
}

#[test]
fn stagewise_gap_needs_growth() {
    let r = check_stagewise_gap(&grp("A(5)"), 2, &[1, 1], &Guards::default()).unwrap();
    assert!(!r.overall);
    assert!(r
        .failures()
        .all(|a| a.description.contains("strictly increases")));
}

#[test]
fn perfect_product_examples() {
    let g = Guards::default();
    let a5 = grp("A(5)");
    assert_pass(&check_perfect_product(&[a5.clone(), a5.clone()], 6, &g).unwrap());
    let gamma = grp("derived(wr(E(2,1), A(5)))");
    assert_pass(&check_perfect_product(&[a5.clone(), gamma], 6, &g).unwrap());
    assert_pass(&check_perfect_product(&[], 6, &g).unwrap());
    let e = check_perfect_product(&[a5, grp("S(4)")], 6, &g).unwrap_err();
    assert!(matches!(e, GwError::NotPerfect { index: 1, .. }), "{e}");
    assert!(direct_product(&[], &g).unwrap().is_trivial());
}

#[test]
fn henselian_delegation() {
    let reps = henselian::first_classes(3, 10).unwrap();
    let samples = henselian::random_samples(3, &reps, 30, 11, 32);
    let r = check_henselian_classes(3, &reps, &samples, 32).unwrap();
    assert_pass(&r);
    assert_eq!(r.parameters["precision"], "32");
}
