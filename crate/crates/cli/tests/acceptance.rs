//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 on an
//! unexpected result.

use std::process::Command;
use std::time::{Duration, Instant};

use gw_core::counts::{subgroups_up_to_index, NormalSubgroupOracle};
use gw_core::henselian::{first_classes, random_samples};
use gw_core::lemmas::{check_prime_reduction_bound, check_rank_formula};
use gw_core::*;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

/// Every comparison below is exact; only wall-clock budgets are tolerances.
const BUDGET_PERFECT_EXTENSION: Duration = Duration::from_secs(60);
const BUDGET_STAGEWISE: Duration = Duration::from_secs(300);
const BUDGET_CORPUS: Duration = Duration::from_secs(300);
const BUDGET_UNIFORM: Duration = Duration::from_secs(30);
const BUDGET_SIMPLE_POWER: Duration = Duration::from_secs(120);
const BUDGET_CLASSES: Duration = Duration::from_secs(30);
const BUDGET_HENSEL: Duration = Duration::from_secs(5);
const BUDGET_ORACLE: Duration = Duration::from_secs(600);

const CLASS_SEED: u64 = 0x5eed_2024;
const PRECISION: usize = 32;

/// Groups of order at most 500.
const CORPUS: &[&str] = &[
    "C(1)",
    "C(2)",
    "C(3)",
    "C(4)",
    "C(5)",
    "C(6)",
    "C(8)",
    "C(9)",
    "C(10)",
    "C(12)",
    "C(30)",
    "E(2,2)",
    "E(2,3)",
    "E(2,4)",
    "E(3,2)",
    "E(3,3)",
    "E(5,2)",
    "S(3)",
    "S(4)",
    "S(5)",
    "A(4)",
    "A(5)",
    "prod(C(2), C(4))",
    "prod(C(4), C(4))",
    "prod(C(2), C(6))",
    "prod(C(3), C(6))",
    "prod(C(5), C(10))",
    "prod(S(3), C(2))",
    "pow(S(3), 2)",
    "prod(A(4), C(3))",
    "prod(S(4), C(2))",
    "prod(A(5), C(2))",
    "gens(5; (0 1 2 3 4), (1 4)(2 3))",
    "gens(6; (0 1 2 3 4 5), (1 5)(2 4))",
    "gens(8; (0 1 2 3 4 5 6 7), (1 7)(2 6)(3 5))",
    "gens(8; (0 1 3 6)(2 5 7 4), (0 2 3 7)(1 4 6 5))",
    "wr(C(2), C(2))",
    "wr(C(2), C(3))",
    "wr(C(3), C(2))",
    "wr(C(2), C(4))",
    "wr(E(2,1), S(3))",
    "b0(wr(C(2), C(4)))",
    "derived(wr(C(2), C(3)))",
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn grp(text: &str) -> PermGroup {
    eval_expr(&parse_group_expr(text).unwrap(), &Guards::default()).unwrap()
}

fn gw_json(args: &[&str]) -> (bool, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_gw"))
        .args(args)
        .arg("--json")
        .output()
        .expect("gw runs");
    let doc: Value = serde_json::from_slice(&out.stdout).expect("json document");
    (out.status.success(), doc)
}

fn assertion<'a>(doc: &'a Value, starts: &str) -> Vec<&'a Value> {
    doc["result"]["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["description"].as_str().unwrap().starts_with(starts))
        .collect()
}

fn pow2_minus_1(k: usize) -> String {
    ((BigUint::one() << k) - 1u32).to_string()
}

fn within(start: Instant, budget: Duration, mut o: Outcome) -> Outcome {
    let took = start.elapsed();
    if took > budget {
        o.pass = false;
        o.detail = format!("{} [over budget: {took:?} > {budget:?}]", o.detail);
    } else {
        o.detail = format!("{} [{} ms]", o.detail, took.as_millis());
    }
    o
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (ok, doc) = gw_json(&[
        "verify",
        "perfect-extension",
        "--S",
        "A(5)",
        "--p",
        "2",
        "--k0",
        "1",
    ]);
    let order = assertion(&doc, "|P| =")[0]["actual"]
        .as_str()
        .unwrap()
        .to_string();
    let perfect = assertion(&doc, "P is perfect")[0]["actual"] == "true";
    let rank = assertion(&doc, "r_2(B_0)")[0]["actual"]
        .as_str()
        .unwrap()
        .to_string();
    let pass = ok && order == "34587645138205409280" && perfect && rank == "59";
    within(
        start,
        BUDGET_PERFECT_EXTENSION,
        Outcome {
            pass,
            detail: format!("|P| = {order}, perfect = {perfect}, rank(B_0) = {rank}"),
        },
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (ok, doc) = gw_json(&[
        "verify",
        "stagewise-gap",
        "--S",
        "A(5)",
        "--p",
        "2",
        "--stages",
        "1,2",
    ]);
    let bounds: Vec<String> = assertion(&doc, "stage")
        .into_iter()
        .filter(|a| a["description"].as_str().unwrap().contains("I(H, 2)"))
        .map(|a| a["actual"].as_str().unwrap().to_string())
        .collect();
    let indices: Vec<&Value> = assertion(&doc, "stage")
        .into_iter()
        .filter(|a| a["description"].as_str().unwrap().contains("|G_t : H|"))
        .map(|a| &a["actual"])
        .collect();
    let zero_counts = assertion(&doc, "stage")
        .into_iter()
        .filter(|a| a["description"].as_str().unwrap().contains("I(G_t"))
        .filter(|a| a["actual"] == "0" && a["pass"] == true)
        .count();
    let pass = ok
        && bounds == vec![pow2_minus_1(59), pow2_minus_1(118)]
        && indices.iter().all(|v| *v == "60")
        && indices.len() == 2
        && zero_counts == 10;
    within(
        start,
        BUDGET_STAGEWISE,
        Outcome {
            pass,
            detail: format!(
                "witness counts 2^59-1 and 2^118-1 at index 60: {}; I(n) = 0 for n = 2..6 on both stages: {}",
                bounds == vec![pow2_minus_1(59), pow2_minus_1(118)],
                zero_counts == 10
            ),
        },
    )
}

fn corpus() -> Vec<(&'static str, PermGroup)> {
    let list: Vec<(&str, PermGroup)> = CORPUS.iter().map(|&e| (e, grp(e))).collect();
    for (e, g) in &list {
        assert!(g.order() <= &BigUint::from(500u32), "{e} is too large");
    }
    list
}

fn criterion_3_and_4() -> (Outcome, Outcome) {
    let start = Instant::now();
    let groups = corpus();
    let guards = Guards::default();
    let mut rank_fail = Vec::new();
    for (e, g) in &groups {
        for p in [2, 3, 5] {
            if !check_rank_formula(g, p, &guards).unwrap().overall {
                rank_fail.push(format!("{e} p={p}"));
            }
        }
    }
    let mut bound_fail = Vec::new();
    for (e, g) in &groups {
        for n in 1..=12 {
            if !check_prime_reduction_bound(g, n).unwrap().overall {
                bound_fail.push(format!("{e} n={n}"));
            }
        }
    }
    let n = groups.len();
    let three = Outcome {
        pass: n >= 30 && rank_fail.is_empty(),
        detail: format!("{n} groups, p in {{2,3,5}}, failures: {rank_fail:?}"),
    };
    let four = Outcome {
        pass: n >= 30 && bound_fail.is_empty(),
        detail: format!("{n} groups, n = 1..12, failures: {bound_fail:?}"),
    };
    (within(start, BUDGET_CORPUS, three), four)
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let a5 = grp("A(5)");
    let guards = Guards::default();
    let all = subgroups_up_to_index(&a5, 60, &guards).unwrap();
    let full = uniform_count(&a5, 2, 60, None, &guards).unwrap();
    let one = uniform_count(&a5, 2, 1, None, &guards).unwrap();
    let pass = all.len() == 59
        && full.value == BigUint::from(3u32)
        && full.mode == CountMode::ExhaustiveSubgroups
        && one.value.is_zero();
    within(
        start,
        BUDGET_UNIFORM,
        Outcome {
            pass,
            detail: format!(
                "{} subgroups, I_A5(2, 60) = {}, I_A5(2, 1) = {}",
                all.len(),
                full.value,
                one.value
            ),
        },
    )
}

/// Returns the outcome and the measured `I_A5(n, 5)` for `n = 2..=6`.
fn criterion_6() -> (Outcome, Vec<BigUint>) {
    let start = Instant::now();
    let guards = Guards::default();
    let a5 = grp("A(5)");
    let square = grp("pow(A(5), 2)");
    let normals = NormalSubgroupOracle::new(&square, guards.oracle_order)
        .unwrap()
        .normal_subgroups()
        .len();
    let counts_zero = (2..=10).all(|n| count_cyclic_quotients(&square, n).unwrap().value.is_zero());
    let subs = subgroups_up_to_index(&a5, 5, &guards).unwrap();
    let low: Vec<BigUint> = (2..=6)
        .map(|n| {
            subs.iter()
                .map(|h| count_cyclic_quotients(h, n).unwrap().value)
                .max()
                .unwrap()
        })
        .collect();
    let low_zero = low.iter().all(Zero::is_zero);
    let labels: Vec<String> = low.iter().map(|v| v.to_string()).collect();
    let o = Outcome {
        pass: normals == 4 && counts_zero && low_zero,
        detail: format!(
            "A5^2 normal subgroups = {normals}, I(n) = 0 for n = 2..10: {counts_zero}, \
             I_A5(n, 5) for n = 2..6 = [{}] over {} subgroups of index <= 5",
            labels.join(", "),
            subs.len()
        ),
    };
    (within(start, BUDGET_SIMPLE_POWER, o), low)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [2u64, 3, 4] {
        let reps = first_classes(n, 10).unwrap();
        let samples = random_samples(n, &reps, 100, CLASS_SEED, PRECISION);
        let r = verify_power_class_decomposition(n, &reps, &samples, PRECISION).unwrap();
        let unique = r
            .samples
            .iter()
            .filter(|s| s.matches == 1 && s.certificate_verified)
            .count();
        pass &= reps.len() == 10
            && r.candidates == 10 * n as usize
            && r.pairwise_inequivalent
            && unique == 100
            && r.overall;
        parts.push(format!(
            "n={n}: {} candidates distinct {}, {unique}/100 certified",
            r.candidates, r.pairwise_inequivalent
        ));
    }
    within(
        start,
        BUDGET_CLASSES,
        Outcome {
            pass,
            detail: parts.join("; "),
        },
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let u = parse_series("1 + t", 64).unwrap();
    let y32 = hensel_nth_root(&u, 2, 32).unwrap();
    let y64 = hensel_nth_root(&u, 2, 64).unwrap();
    let mut c = BigRational::one();
    let mut oracle = vec![c.clone()];
    let half = BigRational::new(1.into(), 2.into());
    for k in 1..64i64 {
        c = c * (&half - BigRational::from_integer((k - 1).into()))
            / BigRational::from_integer(k.into());
        oracle.push(c.clone());
    }
    let matches = y32.coefficients() == &oracle[..32];
    let stable =
        y64.coefficients()[..32] == *y32.coefficients() && y64.coefficients() == oracle.as_slice();
    within(
        start,
        BUDGET_HENSEL,
        Outcome {
            pass: matches && stable,
            detail: format!(
                "binomial oracle on 32 coefficients: {matches}; 32 -> 64 stable: {stable}"
            ),
        },
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let guards = Guards::default();
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for (e, g) in corpus() {
        for n in 1..=12 {
            let f = count_cyclic_quotients(&g, n).unwrap().value;
            let b = brute_force_cyclic_quotients(&g, n, &guards).unwrap().value;
            checked += 1;
            if f != b {
                mismatches.push(format!("{e} n={n}: {f} vs {b}"));
            }
        }
    }
    within(
        start,
        BUDGET_ORACLE,
        Outcome {
            pass: mismatches.is_empty(),
            detail: format!("{checked} comparisons, mismatches: {mismatches:?}"),
        },
    )
}

fn line(id: u32, o: &Outcome) {
    println!(
        "criterion {id}: {} {}",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail
    );
}

fn report(unexpected: &mut Vec<u32>, id: u32, o: Outcome) {
    line(id, &o);
    if !o.pass {
        unexpected.push(id);
    }
}

fn main() {
    let mut unexpected = Vec::new();
    report(&mut unexpected, 1, criterion_1());
    report(&mut unexpected, 2, criterion_2());
    let (three, four) = criterion_3_and_4();
    report(&mut unexpected, 3, three);
    report(&mut unexpected, 4, four);
    report(&mut unexpected, 5, criterion_5());

    // Criterion 6 asks for I_A5(n, 5) = 0 for all n <= 6, but the index-5
    // subgroups A4 have A4/V4 = C3, so I_A5(3, 5) = 1. The line reports the
    // failure; the run only stops if the values differ from that.
    let (six, low) = criterion_6();
    line(6, &six);
    let expected_low: Vec<BigUint> = [0u32, 1, 0, 0, 0]
        .iter()
        .map(|&v| BigUint::from(v))
        .collect();
    let a4_c3 = count_cyclic_quotients(&grp("A(4)"), 3).unwrap().value;
    if low != expected_low || a4_c3 != BigUint::one() {
        println!("criterion 6: unexpected values {low:?}");
        unexpected.push(6);
    } else if !six.pass {
        println!("criterion 6: known failure, I_A4(3) = {a4_c3} makes I_A5(3, 5) = 1");
    }

    report(&mut unexpected, 7, criterion_7());
    report(&mut unexpected, 8, criterion_8());
    report(&mut unexpected, 9, criterion_9());

    if !unexpected.is_empty() {
        println!("unexpected results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
