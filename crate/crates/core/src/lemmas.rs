//! Executable checks of the cyclic-quotient identities and bounds at finite
//! scale. Every quantity is recomputed through the public operations; the
//! reports carry exact integers only.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::abelian::p_rank;
use crate::config::Guards;
use crate::constructions::{
    direct_power, direct_product, elementary_abelian, is_regular, regular_representation, wreath,
    wreath_base_parts,
};
use crate::counts::{
    brute_force_cyclic_quotients, count_cyclic_quotients, subgroups_up_to_index,
    NormalSubgroupOracle,
};
use crate::error::{GwError, Result};
use crate::henselian::{verify_power_class_decomposition, QSeries};
use crate::perm::{PermGroup, Permutation};
use crate::primes::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub parameters: BTreeMap<String, String>,
    pub assertions: Vec<Assertion>,
    pub elapsed_ms: String,
    pub overall: bool,
}

impl CheckReport {
    fn new(check_id: &str) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            parameters: BTreeMap::new(),
            assertions: Vec::new(),
            elapsed_ms: "0".into(),
            overall: true,
        }
    }

    pub fn param(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(name.to_string(), value.to_string());
        self
    }

    fn assert(
        &mut self,
        description: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
        pass: bool,
    ) {
        self.overall &= pass;
        self.assertions.push(Assertion {
            description: description.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        });
    }

    fn assert_eq<T: PartialEq + ToString>(
        &mut self,
        description: impl Into<String>,
        expected: T,
        actual: T,
    ) {
        let pass = expected == actual;
        self.assert(description, expected, actual, pass);
    }

    fn finish(mut self, started: Instant) -> Self {
        self.elapsed_ms = started.elapsed().as_millis().to_string();
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GwError::NotPrime { value: p })
    }
}

/// `(p^r − 1)/(p − 1)`, the number of lines in `F_p^r`.
pub fn projective_count(p: u64, r: usize) -> BigUint {
    (num_traits::pow(BigUint::from(p), r) - 1u32) / BigUint::from(p - 1)
}

/// `value ≤ 2^exp`.
fn le_pow2(value: &BigUint, exp: &BigUint) -> bool {
    if *exp >= BigUint::from(value.bits()) {
        return true;
    }
    let e = exp.to_u64().expect("below the bit length");
    *value <= BigUint::one() << e
}

fn pow2_label(exp: &BigUint) -> String {
    format!("2^{exp}")
}

fn factorial(m: u64) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, k| acc * k)
}

/// `I_G(p)` from the oracle against `(p^r − 1)/(p − 1)` with `r = r_p(G)`.
pub fn check_rank_formula(g: &PermGroup, p: u64, guards: &Guards) -> Result<CheckReport> {
    let started = Instant::now();
    require_prime(p)?;
    let mut report = CheckReport::new("rank-formula");
    report.param("p", p).param("order", g.order());
    let brute = brute_force_cyclic_quotients(g, p, guards)?.value;
    let r = p_rank(g, p)?;
    report.assert_eq(
        format!("I_G({p}) = ({p}^r - 1)/({p} - 1) with r = r_{p}(G) = {r}"),
        projective_count(p, r),
        brute.clone(),
    );
    report.assert_eq(
        "formula count agrees with the normal-subgroup oracle",
        brute,
        count_cyclic_quotients(g, p)?.value,
    );
    Ok(report.finish(started))
}

/// `I_G(n) ≤ 2^(n^s)` with `s = Σ_{p | n} I_G(p)`, compared exactly.
pub fn check_prime_reduction_bound(g: &PermGroup, n: u64) -> Result<CheckReport> {
    let started = Instant::now();
    if n == 0 {
        return Err(GwError::InvalidArgument("n must be positive".into()));
    }
    let mut report = CheckReport::new("prime-reduction");
    report.param("n", n).param("order", g.order());
    let value = count_cyclic_quotients(g, n)?.value;
    let mut s = BigUint::zero();
    for p in crate::primes::prime_divisors(n) {
        s += count_cyclic_quotients(g, p)?.value;
    }
    // n^s overflows any representation long before it matters: once s ≥ 64
    // the exponent exceeds every bit length we could hold.
    let (pass, expected) = match s.to_u32().filter(|&s| s < 64) {
        Some(s32) => {
            let exp = num_traits::pow(BigUint::from(n), s32 as usize);
            (le_pow2(&value, &exp), format!("<= {}", pow2_label(&exp)))
        }
        None => (true, format!("<= 2^({n}^{s})")),
    };
    report.param("s", &s);
    report.assert(format!("I_G({n}) <= 2^({n}^s)"), expected, value, pass);
    Ok(report.finish(started))
}

fn require_nonabelian_simple(
    s: &PermGroup,
    guards: &Guards,
    report: &mut CheckReport,
) -> Result<()> {
    report.assert_eq("S is non-abelian", true, !s.is_abelian());
    let oracle = NormalSubgroupOracle::new(s, guards.oracle_order)?;
    report.assert_eq(
        "S has exactly two normal subgroups",
        2,
        oracle.normal_subgroups().len(),
    );
    Ok(())
}

/// The subgroup of `S^k` that is `S` on the coordinates in `mask` and
/// trivial elsewhere.
fn sub_product(g: &PermGroup, s: &PermGroup, k: usize, mask: usize) -> Result<PermGroup> {
    let gens: Vec<Permutation> = (0..k)
        .filter(|j| mask >> j & 1 == 1)
        .flat_map(|j| {
            s.generators()
                .iter()
                .map(move |x| x.shifted(j * s.degree(), g.degree()))
        })
        .collect();
    g.subgroup(gens)
}

/// `I_{S^k}(n) = 0` and `I_{S^k}(n, m) ≤ 2^(m!)`; for `k ≤ 2` also that the
/// normal subgroups of `S^k` are exactly the sub-products.
pub fn check_simple_power(
    s: &PermGroup,
    k: u64,
    n_max: u64,
    m: u64,
    guards: &Guards,
) -> Result<CheckReport> {
    let started = Instant::now();
    let mut report = CheckReport::new("simple-power");
    report
        .param("k", k)
        .param("n_max", n_max)
        .param("m", m)
        .param("order", s.order());
    require_nonabelian_simple(s, guards, &mut report)?;
    let g = direct_power(s, k, guards)?;
    for n in 2..=n_max {
        report.assert_eq(
            format!("I_G({n}) = 0"),
            BigUint::zero(),
            count_cyclic_quotients(&g, n)?.value,
        );
    }
    let m_usize = usize::try_from(m).map_err(|_| GwError::InvalidArgument(format!("m = {m}")))?;
    let subs = subgroups_up_to_index(&g, m_usize, guards)?;
    report.param("subgroups_of_index_at_most_m", subs.len());
    let bound = factorial(m);
    for n in 2..=n_max {
        let mut best = BigUint::zero();
        for h in &subs {
            best = best.max(count_cyclic_quotients(h, n)?.value);
        }
        report.assert(
            format!("I_G({n}, {m}) <= 2^({m}!)"),
            format!("<= {}", pow2_label(&bound)),
            &best,
            le_pow2(&best, &bound),
        );
    }
    if k <= 2 {
        let oracle = NormalSubgroupOracle::new(&g, guards.oracle_order)?;
        let k = k as usize;
        let products: Vec<PermGroup> = (0..1usize << k)
            .map(|mask| sub_product(&g, s, k, mask))
            .collect::<Result<_>>()?;
        let table = oracle.table();
        let mut all_sub_products = true;
        for n in oracle.normal_subgroups() {
            let gens: Vec<Permutation> = n.gens.iter().map(|&i| table.element(i).clone()).collect();
            let h = g.subgroup(gens)?;
            all_sub_products &= products.iter().any(|p| p.same_group(&h));
        }
        report.assert_eq(
            "number of normal subgroups of S^k",
            1usize << k,
            oracle.normal_subgroups().len(),
        );
        report.assert_eq(
            "every normal subgroup is a sub-product",
            true,
            all_sub_products,
        );
    }
    Ok(report.finish(started))
}

/// The pieces of a perfect extension of `S` by an elementary abelian group.
pub struct PerfectExtension {
    pub wreath: PermGroup,
    pub perfect: PermGroup,
    pub b0: PermGroup,
}

fn regular(g: &PermGroup, guards: &Guards) -> Result<PermGroup> {
    if is_regular(g) {
        Ok(g.clone())
    } else {
        regular_representation(g, guards)
    }
}

/// `P = (C_p^{k0} ≀ S)'` with its subgroup `B_0`, plus a report on it.
pub fn build_perfect_extension(
    s: &PermGroup,
    p: u64,
    k0: u64,
    guards: &Guards,
) -> Result<(PerfectExtension, CheckReport)> {
    let started = Instant::now();
    require_prime(p)?;
    if k0 == 0 {
        return Err(GwError::InvalidArgument("k0 must be positive".into()));
    }
    let a = regular(&elementary_abelian(p, k0, guards)?, guards)?;
    let top = regular(s, guards)?;
    let w = wreath(&a, &top, guards)?;
    let (_, b0) = wreath_base_parts(&w)?;
    let perfect = w.derived_subgroup();
    let mut report = assess_perfect_extension(&perfect, &b0, s.order(), p, k0)?;
    report.param("order_S", s.order());
    let ext = PerfectExtension {
        wreath: w,
        perfect,
        b0,
    };
    Ok((ext, report.finish(started)))
}

/// The joint conditions on a candidate extension `P ⊇ B_0`: `P` perfect,
/// `|P| = p^{k0(|S|-1)}·|S|`, `r_p(B_0) = k0(|S|-1)` and `|P : B_0| = |S|`.
pub fn assess_perfect_extension(
    p_group: &PermGroup,
    b0: &PermGroup,
    order_s: &BigUint,
    p: u64,
    k0: u64,
) -> Result<CheckReport> {
    let started = Instant::now();
    let mut report = CheckReport::new("perfect-extension");
    report.param("p", p).param("k0", k0);
    let s_minus_1 = (order_s - 1u32)
        .to_usize()
        .ok_or_else(|| GwError::InvalidArgument(format!("|S| = {order_s} too large")))?;
    let k = k0 as usize * s_minus_1;
    report.param("k", k);
    report.assert_eq("P is perfect", true, p_group.is_perfect());
    report.assert_eq(
        format!("|P| = {p}^{k} * {order_s}"),
        num_traits::pow(BigUint::from(p), k) * order_s,
        p_group.order().clone(),
    );
    let contained = p_group.degree() == b0.degree() && p_group.is_subgroup(b0)?;
    report.assert_eq("B_0 is a subgroup of P", true, contained);
    report.assert_eq(format!("r_{p}(B_0) = k0 * (|S| - 1)"), k, p_rank(b0, p)?);
    let index = if contained {
        p_group.index_of(b0)?
    } else {
        BigUint::zero()
    };
    report.assert_eq("|P : B_0| = |S|", order_s.clone(), index);
    Ok(report.finish(started))
}

/// Finite stages `G_t = P_{k0(1)} × … × P_{k0(t)}`: each perfect, with a
/// subgroup of index `|S|` whose `I(p)` is at least `(p^k − 1)/(p − 1)`.
pub fn check_stagewise_gap(
    s: &PermGroup,
    p: u64,
    stages: &[u64],
    guards: &Guards,
) -> Result<CheckReport> {
    let started = Instant::now();
    require_prime(p)?;
    let mut report = CheckReport::new("stagewise-gap");
    let labels: Vec<String> = stages.iter().map(|k| k.to_string()).collect();
    report
        .param("p", p)
        .param("stages", labels.join(","))
        .param("order_S", s.order());
    let mut exts = Vec::new();
    for &k0 in stages {
        exts.push(build_perfect_extension(s, p, k0, guards)?.0);
    }
    if stages.is_empty() {
        let g = PermGroup::trivial(1);
        report.assert_eq("empty product is perfect", true, g.is_perfect());
        return Ok(report.finish(started));
    }
    let s_minus_1 = (s.order() - 1u32).to_usize().expect("|S| fits");
    let mut previous: Option<BigUint> = None;
    for t in 1..=stages.len() {
        let factors: Vec<PermGroup> = exts[..t].iter().map(|e| e.perfect.clone()).collect();
        let g = direct_product(&factors, guards)?;
        report.assert_eq(format!("stage {t}: G_t is perfect"), true, g.is_perfect());
        for n in 2..=6 {
            report.assert_eq(
                format!("stage {t}: I(G_t, {n}) = 0"),
                BigUint::zero(),
                count_cyclic_quotients(&g, n)?.value,
            );
        }
        let (last, _) = stages[..t]
            .iter()
            .enumerate()
            .rev()
            .max_by_key(|(_, k)| **k)
            .expect("non-empty");
        let mut gens = Vec::new();
        let mut offset = 0;
        for (j, e) in exts[..t].iter().enumerate() {
            let part = if j == last { &e.b0 } else { &e.perfect };
            gens.extend(
                part.generators()
                    .iter()
                    .map(|x| x.shifted(offset, g.degree())),
            );
            offset += e.perfect.degree();
        }
        let h = g.subgroup(gens)?;
        report.assert_eq(
            format!("stage {t}: |G_t : H| = |S|"),
            s.order().clone(),
            g.index_of(&h)?,
        );
        let k = stages[last] as usize * s_minus_1;
        let bound = projective_count(p, k);
        let count = count_cyclic_quotients(&h, p)?.value;
        report.assert(
            format!("stage {t}: I(H, {p}) >= ({p}^{k} - 1)/({p} - 1)"),
            format!(">= {bound}"),
            &count,
            count >= bound,
        );
        if let Some(prev) = &previous {
            report.assert(
                format!("stage {t}: witness bound strictly increases"),
                format!("> {prev}"),
                &bound,
                bound > *prev,
            );
        }
        previous = Some(bound);
    }
    Ok(report.finish(started))
}

/// A product of perfect groups is perfect and has no cyclic quotients.
pub fn check_perfect_product(
    factors: &[PermGroup],
    n_max: u64,
    guards: &Guards,
) -> Result<CheckReport> {
    let started = Instant::now();
    let mut report = CheckReport::new("perfect-product");
    report.param("factors", factors.len()).param("n_max", n_max);
    for (index, f) in factors.iter().enumerate() {
        if !f.is_perfect() {
            return Err(GwError::NotPerfect {
                index,
                description: f.describe(),
            });
        }
    }
    let g = direct_product(factors, guards)?;
    report.param("order", g.order());
    report.assert_eq("product is perfect", true, g.is_perfect());
    for n in 2..=n_max {
        report.assert_eq(
            format!("I_G({n}) = 0"),
            BigUint::zero(),
            count_cyclic_quotients(&g, n)?.value,
        );
    }
    Ok(report.finish(started))
}

/// Wraps the power-class decomposition report.
pub fn check_henselian_classes(
    n: u64,
    reps: &[BigRational],
    samples: &[QSeries],
    prec: usize,
) -> Result<CheckReport> {
    let started = Instant::now();
    let classes = verify_power_class_decomposition(n, reps, samples, prec)?;
    let mut report = CheckReport::new("henselian-classes");
    report
        .param("n", n)
        .param("representatives", classes.representatives.join(","))
        .param("samples", samples.len())
        .param("precision", prec);
    report.assert_eq(
        format!(
            "{} candidates t^i * b pairwise inequivalent ({} pairs)",
            classes.candidates, classes.pairs_checked
        ),
        true,
        classes.pairwise_inequivalent,
    );
    let unique = classes.samples.iter().filter(|o| o.matches == 1).count();
    report.assert_eq(
        "samples matching exactly one candidate",
        samples.len(),
        unique,
    );
    let certified = classes
        .samples
        .iter()
        .filter(|o| o.certificate_verified)
        .count();
    report.assert_eq(
        "samples with a verifying Hensel certificate",
        samples.len(),
        certified,
    );
    Ok(report.finish(started))
}
