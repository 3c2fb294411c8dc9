//! Power classes of `ℚ((t))^×` modulo n-th powers.
//!
//! A nonzero `x` is an n-th power iff `n | v(x)` and its unit residue is an
//! n-th power in ℚ; the lift is Newton iteration. Every class therefore has
//! a unique representative `t^i · b` with `i ∈ [0, n)` and `b` running over
//! a set of representatives of `ℚ^×/(ℚ^×)^n`.

mod parse;
mod rational;
mod series;

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{GwError, Result};

pub use parse::parse_series;
pub use rational::{
    equivalent, factor_biguint, is_nth_power_rational, nth_root_rational, power_free_form,
};
pub use series::{scalar_from_u64, LaurentSeries, Scalar};

pub use crate::QSeries;

/// `x ∈ (F^×)^n`.
pub fn is_nth_power_series(x: &QSeries, n: u64) -> Result<bool> {
    let v = x.valuation()?;
    if n == 0 {
        return Err(GwError::InvalidArgument("n must be positive".into()));
    }
    Ok(v.rem_euclid(n as i64) == 0 && is_nth_power_rational(&x.unit_residue()?, n)?)
}

/// The n-th root of a unit series with n-th power residue, to `prec` terms
/// (capped by the precision of `u`). The constant term is the positive root
/// for even `n` and the real root for odd `n`.
pub fn hensel_nth_root(u: &QSeries, n: u64, prec: usize) -> Result<QSeries> {
    let v = u
        .valuation()
        .map_err(|_| GwError::HenselPrecondition("u is zero".into()))?;
    if v != 0 {
        return Err(GwError::HenselPrecondition(format!(
            "v(u) = {v}, expected 0"
        )));
    }
    let residue = u.unit_residue()?;
    let Some(start) = nth_root_rational(&residue, n)? else {
        return Err(GwError::HenselPrecondition(format!(
            "residue {residue} is not a {n}-th power in Q"
        )));
    };
    u.newton_nth_root(n, start, prec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerClassRep {
    #[serde(serialize_with = "crate::serde_big::display")]
    pub i: u64,
    #[serde(serialize_with = "crate::serde_big::display")]
    pub b: BigRational,
}

/// Witness that `x · t^i · b = (t^e · root)^n` on the working precision.
#[derive(Clone, Debug, Serialize)]
pub struct PowerClassCertificate {
    #[serde(serialize_with = "crate::serde_big::display")]
    pub e: i64,
    #[serde(serialize_with = "crate::serde_big::display")]
    pub root: QSeries,
    #[serde(serialize_with = "crate::serde_big::display")]
    pub precision: usize,
    pub verified: bool,
}

/// Finds `(i, b)` with `b ∈ reps` and `x · t^i · b ∈ (F^×)^n`.
pub fn class_representative(
    x: &QSeries,
    n: u64,
    reps: &[BigRational],
    prec: usize,
) -> Result<(PowerClassRep, PowerClassCertificate)> {
    let v = x.valuation()?;
    if n == 0 {
        return Err(GwError::InvalidArgument("n must be positive".into()));
    }
    let i = (-v).rem_euclid(n as i64);
    let residue = x.unit_residue()?;
    let mut found = None;
    for b in reps {
        if is_nth_power_rational(&(&residue * b), n)? {
            found = Some(b.clone());
            break;
        }
    }
    let Some(b) = found else {
        let missing = power_free_form(&residue.recip(), n)?;
        return Err(GwError::MissingClass {
            missing: missing.to_string(),
        });
    };
    let y = x.shift(i).scale(&b);
    let total = y.valuation()?;
    let e = total / n as i64;
    let unit = y.shift(-total);
    let root = hensel_nth_root(&unit, n, prec)?;
    let verified = root.shift(e).pow(n).agrees_with(&y);
    let precision = root.precision();
    Ok((
        PowerClassRep { i: i as u64, b },
        PowerClassCertificate {
            e,
            root,
            precision,
            verified,
        },
    ))
}

/// Per-sample outcome in a decomposition report.
#[derive(Clone, Debug, Serialize)]
pub struct SampleOutcome {
    pub sample: String,
    /// Candidates `t^i · b` for which `x · t^i · b` is an n-th power.
    #[serde(serialize_with = "crate::serde_big::display")]
    pub matches: usize,
    pub representative: Option<PowerClassRep>,
    pub certificate_verified: bool,
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    #[serde(serialize_with = "crate::serde_big::display")]
    pub n: u64,
    #[serde(serialize_with = "crate::serde_big::display")]
    pub precision: usize,
    pub representatives: Vec<String>,
    #[serde(serialize_with = "crate::serde_big::display")]
    pub candidates: usize,
    #[serde(serialize_with = "crate::serde_big::display")]
    pub pairs_checked: usize,
    pub pairwise_inequivalent: bool,
    pub samples: Vec<SampleOutcome>,
    pub elapsed_ms: String,
    pub overall: bool,
}

/// Checks that `{t^i · b}` are pairwise inequivalent and that every sample
/// reduces to exactly one of them with a verifying Hensel certificate.
pub fn verify_power_class_decomposition(
    n: u64,
    reps: &[BigRational],
    samples: &[QSeries],
    prec: usize,
) -> Result<ClassReport> {
    let started = Instant::now();
    if n == 0 {
        return Err(GwError::InvalidArgument("n must be positive".into()));
    }
    for (a, first) in reps.iter().enumerate() {
        for second in &reps[a + 1..] {
            if equivalent(first, second, n)? {
                return Err(GwError::EquivalentRepresentatives {
                    first: first.to_string(),
                    second: second.to_string(),
                    n,
                });
            }
        }
    }
    let cands: Vec<(i64, &BigRational)> = (0..n as i64)
        .flat_map(|i| reps.iter().map(move |b| (i, b)))
        .collect();
    let mut pairs = 0;
    let mut distinct = true;
    for (a, (i, b)) in cands.iter().enumerate() {
        for (j, c) in &cands[a + 1..] {
            pairs += 1;
            let ratio = QSeries::monomial(*b / *c, i - j, 1);
            if is_nth_power_series(&ratio, n)? {
                distinct = false;
            }
        }
    }
    let mut outcomes = Vec::with_capacity(samples.len());
    for x in samples {
        let mut matches = 0;
        for (i, b) in &cands {
            if is_nth_power_series(&x.shift(*i).scale(b), n)? {
                matches += 1;
            }
        }
        let (representative, verified, error) = match class_representative(x, n, reps, prec) {
            Ok((rep, cert)) => (Some(rep), cert.verified, None),
            Err(e) => (None, false, Some(e.to_string())),
        };
        outcomes.push(SampleOutcome {
            sample: x.to_string(),
            matches,
            pass: matches == 1 && verified,
            representative,
            certificate_verified: verified,
            error,
        });
    }
    let overall = distinct && outcomes.iter().all(|o| o.pass);
    Ok(ClassReport {
        n,
        precision: prec,
        representatives: reps.iter().map(|b| b.to_string()).collect(),
        candidates: cands.len(),
        pairs_checked: pairs,
        pairwise_inequivalent: distinct,
        samples: outcomes,
        elapsed_ms: started.elapsed().as_millis().to_string(),
        overall,
    })
}

/// The first `count` canonical class representatives of `ℚ^×/(ℚ^×)^n` in
/// the order `1, -1, 2, -2, 3, …` (negatives only for even `n`).
pub fn first_classes(n: u64, count: usize) -> Result<Vec<BigRational>> {
    if n == 0 {
        return Err(GwError::InvalidArgument("n must be positive".into()));
    }
    let mut out: Vec<BigRational> = Vec::new();
    let mut k: i64 = 1;
    while out.len() < count {
        if n == 1 && !out.is_empty() {
            break;
        }
        for s in [k, -k] {
            if out.len() == count {
                break;
            }
            let q = BigRational::from_integer(BigInt::from(s));
            if power_free_form(&q, n)? != *q.numer() {
                continue;
            }
            out.push(q);
        }
        k += 1;
    }
    Ok(out)
}

/// Pseudo-random samples `t^(nk - i) · q^n / b · (1 + t·f(t))` with `b`
/// drawn from `reps`, so each lies in the class of a known candidate.
pub fn random_samples(
    n: u64,
    reps: &[BigRational],
    count: usize,
    seed: u64,
    prec: usize,
) -> Vec<QSeries> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let b = &reps[rng.gen_range(0..reps.len())];
        let i = rng.gen_range(0..n) as i64;
        let k = rng.gen_range(-2..=2i64);
        let mut q = BigRational::new(
            rng.gen_range(1..=9i64).into(),
            rng.gen_range(1..=9i64).into(),
        );
        if rng.gen_bool(0.5) {
            q = -q;
        }
        let lead = num_traits::pow(q, n as usize) / b;
        let mut terms = vec![(0, BigRational::one())];
        for e in 1..6 {
            let c: i64 = rng.gen_range(-5..=5);
            terms.push((
                e,
                BigRational::new(c.into(), rng.gen_range(1..=4i64).into()),
            ));
        }
        let unit = QSeries::from_terms(&terms, prec);
        out.push(unit.scale(&lead).shift(n as i64 * k - i));
    }
    out
}
