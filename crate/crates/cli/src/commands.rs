use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::Args;
use gw_core::config::default_precision;
use gw_core::henselian::{first_classes, random_samples};
use gw_core::lemmas::{self, CheckReport};
use gw_core::{
    abelian_invariants, brute_force_cyclic_quotients, count_cyclic_quotients, eval_expr,
    hensel_nth_root, p_rank, parse_group_expr, parse_series, subgroups_up_to_index, uniform_count,
    verify_power_class_decomposition, GroupExpr, Guards, GwError, PermGroup, QSeries, Result,
};
use num_rational::BigRational;
use serde_json::json;

use crate::render;
use crate::Outcome;

const CHECKS: [&str; 7] = [
    "rank-formula",
    "prime-reduction",
    "simple-power",
    "perfect-extension",
    "stagewise-gap",
    "perfect-product",
    "henselian-classes",
];

/// Seed for `verify henselian-classes` samples when none is given.
pub const DEFAULT_SEED: u64 = 20_240_501;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// One of rank-formula, prime-reduction, simple-power, perfect-extension,
    /// stagewise-gap, perfect-product, henselian-classes.
    #[arg(value_parser = CHECKS)]
    check: String,
    /// Simple group S.
    #[arg(long = "S")]
    s: Option<String>,
    /// Group G.
    #[arg(long = "G")]
    g: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    k0: Option<u64>,
    /// Comma-separated k0 values; empty for no stages.
    #[arg(long)]
    stages: Option<String>,
    #[arg(short)]
    n: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(short)]
    m: Option<u64>,
    /// Factor of a direct product; repeat for each factor.
    #[arg(long = "factor")]
    factors: Vec<String>,
    /// Class representatives (rationals); defaults to the first ten canonical classes.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    reps: Vec<String>,
    /// Sample file, one series literal per line.
    #[arg(long)]
    samples: Option<PathBuf>,
    /// Number of pseudo-random samples when no file is given.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    prec: Option<usize>,
}

fn missing(check: &str, flag: &str) -> GwError {
    GwError::InvalidArgument(format!("{check} requires {flag}"))
}

fn group(text: &str, guards: &Guards) -> Result<(GroupExpr, PermGroup)> {
    let expr = parse_group_expr(text)?;
    let g = eval_expr(&expr, guards)?;
    Ok((expr, g))
}

fn strs<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn eval(text: &str, guards: &Guards) -> Result<Outcome> {
    let (expr, g) = group(text, guards)?;
    let perfect = g.is_perfect();
    let abelian = g.is_abelian();
    let json = json!({
        "expr": expr.to_string(),
        "degree": g.degree().to_string(),
        "order": g.order().to_string(),
        "perfect": perfect,
        "abelian": abelian,
        "generators": g.generators().len().to_string(),
        "base_length": g.chain().len().to_string(),
    });
    let text = format!(
        "expr      {expr}\ndegree    {}\norder     {}\nperfect   {perfect}\nabelian   {abelian}\ngenerators {}\n",
        g.degree(),
        g.order(),
        g.generators().len(),
    );
    Ok(Outcome {
        json,
        text,
        pass: true,
    })
}

pub fn invariants(text: &str, primes: &[u64], guards: &Guards) -> Result<Outcome> {
    let (expr, g) = group(text, guards)?;
    let inv = abelian_invariants(&g);
    let mut ranks = BTreeMap::new();
    let mut out = format!(
        "expr      {expr}\norder     {}\nG/G'      {inv}\n|G/G'|    {}\n",
        g.order(),
        inv.order()
    );
    for &p in primes {
        let r = p_rank(&g, p)?;
        writeln!(out, "r_{p}(G)    {r}").unwrap();
        ranks.insert(p.to_string(), r.to_string());
    }
    let json = json!({
        "expr": expr.to_string(),
        "order": g.order().to_string(),
        "abelian_invariants": inv,
        "abelianization_order": inv.order().to_string(),
        "p_ranks": ranks,
    });
    Ok(Outcome {
        json,
        text: out,
        pass: true,
    })
}

pub fn count(
    text: &str,
    n: u64,
    m: Option<u64>,
    witness: Option<&str>,
    brute_force: bool,
    guards: &Guards,
) -> Result<Outcome> {
    let (expr, g) = group(text, guards)?;
    let report = match (m, witness) {
        (Some(m), w) => {
            let w = w.map(parse_group_expr).transpose()?;
            uniform_count(&g, n, m, w.as_ref(), guards)?
        }
        (None, Some(_)) => return Err(GwError::InvalidArgument("--witness requires -m".into())),
        (None, None) if brute_force => brute_force_cyclic_quotients(&g, n, guards)?,
        (None, None) => count_cyclic_quotients(&g, n)?,
    };
    let label = match report.m {
        Some(m) => format!("I({n}, {m})"),
        None => format!("I({n})"),
    };
    let mode = serde_json::to_value(report.mode).expect("serializable");
    let mut out = format!(
        "expr      {expr}\n{label} = {} (mode: {})\n",
        report.value,
        mode.as_str().unwrap_or("")
    );
    if let Some(w) = &report.witness {
        writeln!(
            out,
            "witness   {} (order {}, index {}, count {})",
            w.description, w.order, w.index, w.count
        )
        .unwrap();
    }
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["expr"] = json!(expr.to_string());
    Ok(Outcome {
        json,
        text: out,
        pass: true,
    })
}

pub fn subgroups(text: &str, m: usize, guards: &Guards) -> Result<Outcome> {
    let (expr, g) = group(text, guards)?;
    let subs = subgroups_up_to_index(&g, m, guards)?;
    let mut rows = Vec::with_capacity(subs.len());
    let mut out = format!(
        "expr      {expr}\nm         {m}\ncount     {}\n",
        subs.len()
    );
    for (i, h) in subs.iter().enumerate() {
        let index = g.index_of(h)?;
        let gens = strs(h.generators());
        writeln!(
            out,
            "{i:>4}  index {index:>3}  order {:>6}  <{}>",
            h.order(),
            gens.join(", ")
        )
        .unwrap();
        rows.push(json!({
            "index": index.to_string(),
            "order": h.order().to_string(),
            "generators": gens,
        }));
    }
    let json = json!({
        "expr": expr.to_string(),
        "m": m.to_string(),
        "count": subs.len().to_string(),
        "subgroups": rows,
    });
    Ok(Outcome {
        json,
        text: out,
        pass: true,
    })
}

fn parse_reps(reps: &[String]) -> Result<Vec<BigRational>> {
    reps.iter()
        .map(|r| {
            r.trim()
                .parse::<BigRational>()
                .map_err(|e| GwError::InvalidArgument(format!("representative `{r}`: {e}")))
        })
        .collect()
}

fn read_samples(path: &Path, prec: usize) -> Result<Vec<QSeries>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GwError::InvalidArgument(format!("{}: {e}", path.display())))?;
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_series(l, prec))
        .collect()
}

fn parse_stages(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .map_err(|e| GwError::InvalidArgument(format!("stage `{s}`: {e}")))
        })
        .collect()
}

fn report_outcome(report: CheckReport) -> Outcome {
    let text = render::check_report(&report);
    let pass = report.overall;
    Outcome {
        json: serde_json::to_value(&report).expect("serializable"),
        text,
        pass,
    }
}

pub fn verify(a: &VerifyArgs, guards: &Guards) -> Result<Outcome> {
    let id = a.check.as_str();
    let need_s = || -> Result<(GroupExpr, PermGroup)> {
        group(a.s.as_deref().ok_or_else(|| missing(id, "--S"))?, guards)
    };
    let need_g = || -> Result<(GroupExpr, PermGroup)> {
        group(a.g.as_deref().ok_or_else(|| missing(id, "--G"))?, guards)
    };
    let need_p = || a.p.ok_or_else(|| missing(id, "--p"));
    let need_n = || a.n.ok_or_else(|| missing(id, "-n"));
    let mut report = match id {
        "rank-formula" => {
            let (e, g) = need_g()?;
            let mut r = lemmas::check_rank_formula(&g, need_p()?, guards)?;
            r.param("G", e);
            r
        }
        "prime-reduction" => {
            let (e, g) = need_g()?;
            let mut r = lemmas::check_prime_reduction_bound(&g, need_n()?)?;
            r.param("G", e);
            r
        }
        "simple-power" => {
            let (e, s) = need_s()?;
            let k = a.k.ok_or_else(|| missing(id, "--k"))?;
            let mut r =
                lemmas::check_simple_power(&s, k, a.n_max.unwrap_or(6), a.m.unwrap_or(6), guards)?;
            r.param("S", e);
            r
        }
        "perfect-extension" => {
            let (e, s) = need_s()?;
            let (_, mut r) =
                lemmas::build_perfect_extension(&s, need_p()?, a.k0.unwrap_or(1), guards)?;
            r.param("S", e);
            r
        }
        "stagewise-gap" => {
            let (e, s) = need_s()?;
            let stages = parse_stages(a.stages.as_deref().ok_or_else(|| missing(id, "--stages"))?)?;
            let mut r = lemmas::check_stagewise_gap(&s, need_p()?, &stages, guards)?;
            r.param("S", e);
            r
        }
        "perfect-product" => {
            let mut groups = Vec::new();
            let mut labels = Vec::new();
            for f in &a.factors {
                let (e, g) = group(f, guards)?;
                labels.push(e.to_string());
                groups.push(g);
            }
            let mut r = lemmas::check_perfect_product(&groups, a.n_max.unwrap_or(6), guards)?;
            r.param("factors", labels.join("; "));
            r
        }
        "henselian-classes" => {
            let n = need_n()?;
            let prec = a.prec.unwrap_or_else(default_precision);
            let reps = if a.reps.is_empty() {
                first_classes(n, 10)?
            } else {
                parse_reps(&a.reps)?
            };
            let samples = match &a.samples {
                Some(path) => read_samples(path, prec)?,
                None => {
                    if reps.is_empty() {
                        return Err(missing(id, "--reps"));
                    }
                    let seed = a.seed.unwrap_or(DEFAULT_SEED);
                    random_samples(n, &reps, a.random.unwrap_or(100), seed, prec)
                }
            };
            let mut r = lemmas::check_henselian_classes(n, &reps, &samples, prec)?;
            if a.samples.is_none() {
                r.param("seed", a.seed.unwrap_or(DEFAULT_SEED));
            }
            r
        }
        _ => unreachable!("clap restricts check ids"),
    };
    report.check_id = id.to_string();
    Ok(report_outcome(report))
}

pub fn hensel_root(series: &str, n: u64, prec: Option<usize>) -> Result<Outcome> {
    let prec = prec.unwrap_or_else(default_precision);
    let u = parse_series(series, prec)?;
    let root = hensel_nth_root(&u, n, prec)?;
    let verified = root.pow(n).agrees_with(&u);
    let json = json!({
        "series": u.to_string(),
        "n": n.to_string(),
        "precision": root.precision().to_string(),
        "root": root.to_string(),
        "coefficients": strs(root.coefficients()),
        "verified": verified,
    });
    let text = format!(
        "u         {u}\nn         {n}\nprecision {}\nroot      {root}\nroot^n = u on known terms: {verified}\n",
        root.precision()
    );
    Ok(Outcome {
        json,
        text,
        pass: verified,
    })
}

pub fn classes(n: u64, reps: &[String], samples: &Path, prec: Option<usize>) -> Result<Outcome> {
    let prec = prec.unwrap_or_else(default_precision);
    let reps = parse_reps(reps)?;
    let samples = read_samples(samples, prec)?;
    let report = verify_power_class_decomposition(n, &reps, &samples, prec)?;
    let text = render::class_report(&report);
    Ok(Outcome {
        json: serde_json::to_value(&report).expect("serializable"),
        pass: report.overall,
        text,
    })
}
