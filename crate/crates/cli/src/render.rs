use std::fmt::Write as _;

use gw_core::henselian::ClassReport;
use gw_core::lemmas::CheckReport;

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn check_report(r: &CheckReport) -> String {
    let mut out = format!(
        "check {}: {} ({} ms)\n",
        r.check_id,
        verdict(r.overall),
        r.elapsed_ms
    );
    for (k, v) in &r.parameters {
        writeln!(out, "  {k} = {v}").unwrap();
    }
    for a in &r.assertions {
        writeln!(
            out,
            "  [{}] {}: expected {}, actual {}",
            verdict(a.pass).to_lowercase(),
            a.description,
            a.expected,
            a.actual
        )
        .unwrap();
    }
    out
}

pub fn class_report(r: &ClassReport) -> String {
    let mut out = format!(
        "classes n = {}: {} (precision {}, {} ms)\n  representatives {}\n  {} candidates, {} pairs, pairwise inequivalent: {}\n",
        r.n,
        verdict(r.overall),
        r.precision,
        r.elapsed_ms,
        r.representatives.join(", "),
        r.candidates,
        r.pairs_checked,
        r.pairwise_inequivalent
    );
    for s in &r.samples {
        let rep = match &s.representative {
            Some(rep) => format!("(i = {}, b = {})", rep.i, rep.b),
            None => s.error.clone().unwrap_or_default(),
        };
        writeln!(
            out,
            "  [{}] {} -> {rep}; matches {}, certificate {}",
            verdict(s.pass).to_lowercase(),
            s.sample,
            s.matches,
            s.certificate_verified
        )
        .unwrap();
    }
    out
}
