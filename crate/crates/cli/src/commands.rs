//! Subcommand implementations. Each returns a rendered report and whether
//! it found a mismatch.

use std::sync::Arc;

use serde_json::{json, Value};

use ringsums::closedform::power_sum_closed_in;
use ringsums::invariance::{default_degree_bound, twitt_generators, twitt_parameters, verify_twitt_span};
use ringsums::oracle::{invariant_polys_bruteforce, power_sum_bruteforce, zeta_bruteforce};
use ringsums::verify::{run_suite, SuiteOptions};
use ringsums::{Error, FiniteRing, Result, RingSpec};

use crate::table::{fields, Table};

pub struct Report {
    pub json: Value,
    pub table: String,
    /// False when computed values disagree or a verification failed.
    pub ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Closed,
    Brute,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum What {
    Generators,
    Bruteforce,
    Verify,
}

fn enumerable(spec: &RingSpec, cap: u128) -> Result<Arc<FiniteRing>> {
    FiniteRing::build_with_cap(spec, cap)
}

pub fn powersum(ring: &str, k: u64, mode: Mode, cap: u128) -> Result<Report> {
    let spec = RingSpec::parse(ring)?;
    let closed = match mode {
        Mode::Closed | Mode::Both => Some(power_sum_closed_in(&FiniteRing::build_uncapped(&spec)?, k)?),
        Mode::Brute => None,
    };
    let brute = match mode {
        Mode::Brute | Mode::Both => Some(power_sum_bruteforce(&enumerable(&spec, cap)?, k)?),
        Mode::Closed => None,
    };
    let mut json = json!({"ring": spec.to_string(), "k": k});
    let mut rows: Vec<(&str, String)> = vec![("ring", spec.to_string()), ("k", k.to_string())];
    if let Some(c) = &closed {
        json["closed"] = c.to_json();
        rows.push(("case", c.case.name().into()));
        rows.push(("closed", c.poly.to_string()));
    }
    if let Some(b) = &brute {
        json["brute"] = b.to_json();
        rows.push(("brute", b.to_string()));
    }
    let ok = match (&closed, &brute) {
        (Some(c), Some(b)) => {
            let equal = &c.poly == b;
            json["equal"] = json!(equal);
            rows.push(("verdict", if equal { "equal" } else { "MISMATCH" }.into()));
            equal
        }
        _ => true,
    };
    Ok(Report {
        json,
        table: fields(rows),
        ok,
    })
}

pub fn zeta(ring: &str, k: u64, cap: u128) -> Result<Report> {
    let spec = RingSpec::parse(ring)?;
    let r = enumerable(&spec, cap)?;
    let value = zeta_bruteforce(&r, k)?;
    let closed = match power_sum_closed_in(&r, k) {
        Ok(res) => Some(res.poly.coeff(0)),
        Err(Error::NoClosedForm(_)) => None,
        Err(e) => return Err(e),
    };
    let ok = closed.as_ref().is_none_or(|c| *c == value);
    let mut rows = vec![
        ("ring", spec.to_string()),
        ("k", k.to_string()),
        ("zeta", value.to_string()),
    ];
    if let Some(c) = &closed {
        rows.push(("closed", c.to_string()));
        rows.push(("verdict", if ok { "equal" } else { "MISMATCH" }.into()));
    }
    Ok(Report {
        json: json!({
            "ring": spec.to_string(),
            "k": k,
            "zeta": value.to_json(),
            "closed": closed.as_ref().map(|c| c.to_json()),
        }),
        table: fields(rows),
        ok,
    })
}

pub fn invariants(ring: &str, degree: Option<usize>, what: What, cap: u128) -> Result<Report> {
    let spec = RingSpec::parse(ring)?;
    let r = enumerable(&spec, cap)?;
    let d = match degree {
        Some(d) => d,
        None => default_degree_bound(&spec)?,
    };
    match what {
        What::Generators => {
            let gens = twitt_generators(&r, d)?;
            let (p, _, e, _) = twitt_parameters(&spec)?;
            let q = p.pow(e);
            let mut t = Table::new(["i", "n", "exponent", "degree", "coefficients", "generator"]);
            for g in &gens {
                t.row([
                    g.i.to_string(),
                    g.n.to_string(),
                    g.exponent.to_string(),
                    g.degree().to_string(),
                    g.pattern.describe(),
                    format!("C*(T^{q} - T)^{}", g.exponent),
                ]);
            }
            Ok(Report {
                json: json!({
                    "ring": spec.to_string(),
                    "D": d,
                    "generators": gens.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
                }),
                table: format!("{}\n{}", fields([("ring", spec.to_string()), ("D", d.to_string())]), t.render()),
                ok: true,
            })
        }
        What::Bruteforce => {
            let rep = invariant_polys_bruteforce(&r, d)?;
            let mut t = Table::new([match rep.method.name() {
                "exhaustive" => "invariant polynomial",
                _ => "generator",
            }]);
            for p in &rep.polys {
                t.row([p.to_string()]);
            }
            let head = fields([
                ("ring", spec.to_string()),
                ("D", d.to_string()),
                ("method", rep.method.name().to_string()),
                ("count", rep.count.to_string()),
            ]);
            Ok(Report {
                json: rep.to_json(),
                table: format!("{head}\n{}", t.render()),
                ok: true,
            })
        }
        What::Verify => {
            let rep = verify_twitt_span(&r, d)?;
            let table = fields([
                ("ring", spec.to_string()),
                ("D", d.to_string()),
                ("method", rep.method.name().to_string()),
                ("invariant_count", rep.invariant_count.to_string()),
                ("span_count", rep.span_count.to_string()),
                ("forward", rep.forward.to_string()),
                ("backward", rep.backward.to_string()),
                ("verdict", if rep.passed() { "pass" } else { "FAIL" }.to_string()),
            ]);
            Ok(Report {
                json: rep.to_json(),
                table,
                ok: rep.passed(),
            })
        }
    }
}

pub fn verify(suite: &str, opts: &SuiteOptions) -> Result<Report> {
    let rep = run_suite(suite, opts)?;
    let mut t = Table::new(["check", "ring", "params", "expected", "actual", "result"]);
    for c in &rep.cases {
        t.row([
            c.check.name().to_string(),
            c.ring.clone(),
            c.params.to_string(),
            c.expected.clone(),
            c.actual.clone(),
            if c.pass { "pass" } else { "FAIL" }.to_string(),
        ]);
    }
    let summary = format!(
        "suite {}: {} passed, {} failed, {} ms\n",
        rep.suite,
        rep.passed,
        rep.failed,
        rep.duration.as_millis()
    );
    Ok(Report {
        json: rep.to_json(),
        table: format!("{}\n{summary}", t.render()),
        ok: rep.ok(),
    })
}
