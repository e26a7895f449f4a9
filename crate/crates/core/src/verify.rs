//! Named verification suites comparing closed forms against enumeration.
//!
//! Every [`Check`] expands into a list of [`CaseRecord`]s, each holding the
//! expected value, how it was obtained, and the value actually computed.
//! Cases run on a rayon pool; records come back in a fixed order.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::closedform::{
    elementary_symmetric, evaluate, power_sum_closed_in, power_sum_fq, power_sum_fq_intermediate_terms,
    power_sum_fq_negative, power_sum_fq_terms, sigma_closed_form, waring_power_sum, bcl_power_sum,
};
use crate::error::{Error, Result};
use crate::invariance::{
    is_translation_invariant, lift_invariant, twitt_parameters, verify_twitt_span, TwittModule,
};
use crate::oracle::{
    elementary_symmetric_bruteforce, invariant_polys_bruteforce, negative_power_sum_eval_with,
    power_sum_table, zeta_table,
};
use crate::poly::Poly;
use crate::ring::galois::{reduction_mod_p_spec, FieldEmbedding};
use crate::ring::{FiniteRing, RingElement, RingSpec};

/// One family of cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// Closed form over `GF(q)` equals enumeration.
    FieldClosedForm,
    /// The two-index form over `GF(q)` equals the closed form.
    IntermediateForm,
    /// Zeta values over `GF(q)`.
    FieldZeta,
    /// Zeta values over full matrix rings over fields.
    MatrixZeta,
    /// Closed form over `Z/p^m` equals enumeration.
    Cyclic,
    /// Closed forms over `F_2[x]/(x^2)` and `UT(2, F_2)`.
    CharTwoExceptional,
    /// `sum r^k` over `UT(2, F_2)` is `x` for odd `k >= 3`.
    UpperTriangularOddSums,
    /// Enumerated power sums vanish on non-cyclic non-fields.
    Vanishing,
    /// Closed form over products equals enumeration.
    Product,
    /// `sum A^k` over `M_2(Z/6)`.
    MatrixZ6,
    /// Generated module equals the invariant space.
    SpanEquality,
    /// Lifted invariants lie in the generated module.
    Lift,
    /// Elementary symmetric polynomials of `{T + r}` over `GF(q)`.
    SigmaTable,
    /// Negative power sums over `GF(q)` evaluated in `GF(q^2)`.
    NegativePowers,
    /// Waring's formula over the integers.
    Waring,
}

impl Check {
    pub const ALL: [Check; 15] = [
        Check::FieldClosedForm,
        Check::IntermediateForm,
        Check::FieldZeta,
        Check::MatrixZeta,
        Check::Cyclic,
        Check::CharTwoExceptional,
        Check::UpperTriangularOddSums,
        Check::Vanishing,
        Check::Product,
        Check::MatrixZ6,
        Check::SpanEquality,
        Check::Lift,
        Check::SigmaTable,
        Check::NegativePowers,
        Check::Waring,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::FieldClosedForm => "field-closed-form",
            Check::IntermediateForm => "intermediate-form",
            Check::FieldZeta => "field-zeta",
            Check::MatrixZeta => "matrix-zeta",
            Check::Cyclic => "cyclic",
            Check::CharTwoExceptional => "char2-exceptional",
            Check::UpperTriangularOddSums => "ut2-odd-sums",
            Check::Vanishing => "vanishing",
            Check::Product => "product",
            Check::MatrixZ6 => "mat2-z6",
            Check::SpanEquality => "span-equality",
            Check::Lift => "lift",
            Check::SigmaTable => "sigma-table",
            Check::NegativePowers => "negative-powers",
            Check::Waring => "waring",
        }
    }

    /// Default upper bound on `k`, if the check has one.
    pub fn default_kmax(self) -> Option<u64> {
        match self {
            Check::FieldClosedForm | Check::IntermediateForm | Check::FieldZeta => Some(60),
            Check::MatrixZeta => Some(36),
            Check::Cyclic | Check::CharTwoExceptional => Some(40),
            Check::UpperTriangularOddSums => Some(16),
            Check::Vanishing => Some(24),
            Check::Product => Some(30),
            Check::MatrixZ6 => Some(13),
            Check::NegativePowers => Some(6),
            Check::Waring => Some(8),
            Check::SpanEquality | Check::Lift | Check::SigmaTable => None,
        }
    }
}

pub const SUITES: [&str; 9] = [
    "t1", "tmain", "twitt", "bcl", "erratum", "fgor", "negk", "waring", "vanishing",
];

/// Checks run by a named suite.
pub fn suite_checks(name: &str) -> Result<Vec<Check>> {
    Ok(match name {
        "t1" => vec![
            Check::FieldClosedForm,
            Check::IntermediateForm,
            Check::FieldZeta,
            Check::SigmaTable,
        ],
        "tmain" => vec![Check::Cyclic, Check::CharTwoExceptional, Check::Product],
        "twitt" => vec![Check::SpanEquality, Check::Lift],
        "bcl" => vec![Check::MatrixZeta],
        "erratum" => vec![Check::UpperTriangularOddSums],
        "fgor" => vec![Check::MatrixZ6],
        "negk" => vec![Check::NegativePowers],
        "waring" => vec![Check::Waring],
        "vanishing" => vec![Check::Vanishing],
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    })
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    /// Overrides the upper bound on `k` for every check that has one.
    pub kmax: Option<u64>,
    /// Overrides the degree bound of the span-equality and lift checks.
    pub degree: Option<usize>,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl SuiteOptions {
    fn kmax(&self, check: Check) -> u64 {
        self.kmax.or(check.default_kmax()).unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseRecord {
    pub check: Check,
    pub ring: String,
    pub params: Value,
    pub expected: String,
    /// How `expected` was obtained.
    pub source: &'static str,
    pub actual: String,
    pub pass: bool,
}

impl CaseRecord {
    fn new(check: Check, ring: impl ToString, params: Value) -> Self {
        CaseRecord {
            check,
            ring: ring.to_string(),
            params,
            expected: String::new(),
            source: "",
            actual: String::new(),
            pass: false,
        }
    }

    fn compare<T: PartialEq + ToString>(mut self, source: &'static str, expected: &T, actual: &T) -> Self {
        self.source = source;
        self.expected = expected.to_string();
        self.actual = actual.to_string();
        self.pass = expected == actual;
        self
    }

    fn holds(mut self, source: &'static str, expected: &str, actual: String, pass: bool) -> Self {
        self.source = source;
        self.expected = expected.to_string();
        self.actual = actual;
        self.pass = pass;
        self
    }

    /// A case that could not be computed.
    fn failed(mut self, err: &Error) -> Self {
        self.source = "error";
        self.actual = err.to_string();
        self.pass = false;
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check.name(),
            "ring": self.ring,
            "params": self.params,
            "expected": self.expected,
            "source": self.source,
            "actual": self.actual,
            "pass": self.pass,
        })
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseRecord>,
    pub passed: usize,
    pub failed: usize,
    pub duration: Duration,
}

impl SuiteReport {
    fn new(suite: &str, cases: Vec<CaseRecord>, duration: Duration) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        SuiteReport {
            suite: suite.to_string(),
            failed: cases.len() - passed,
            passed,
            cases,
            duration,
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "cases": self.cases.iter().map(CaseRecord::to_json).collect::<Vec<_>>(),
            "passed": self.passed,
            "failed": self.failed,
            "duration_ms": self.duration.as_millis() as u64,
        })
    }
}

/// Runs a named suite.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let checks = suite_checks(name)?;
    let start = Instant::now();
    let cases = in_pool(opts, || -> Result<Vec<CaseRecord>> {
        let mut all = Vec::new();
        for &c in &checks {
            all.extend(cases_for(c, opts)?);
        }
        Ok(all)
    })?;
    Ok(SuiteReport::new(name, cases, start.elapsed()))
}

/// Runs a single check as its own report.
pub fn run_check(check: Check, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let cases = in_pool(opts, || cases_for(check, opts))?;
    Ok(SuiteReport::new(check.name(), cases, start.elapsed()))
}

fn in_pool<T: Send>(opts: &SuiteOptions, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match opts.jobs {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(f),
    }
}

fn cases_for(check: Check, opts: &SuiteOptions) -> Result<Vec<CaseRecord>> {
    let kmax = opts.kmax(check);
    match check {
        Check::FieldClosedForm => field_closed_form(kmax),
        Check::IntermediateForm => Ok(intermediate_form(kmax)),
        Check::FieldZeta => field_zeta(kmax),
        Check::MatrixZeta => matrix_zeta(kmax),
        Check::Cyclic => closed_vs_enumeration(check, &["Zmod(4)", "Zmod(8)", "Zmod(16)", "Zmod(32)", "Zmod(9)", "Zmod(27)", "Zmod(25)", "Zmod(49)"], kmax),
        Check::CharTwoExceptional => closed_vs_enumeration(check, &["Nil(GF(2),2)", "UT(2,GF(2))"], kmax),
        Check::UpperTriangularOddSums => ut2_odd_sums(kmax),
        Check::Vanishing => vanishing(kmax),
        Check::Product => closed_vs_enumeration(check, &["Zmod(6)", "Zmod(12)", "Zmod(30)", "Prod(GF(4),Zmod(9))"], kmax),
        Check::MatrixZ6 => matrix_z6(kmax),
        Check::SpanEquality => span_equality(opts.degree),
        Check::Lift => lift(opts.degree),
        Check::SigmaTable => sigma_table(),
        Check::NegativePowers => negative_powers(kmax),
        Check::Waring => Ok(waring(kmax)),
    }
}

const FIELD_ORDERS: [u64; 8] = [2, 3, 4, 5, 7, 8, 9, 16];

fn ring(s: &str) -> Result<Arc<FiniteRing>> {
    FiniteRing::parse(s)
}

fn field_closed_form(kmax: u64) -> Result<Vec<CaseRecord>> {
    let per_field: Vec<Vec<CaseRecord>> = FIELD_ORDERS
        .par_iter()
        .map(|&q| -> Result<Vec<CaseRecord>> {
            let f = FiniteRing::build(&RingSpec::Gf(q))?;
            let table = power_sum_table(&f, kmax)?;
            Ok((0..=kmax)
                .map(|k| {
                    let rec = CaseRecord::new(Check::FieldClosedForm, f.spec(), json!({"k": k}));
                    match power_sum_fq(q, k) {
                        Ok(r) => rec.compare("enumeration", &table[k as usize], &r.poly),
                        Err(e) => rec.failed(&e),
                    }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_field.concat())
}

fn terms_string(terms: &std::collections::BTreeMap<u64, u64>) -> String {
    let parts: Vec<String> = terms.iter().map(|(a, c)| format!("{c}*U^{a}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Both forms as `{exponent of T^q - T: coefficient}`.
fn intermediate_form(kmax: u64) -> Vec<CaseRecord> {
    FIELD_ORDERS
        .iter()
        .flat_map(|&q| (0..=kmax).map(move |k| (q, k)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(q, k)| {
            let rec = CaseRecord::new(Check::IntermediateForm, RingSpec::Gf(q), json!({"k": k}));
            match (power_sum_fq_terms(q, k), power_sum_fq_intermediate_terms(q, k)) {
                (Ok(a), Ok(b)) => {
                    let (ea, eb) = (terms_string(&a), terms_string(&b));
                    rec.compare("closed form", &ea, &eb)
                }
                (Err(e), _) | (_, Err(e)) => rec.failed(&e),
            }
        })
        .collect()
}

fn field_zeta(kmax: u64) -> Result<Vec<CaseRecord>> {
    let per_field: Vec<Vec<CaseRecord>> = FIELD_ORDERS
        .par_iter()
        .map(|&q| -> Result<Vec<CaseRecord>> {
            let f = FiniteRing::build(&RingSpec::Gf(q))?;
            let zetas = zeta_table(&f, kmax)?;
            let minus_one = f.neg(&f.one());
            Ok((0..=kmax)
                .map(|k| {
                    let expected = if k > 0 && k % (q - 1) == 0 { minus_one.clone() } else { f.zero() };
                    CaseRecord::new(Check::FieldZeta, f.spec(), json!({"k": k})).compare(
                        "-1 iff (q-1) | k > 0",
                        &expected,
                        &zetas[k as usize],
                    )
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_field.concat())
}

fn matrix_zeta(kmax: u64) -> Result<Vec<CaseRecord>> {
    let m22 = ring("Mat(2,GF(2))")?;
    let zetas = zeta_table(&m22, kmax)?;
    let mut out: Vec<CaseRecord> = (0..=kmax)
        .map(|k| {
            let rec = CaseRecord::new(Check::MatrixZeta, m22.spec(), json!({"k": k}));
            match bcl_power_sum(2, 2, k) {
                Ok(e) => rec.compare("Id iff 1 < k = 0, +-1 mod 6", &e, &zetas[k as usize]),
                Err(e) => rec.failed(&e),
            }
        })
        .collect();
    let others: Vec<Vec<CaseRecord>> = ["Mat(2,GF(3))", "Mat(2,GF(4))", "Mat(3,GF(2))"]
        .par_iter()
        .map(|s| -> Result<Vec<CaseRecord>> {
            let r = ring(s)?;
            let zetas = zeta_table(&r, kmax.min(20))?;
            Ok((1..=kmax.min(20))
                .map(|k| {
                    CaseRecord::new(Check::MatrixZeta, r.spec(), json!({"k": k}))
                        .compare("zero", &r.zero(), &zetas[k as usize])
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    out.extend(others.concat());
    Ok(out)
}

fn closed_vs_enumeration(check: Check, specs: &[&str], kmax: u64) -> Result<Vec<CaseRecord>> {
    let per_ring: Vec<Vec<CaseRecord>> = specs
        .par_iter()
        .map(|s| -> Result<Vec<CaseRecord>> {
            let r = ring(s)?;
            let table = power_sum_table(&r, kmax)?;
            Ok((0..=kmax)
                .map(|k| {
                    let rec = CaseRecord::new(check, r.spec(), json!({"k": k}));
                    let brute = &table[k as usize];
                    match power_sum_closed_in(&r, k) {
                        Ok(res) => {
                            let mut rec = rec.compare("enumeration", brute, &res.poly);
                            // even powers vanish on the char-2 exceptional rings
                            if check == Check::CharTwoExceptional && k % 2 == 0 {
                                rec.pass &= brute.is_zero();
                            }
                            rec
                        }
                        Err(e) => rec.failed(&e),
                    }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_ring.concat())
}

fn ut2_odd_sums(kmax: u64) -> Result<Vec<CaseRecord>> {
    let ut = ring("UT(2,GF(2))")?;
    let f2 = ring("GF(2)")?;
    let x = RingElement::Matrix(vec![f2.zero(), f2.one(), f2.zero(), f2.zero()]);
    let zetas = zeta_table(&ut, kmax)?;
    Ok((0..=kmax)
        .map(|k| {
            let expected = if k >= 3 && k % 2 == 1 { x.clone() } else { ut.zero() };
            CaseRecord::new(Check::UpperTriangularOddSums, ut.spec(), json!({"k": k})).compare(
                "x for odd k >= 3, else 0",
                &expected,
                &zetas[k as usize],
            )
        })
        .collect())
}

fn vanishing(kmax: u64) -> Result<Vec<CaseRecord>> {
    let specs = [
        "UT(2,GF(3))",
        "Nil(GF(3),2)",
        "Nil(GF(2),3)",
        "Nil(GF(4),2)",
        "GR(2,2,2)",
        "Mat(2,Zmod(4))",
    ];
    let per_ring: Vec<Vec<CaseRecord>> = specs
        .par_iter()
        .map(|s| -> Result<Vec<CaseRecord>> {
            let r = ring(s)?;
            let table = power_sum_table(&r, kmax)?;
            let zero = Poly::zero(&r);
            Ok((1..=kmax)
                .map(|k| {
                    CaseRecord::new(Check::Vanishing, r.spec(), json!({"k": k}))
                        .compare("zero", &zero, &table[k as usize])
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_ring.concat())
}

fn matrix_z6(kmax: u64) -> Result<Vec<CaseRecord>> {
    let r = ring("Mat(2,Zmod(6))")?;
    let z6 = ring("Zmod(6)")?;
    let e = z6.from_int(3);
    let three_id = r.from_int(3);
    let zetas = zeta_table(&r, kmax)?;
    let mut out: Vec<CaseRecord> = (1..=kmax)
        .map(|k| {
            let expected = if k > 1 && matches!(k % 6, 0 | 1 | 5) { three_id.clone() } else { r.zero() };
            CaseRecord::new(Check::MatrixZ6, r.spec(), json!({"k": k})).compare(
                "3 Id iff 1 < k = 0, +-1 mod 6",
                &expected,
                &zetas[k as usize],
            )
        })
        .collect();
    let two_e = z6.add(&e, &e);
    let e2 = z6.mul(&e, &e);
    out.push(
        CaseRecord::new(Check::MatrixZ6, z6.spec(), json!({"e": 3})).holds(
            "2e = 0 and e^2 = e",
            "true",
            format!("2e = {two_e}, e^2 = {e2}"),
            z6.is_zero(&two_e) && e2 == e,
        ),
    );
    Ok(out)
}

/// Rings and default degree bounds for the span-equality check.
const SPAN_CATALOG: [(&str, usize); 11] = [
    ("GF(2)", 8),
    ("GF(4)", 8),
    ("GF(8)", 16),
    ("GF(9)", 18),
    ("Zmod(4)", 8),
    ("Zmod(8)", 16),
    ("Zmod(9)", 18),
    ("GR(2,2,2)", 8),
    ("Nil(GF(2),2)", 8),
    ("Nil(GF(3),2)", 9),
    ("Nil(GF(3),3)", 9),
];

fn span_equality(degree: Option<usize>) -> Result<Vec<CaseRecord>> {
    let reports: Vec<_> = SPAN_CATALOG
        .par_iter()
        .map(|&(s, d)| {
            let d = degree.unwrap_or(d);
            let r = ring(s)?;
            Ok((r.spec().clone(), d, verify_twitt_span(&r, d)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    let mut signatures = Vec::new();
    for (spec, d, rep) in reports {
        let rec = CaseRecord::new(Check::SpanEquality, &spec, json!({"D": d}));
        match rep {
            Ok(rep) => {
                out.push(rec.holds(
                    "invariant space",
                    &format!("{} invariant polynomials", rep.invariant_count),
                    format!(
                        "span {} ({}), forward {}, backward {}",
                        rep.span_count,
                        rep.method.name(),
                        rep.forward,
                        rep.backward
                    ),
                    rep.passed(),
                ));
                if matches!(&spec, RingSpec::Nil(inner, _) if **inner == RingSpec::Gf(3)) {
                    signatures.push((spec, rep.signature()));
                }
            }
            Err(e) => out.push(rec.failed(&e)),
        }
    }
    // the generator family must not depend on the nilpotence class
    if let [(a, sa), (b, sb)] = &signatures[..] {
        out.push(
            CaseRecord::new(Check::SpanEquality, format!("{a} vs {b}"), json!({})).holds(
                "identical generator families",
                &format!("{} generators", sa.len()),
                format!("{} vs {} generators, equal {}", sa.len(), sb.len(), sa == sb),
                sa == sb,
            ),
        );
    }
    Ok(out)
}

/// Lifts every invariant of degree `<= D / p^i` over `R/pR` and checks it is
/// invariant and generated.
fn lift(degree: Option<usize>) -> Result<Vec<CaseRecord>> {
    let catalog = [("Zmod(4)", 8usize), ("Zmod(8)", 16), ("GR(2,2,2)", 8)];
    let mut jobs = Vec::new();
    for (s, d) in catalog {
        let d = degree.unwrap_or(d);
        let r = ring(s)?;
        let (p, m, _, _) = twitt_parameters(r.spec())?;
        for i in 0..m {
            jobs.push((r.clone(), d, p, i));
        }
    }
    jobs.par_iter()
        .map(|(r, d, p, i)| -> Result<CaseRecord> {
            let rec = CaseRecord::new(Check::Lift, r.spec(), json!({"D": d, "i": i}));
            let module = TwittModule::new(r, *d)?;
            let reduced = FiniteRing::build(&reduction_mod_p_spec(r.spec()).expect("Galois-type ring"))?;
            let inputs = invariant_polys_bruteforce(&reduced, d / p.pow(*i) as usize)?;
            let mut bad = 0usize;
            for a1 in &inputs.polys {
                let f = lift_invariant(r, a1, *i)?;
                if !(is_translation_invariant(r, &f)? && module.contains(&f)) {
                    bad += 1;
                }
            }
            Ok(rec.holds(
                "invariant and generated",
                &format!("{} lifts pass", inputs.polys.len()),
                format!("{} of {} lifts pass", inputs.polys.len() - bad, inputs.polys.len()),
                bad == 0,
            ))
        })
        .collect()
}

fn sigma_table() -> Result<Vec<CaseRecord>> {
    let per_field: Vec<Vec<CaseRecord>> = [2u64, 3, 4, 5, 7, 8]
        .par_iter()
        .map(|&q| -> Result<Vec<CaseRecord>> {
            let f = FiniteRing::build(&RingSpec::Gf(q))?;
            let sigmas = elementary_symmetric_bruteforce(&f)?;
            (1..=q)
                .map(|k| {
                    let rec = CaseRecord::new(Check::SigmaTable, f.spec(), json!({"k": k}));
                    let expected = sigma_closed_form(q, k as i64)?
                        .to_poly(&f, q)
                        .expect("positive index has a polynomial value");
                    let actual = &sigmas[k as usize];
                    let invariant = is_translation_invariant(&f, actual)?;
                    let mut rec = rec.compare("closed table", &expected, actual);
                    rec.pass &= invariant;
                    Ok(rec)
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_field.concat())
}

fn negative_powers(kmax: u64) -> Result<Vec<CaseRecord>> {
    let per_field: Vec<Vec<CaseRecord>> = [2u64, 3, 4]
        .par_iter()
        .map(|&q| -> Result<Vec<CaseRecord>> {
            let emb = FieldEmbedding::new(q, 2)?;
            let ext = emb.ext();
            let points: Vec<RingElement> = ext.elements()?.filter(|t| !emb.in_base(t)).collect();
            (1..=kmax)
                .map(|k| {
                    let rec = CaseRecord::new(
                        Check::NegativePowers,
                        RingSpec::Gf(q),
                        json!({"k": k, "s": 2, "points": points.len()}),
                    );
                    let closed = power_sum_fq_negative(q, k)?;
                    let mut bad = Vec::new();
                    for t in &points {
                        let direct = negative_power_sum_eval_with(&emb, k, t)?;
                        if closed.eval(ext, t)? != direct {
                            bad.push(t.to_string());
                        }
                    }
                    Ok(rec.holds(
                        "direct evaluation in GF(q^2)",
                        "all points agree",
                        if bad.is_empty() {
                            "all points agree".into()
                        } else {
                            format!("disagree at {}", bad.join(", "))
                        },
                        bad.is_empty(),
                    ))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_field.concat())
}

/// Seed for the integer tuples of the Waring check.
pub const WARING_SEED: u64 = 0x5eed;
pub const WARING_TUPLES: usize = 100;

fn waring(kmax: u64) -> Vec<CaseRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(WARING_SEED);
    let mut out = Vec::new();
    for n in 1..=4usize {
        let tuples: Vec<Vec<BigInt>> = (0..WARING_TUPLES)
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect())
            .collect();
        for k in 1..=kmax {
            let rec = CaseRecord::new(Check::Waring, "Z", json!({"n": n, "k": k, "tuples": WARING_TUPLES}));
            let terms = match waring_power_sum(k, n) {
                Ok(t) => t,
                Err(e) => {
                    out.push(rec.failed(&e));
                    continue;
                }
            };
            let bad = tuples
                .iter()
                .filter(|xs| {
                    let direct: BigInt = xs.iter().map(|x| x.pow(k as u32)).sum();
                    evaluate(&terms, &elementary_symmetric(xs)) != direct
                })
                .count();
            out.push(rec.holds(
                "sum of k-th powers",
                &format!("{WARING_TUPLES} tuples agree"),
                format!("{} tuples agree", WARING_TUPLES - bad),
                bad == 0,
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteOptions {
        SuiteOptions {
            kmax: Some(6),
            degree: Some(4),
            jobs: Some(2),
        }
    }

    #[test]
    fn every_suite_runs_and_passes_small() {
        for s in SUITES {
            let r = run_suite(s, &small()).unwrap();
            assert!(!r.cases.is_empty(), "{s}");
            let bad: Vec<_> = r.cases.iter().filter(|c| !c.pass).collect();
            assert!(bad.is_empty(), "{s}: {bad:?}");
            assert_eq!(r.passed + r.failed, r.cases.len());
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", &SuiteOptions::default()).is_err());
    }

    #[test]
    fn order_is_stable_across_pool_sizes() {
        let mut one = small();
        one.jobs = Some(1);
        let a = run_suite("tmain", &one).unwrap();
        let b = run_suite("tmain", &small()).unwrap();
        assert_eq!(a.cases, b.cases);
    }

    #[test]
    fn a_wrong_expectation_fails() {
        let f = FiniteRing::parse("GF(2)").unwrap();
        let rec = CaseRecord::new(Check::FieldZeta, f.spec(), json!({}))
            .compare("zero", &f.zero(), &f.one());
        assert!(!rec.pass);
        let report = SuiteReport::new("x", vec![rec], Duration::ZERO);
        assert_eq!((report.passed, report.failed, report.ok()), (0, 1, false));
        assert_eq!(report.to_json()["cases"][0]["pass"], json!(false));
    }

    #[test]
    fn waring_tuples_are_reproducible() {
        assert_eq!(waring(3), waring(3));
    }
}
