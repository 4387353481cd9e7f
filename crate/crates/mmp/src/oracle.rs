//! Brute-force ground truth by exhaustive enumeration over `S_n`, and the
//! theorem-by-theorem verification suites.
//!
//! The enumeration oracles here use only the raw definitions from `perm`
//! and `pattern`; they never call the closed forms they certify.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;
use thiserror::Error;

use crate::biject::{
    border_from_mmp, border_to_mmp, main2_forward, main2_inverse, rstir_forward, rstir_inverse,
    thm_main_delete_map, CaseTag,
};
use crate::pattern::{border_p_count, mmp_count, mmp_count_primed, mmp_matches, PatternError};
use crate::perm::{enumerate_sn, PermError, Permutation};
use crate::poly::{
    almost_match_closed_form, arrow_table, c_nkj_via_harmonic, c_nkj_via_neg_stirling, coefficient,
    p3_closed_form, p_poly, r_poly, IntPolynomial,
};
use crate::stirling::{
    factorial, harmonic_nested, position_recurrence, r_stirling, r_stirling_cross_recurrence,
    r_stirling_via_classical, r_stirling_via_harmonic, r_stirling_via_neg_stirling,
    stirling1_unsigned,
};

/// Largest n for which exhaustive S_n sweeps are allowed (9! = 362880).
pub const ENUM_BOUND: usize = 9;

/// Bound for pure-arithmetic identity checks (polynomial time in n).
pub const ARITH_BOUND: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {n} exceeds the exhaustive enumeration bound {bound}")]
    AboveBound { n: usize, bound: usize },
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

fn require_bound(n: usize) -> Result<(), OracleError> {
    if n > ENUM_BOUND {
        Err(OracleError::AboveBound {
            n,
            bound: ENUM_BOUND,
        })
    } else {
        Ok(())
    }
}

/// Histogram of `mmp^{k'}` (or `mmp^k` when `primed` is false) over all of
/// `S_n`, as a polynomial in x.
pub fn distribution_histogram(
    n: usize,
    k: usize,
    primed: bool,
) -> Result<IntPolynomial, OracleError> {
    require_bound(n)?;
    let mut counts = vec![BigInt::zero(); n + 2];
    for sigma in enumerate_sn(n)? {
        let stat = if primed {
            mmp_count_primed(&sigma, k)?
        } else {
            mmp_count(&sigma, k)?
        };
        counts[stat] += 1;
    }
    Ok(IntPolynomial::new(counts))
}

/// `m[i][j] = |{sigma : mmp^{k'}(sigma) = i and mmp^{(k+1)'}(sigma) = j}|`.
pub fn joint_m_counts(n: usize, k: usize) -> Result<Vec<Vec<BigInt>>, OracleError> {
    require_bound(n)?;
    let mut m = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for sigma in enumerate_sn(n)? {
        let i = mmp_count_primed(&sigma, k)?;
        let j = mmp_count_primed(&sigma, k + 1)?;
        m[i][j] += 1;
    }
    Ok(m)
}

/// `[n m]_r` counted directly: permutations with exactly `m` left-to-right
/// maxima, the top `r` values among them.
pub fn r_stirling_brute(n: usize, m: usize, r: usize) -> Result<BigInt, OracleError> {
    require_bound(n)?;
    let mut total = BigInt::zero();
    for sigma in enumerate_sn(n)? {
        let maxima = sigma.left_to_right_maxima();
        if maxima.len() != m {
            continue;
        }
        let top_ok = (n - r + 1..=n).all(|v| maxima.contains(&sigma.position_of(v)));
        if top_ok {
            total += 1;
        }
    }
    Ok(total)
}

/// `histogram[k]` = number of permutations in `S_n` with exactly `k`
/// occurrences of the border pattern.
pub fn border_count_histogram(n: usize) -> Result<Vec<BigInt>, OracleError> {
    require_bound(n)?;
    let mut counts = vec![BigInt::zero(); n.max(1)];
    for sigma in enumerate_sn(n)? {
        counts[border_p_count(&sigma)] += 1;
    }
    Ok(counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Distributions,
    K2,
    Rstir,
    KRans,
    Main2,
    FixedN,
    Sumform,
    Lincomb,
    Harmonic,
    Border,
    RoundTrips,
    Lemmas,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Distributions,
        Suite::K2,
        Suite::Rstir,
        Suite::KRans,
        Suite::Main2,
        Suite::FixedN,
        Suite::Sumform,
        Suite::Lincomb,
        Suite::Harmonic,
        Suite::Border,
        Suite::RoundTrips,
        Suite::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Distributions => "distributions",
            Suite::K2 => "k2",
            Suite::Rstir => "rstir",
            Suite::KRans => "krans",
            Suite::Main2 => "main2",
            Suite::FixedN => "fixed-n",
            Suite::Sumform => "sumform",
            Suite::Lincomb => "lincomb",
            Suite::Harmonic => "harmonic",
            Suite::Border => "border",
            Suite::RoundTrips => "round-trips",
            Suite::Lemmas => "lemmas",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite: {s}"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Exhaustive bound for S_n sweeps (clamped to ENUM_BOUND).
    pub max_n: usize,
    pub suites: Vec<Suite>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 7,
            suites: Suite::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub id: String,
    pub params: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub suites: Vec<String>,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
}

impl VerificationReport {
    /// Deterministic JSON: records sorted by id, every number a decimal
    /// string.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "suites": self.suites,
            "pass": self.pass,
            "checks": self.records.len().to_string(),
            "failures": self.records.iter().filter(|r| !r.pass).count().to_string(),
            "records": self.records.iter().map(|r| json!({
                "id": r.id,
                "params": r.params,
                "expected": r.expected,
                "actual": r.actual,
                "pass": r.pass,
                "elapsed_ms": r.elapsed_ms.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            let status = if r.pass { "pass" } else { "FAIL" };
            writeln!(f, "[{status}] {} ({})", r.id, r.params)?;
            if !r.pass {
                writeln!(f, "       expected: {}", r.expected)?;
                writeln!(f, "       actual:   {}", r.actual)?;
            }
        }
        let failures = self.records.iter().filter(|r| !r.pass).count();
        write!(
            f,
            "{}: {} checks, {} failures",
            if self.pass { "PASS" } else { "FAIL" },
            self.records.len(),
            failures
        )
    }
}

struct Recorder {
    records: Vec<CheckRecord>,
}

impl Recorder {
    fn new() -> Self {
        Recorder {
            records: Vec::new(),
        }
    }

    /// Runs one check; `f` returns (expected, actual) renderings which are
    /// compared for string equality.
    fn check<F>(&mut self, id: impl Into<String>, params: impl Into<String>, f: F)
    where
        F: FnOnce() -> (String, String),
    {
        let start = Instant::now();
        let (expected, actual) = f();
        let elapsed_ms = start.elapsed().as_millis();
        let pass = expected == actual;
        self.records.push(CheckRecord {
            id: id.into(),
            params: params.into(),
            expected,
            actual,
            pass,
            elapsed_ms,
        });
    }
}

fn fmt_err<T: fmt::Display, E: fmt::Display>(r: Result<T, E>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn suite_distributions(rec: &mut Recorder, nmax: usize) {
    for n in 1..=nmax {
        for k in 2..=n + 1 {
            rec.check("dist/primed", format!("n={n} k={k}"), || {
                (
                    fmt_err(p_poly(n, k)),
                    fmt_err(distribution_histogram(n, k, true)),
                )
            });
            rec.check("dist/unprimed", format!("n={n} k={k}"), || {
                (
                    fmt_err(r_poly(n, k)),
                    fmt_err(distribution_histogram(n, k, false)),
                )
            });
        }
    }
}

fn suite_k2(rec: &mut Recorder, nmax: usize) {
    for n in 1..=nmax {
        rec.check("k2/coeffs", format!("n={n}"), || {
            // C_{n,2,s} = c(n, s+1): cannot-match (s=0) is (n-1)! = c(n,1),
            // almost-match is c(n,2), x^s in R_n^2 is c(n,s+2) for s >= 1
            let expected: Vec<String> = (0..n).map(|s| stirling1_unsigned(n, s + 1).to_string()).collect();
            let actual = match distribution_histogram(n, 2, true) {
                Ok(hist) => (0..n).map(|s| hist.coeff(s).to_string()).collect(),
                Err(e) => vec![format!("error: {e}")],
            };
            (expected.join(","), actual.join(","))
        });
    }
}

fn suite_rstir(rec: &mut Recorder, nmax: usize) {
    for n in 2..=nmax {
        for k in 2..=4.min(n) {
            rec.check("rstir/coeff", format!("n={n} k={k}"), || {
                let expected: Vec<String> = (0..=n - k + 1)
                    .map(|j| {
                        fmt_err(
                            r_stirling_brute(n, j + k - 1, k - 1)
                                .map(|v| v * factorial(k - 1)),
                        )
                    })
                    .collect();
                let actual = match distribution_histogram(n, k, true) {
                    Ok(hist) => (0..=n - k + 1).map(|j| hist.coeff(j).to_string()).collect(),
                    Err(e) => vec![format!("error: {e}")],
                };
                (expected.join(","), actual.join(","))
            });
            rec.check("rstir/partition", format!("n={n} k={k}"), || {
                let mut seen: HashSet<Permutation> = HashSet::new();
                let mut duplicates = 0usize;
                for sigma in enumerate_sn(n).expect("within bound") {
                    let fiber = match rstir_forward(&sigma, k) {
                        Ok(f) => f,
                        Err(_) => continue, // not in the source domain
                    };
                    for image in fiber.images {
                        if !seen.insert(image) {
                            duplicates += 1;
                        }
                    }
                }
                let total: BigInt = factorial(n);
                (
                    format!("covered={total} duplicates=0"),
                    format!("covered={} duplicates={duplicates}", seen.len()),
                )
            });
            rec.check("rstir/roundtrip", format!("n={n} k={k}"), || {
                let mut failures = 0usize;
                for phi in enumerate_sn(n).expect("within bound") {
                    match rstir_inverse(&phi, k) {
                        Ok(sigma) => {
                            let fiber = rstir_forward(&sigma, k);
                            if !matches!(&fiber, Ok(f) if f.images.contains(&phi)) {
                                failures += 1;
                            }
                        }
                        Err(_) => failures += 1,
                    }
                }
                ("failures=0".to_string(), format!("failures={failures}"))
            });
        }
    }
    rec.check("rstir/example-fwd", "13625748 k=4", || {
        let sigma = Permutation::parse("13625748").expect("valid");
        let phi = Permutation::parse("13548762").expect("valid");
        let actual = match rstir_forward(&sigma, 4) {
            Ok(f) => format!(
                "case2={} contains=true",
                f.case_tag == CaseTag::Case2 && f.images.contains(&phi)
            ),
            Err(e) => format!("error: {e}"),
        };
        ("case2=true contains=true".to_string(), actual)
    });
    rec.check("rstir/example-fwd2", "13647582 k=4", || {
        let sigma = Permutation::parse("13647582").expect("valid");
        let phi = Permutation::parse("13458267").expect("valid");
        let actual = match rstir_forward(&sigma, 4) {
            Ok(f) => format!("contains={}", f.images.contains(&phi)),
            Err(e) => format!("error: {e}"),
        };
        ("contains=true".to_string(), actual)
    });
    rec.check("rstir/example-inv", "13548762 k=4", || {
        (
            "13625748".to_string(),
            fmt_err(rstir_inverse(
                &Permutation::parse("13548762").expect("valid"),
                4,
            )),
        )
    });
    // The unique round-tripping source for 1324756 is 1253647; the
    // printed source 1452637 is Case 1 and its fiber permutes 4,5,6 in
    // place, so it cannot reach 1324756.
    rec.check("rstir/example-inv2", "1324756 k=4", || {
        let phi = Permutation::parse("1324756").expect("valid");
        let actual = match rstir_inverse(&phi, 4) {
            Ok(sigma) => {
                let round = matches!(rstir_forward(&sigma, 4), Ok(f) if f.images.contains(&phi));
                format!("{sigma} roundtrip={round}")
            }
            Err(e) => format!("error: {e}"),
        };
        ("1253647 roundtrip=true".to_string(), actual)
    });
}

fn suite_krans(rec: &mut Recorder, _nmax: usize) {
    for n in 2..=12usize {
        rec.check("krans/routes", format!("n={n}"), || {
            let mut mismatches = Vec::new();
            for k in 2..=n {
                for j in 0..=n - k + 1 {
                    let direct = r_stirling(n, j + k - 1, k - 1);
                    let route = r_stirling_via_classical(n, j + k - 1, k - 1);
                    if direct != route {
                        mismatches.push(format!("k={k} j={j}"));
                    }
                }
            }
            ("mismatches=".to_string(), format!("mismatches={}", mismatches.join(";")))
        });
    }
    rec.check("krans/example", "n=7 m=5 r=3", || {
        // 119 = 6*1*9 + 3*6*3 + 1*11*1
        ("119".to_string(), fmt_err(r_stirling_via_classical(7, 5, 3)))
    });
}

fn suite_main2(rec: &mut Recorder, nmax: usize) {
    for n in 1..=nmax {
        for k in 2..=n.min(5) {
            rec.check("main2/step", format!("n={n} k={k}"), || {
                let m = match joint_m_counts(n, k) {
                    Ok(m) => m,
                    Err(e) => return ("ok".to_string(), format!("error: {e}")),
                };
                let mut bad = Vec::new();
                for j in 1..=n {
                    // (k-1) m[j][j-1] = m[j-1][j-1]
                    if BigInt::from(k - 1) * &m[j][j - 1] != m[j - 1][j - 1] {
                        bad.push(format!("step j={j}"));
                    }
                    // C_{n,k+1,j-1} = k m[j][j-1]
                    let c = coefficient(n, k + 1, j - 1).expect("valid k");
                    if BigInt::from(k) * &m[j][j - 1] != c {
                        bad.push(format!("coeff j={j}"));
                    }
                }
                ("bad=".to_string(), format!("bad={}", bad.join(";")))
            });
            if k <= n {
                rec.check("main2/arrows", format!("n={n} k={k}"), || {
                    let m = match joint_m_counts(n, k) {
                        Ok(m) => m,
                        Err(e) => return ("ok".to_string(), format!("error: {e}")),
                    };
                    let table = arrow_table(n).expect("n >= 1");
                    let arrow = &table.arrows[k - 2];
                    let mut bad = Vec::new();
                    for j in 0..arrow.vertical.len() {
                        if arrow.vertical[j] != m[j][j] {
                            bad.push(format!("vertical j={j}"));
                        }
                        if j >= 1 && arrow.diagonal[j] != m[j][j - 1] {
                            bad.push(format!("diagonal j={j}"));
                        }
                    }
                    ("bad=".to_string(), format!("bad={}", bad.join(";")))
                });
            }
        }
    }
    rec.check("main2/table-n5", "n=5 k=2", || {
        let m = joint_m_counts(5, 2).expect("within bound");
        (
            "m[3][2]=9 m[4][3]=1".to_string(),
            format!("m[3][2]={} m[4][3]={}", m[3][2], m[4][3]),
        )
    });
}

fn suite_fixed_n(rec: &mut Recorder, _nmax: usize) {
    for n in 2..=ARITH_BOUND {
        rec.check("fixed-n/recurrence", format!("n={n}"), || {
            let mut bad = Vec::new();
            for k in 2..=n {
                for j in 0..=n - k {
                    // C_{n,k+1,j} = sum_{i=j+1}^{n-k+1} k (1-k)^{i-j-1} C_{n,k,i}
                    let mut total = BigInt::zero();
                    let mut power = BigInt::one();
                    for i in (j + 1)..=(n - k + 1) {
                        total += BigInt::from(k) * &power * coefficient(n, k, i).expect("valid");
                        power *= BigInt::from(1i64 - k as i64);
                    }
                    if total != coefficient(n, k + 1, j).expect("valid") {
                        bad.push(format!("k={k} j={j}"));
                    }
                }
            }
            ("bad=".to_string(), format!("bad={}", bad.join(";")))
        });
    }
}

fn suite_sumform(rec: &mut Recorder, _nmax: usize) {
    for n in 2..=ARITH_BOUND {
        rec.check("sumform/cross", format!("n={n}"), || {
            let mut bad = Vec::new();
            for k in 2..=n {
                for j in 0..=n - k {
                    let route = r_stirling_cross_recurrence(n, j, k);
                    let direct = r_stirling(n, j + k, k);
                    if route != direct {
                        bad.push(format!("k={k} j={j}"));
                    }
                }
            }
            ("bad=".to_string(), format!("bad={}", bad.join(";")))
        });
    }
}

fn suite_lincomb(rec: &mut Recorder, _nmax: usize) {
    for n in 2..=ARITH_BOUND {
        rec.check("lincomb/p3", format!("n={n}"), || {
            (fmt_err(p_poly(n, 3)), fmt_err(p3_closed_form(n)))
        });
        rec.check("lincomb/almost-match", format!("n={n}"), || {
            let mut bad = Vec::new();
            for k in 3..=10.min(n + 1) {
                if n < k - 1 {
                    continue;
                }
                if almost_match_closed_form(n, k).ok() != coefficient(n, k, 1).ok() {
                    bad.push(format!("k={k}"));
                }
            }
            ("bad=".to_string(), format!("bad={}", bad.join(";")))
        });
        rec.check("lincomb/routes", format!("n={n}"), || {
            let mut bad = Vec::new();
            for k in 3..=10.min(n) {
                for j in 1..=(n - k + 1) {
                    let direct = coefficient(n, k, j).expect("valid");
                    if c_nkj_via_harmonic(n, k, j) != Ok(direct.clone()) {
                        bad.push(format!("harm k={k} j={j}"));
                    }
                    if c_nkj_via_neg_stirling(n, k, j) != Ok(direct) {
                        bad.push(format!("neg k={k} j={j}"));
                    }
                }
            }
            ("bad=".to_string(), format!("bad={}", bad.join(";")))
        });
    }
}

fn suite_harmonic(rec: &mut Recorder, _nmax: usize) {
    for n in 2..=ARITH_BOUND {
        rec.check("harmonic/rstir-route", format!("n={n}"), || {
            let mut bad = Vec::new();
            for r in 1..n {
                for m in (r + 1)..=n {
                    if r_stirling_via_harmonic(n, m, r) != r_stirling(n, m, r) {
                        bad.push(format!("m={m} r={r}"));
                    }
                }
            }
            ("bad=".to_string(), format!("bad={}", bad.join(";")))
        });
        rec.check("harmonic/harm1", format!("n={n}"), || {
            // [n m]_1 = c(n, m) = (n-1)! H^1_{n-1, m-1}
            let mut bad = Vec::new();
            for m in 2..=n {
                let lhs = stirling1_unsigned(n, m);
                let rhs = harmonic_nested(n - 1, m - 1, 1)
                    .map(|h| h * num_rational::BigRational::from(factorial(n - 1)));
                match rhs {
                    Ok(v) if v.is_integer() && v.to_integer() == lhs => {}
                    _ => bad.push(format!("m={m}")),
                }
            }
            ("bad=".to_string(), format!("bad={}", bad.join(";")))
        });
        rec.check("harmonic/position-recurrence", format!("n={n}"), || {
            let mut bad = Vec::new();
            for r in 2..=n {
                for m in r..=n {
                    if position_recurrence(n, m, r) != r_stirling(n, m, r) {
                        bad.push(format!("m={m} r={r}"));
                    }
                }
            }
            ("bad=".to_string(), format!("bad={}", bad.join(";")))
        });
        rec.check("harmonic/neg-stirling-route", format!("n={n}"), || {
            let mut bad = Vec::new();
            for r in 2..=n {
                for j in 1..=(n + 1 - r) {
                    if r_stirling_via_neg_stirling(n, j, r) != r_stirling(n, j + r, r) {
                        bad.push(format!("j={j} r={r}"));
                    }
                }
            }
            ("bad=".to_string(), format!("bad={}", bad.join(";")))
        });
    }
}

fn suite_border(rec: &mut Recorder, nmax: usize) {
    let top = (nmax + 1).min(8);
    for n in 2..=top {
        rec.check("border/counts", format!("n={n}"), || {
            let hist = match border_count_histogram(n) {
                Ok(h) => h,
                Err(e) => return ("ok".to_string(), format!("error: {e}")),
            };
            let mut mmp_counts = vec![BigInt::zero(); n.max(1)];
            for phi in enumerate_sn(n - 1).expect("within bound") {
                for k in 1..n {
                    let two = mmp_count_primed(&phi, k + 1).expect("k >= 2");
                    let one = mmp_count_primed(&phi, k + 2).expect("k >= 2");
                    if two == 2 && one == 1 {
                        mmp_counts[k] += 1;
                    }
                }
            }
            let expected: Vec<String> = (1..n).map(|k| mmp_counts[k].to_string()).collect();
            let actual: Vec<String> = (1..n).map(|k| hist[k].to_string()).collect();
            (expected.join(","), actual.join(","))
        });
        rec.check("border/roundtrip", format!("n={n}"), || {
            let mut failures = 0usize;
            for sigma in enumerate_sn(n).expect("within bound") {
                let k = border_p_count(&sigma);
                if k == 0 {
                    continue;
                }
                match border_to_mmp(&sigma) {
                    Ok(phi) => {
                        if border_from_mmp(&phi, k) != Ok(sigma) {
                            failures += 1;
                        }
                    }
                    Err(_) => failures += 1,
                }
            }
            ("failures=0".to_string(), format!("failures={failures}"))
        });
    }
}

fn suite_round_trips(rec: &mut Recorder, nmax: usize) {
    let top = nmax.min(6);
    for n in 2..=top {
        for k in 2..=n.min(4) {
            rec.check("main2/roundtrip", format!("n={n} k={k}"), || {
                let mut failures = 0usize;
                let mut hits: std::collections::HashMap<Permutation, usize> =
                    std::collections::HashMap::new();
                for sigma in enumerate_sn(n).expect("within bound") {
                    let j = mmp_count_primed(&sigma, k).expect("k >= 2");
                    let j1 = mmp_count_primed(&sigma, k + 1).expect("k >= 2");
                    if j < 2 || j1 != j - 1 {
                        continue;
                    }
                    for q in 1..=k - 1 {
                        match main2_forward(&sigma, k, q) {
                            Ok(w) => {
                                *hits.entry(w.pi_q.clone()).or_default() += 1;
                                if main2_inverse(&w.pi_q, k) != Ok((sigma.clone(), q)) {
                                    failures += 1;
                                }
                            }
                            Err(_) => failures += 1,
                        }
                    }
                }
                // each target is hit exactly once (the map is a bijection
                // between pairs (sigma, q) and targets)
                let multi = hits.values().filter(|&&c| c != 1).count();
                (
                    "failures=0 multi=0".to_string(),
                    format!("failures={failures} multi={multi}"),
                )
            });
            rec.check("main2/counting", format!("n={n} k={k}"), || {
                let mut bad = Vec::new();
                let m = joint_m_counts(n, k).expect("within bound");
                for j in 1..=n {
                    // (k-1) |{mmp^{k'}=j, mmp^{(k+1)'}=j-1}| = |{both = j-1}|
                    if BigInt::from(k - 1) * &m[j][j - 1] != m[j - 1][j - 1] {
                        bad.push(format!("j={j}"));
                    }
                }
                ("bad=".to_string(), format!("bad={}", bad.join(";")))
            });
        }
    }
    for n in 2..=nmax.min(7) {
        for k in 2..=n {
            rec.check("delete-map/recursion", format!("n={n} k={k}"), || {
                // delete-1 branch cardinalities reproduce
                // C_{n,k,j} = (n-1) C_{n-1,k,j} + C_{n-1,k,j-1}
                let mut failures = 0usize;
                let mut plain = vec![BigInt::zero(); n + 1];
                let mut drop_first = vec![BigInt::zero(); n + 1];
                for sigma in enumerate_sn(n).expect("within bound") {
                    let j = mmp_count_primed(&sigma, k).expect("k >= 2");
                    if j == 0 {
                        continue;
                    }
                    let image = match thm_main_delete_map(&sigma, k) {
                        Ok(p) => p,
                        Err(_) => {
                            failures += 1;
                            continue;
                        }
                    };
                    let got = mmp_count_primed(&image, k).expect("k >= 2");
                    let swap_branch =
                        j == 1 && sigma.value_at(k.min(n)) == n && sigma.position_of(1) < k;
                    if sigma.value_at(1) == 1 {
                        if got != j - 1 {
                            failures += 1;
                        }
                        drop_first[j] += 1;
                    } else if swap_branch {
                        if got != 0 {
                            failures += 1;
                        }
                        drop_first[j] += 1;
                    } else {
                        if got != j {
                            failures += 1;
                        }
                        plain[j] += 1;
                    }
                }
                let mut bad = Vec::new();
                for j in 1..=n {
                    let c_small_j = coefficient(n - 1, k, j).expect("valid");
                    let c_small_prev = coefficient(n - 1, k, j - 1).expect("valid");
                    if plain[j] != BigInt::from(n - 1) * c_small_j || drop_first[j] != c_small_prev
                    {
                        bad.push(format!("j={j}"));
                    }
                }
                (
                    "failures=0 bad=".to_string(),
                    format!("failures={failures} bad={}", bad.join(";")),
                )
            });
        }
    }
}

fn suite_lemmas(rec: &mut Recorder, nmax: usize) {
    for n in 1..=nmax {
        rec.check("lemmas/basic-and-second", format!("n={n}"), || {
            let mut failures = 0usize;
            for sigma in enumerate_sn(n).expect("within bound") {
                let maxima = sigma.left_to_right_maxima();
                for k in 2..=n + 1 {
                    let report = mmp_matches(&sigma, k).expect("k >= 2");
                    // bound and prefix property
                    if report.count_unprimed > n.saturating_sub(k) {
                        failures += 1;
                    }
                    if report.matched_positions != maxima[..report.count_unprimed] {
                        failures += 1;
                    }
                    // the statistic drops by 0 or 1 from k to k+1
                    let next = mmp_count_primed(&sigma, k + 1).expect("k >= 2");
                    if next > report.count_primed || report.count_primed - next > 1 {
                        failures += 1;
                    }
                }
            }
            ("failures=0".to_string(), format!("failures={failures}"))
        });
    }
}

pub fn run_suite(config: &SuiteConfig) -> VerificationReport {
    let nmax = config.max_n.min(ENUM_BOUND).max(1);
    let mut rec = Recorder::new();
    for suite in &config.suites {
        match suite {
            Suite::Distributions => suite_distributions(&mut rec, nmax),
            Suite::K2 => suite_k2(&mut rec, nmax),
            Suite::Rstir => suite_rstir(&mut rec, nmax),
            Suite::KRans => suite_krans(&mut rec, nmax),
            Suite::Main2 => suite_main2(&mut rec, nmax),
            Suite::FixedN => suite_fixed_n(&mut rec, nmax),
            Suite::Sumform => suite_sumform(&mut rec, nmax),
            Suite::Lincomb => suite_lincomb(&mut rec, nmax),
            Suite::Harmonic => suite_harmonic(&mut rec, nmax),
            Suite::Border => suite_border(&mut rec, nmax),
            Suite::RoundTrips => suite_round_trips(&mut rec, nmax),
            Suite::Lemmas => suite_lemmas(&mut rec, nmax),
        }
    }
    let mut records = rec.records;
    records.sort_by(|a, b| a.id.cmp(&b.id).then_with(|| a.params.cmp(&b.params)));
    let pass = records.iter().all(|r| r.pass);
    VerificationReport {
        suites: config.suites.iter().map(|s| s.name().to_string()).collect(),
        records,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn histogram_examples() {
        let h = distribution_histogram(4, 2, true).unwrap();
        assert_eq!(h.to_string(), "6 + 11x + 6x^2 + x^3");
        let h = distribution_histogram(5, 4, true).unwrap();
        assert_eq!(h.to_string(), "72 + 42x + 6x^2");
        let h = distribution_histogram(3, 4, true).unwrap();
        assert_eq!(h, IntPolynomial::constant(big(6)));
        let r = distribution_histogram(4, 2, false).unwrap();
        assert_eq!(r.to_string(), "17 + 6x + x^2");
        assert_eq!(
            distribution_histogram(10, 2, true),
            Err(OracleError::AboveBound { n: 10, bound: 9 })
        );
    }

    #[test]
    fn joint_counts_small_table() {
        let m = joint_m_counts(5, 2).unwrap();
        assert_eq!(m[3][2], big(9));
        assert_eq!(m[4][3], big(1));
        let m = joint_m_counts(5, 3).unwrap();
        assert_eq!(m[0][0], big(48));
    }

    #[test]
    fn r_stirling_brute_examples() {
        assert_eq!(r_stirling_brute(7, 5, 3).unwrap(), big(119));
        assert_eq!(r_stirling_brute(5, 5, 2).unwrap(), big(1));
        assert_eq!(r_stirling_brute(5, 3, 2).unwrap(), big(26));
        for n in 1..=6 {
            for r in 1..=n {
                for m in r..=n {
                    assert_eq!(
                        r_stirling_brute(n, m, r).unwrap(),
                        r_stirling(n, m, r).unwrap(),
                        "n={n} m={m} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn border_histogram_examples() {
        let h = border_count_histogram(4).unwrap();
        assert_eq!(h[1], big(1)); // only 2134
        let h = border_count_histogram(3).unwrap();
        assert_eq!(h[0], big(6));
    }

    #[test]
    fn sharded_enumeration_agrees() {
        use crate::perm::enumerate_sn_with_first;
        let serial = distribution_histogram(5, 3, true).unwrap();
        let mut counts = vec![BigInt::zero(); 7];
        for first in 1..=5 {
            for sigma in enumerate_sn_with_first(5, first).unwrap() {
                counts[mmp_count_primed(&sigma, 3).unwrap()] += 1;
            }
        }
        assert_eq!(IntPolynomial::new(counts), serial);
    }

    #[test]
    fn small_suite_passes() {
        let config = SuiteConfig {
            max_n: 5,
            suites: vec![Suite::Distributions, Suite::K2, Suite::Rstir, Suite::Lemmas],
        };
        let report = run_suite(&config);
        assert!(report.pass, "{report}");
        assert!(!report.records.is_empty());
        // sorted by id then params
        for pair in report.records.windows(2) {
            assert!(
                (&pair[0].id, &pair[0].params) <= (&pair[1].id, &pair[1].params),
                "records out of order"
            );
        }
    }

    #[test]
    fn corrupted_check_is_reported_not_thrown() {
        let mut rec = Recorder::new();
        rec.check("fixture/bad", "none", || ("1".to_string(), "2".to_string()));
        let mut records = rec.records;
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let pass = records.iter().all(|r| r.pass);
        let report = VerificationReport {
            suites: vec!["fixture".to_string()],
            records,
            pass,
        };
        assert!(!report.pass);
        assert_eq!(report.to_json()["failures"], "1");
    }

    #[test]
    fn report_json_uses_decimal_strings() {
        let config = SuiteConfig {
            max_n: 3,
            suites: vec![Suite::Distributions],
        };
        let report = run_suite(&config);
        let value = report.to_json();
        assert!(value["checks"].is_string());
        assert!(value["records"][0]["elapsed_ms"].is_string());
        assert_eq!(value["pass"], true);
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nonsense".parse::<Suite>().is_err());
    }
}
