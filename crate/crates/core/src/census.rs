//! Per-family count tables from three independent sources, the cyclic
//! pattern-avoidance formulas, the reference table of sequences with known
//! weights, and the full cross-check suite.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bell::{self, SetPartition};
use crate::error::{Error, Result};
use crate::fraction::{jfraction_with, scheme_for, supported_marks, WeightScheme};
use crate::invert::invert_jfraction;
use crate::oracle::{brute_force_distribution, stat_exponents, OracleConfig};
use crate::path::{enumerate_paths, permutation_rule, theta, theta_inv, Letter};
use crate::perm::{Permutation, SubsetId};
use crate::poly::{Marks, MultiPoly};
use crate::series::{closed_form, integer_coeffs, RatSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Source {
    BruteForce,
    ContinuedFraction,
    ClosedForm,
}

impl Source {
    pub const ALL: [Source; 3] = [Source::BruteForce, Source::ContinuedFraction, Source::ClosedForm];

    pub fn tag(self) -> &'static str {
        match self {
            Source::BruteForce => "bf",
            Source::ContinuedFraction => "cf",
            Source::ClosedForm => "closed",
        }
    }
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Source::ALL
            .into_iter()
            .find(|src| src.tag() == s.trim())
            .ok_or_else(|| Error::UnknownName {
                kind: "source",
                name: s.into(),
            })
    }
}

pub fn parse_sources(s: &str) -> Result<Vec<Source>> {
    let mut out: Vec<Source> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn catalan(n: usize) -> BigInt {
    binomial(2 * n, n) / (n + 1)
}

/// Bell numbers `B_0..=B_n` from the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![row.last().expect("nonempty").clone()];
        for x in &row {
            let v = next.last().expect("nonempty") + x;
            next.push(v);
        }
        out.push(next[0].clone());
        row = next;
    }
    out.truncate(n + 1);
    out
}

/// The stated counting formula for a family, as text.
pub fn formula_name(subset: SubsetId) -> Option<&'static str> {
    use SubsetId::*;
    Some(match subset {
        All => "n!",
        Cyclic => "(n-1)!",
        Avoid321 | UnimodalNoncrossingNoNestedFp | Noncrossing => "C_n",
        IncreasingWeakExc => "B_n",
        CyclicIncreasingExc => "B_{n-1}",
        UnimodalCycles => "EGF exp((e^{2z}+2z-1)/4)",
        IncreasingExcAndDef | UnimodalNoncrossing => "OGF 2/(1+z+sqrt(1-6z+5z^2))",
        NoDoubleExcOrDef => "EGF e^z/cos z",
        Involutions => "EGF e^{z+z^2/2}",
        Involutions321 => "binomial(n, floor(n/2))",
        IncreasingExc | UnimodalCyclesIncreasingExc => return None,
    })
}

/// Values `0..=n_max` of the family's counting formula.
pub fn formula_counts(subset: SubsetId, n_max: usize) -> Result<Option<Vec<BigInt>>> {
    use SubsetId::*;
    let from_series = |name: &str| -> Result<Vec<BigInt>> {
        integer_coeffs(&closed_form(name, n_max)?)
            .ok_or_else(|| Error::Precondition(format!("{name} has non-integer coefficients")))
    };
    let shifted = |v: Vec<BigInt>| {
        std::iter::once(BigInt::zero())
            .chain(v)
            .take(n_max + 1)
            .collect::<Vec<_>>()
    };
    let counts = match subset {
        All => (0..=n_max).map(factorial).collect(),
        Cyclic => shifted((0..n_max).map(factorial).collect()),
        Avoid321 | UnimodalNoncrossingNoNestedFp | Noncrossing => (0..=n_max).map(catalan).collect(),
        IncreasingWeakExc => bell_numbers(n_max),
        CyclicIncreasingExc => shifted(bell_numbers(n_max)),
        UnimodalCycles => from_series("unimodal-cycles")?,
        IncreasingExcAndDef | UnimodalNoncrossing => from_series("increasing-exc-and-def")?,
        NoDoubleExcOrDef => from_series("no-double-exc-or-def")?,
        Involutions => from_series("involutions")?,
        Involutions321 => (0..=n_max).map(|n| binomial(n, n / 2)).collect(),
        IncreasingExc | UnimodalCyclesIncreasingExc => return Ok(None),
    };
    Ok(Some(counts))
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<MultiPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub continued_fraction: Option<MultiPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<MultiPoly>,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub subset: SubsetId,
    pub marks: String,
    pub n_max: usize,
    pub sources: Vec<Source>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<&'static str>,
    pub rows: Vec<CensusRow>,
    pub passed: bool,
}

/// Counts or marked distributions of `subset` for `n = 0..=n_max`. The
/// closed-form column holds plain counts and is compared against the other
/// columns with every variable set to 1.
pub fn census(
    subset: SubsetId,
    n_max: usize,
    marks: Marks,
    sources: &[Source],
    config: &OracleConfig,
) -> Result<CensusReport> {
    let want = |s| sources.contains(&s);
    let cf = if want(Source::ContinuedFraction) {
        Some(scheme_for(subset, marks)?.series(n_max))
    } else {
        None
    };
    let closed = if want(Source::ClosedForm) {
        formula_counts(subset, n_max)?
    } else {
        None
    };
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let bf = if want(Source::BruteForce) {
            Some(crate::oracle::brute_force_with(n, config, marks, |p| {
                subset.contains(p).then(|| stat_exponents(p))
            })?)
        } else {
            None
        };
        let cfn = cf.as_ref().map(|s| s.coeff(n).clone());
        let cl = closed.as_ref().map(|c| MultiPoly::constant(c[n].clone()));
        let mut agree = true;
        if let (Some(a), Some(b)) = (&bf, &cfn) {
            agree &= a == b;
        }
        if let Some(c) = &cl {
            for other in bf.iter().chain(cfn.iter()) {
                agree &= other.at_ones() == c.constant_term();
            }
        }
        rows.push(CensusRow {
            n,
            brute_force: bf,
            continued_fraction: cfn,
            closed_form: cl,
            agree,
        });
    }
    let passed = rows.iter().all(|r| r.agree);
    Ok(CensusReport {
        subset,
        marks: marks.to_string(),
        n_max,
        sources: sources.to_vec(),
        formula: if closed.is_some() { formula_name(subset) } else { None },
        rows,
        passed,
    })
}

impl CensusReport {
    /// One line per `n`: `n,bf,cf,closed,agree`, empty fields for absent
    /// sources.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::Precondition(format!("csv output failed: {e}"));
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "bf", "cf", "closed", "agree"]).map_err(io)?;
        let cell = |p: &Option<MultiPoly>| p.as_ref().map(ToString::to_string).unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                cell(&r.brute_force),
                cell(&r.continued_fraction),
                cell(&r.closed_form),
                r.agree.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::Precondition(format!("csv output failed: {e}")))
    }
}

impl fmt::Display for CensusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} marks={{{}}}", self.subset, self.marks)?;
        if let Some(formula) = self.formula {
            writeln!(f, "formula: {formula}")?;
        }
        for r in &self.rows {
            write!(f, "{}:", r.n)?;
            for (src, v) in [
                (Source::BruteForce, &r.brute_force),
                (Source::ContinuedFraction, &r.continued_fraction),
                (Source::ClosedForm, &r.closed_form),
            ] {
                if let Some(v) = v {
                    write!(f, " {}={}", src.tag(), v)?;
                }
            }
            writeln!(f, "{}", if r.agree { "" } else { "  MISMATCH" })?;
        }
        write!(f, "{}", if self.passed { "agree" } else { "disagree" })
    }
}

/// Families of cyclic permutations avoiding a set of patterns, with counts
/// given by Möbius sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MobiusFamily {
    #[serde(rename = "C(213,312)")]
    C213_312,
    #[serde(rename = "C(132,231)")]
    C132_231,
    #[serde(rename = "C(321,2143,3142)")]
    C321_2143_3142,
    #[serde(rename = "C(123,2413,3412)")]
    C123_2413_3412,
}

impl MobiusFamily {
    pub const ALL: [MobiusFamily; 4] = [
        MobiusFamily::C213_312,
        MobiusFamily::C132_231,
        MobiusFamily::C321_2143_3142,
        MobiusFamily::C123_2413_3412,
    ];

    pub fn patterns(self) -> &'static [&'static str] {
        match self {
            MobiusFamily::C213_312 => &["213", "312"],
            MobiusFamily::C132_231 => &["132", "231"],
            MobiusFamily::C321_2143_3142 => &["321", "2143", "3142"],
            MobiusFamily::C123_2413_3412 => &["123", "2413", "3412"],
        }
    }

    pub fn name(self) -> String {
        format!("C({})", self.patterns().join(","))
    }
}

impl fmt::Display for MobiusFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for MobiusFamily {
    type Err = Error;

    /// Accepts `C(213,312)` or just `213,312`.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_digit() || *c == ',').collect();
        MobiusFamily::ALL
            .into_iter()
            .find(|fam| fam.patterns().join(",") == key)
            .ok_or_else(|| Error::UnknownName {
                kind: "family",
                name: s.into(),
            })
    }
}

/// The number-theoretic Möbius function.
pub fn mobius(mut n: usize) -> i64 {
    assert!(n > 0, "mobius of 0");
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `Σ_{d | m, filter(d)} μ(d) 2^{m/d}`.
fn mobius_sum(m: usize, filter: impl Fn(usize) -> bool) -> BigInt {
    (1..=m)
        .filter(|d| m % d == 0 && filter(*d))
        .map(|d| BigInt::from(mobius(d)) * (BigInt::one() << (m / d)))
        .sum()
}

pub fn mobius_count(family: MobiusFamily, n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::Precondition(format!("Möbius formulas need n >= 2, got {n}")));
    }
    let necklaces = mobius_sum(n, |_| true) / n;
    Ok(match family {
        MobiusFamily::C213_312 | MobiusFamily::C132_231 => mobius_sum(n, |d| d % 2 == 1) / (2 * n),
        MobiusFamily::C321_2143_3142 => necklaces,
        // at n = 2 the extra term would add 2 to the single cyclic permutation
        MobiusFamily::C123_2413_3412 if n % 4 == 2 && n > 2 => necklaces + mobius_sum(n / 2, |_| true) * 2 / n,
        MobiusFamily::C123_2413_3412 => necklaces,
    })
}

/// Cyclic permutations of length `n` avoiding every pattern of `family`.
pub fn mobius_brute_force(family: MobiusFamily, n: usize, config: &OracleConfig) -> Result<BigInt> {
    let patterns: Vec<Permutation> = family
        .patterns()
        .iter()
        .map(|s| Permutation::from_one_line(&s.bytes().map(|b| usize::from(b - b'0')).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    let counted = crate::oracle::brute_force_with(n, config, Marks::NONE, |p| {
        let keep = p.is_cyclic() && patterns.iter().all(|pat| p.avoids(pat).unwrap_or(false));
        keep.then_some([0; 5])
    })?;
    Ok(counted.constant_term())
}

type Weight = fn(usize) -> BigRational;

/// A sequence with its known J-fraction weights.
#[derive(Clone, Copy)]
pub struct Table2Row {
    pub name: &'static str,
    pub dee: Weight,
    pub ell: Weight,
    pub note: &'static str,
}

impl fmt::Debug for Table2Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Table2Row").field("name", &self.name).finish()
    }
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn qb(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

pub const TABLE2: [Table2Row; 16] = [
    Table2Row {
        name: "catalan",
        dee: |_| q(1),
        ell: |h| q(if h == 0 { 1 } else { 2 }),
        note: "C_n",
    },
    Table2Row {
        name: "motzkin",
        dee: |_| q(1),
        ell: |_| q(1),
        note: "M_n",
    },
    Table2Row {
        name: "central-binomial",
        dee: |h| q(if h == 1 { 2 } else { 1 }),
        ell: |_| q(2),
        note: "binomial(2n, n)",
    },
    Table2Row {
        name: "central-trinomial",
        dee: |h| q(if h == 1 { 2 } else { 1 }),
        ell: |_| q(1),
        note: "[z^n] 1/sqrt(1-2z-3z^2)",
    },
    Table2Row {
        name: "schroeder",
        dee: |_| q(2),
        ell: |h| q(if h == 0 { 2 } else { 3 }),
        note: "large Schroeder numbers",
    },
    Table2Row {
        name: "bell",
        dee: |h| q(h as i64),
        ell: |h| q(h as i64 + 1),
        note: "B_n",
    },
    Table2Row {
        name: "no-singletons",
        dee: |h| q(h as i64),
        ell: |h| q(h as i64),
        note: "set partitions with no singletons",
    },
    Table2Row {
        name: "factorial",
        dee: |h| q((h * h) as i64),
        ell: |h| q(2 * h as i64 + 1),
        note: "n!",
    },
    Table2Row {
        name: "odd-double-factorial",
        dee: |h| q((2 * h * (2 * h - 1)) as i64),
        ell: |h| q(4 * h as i64 + 1),
        note: "1*3*...*(2n-1)",
    },
    Table2Row {
        name: "even-double-factorial",
        dee: |h| q((4 * h * h) as i64),
        ell: |h| q(4 * h as i64 + 2),
        note: "2*4*...*(2n)",
    },
    Table2Row {
        name: "derangements",
        dee: |h| q((h * h) as i64),
        ell: |h| q(2 * h as i64),
        note: "n! sum (-1)^i/i!",
    },
    Table2Row {
        name: "euler",
        dee: |h| q((h * (h + 1) / 2) as i64),
        ell: |h| q(h as i64 + 1),
        note: "a_n = E_{n+1}",
    },
    Table2Row {
        name: "consecutive-123-avoiding",
        dee: |h| q((h * h) as i64),
        ell: |h| q(h as i64 + 1),
        note: "permutations avoiding the consecutive pattern 123",
    },
    Table2Row {
        name: "labeled-graphs",
        dee: |h| qb((BigInt::one() << (3 * (h - 1))) * (pow2(h) - 1)),
        ell: |h| {
            let top = BigInt::from(3) * pow2(h) - 1;
            if h == 0 {
                BigRational::new(top, 2.into())
            } else {
                qb(pow2(h - 1) * top)
            }
        },
        note: "2^binomial(n, 2)",
    },
    Table2Row {
        name: "genocchi",
        dee: |h| q((h * h * h * (h + 1)) as i64),
        ell: |h| q(((h + 1) * (2 * h + 1)) as i64),
        note: "unsigned even Genocchi G_{2n}",
    },
    Table2Row {
        name: "median-genocchi",
        dee: |h| q((h * h * h * h) as i64),
        ell: |h| q((2 * h * (h + 1) + 1) as i64),
        note: "median Genocchi H_{2n+1}",
    },
];

pub fn table2_row(name: &str) -> Result<&'static Table2Row> {
    TABLE2
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| Error::UnknownName {
            kind: "sequence",
            name: name.into(),
        })
}

/// The row's weights run forward.
pub fn table2_series(row: &Table2Row, order: usize) -> RatSeries {
    jfraction_with(
        row.ell,
        |h| if h == 0 { BigRational::zero() } else { (row.dee)(h) },
        order,
        order.div_ceil(2),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, failure: Option<String>, ok_detail: impl Into<String>) -> Self {
        let passed = failure.is_none();
        Self {
            name: name.into(),
            passed,
            detail: failure.unwrap_or_else(|| ok_detail.into()),
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

/// Compares a scheme's coefficients with the oracle for `n ≤ max_n`; the
/// detail names the first disagreeing `n`.
pub fn check_scheme(scheme: &WeightScheme, subset: SubsetId, marks: Marks, max_n: usize) -> Result<CheckOutcome> {
    let series = scheme.series(max_n);
    let mut failure = None;
    for n in 0..=max_n {
        let bf = brute_force_distribution(n, subset, marks)?;
        if series.coeff(n) != &bf {
            failure = Some(format!(
                "n = {n}: fraction gives {}, enumeration gives {bf}",
                series.coeff(n)
            ));
            break;
        }
    }
    Ok(CheckOutcome::new(
        format!("fraction {}", scheme.name()),
        failure,
        format!("n <= {max_n}"),
    ))
}

/// Number of seeded random round trips per size in [`check_all`].
pub const RANDOM_TRIALS: usize = 20;
pub const RANDOM_MAX_N: usize = 30;

/// Runs every oracle equality for sizes up to `max_n`, plus seeded random
/// round trips up to length 30.
pub fn check_all(max_n: usize, seed: u64) -> Result<Vec<CheckOutcome>> {
    let config = OracleConfig::default();
    if max_n > config.cap {
        return Err(Error::OracleCap {
            n: max_n,
            cap: config.cap,
        });
    }
    let mut out = Vec::new();
    let upto = format!("n <= {max_n}");

    let mut fail = None;
    'theta: for n in 0..=max_n {
        let mut count = 0usize;
        for p in Permutation::all(n) {
            count += 1;
            if theta_inv(&theta(&p)).as_ref() != Ok(&p) {
                fail = Some(format!("round trip fails on {p}"));
                break 'theta;
            }
        }
        for m in enumerate_paths(n, permutation_rule) {
            if theta(&theta_inv(&m)?) != m {
                fail = Some(format!("round trip fails on {m}"));
                break 'theta;
            }
            count = count.wrapping_sub(1);
        }
        if count != 0 {
            fail = Some(format!("path and permutation counts differ at n = {n}"));
            break;
        }
    }
    out.push(CheckOutcome::new("theta bijection", fail, upto.clone()));

    for subset in SubsetId::ALL {
        for &marks in supported_marks(subset) {
            let scheme = scheme_for(subset, marks)?;
            out.push(check_scheme(&scheme, subset, marks, max_n)?);
        }
        let fail = match formula_counts(subset, max_n)? {
            None => None,
            Some(counts) => (0..=max_n).find_map(|n| {
                let bf = crate::oracle::brute_force_count(n, subset).ok()?;
                (bf != counts[n]).then(|| format!("n = {n}: formula {} vs enumeration {bf}", counts[n]))
            }),
        };
        if let Some(name) = formula_name(subset) {
            out.push(CheckOutcome::new(
                format!("formula {subset} = {name}"),
                fail,
                upto.clone(),
            ));
        }
    }

    let fail = (0..=max_n).find_map(|n| {
        let mut dexc: HashMap<usize, usize> = HashMap::new();
        let mut c123: HashMap<usize, usize> = HashMap::new();
        for p in Permutation::all(n) {
            *dexc.entry(p.stats().dexc).or_default() += 1;
            *c123.entry(p.foata_hat().count_consecutive_123()).or_default() += 1;
        }
        (dexc != c123).then(|| format!("distributions differ at n = {n}"))
    });
    out.push(CheckOutcome::new(
        "dexc vs consecutive 123 through the Foata transform",
        fail,
        upto.clone(),
    ));

    let fail = (0..=max_n)
        .flat_map(Permutation::all)
        .find(|p| p.avoids_321_via_merge() && p.inversions() != theta(p).area())
        .map(|p| format!("inv and area differ on {p}"));
    out.push(CheckOutcome::new("321-avoiding area law", fail, upto.clone()));

    let fail = (0..=max_n).find_map(|n| {
        let mut fibers: HashMap<Vec<Letter>, usize> = HashMap::new();
        for p in Permutation::all(n) {
            *fibers.entry(theta(&p).letters()).or_default() += 1;
        }
        enumerate_paths(n, |_, _| 1).find_map(|w| {
            let expected = w.weight(permutation_rule);
            let got = fibers.get(&w.letters()).copied().unwrap_or(0);
            (got != expected).then(|| format!("word {} has fiber {got}, weight {expected}", w.word()))
        })
    });
    out.push(CheckOutcome::new("fiber sizes equal word weights", fail, upto.clone()));

    let bells = bell_numbers(max_n);
    let fail = (1..=max_n).find_map(|n| {
        let mut seen = std::collections::HashSet::new();
        for p in Permutation::all(n).filter(|p| SubsetId::CyclicIncreasingExc.contains(p)) {
            let sp = match bell::cie_to_partition(&p) {
                Ok(sp) => sp,
                Err(e) => return Some(format!("{p}: {e}")),
            };
            if bell::partition_to_cie(&sp).as_ref() != Ok(&p) || !seen.insert(sp) {
                return Some(format!("not injective or not invertible at {p}"));
            }
        }
        (BigInt::from(seen.len()) != bells[n - 1]).then(|| format!("n = {n}: image has {} partitions", seen.len()))
    });
    out.push(CheckOutcome::new("CIE to set partitions", fail, upto.clone()));

    let fail = (1..=max_n).find_map(|n| {
        let image: std::collections::HashSet<_> = bell::epaths(n)
            .iter()
            .map(|m| bell::phi(m).and_then(|o| (bell::phi_inv(&o)? == *m).then_some(o).ok_or(Error::FailedRecovery)))
            .collect::<Result<_>>()
            .ok()?;
        let target: std::collections::HashSet<_> = bell::bpaths(n - 1).into_iter().collect();
        (image != target).then(|| format!("phi is not onto at n = {n}"))
    });
    out.push(CheckOutcome::new("phi and phi_inv", fail, upto.clone()));

    let fail = (0..=max_n).find_map(|n| {
        let image: std::collections::HashSet<SetPartition> = Permutation::all(n)
            .filter(|p| SubsetId::IncreasingWeakExc.contains(p))
            .filter_map(|p| bell::weak_exc_to_partition(&p).ok())
            .collect();
        (BigInt::from(image.len()) != bells[n]).then(|| format!("n = {n}: {} partitions", image.len()))
    });
    out.push(CheckOutcome::new(
        "weak excedances to set partitions",
        fail,
        upto.clone(),
    ));

    for family in MobiusFamily::ALL {
        let fail = (2..=max_n).find_map(|n| {
            let formula = mobius_count(family, n).ok()?;
            let bf = mobius_brute_force(family, n, &config).ok()?;
            (formula != bf).then(|| format!("n = {n}: formula {formula}, enumeration {bf}"))
        });
        out.push(CheckOutcome::new(
            format!("Möbius {family}"),
            fail,
            format!("2 <= n <= {max_n}"),
        ));
    }

    let fail = TABLE2.iter().find_map(|row| {
        let terms = table2_series(row, 12).into_coeffs();
        let r = invert_jfraction(&terms).ok()?;
        let ell_ok = r.ell.iter().enumerate().all(|(h, l)| *l == (row.ell)(h));
        let dee_ok = r.dee.iter().enumerate().all(|(i, d)| *d == (row.dee)(i + 1));
        (!(ell_ok && dee_ok)).then(|| format!("{} weights not recovered", row.name))
    });
    out.push(CheckOutcome::new(
        "reference weights recovered",
        fail,
        format!("{} sequences", TABLE2.len()),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fail = None;
    'random: for n in 1..=RANDOM_MAX_N {
        for _ in 0..RANDOM_TRIALS {
            let p = Permutation::random(n, &mut rng);
            if theta_inv(&theta(&p)).as_ref() != Ok(&p) {
                fail = Some(format!("theta round trip fails on {p}"));
                break 'random;
            }
            let rgs = random_rgs(n - 1, &mut rng);
            let sp = SetPartition::from_blocks(n - 1, rgs)?;
            match bell::partition_to_cie(&sp).and_then(|c| bell::cie_to_partition(&c)) {
                Ok(back) if back == sp => {}
                _ => {
                    fail = Some(format!("partition round trip fails on {sp}"));
                    break 'random;
                }
            }
        }
    }
    out.push(CheckOutcome::new(
        format!("random round trips (seed {seed})"),
        fail,
        format!("{RANDOM_TRIALS} per n, n <= {RANDOM_MAX_N}"),
    ));

    Ok(out)
}

/// Blocks of a random set partition of `{1..n}` grown one element at a time.
fn random_rgs<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for e in 1..=n {
        let b = rng.gen_range(0..=blocks.len());
        if b == blocks.len() {
            blocks.push(vec![e]);
        } else {
            blocks[b].push(e);
        }
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(mu, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn mobius_small_cases() {
        assert_eq!(mobius_count(MobiusFamily::C321_2143_3142, 2).unwrap(), 1.into());
        assert!(mobius_count(MobiusFamily::C213_312, 1).is_err());
        let cfg = OracleConfig::default();
        assert_eq!(
            mobius_count(MobiusFamily::C213_312, 3).unwrap(),
            mobius_brute_force(MobiusFamily::C213_312, 3, &cfg).unwrap()
        );
    }

    #[test]
    fn mobius_formulas_match_enumeration() {
        let cfg = OracleConfig::default();
        for family in MobiusFamily::ALL {
            for n in 2..=8 {
                assert_eq!(
                    mobius_count(family, n).unwrap(),
                    mobius_brute_force(family, n, &cfg).unwrap(),
                    "{family} n = {n}"
                );
            }
        }
    }

    #[test]
    fn correction_term_starts_at_six() {
        assert_eq!(mobius_sum(1, |_| true) * 2 / 2, 2.into());
        assert_eq!(mobius_count(MobiusFamily::C123_2413_3412, 2).unwrap(), 1.into());
        assert_eq!(mobius_count(MobiusFamily::C123_2413_3412, 6).unwrap(), 11.into());
        assert_eq!(mobius_count(MobiusFamily::C321_2143_3142, 6).unwrap(), 9.into());
    }

    #[test]
    fn family_names() {
        for family in MobiusFamily::ALL {
            assert_eq!(family.name().parse::<MobiusFamily>().unwrap(), family);
        }
        assert_eq!(
            "321,2143,3142".parse::<MobiusFamily>().unwrap(),
            MobiusFamily::C321_2143_3142
        );
    }

    #[test]
    fn bell_triangle() {
        assert_eq!(bell_numbers(7), ints(&[1, 1, 2, 5, 15, 52, 203, 877]));
        assert_eq!(bell_numbers(0), ints(&[1]));
    }

    #[test]
    fn formula_columns() {
        assert_eq!(
            formula_counts(SubsetId::Cyclic, 5).unwrap().unwrap(),
            ints(&[0, 1, 1, 2, 6, 24])
        );
        assert_eq!(
            formula_counts(SubsetId::CyclicIncreasingExc, 5).unwrap().unwrap(),
            ints(&[0, 1, 1, 2, 5, 15])
        );
        assert_eq!(
            formula_counts(SubsetId::Involutions321, 6).unwrap().unwrap(),
            ints(&[1, 1, 2, 3, 6, 10, 20])
        );
        assert!(formula_counts(SubsetId::IncreasingExc, 5).unwrap().is_none());
    }

    #[test]
    fn census_agrees() {
        let cfg = OracleConfig::default();
        let r = census(SubsetId::Cyclic, 6, Marks::of(&[Var::X, Var::V]), &Source::ALL, &cfg).unwrap();
        assert!(r.passed, "{r}");
        assert_eq!(r.rows.len(), 7);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,bf,cf,closed,agree\n0,0,0,0,true\n"));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["subset"], "Cyclic");
        assert_eq!(json["rows"][3]["closed_form"], "2");
    }

    #[test]
    fn unsupported_census_marks() {
        let cfg = OracleConfig::default();
        assert!(matches!(
            census(SubsetId::Noncrossing, 3, Marks::FULL, &Source::ALL, &cfg),
            Err(Error::UnsupportedScheme { .. })
        ));
    }

    #[test]
    fn table2_prefixes() {
        let get = |name| integer_coeffs(&table2_series(table2_row(name).unwrap(), 6)).unwrap();
        assert_eq!(get("catalan"), ints(&[1, 1, 2, 5, 14, 42, 132]));
        assert_eq!(get("euler"), ints(&[1, 1, 2, 5, 16, 61, 272]));
        assert_eq!(get("labeled-graphs"), ints(&[1, 1, 2, 8, 64, 1024, 32768]));
        assert_eq!(get("genocchi"), ints(&[1, 1, 3, 17, 155, 2073, 38227]));
        assert_eq!(get("median-genocchi"), ints(&[1, 1, 2, 8, 56, 608, 9440]));
        assert_eq!(get("no-singletons"), ints(&[1, 0, 1, 1, 4, 11, 41]));
    }

    #[test]
    fn check_suite_passes() {
        let outcomes = check_all(6, 7).unwrap();
        for o in &outcomes {
            assert!(o.passed, "{o}");
        }
        assert!(check_all(0, 1).unwrap().iter().all(|o| o.passed));
        assert!(check_all(10, 1).is_err());
    }

    #[test]
    fn corrupted_scheme_is_caught() {
        let marks = Marks::NONE;
        let bad = scheme_for(SubsetId::All, marks)
            .unwrap()
            .map_close(|h, d| if h == 1 { d + MultiPoly::one() } else { d });
        let o = check_scheme(&bad, SubsetId::All, marks, 5).unwrap();
        assert!(!o.passed);
        assert!(o.detail.starts_with("n = 2:"), "{}", o.detail);
    }
}
