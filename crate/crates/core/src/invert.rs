//! Recovering J-fraction weights from the first terms of a sequence.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fraction::jfraction_with;
use crate::series::RatSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RecoveryStatus {
    /// Every weight the input determines is nonzero.
    Complete,
    /// A zero `d` with nothing left over: a finite fraction fits exactly.
    Terminated,
    /// A zero `d` with a nonzero remainder: no fraction with nonzero weights
    /// fits.
    Failed,
}

impl fmt::Display for RecoveryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecoveryStatus::Complete => "complete",
            RecoveryStatus::Terminated => "terminated",
            RecoveryStatus::Failed => "failed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    #[serde(rename = "nonnegative integers")]
    NonnegativeIntegers,
    #[serde(rename = "positive rationals")]
    PositiveRationals,
    #[serde(rename = "fractional/negative")]
    FractionalOrNegative,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::NonnegativeIntegers => "nonnegative integers",
            Classification::PositiveRationals => "positive rationals",
            Classification::FractionalOrNegative => "fractional/negative",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightRecovery {
    /// `ℓ_0, ℓ_1, ...` as far as determined.
    pub ell: Vec<BigRational>,
    /// `d_1, d_2, ...` as far as determined.
    pub dee: Vec<BigRational>,
    pub status: RecoveryStatus,
    /// Index of the last input term `a_n`.
    pub input_order: usize,
}

impl WeightRecovery {
    /// Highest series order the recovered weights pin down.
    pub fn determined_order(&self) -> usize {
        match self.status {
            RecoveryStatus::Terminated => usize::MAX,
            _ => self.input_order,
        }
    }
}

/// Peels `a = 1/(1 - ℓ_0 z - d_1 z² A_1)` level by level: `ℓ = [z]A`,
/// `R = 1 - ℓz - 1/A`, `d = [z²]R`, next `A = R / (d z²)`.
pub fn invert_jfraction(terms: &[BigRational]) -> Result<WeightRecovery> {
    if terms.first() != Some(&BigRational::from_integer(1.into())) {
        return Err(Error::LeadingTerm);
    }
    let input_order = terms.len() - 1;
    let mut a = RatSeries::new(terms.to_vec(), input_order);
    let mut ell = Vec::new();
    let mut dee = Vec::new();
    let mut status = RecoveryStatus::Complete;
    loop {
        let k = a.order();
        if k < 1 {
            break;
        }
        let l = a.coeff(1).clone();
        ell.push(l.clone());
        if k < 2 {
            break;
        }
        let lin = RatSeries::new(vec![BigRational::one(), -l], k);
        let r = lin.sub(&a.reciprocal()?)?;
        let d = r.coeff(2).clone();
        if d.is_zero() {
            if r.is_zero() {
                dee.push(d);
                status = RecoveryStatus::Terminated;
            } else {
                status = RecoveryStatus::Failed;
            }
            break;
        }
        a = r.shift_down(2)?.scale(&d.recip());
        dee.push(d);
    }
    Ok(WeightRecovery {
        ell,
        dee,
        status,
        input_order,
    })
}

/// Runs the recovered weights forward to order `order`.
pub fn regenerate(r: &WeightRecovery, order: usize) -> Result<RatSeries> {
    if r.status == RecoveryStatus::Failed {
        return Err(Error::FailedRecovery);
    }
    if order > r.determined_order() {
        return Err(Error::BeyondDeterminedRange {
            requested: order,
            available: r.determined_order(),
        });
    }
    let get = |v: &[BigRational], i: usize| v.get(i).cloned().unwrap_or_else(BigRational::zero);
    let depth = r.ell.len().max(r.dee.len());
    Ok(jfraction_with(
        |h| get(&r.ell, h),
        |h| {
            if h == 0 {
                BigRational::zero()
            } else {
                get(&r.dee, h - 1)
            }
        },
        order,
        depth,
    ))
}

pub fn classify_weights(r: &WeightRecovery) -> Result<Classification> {
    if r.status == RecoveryStatus::Failed {
        return Err(Error::FailedRecovery);
    }
    let all = || r.ell.iter().chain(&r.dee);
    if all().all(|w| w.is_integer() && !w.is_negative()) {
        Ok(Classification::NonnegativeIntegers)
    } else if all().all(|w| w.is_positive()) {
        Ok(Classification::PositiveRationals)
    } else {
        Ok(Classification::FractionalOrNegative)
    }
}

/// Parses comma- or space-separated integers and fractions `p/q`.
pub fn parse_terms(s: &str) -> Result<Vec<BigRational>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|tok| !tok.is_empty())
        .map(|tok| {
            BigRational::from_str(tok).map_err(|e| Error::Parse {
                what: "terms",
                detail: format!("`{tok}`: {e}"),
            })
        })
        .collect()
}

pub fn integer_terms(values: impl IntoIterator<Item = BigInt>) -> Vec<BigRational> {
    values.into_iter().map(BigRational::from_integer).collect()
}

#[derive(Debug, Serialize)]
pub struct RecoveryReport {
    pub ell: Vec<String>,
    pub dee: Vec<String>,
    pub status: RecoveryStatus,
    pub classification: Option<Classification>,
}

impl From<&WeightRecovery> for RecoveryReport {
    fn from(r: &WeightRecovery) -> Self {
        let strs = |v: &[BigRational]| v.iter().map(ToString::to_string).collect();
        Self {
            ell: strs(&r.ell),
            dee: strs(&r.dee),
            status: r.status,
            classification: classify_weights(r).ok(),
        }
    }
}
