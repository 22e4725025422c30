//! Sparse polynomials with big-integer coefficients in the statistic
//! variables `x, v, w, t, q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub const NVARS: usize = 5;

/// Statistic variables: fixed points, excedances, double excedances, cycles,
/// inversions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    V,
    W,
    T,
    Q,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::V, Var::W, Var::T, Var::Q];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        ['x', 'v', 'w', 't', 'q'][self.index()]
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.symbol() == c)
    }
}

/// A set of marked variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Marks(u8);

impl Marks {
    pub const NONE: Marks = Marks(0);
    pub const XVWT: Marks = Marks(0b01111);
    pub const XVWQ: Marks = Marks(0b10111);
    pub const XVW: Marks = Marks(0b00111);
    pub const FULL: Marks = Marks(0b11111);

    pub fn of(vars: &[Var]) -> Marks {
        Marks(vars.iter().fold(0, |m, v| m | 1 << v.index()))
    }

    pub fn contains(self, var: Var) -> bool {
        self.0 & (1 << var.index()) != 0
    }

    pub fn is_subset(self, other: Marks) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, var: Var) -> Marks {
        Marks(self.0 | 1 << var.index())
    }

    pub fn vars(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }
}

impl fmt::Display for Marks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.vars().try_for_each(|v| write!(f, "{}", v.symbol()))
    }
}

impl FromStr for Marks {
    type Err = Error;

    /// Letters from `xvwtq` in any order, optionally comma separated; `-` or
    /// the empty string means no marks.
    fn from_str(s: &str) -> Result<Self> {
        let mut marks = Marks::NONE;
        for c in s.chars().filter(|c| !matches!(c, ',' | ' ' | '{' | '}' | '-')) {
            let var = Var::from_symbol(c).ok_or_else(|| Error::Parse {
                what: "marks",
                detail: format!("unknown variable `{c}`"),
            })?;
            marks = marks.with(var);
        }
        Ok(marks)
    }
}

pub type Exponents = [u32; NVARS];

/// Zeroes the exponents of unmarked variables.
pub fn mask(exps: Exponents, marks: Marks) -> Exponents {
    let mut e = exps;
    for v in Var::ALL {
        if !marks.contains(v) {
            e[v.index()] = 0;
        }
    }
    e
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, [0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Self::monomial(1, e)
    }

    pub fn monomial(c: impl Into<BigInt>, exps: Exponents) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0; NVARS])
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&[0; NVARS])
    }

    pub fn coefficient(&self, exps: &Exponents) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, k)| (*e, k * c)))
    }

    /// Replaces `var` by the integer `value`.
    pub fn substitute(&self, var: Var, value: &BigInt) -> Self {
        let i = var.index();
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let mut e2 = *e;
            let k = std::mem::replace(&mut e2[i], 0);
            (e2, c * num_traits::pow(value.clone(), k as usize))
        }))
    }

    /// Sets every unmarked variable to 1.
    pub fn restrict(&self, marks: Marks) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (mask(*e, marks), c.clone())))
    }

    /// Value at `x = v = w = t = q = 1`.
    pub fn at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Variables with a nonzero exponent somewhere.
    pub fn support(&self) -> Marks {
        let mut m = Marks::NONE;
        for e in self.terms.keys() {
            for v in Var::ALL {
                if e[v.index()] > 0 {
                    m = m.with(v);
                }
            }
        }
        m
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// `q^shift · [h]_{q^step}` = `q^shift (1 + q^step + ... + q^{(h-1)step})`.
    pub fn q_integer(h: usize, step: u32, shift: u32) -> Self {
        Self::from_terms((0..h as u32).map(|i| {
            let mut e = [0; NVARS];
            e[Var::Q.index()] = shift + i * step;
            (e, BigInt::one())
        }))
    }

    pub fn q_power(k: u32) -> Self {
        let mut e = [0; NVARS];
        e[Var::Q.index()] = k;
        Self::monomial(1, e)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for MultiPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, -c)))
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponents, c: &BigInt) -> fmt::Result {
    let vars: Vec<String> = Var::ALL
        .into_iter()
        .filter(|v| e[v.index()] > 0)
        .map(|v| match e[v.index()] {
            1 => v.symbol().to_string(),
            k => format!("{}^{k}", v.symbol()),
        })
        .collect();
    if vars.is_empty() {
        return write!(f, "{c}");
    }
    if !c.is_one() {
        write!(f, "{c}*")?;
    }
    write!(f, "{}", vars.join("*"))
}

impl fmt::Display for MultiPoly {
    /// Terms in descending lexicographic order of `(x, v, w, t, q)`
    /// exponents, e.g. `3*x^2*t + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_monomial(f, e, &c.abs())?;
        }
        Ok(())
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Parses the printed form: `+`/`-` separated terms, each an optional
    /// integer coefficient and `*`-joined powers `x^k`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |detail: String| Error::Parse {
            what: "polynomial",
            detail,
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input".into()));
        }
        let mut out = MultiPoly::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body[1.min(body.len())..].find(['+', '-']).map_or(body.len(), |i| i + 1);
            let term = &body[..end];
            rest = &body[end..];
            let mut coeff = BigInt::one();
            let mut exps = [0u32; NVARS];
            for factor in term.split('*') {
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= factor.parse::<BigInt>().map_err(|e| bad(format!("`{factor}`: {e}")))?;
                    continue;
                }
                let mut parts = factor.splitn(2, '^');
                let name = parts.next().unwrap_or_default();
                let mut chars = name.chars();
                let var = match (chars.next().and_then(Var::from_symbol), chars.next()) {
                    (Some(v), None) => v,
                    _ => return Err(bad(format!("unknown factor `{factor}`"))),
                };
                let k: u32 = match parts.next() {
                    Some(p) => p.parse().map_err(|e| bad(format!("`{factor}`: {e}")))?,
                    None => 1,
                };
                exps[var.index()] += k;
            }
            out.add_term(exps, if negative { -coeff } else { coeff });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn t() -> MultiPoly {
        MultiPoly::var(Var::T)
    }

    #[test]
    fn printing_order() {
        let p = &(&x() * &x()).scale(&3.into()) * &t() + MultiPoly::constant(2);
        assert_eq!(p.to_string(), "3*x^2*t + 2");
        let q = &t() - &x();
        assert_eq!(q.to_string(), "-x + t");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(MultiPoly::constant(-4).to_string(), "-4");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3*x^2*t + 2", "-x + t", "0", "t^3 + 3*t^2 + 2*t", "x*v*w*t*q - 7"] {
            let p: MultiPoly = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("y + 1".parse::<MultiPoly>().is_err());
        assert!("".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn arithmetic_cancels_zeros() {
        let p = &x() + &t();
        let d = &p - &p;
        assert!(d.is_zero());
        assert_eq!(d.len(), 0);
        let sq = &p * &p;
        assert_eq!(sq.to_string(), "x^2 + 2*x*t + t^2");
        assert_eq!(sq.at_ones(), 4.into());
    }

    #[test]
    fn substitution_and_restriction() {
        let p: MultiPoly = "2*x^2*t + x*v + 5".parse().unwrap();
        assert_eq!(p.substitute(Var::X, &0.into()).to_string(), "5");
        assert_eq!(p.substitute(Var::X, &3.into()).to_string(), "3*v + 18*t + 5");
        assert_eq!(p.restrict(Marks::of(&[Var::T])).to_string(), "2*t + 6");
        assert_eq!(p.support(), Marks::of(&[Var::X, Var::V, Var::T]));
    }

    #[test]
    fn q_integers() {
        assert_eq!(MultiPoly::q_integer(3, 1, 0).to_string(), "q^2 + q + 1");
        assert_eq!(MultiPoly::q_integer(2, 2, 1).to_string(), "q^3 + q");
        assert!(MultiPoly::q_integer(0, 1, 0).is_zero());
    }

    #[test]
    fn marks_text() {
        let m: Marks = "xvwt".parse().unwrap();
        assert_eq!(m, Marks::XVWT);
        assert_eq!(m.to_string(), "xvwt");
        assert_eq!("q,x".parse::<Marks>().unwrap().to_string(), "xq");
        assert!("xz".parse::<Marks>().is_err());
        assert!(Marks::XVW.is_subset(Marks::XVWQ));
        assert!(!Marks::XVWT.is_subset(Marks::XVWQ));
    }
}
