//! Truncated power series in `z` over an exact coefficient ring.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Exact commutative coefficient ring.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn from_int(n: i64) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn inverse(&self) -> Option<Self>;
}

/// Rings in which division by a nonzero integer is exact.
pub trait Field: Ring {
    fn div_int(&self, n: i64) -> Self;
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_int(n: i64) -> Self {
        MultiPoly::constant(n)
    }
    fn inverse(&self) -> Option<Self> {
        let c = self.constant_term();
        (self.is_constant() && (c.is_one() || c == -BigInt::one())).then(|| self.clone())
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Field for BigRational {
    fn div_int(&self, n: i64) -> Self {
        self / BigRational::from_integer(n.into())
    }
}

/// Coefficients `c_0..=c_N` of a series known modulo `z^{N+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Series<R> {
    /// Pads with zeros or truncates to order `order`.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c · z^k`.
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut coeffs = vec![R::zero(); order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip(other, Ring::add))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip(other, Ring::sub))
    }

    fn zip(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_truncated(other))
    }

    pub(crate) fn mul_truncated(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self { coeffs: out }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiplies by `z^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![R::zero(); k.min(n + 1)];
        coeffs.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        Self { coeffs }
    }

    /// Divides by `z^k`; the first `k` coefficients must vanish. The order
    /// drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Precondition(format!("series is not divisible by z^{k}")));
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].inverse().ok_or(Error::NotInvertible)?;
        let n = self.order();
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = R::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
                }
            }
            out.push(R::zero().sub(&acc.mul(&inv0)));
        }
        Ok(Self { coeffs: out })
    }

    /// `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                op: "composition",
                expected: "0",
            });
        }
        let n = self.order();
        let mut acc = Self::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_truncated(inner);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        Ok(acc)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<R: Field> Series<R> {
    fn require_constant(&self, op: &'static str, c: R, expected: &'static str) -> Result<()> {
        if self.coeffs[0] != c {
            return Err(Error::ConstantTerm { op, expected });
        }
        Ok(())
    }

    /// `exp(f)` for `f(0) = 0`, from `g' = f' g`.
    pub fn exp(&self) -> Result<Self> {
        self.require_constant("exp", R::zero(), "0")?;
        let n = self.order();
        let mut g = vec![R::one()];
        for m in 1..=n {
            let mut acc = R::zero();
            for k in 1..=m {
                acc = acc.add(&self.coeffs[k].mul(&g[m - k]).mul(&R::from_int(k as i64)));
            }
            g.push(acc.div_int(m as i64));
        }
        Ok(Self { coeffs: g })
    }

    /// `(cos f, sin f)` for `f(0) = 0`.
    pub fn cos_sin(&self) -> Result<(Self, Self)> {
        self.require_constant("cos", R::zero(), "0")?;
        let n = self.order();
        let mut c = vec![R::one()];
        let mut s = vec![R::zero()];
        for m in 1..=n {
            let mut ac = R::zero();
            let mut as_ = R::zero();
            for k in 1..=m {
                let kf = self.coeffs[k].mul(&R::from_int(k as i64));
                ac = ac.sub(&kf.mul(&s[m - k]));
                as_ = as_.add(&kf.mul(&c[m - k]));
            }
            c.push(ac.div_int(m as i64));
            s.push(as_.div_int(m as i64));
        }
        Ok((Self { coeffs: c }, Self { coeffs: s }))
    }

    pub fn cos(&self) -> Result<Self> {
        Ok(self.cos_sin()?.0)
    }

    /// Square root with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        self.require_constant("sqrt", R::one(), "1")?;
        let n = self.order();
        let mut g = vec![R::one()];
        for m in 1..=n {
            // 2 g_0 g_m = f_m - sum_{0<i<m} g_i g_{m-i}
            let mut acc = self.coeffs[m].clone();
            for i in 1..m {
                acc = acc.sub(&g[i].mul(&g[m - i]));
            }
            g.push(acc.div_int(2));
        }
        Ok(Self { coeffs: g })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.reciprocal()?)
    }

    /// Divides coefficient `n` by `n!`.
    pub fn ogf_to_egf(&self) -> Self {
        let mut f = R::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    f = f.mul(&R::from_int(n as i64));
                }
                c.mul(&f.inverse().expect("factorials are units in a field"))
            })
            .collect();
        Self { coeffs }
    }
}

impl<R: Ring> Series<R> {
    /// Multiplies coefficient `n` by `n!`.
    pub fn egf_to_ogf(&self) -> Self {
        let mut f = R::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    f = f.mul(&R::from_int(n as i64));
                }
                c.mul(&f)
            })
            .collect();
        Self { coeffs }
    }
}

impl<R: Ring> fmt::Display for Series<R> {
    /// One coefficient per line: `n: <coefficient>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{n}: {c}")?;
        }
        Ok(())
    }
}

impl<R: Ring> Serialize for Series<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

pub type RatSeries = Series<BigRational>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Named closed-form generating functions, as ordinary series with exact
/// rational coefficients. Exponential ones are converted by `n!`.
pub const CLOSED_FORMS: [&str; 7] = [
    "involutions",
    "no-double-exc-or-def",
    "unimodal-cycles",
    "increasing-exc-and-def",
    "avoid321",
    "bell",
    "derangements",
];

pub fn closed_form(name: &str, order: usize) -> Result<RatSeries> {
    let n = order;
    let z = RatSeries::monomial(rat(1), 1, n);
    let one = RatSeries::one(n);
    let poly = |cs: &[BigRational]| RatSeries::new(cs.to_vec(), n);
    let s = match name {
        // e^{z + z^2/2}
        "involutions" => poly(&[rat(0), rat(1), ratio(1, 2)]).exp()?.egf_to_ogf(),
        // e^z / cos z
        "no-double-exc-or-def" => z.exp()?.div(&z.cos()?)?.egf_to_ogf(),
        // exp((e^{2z} + 2z - 1) / 4)
        "unimodal-cycles" => {
            let e2z = z.scale(&rat(2)).exp()?;
            let inner = e2z.add(&z.scale(&rat(2)))?.sub(&one)?.scale(&ratio(1, 4));
            inner.exp()?.egf_to_ogf()
        }
        // 2 / (1 + z + sqrt(1 - 6z + 5z^2))
        "increasing-exc-and-def" => {
            let root = poly(&[rat(1), rat(-6), rat(5)]).sqrt()?;
            one.scale(&rat(2)).div(&one.add(&z)?.add(&root)?)?
        }
        // 2 / (1 + (1 - 2x + v) z + sqrt(1 - 2(1+v) z + (1-v)^2 z^2)) at x = v = 1
        "avoid321" => {
            let root = poly(&[rat(1), rat(-4)]).sqrt()?;
            one.scale(&rat(2)).div(&one.add(&root)?)?
        }
        // e^{e^z - 1}
        "bell" => z.exp()?.sub(&one)?.exp()?.egf_to_ogf(),
        // e^{-z} / (1 - z)
        "derangements" => z.scale(&rat(-1)).exp()?.div(&one.sub(&z)?)?.egf_to_ogf(),
        other => {
            return Err(Error::UnknownName {
                kind: "closed form",
                name: other.to_string(),
            })
        }
    };
    Ok(s)
}

/// Integer coefficients of a rational series, if they all are integers.
pub fn integer_coeffs(s: &RatSeries) -> Option<Vec<BigInt>> {
    s.coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &RatSeries) -> Vec<i64> {
        integer_coeffs(s)
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    fn p(cs: &[i64], n: usize) -> RatSeries {
        RatSeries::new(cs.iter().map(|&c| rat(c)).collect(), n)
    }

    #[test]
    fn reciprocal_geometric() {
        let s = p(&[1, -1], 6).reciprocal().unwrap();
        assert_eq!(ints(&s), vec![1; 7]);
        assert_eq!(p(&[0, 1], 3).reciprocal(), Err(Error::NotInvertible));
    }

    #[test]
    fn sqrt_squares_back() {
        let f = p(&[1, -6, 5], 10);
        let r = f.sqrt().unwrap();
        assert_eq!(&ints(&r)[..4], &[1, -3, -2, -6]);
        assert_eq!(r.mul(&r).unwrap(), f);
        assert!(matches!(p(&[4, 1], 3).sqrt(), Err(Error::ConstantTerm { .. })));
    }

    #[test]
    fn exp_inverse_pair() {
        let z = p(&[0, 1], 9);
        let prod = z.exp().unwrap().mul(&z.scale(&rat(-1)).exp().unwrap()).unwrap();
        assert_eq!(prod, RatSeries::one(9));
        assert!(p(&[1, 1], 3).exp().is_err());
    }

    #[test]
    fn cos_sin_identity() {
        let z = p(&[0, 1], 10);
        let (c, s) = z.cos_sin().unwrap();
        let sum = c.mul(&c).unwrap().add(&s.mul(&s).unwrap()).unwrap();
        assert_eq!(sum, RatSeries::one(10));
        assert_eq!(c.egf_to_ogf().coeffs()[4], rat(1));
        assert_eq!(c.egf_to_ogf().coeffs()[2], rat(-1));
    }

    #[test]
    fn composition_and_orders() {
        // 1/(1-u) at u = 2z gives powers of two
        let geo = p(&[1, -1], 6).reciprocal().unwrap();
        let s = geo.compose(&p(&[0, 2], 6)).unwrap();
        assert_eq!(ints(&s), vec![1, 2, 4, 8, 16, 32, 64]);
        assert_eq!(
            p(&[1], 3).add(&p(&[1], 4)),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        );
        assert!(geo.compose(&p(&[1, 1], 6)).is_err());
    }

    #[test]
    fn shifts() {
        let s = p(&[1, 2, 3], 4);
        assert_eq!(ints(&s.shift_up(2)), vec![0, 0, 1, 2, 3]);
        assert_eq!(ints(&s.shift_up(2).shift_down(2).unwrap()), vec![1, 2, 3]);
        assert!(s.shift_down(1).is_err());
    }

    #[test]
    fn egf_ogf_round_trip() {
        let e = p(&[0, 1], 7).exp().unwrap();
        assert_eq!(ints(&e.egf_to_ogf()), vec![1; 8]);
        assert_eq!(e.egf_to_ogf().ogf_to_egf(), e);
    }

    #[test]
    fn closed_forms_known_prefixes() {
        let c = |name| ints(&closed_form(name, 7).unwrap());
        assert_eq!(c("involutions"), vec![1, 1, 2, 4, 10, 26, 76, 232]);
        assert_eq!(c("no-double-exc-or-def"), vec![1, 1, 2, 4, 12, 36, 152, 624]);
        assert_eq!(c("increasing-exc-and-def"), vec![1, 1, 2, 6, 21, 79, 311, 1265]);
        assert_eq!(c("avoid321"), vec![1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(c("bell"), vec![1, 1, 2, 5, 15, 52, 203, 877]);
        assert_eq!(c("derangements"), vec![1, 0, 1, 2, 9, 44, 265, 1854]);
        assert_eq!(c("unimodal-cycles")[..5], [1, 1, 2, 6, 22]);
        assert!(closed_form("nope", 3).is_err());
    }

    #[test]
    fn polynomial_coefficients() {
        let x = MultiPoly::var(crate::poly::Var::X);
        let s = Series::new(vec![MultiPoly::one(), MultiPoly::zero().sub(&x)], 4);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.coeff(3).to_string(), "x^3");
        let two = Series::new(vec![MultiPoly::constant(2)], 2);
        assert_eq!(two.reciprocal(), Err(Error::NotInvertible));
    }
}
