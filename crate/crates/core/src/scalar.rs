//! Exact rationals and truncated power series in ℏ.
//!
//! Every coefficient in the crate is a [`Rational`]. Deformed objects carry
//! [`HbarSeries`] coefficients: polynomials in ℏ modulo ℏ^K, where K (the
//! truncation order) is fixed when the series is created. Arithmetic between
//! series of different orders is refused rather than silently re-truncated.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::Error;

pub type Rational = BigRational;

/// Shorthand for the integer-valued rational `n`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` as a rational. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Canonical text form: `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// Serde adapter for a single rational stored as a `"p/q"` string.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

/// A truncated power series `c₀ + c₁ℏ + … + c_{K−1}ℏ^{K−1}` with exact
/// rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HbarSeries {
    coeffs: Vec<Rational>,
}

impl HbarSeries {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "truncation order must be at least 1");
        HbarSeries {
            coeffs: vec![Rational::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::monomial(0, c, order)
    }

    /// `c·ℏ^power`; zero when `power >= order`.
    pub fn monomial(power: usize, c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power < order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Builds a series from its leading coefficients, zero-extending to `order`.
    /// Fails if nonzero coefficients would be dropped.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Result<Self, Error> {
        if order == 0 {
            return Err(Error::Usage("truncation order must be at least 1".into()));
        }
        if coeffs.len() > order {
            if coeffs[order..].iter().any(|c| !c.is_zero()) {
                return Err(Error::Usage(format!(
                    "series has nonzero terms at or beyond ℏ^{order}; refusing to truncate"
                )));
            }
            coeffs.truncate(order);
        }
        coeffs.resize(order, Rational::zero());
        Ok(HbarSeries { coeffs })
    }

    /// Truncation order K.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> &Rational {
        &self.coeffs[power]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, or K for the zero series.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        Ok(HbarSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        Ok(HbarSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product with terms of order ≥ K discarded.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let k = self.order();
        let mut out = vec![Rational::zero(); k];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..k - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(HbarSeries { coeffs: out })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HbarSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by ℏ^m.
    pub fn shift(&self, m: usize) -> Self {
        let k = self.order();
        let mut out = vec![Rational::zero(); k];
        for i in 0..k.saturating_sub(m) {
            out[i + m] = self.coeffs[i].clone();
        }
        HbarSeries { coeffs: out }
    }

    /// Drops every coefficient of order ≥ `order`, producing a series of the
    /// smaller truncation order. Explicit re-truncation only.
    pub fn truncate_to(&self, order: usize) -> Self {
        assert!(order >= 1 && order <= self.order());
        HbarSeries {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    /// Value at ℏ = 1 (sum of the retained coefficients).
    pub fn at_one(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc + c)
    }
}

impl fmt::Debug for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = format_rational(c);
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ℏ")?,
                _ => write!(f, "({c})ℏ^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " [K={}]", self.order())
    }
}

macro_rules! series_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&HbarSeries> for &HbarSeries {
            type Output = HbarSeries;
            fn $method(self, rhs: &HbarSeries) -> HbarSeries {
                self.$checked(rhs).expect("mismatched truncation orders")
            }
        }
        impl $trait for HbarSeries {
            type Output = HbarSeries;
            fn $method(self, rhs: HbarSeries) -> HbarSeries {
                (&self).$checked(&rhs).expect("mismatched truncation orders")
            }
        }
    };
}

series_binop!(Add, add, checked_add);
series_binop!(Sub, sub, checked_sub);
series_binop!(Mul, mul, checked_mul);

impl AddAssign<&HbarSeries> for HbarSeries {
    fn add_assign(&mut self, rhs: &HbarSeries) {
        assert_eq!(self.order(), rhs.order(), "mismatched truncation orders");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&HbarSeries> for HbarSeries {
    fn sub_assign(&mut self, rhs: &HbarSeries) {
        assert_eq!(self.order(), rhs.order(), "mismatched truncation orders");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for &HbarSeries {
    type Output = HbarSeries;
    fn neg(self) -> HbarSeries {
        HbarSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Serialize for HbarSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for HbarSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        if raw.is_empty() {
            return Err(de::Error::custom("empty series"));
        }
        let coeffs = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(de::Error::custom)?;
        Ok(HbarSeries { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(cs: &[i64]) -> HbarSeries {
        HbarSeries::from_coeffs(cs.iter().map(|&c| rat(c)).collect(), cs.len()).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&s(&[1, 2]) + &s(&[0, 3]), s(&[1, 5]));
        assert_eq!(&s(&[4, 7, 1]) + &HbarSeries::zero(3), s(&[4, 7, 1]));
        let a = HbarSeries::from_coeffs(vec![ratio(1, 2), rat(1)], 2).unwrap();
        let b = HbarSeries::from_coeffs(vec![ratio(1, 2), rat(-1)], 2).unwrap();
        assert_eq!(&a + &b, HbarSeries::one(2));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&s(&[1, 1]) * &s(&[1, -1]), HbarSeries::one(2));
        assert!((&s(&[0, 1]) * &s(&[0, 1])).is_zero());
        assert_eq!(&s(&[1, 1, 0]) * &s(&[1, 1, 0]), s(&[1, 2, 1]));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(HbarSeries::monomial(2, rat(3), 4).valuation(), 2);
        assert_eq!(HbarSeries::zero(4).valuation(), 4);
        assert_eq!(s(&[1, 1]).valuation(), 0);
    }

    #[test]
    fn mismatch_is_an_error() {
        let err = s(&[1, 2]).checked_add(&s(&[1, 2, 3])).unwrap_err();
        assert!(matches!(err, Error::TruncationMismatch { left: 2, right: 3 }));
        assert!(s(&[1]).checked_mul(&s(&[1, 0])).is_err());
    }

    #[test]
    fn no_silent_truncation_at_ingestion() {
        assert!(HbarSeries::from_coeffs(vec![rat(1), rat(0), rat(2)], 2).is_err());
        let padded = HbarSeries::from_coeffs(vec![rat(1)], 3).unwrap();
        assert_eq!(padded, s(&[1, 0, 0]));
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(5)), "5");
        assert_eq!(parse_rational(" 10/-4 ").unwrap(), ratio(-5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn series_json_is_string_array() {
        let a = HbarSeries::from_coeffs(vec![rat(0), ratio(1, 2)], 3).unwrap();
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"["0","1/2","0"]"#);
        let back: HbarSeries = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
    }

    fn arb_series(k: usize) -> impl Strategy<Value = HbarSeries> {
        proptest::collection::vec((-5i64..=5, 1i64..=3), k).prop_map(move |v| {
            HbarSeries::from_coeffs(v.into_iter().map(|(p, q)| ratio(p, q)).collect(), k).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(4), b in arb_series(4), c in arb_series(4)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn valuation_is_additive(a in arb_series(5), b in arb_series(5)) {
            let expected = (a.valuation() + b.valuation()).min(5);
            prop_assert_eq!((&a * &b).valuation(), expected);
        }

        #[test]
        fn rational_string_round_trip(p in -10_000i64..10_000, q in 1i64..500) {
            let x = ratio(p, q);
            prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
    }
}
