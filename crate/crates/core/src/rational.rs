//! Exact nonnegative rationals used for vertex weights.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A nonnegative rational in lowest terms with a positive denominator.
///
/// Displayed as `p` when the denominator is one and as `p/q` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalError {
    #[error("`{0}` is not an integer or p/q rational")]
    Malformed(String),
    #[error("`{0}` has a zero denominator")]
    ZeroDenominator(String),
    #[error("`{0}` is negative")]
    Negative(String),
}

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: u64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`, reduced. Fails on a zero denominator.
    pub fn new(numer: u64, denom: u64) -> Result<Self, RationalError> {
        if denom == 0 {
            return Err(RationalError::ZeroDenominator(format!("{numer}/{denom}")));
        }
        Ok(Rational(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    /// Builds `numer / denom` from unsigned big integers; `denom` must be nonzero.
    pub fn from_biguint(numer: BigUint, denom: BigUint) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(
            BigInt::from_biguint(Sign::Plus, numer),
            BigInt::from_biguint(Sign::Plus, denom),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    pub fn denom(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Exact product with a nonnegative integer.
    pub fn scale(&self, k: u64) -> Self {
        Rational(&self.0 * BigRational::from_integer(BigInt::from(k)))
    }

    /// Compares `self` against `fraction · total` without leaving exact arithmetic.
    pub fn cmp_fraction_of(&self, fraction: &Rational, total: &Rational) -> Ordering {
        self.0.cmp(&(&fraction.0 * &total.0))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || RationalError::Malformed(s.to_string());
        let parse_int = |part: &str| -> Result<BigInt, RationalError> {
            let digits = part.strip_prefix('-').unwrap_or(part);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            part.parse::<BigInt>().map_err(|_| malformed())
        };
        let (numer, denom) = match s.split_once('/') {
            Some((p, q)) => (parse_int(p)?, parse_int(q)?),
            None => (parse_int(s)?, BigInt::one()),
        };
        if denom.is_zero() {
            return Err(RationalError::ZeroDenominator(s.to_string()));
        }
        let value = BigRational::new(numer, denom);
        if value.is_negative() {
            return Err(RationalError::Negative(s.to_string()));
        }
        Ok(Rational(value))
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &'a Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        let mut total = Rational::zero();
        for r in iter {
            total += r;
        }
        total
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions_in_lowest_terms() {
        assert_eq!("1".parse::<Rational>().unwrap(), Rational::one());
        let half: Rational = "2/4".parse().unwrap();
        assert_eq!(half, Rational::new(1, 2).unwrap());
        assert_eq!(half.to_string(), "1/2");
        assert_eq!("0/7".parse::<Rational>().unwrap().to_string(), "0");
        assert_eq!("12/4".parse::<Rational>().unwrap().to_string(), "3");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            "-1/3".parse::<Rational>(),
            Err(RationalError::Negative(_))
        ));
        assert!(matches!(
            "1/0".parse::<Rational>(),
            Err(RationalError::ZeroDenominator(_))
        ));
        assert!(matches!(
            "1.5".parse::<Rational>(),
            Err(RationalError::Malformed(_))
        ));
        assert!(matches!(
            "".parse::<Rational>(),
            Err(RationalError::Malformed(_))
        ));
        assert!(matches!(
            "1/".parse::<Rational>(),
            Err(RationalError::Malformed(_))
        ));
        assert!(matches!(
            "+2".parse::<Rational>(),
            Err(RationalError::Malformed(_))
        ));
    }

    #[test]
    fn negative_zero_is_zero() {
        assert_eq!("-0".parse::<Rational>().unwrap(), Rational::zero());
    }

    #[test]
    fn fraction_comparison_is_exact() {
        let third = Rational::new(1, 3).unwrap();
        let w = Rational::from_integer(3);
        assert_eq!(Rational::one().cmp_fraction_of(&third, &w), Ordering::Equal);
        let just_below = Rational::new(999_999_999, 1_000_000_000).unwrap();
        assert_eq!(just_below.cmp_fraction_of(&third, &w), Ordering::Less);
    }

    #[test]
    fn serde_uses_string_form() {
        let r = Rational::new(7, 30).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"7/30\"");
        let back: Rational = serde_json::from_str("\"7/30\"").unwrap();
        assert_eq!(back, r);
    }
}
