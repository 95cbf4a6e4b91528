//! Exact scalar domains.
//!
//! Every geometric routine in this crate is generic over [`Scalar`], a field
//! with exact equality. Two implementations exist: [`ExactRational`] for
//! sampling concrete configurations and
//! [`RationalFunction`](crate::ratfunc::RationalFunction) for symbolic proof.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseRationalError;

/// A commutative field with exact (decidable) zero testing.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(value: i64) -> Self;
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer)
            .checked_div(&Self::from_int(denom))
            .expect("zero denominator in constant")
    }

    fn is_zero(&self) -> bool;

    /// `None` when `rhs` is zero.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;

    /// Sign when it is decidable for this domain; symbolic values return
    /// `None` unless they are constants.
    fn sign(&self) -> Option<Ordering>;

    /// Rescale a homogeneous tuple in place by a nonzero factor so that the
    /// entries become as small as the domain allows. The tuple keeps its
    /// projective meaning; the default does nothing.
    fn make_primitive(_coords: &mut [Self]) {}

    fn square(&self) -> Self {
        self.clone() * self
    }
}

/// Arbitrary-precision rational number in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Option<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return None;
        }
        Some(Self(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(value.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Self(self.0.recip()))
    }

    /// Approximate value, for rendering and reporting only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for ExactRational {
    fn from(value: BigRational) -> Self {
        Self(value)
    }
}

impl From<i64> for ExactRational {
    fn from(value: i64) -> Self {
        Self::from_integer(value)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p`, `p/q` and plain decimals such as `-0.125` or `3.`.
impl FromStr for ExactRational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || ParseRationalError(s.to_string());
        if s.is_empty() {
            return Err(err());
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            return Self::new(p, q).ok_or_else(err);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let (negative, int_digits) = match int_part.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
            };
            let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
            if !all_digits(int_digits)
                || !all_digits(frac_part)
                || (int_digits.is_empty() && frac_part.is_empty())
            {
                return Err(err());
            }
            let digits = format!("{int_digits}{frac_part}");
            let mut numer: BigInt = if digits.is_empty() {
                BigInt::zero()
            } else {
                digits.parse().map_err(|_| err())?
            };
            if negative {
                numer = -numer;
            }
            let denom = num_traits::pow(BigInt::from(10), frac_part.len());
            return Self::new(numer, denom).ok_or_else(err);
        }
        let p: BigInt = s.parse().map_err(|_| err())?;
        Ok(Self::from_integer(p))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational(self.0.$method(&rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'b ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl Scalar for ExactRational {
    fn zero() -> Self {
        Self(BigRational::zero())
    }

    fn one() -> Self {
        Self(BigRational::one())
    }

    fn from_int(value: i64) -> Self {
        Self::from_integer(value)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.0.is_zero()).then(|| Self(&self.0 / &rhs.0))
    }

    fn sign(&self) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::zero()))
    }

    /// Scales by a positive factor to coprime integers.
    fn make_primitive(coords: &mut [Self]) {
        let mut lcm = BigInt::one();
        for c in coords.iter() {
            lcm = lcm.lcm(c.0.denom());
        }
        let mut gcd = BigInt::zero();
        for c in coords.iter() {
            let scaled = c.0.numer() * (&lcm / c.0.denom());
            gcd = gcd.gcd(&scaled);
        }
        if gcd.is_zero() {
            return;
        }
        let factor = BigRational::new(lcm, gcd);
        for c in coords.iter_mut() {
            c.0 = &c.0 * &factor;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(q("1/5"), ExactRational::new(1, 5).unwrap());
        assert_eq!(q("-2/4"), ExactRational::new(-1, 2).unwrap());
        assert_eq!(q("0.2"), ExactRational::new(1, 5).unwrap());
        assert_eq!(q("-1.25"), ExactRational::new(-5, 4).unwrap());
        assert_eq!(q(".5"), ExactRational::new(1, 2).unwrap());
        assert_eq!(q("7"), ExactRational::from_integer(7));
        assert!("1/0".parse::<ExactRational>().is_err());
        assert!("abc".parse::<ExactRational>().is_err());
        assert!(".".parse::<ExactRational>().is_err());
        assert!("1.2.3".parse::<ExactRational>().is_err());
    }

    #[test]
    fn displays_canonical_form() {
        assert_eq!(q("6/4").to_string(), "3/2");
        assert_eq!(q("4/2").to_string(), "2");
        assert_eq!(q("0/7").to_string(), "0");
        assert_eq!(q("3/-6").to_string(), "-1/2");
    }

    #[test]
    fn primitive_triple_clears_denominators() {
        let mut t = [q("-1/5"), q("4/5"), q("1")];
        ExactRational::make_primitive(&mut t);
        assert_eq!(t, [q("-1"), q("4"), q("5")]);
        let mut z = [q("0"), q("0")];
        ExactRational::make_primitive(&mut z);
        assert_eq!(z, [q("0"), q("0")]);
    }

    #[test]
    fn division_by_zero_is_none() {
        assert!(q("1").checked_div(&q("0")).is_none());
        assert_eq!(q("1").checked_div(&q("4")).unwrap(), q("1/4"));
    }

    proptest::proptest! {
        #[test]
        fn display_round_trips(p in -10_000i64..10_000, d in 1i64..10_000) {
            let r = ExactRational::new(p, d).unwrap();
            proptest::prop_assert_eq!(r.to_string().parse::<ExactRational>().unwrap(), r);
        }
    }
}
