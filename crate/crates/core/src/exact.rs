//! Exact rational scalars and vectors.
//!
//! Every quantity in this crate (term values, gap endpoints, radii, tail
//! sums) is a [`Rat`]. Nothing is ever rounded. [`Point`] is a fixed-length
//! vector of rationals and doubles as a group element.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number in canonical form (`den > 0`, `gcd(num, den) = 1`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rat> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    /// `num / den` for small literals; panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Rat {
        Rat::new(num, den).expect("zero denominator")
    }

    pub fn int(v: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Rat {
        Rat(BigRational::from_integer(v))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    /// `2^exp` for any signed exponent.
    pub fn pow2(exp: i32) -> Rat {
        let base = BigRational::from_integer(BigInt::from(2));
        Rat(num::pow::Pow::pow(base, exp))
    }

    /// `self^exp` for a nonnegative exponent.
    pub fn powu(&self, exp: u32) -> Rat {
        Rat(num::pow::Pow::pow(&self.0, exp))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn checked_div(&self, other: &Rat) -> Result<Rat> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(&self.0 / &other.0))
    }

    pub fn min_of<'a>(&'a self, other: &'a Rat) -> &'a Rat {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max_of<'a>(&'a self, other: &'a Rat) -> &'a Rat {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Lossy conversion used only for presentation (SVG coordinates).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Integer value if the rational is an integer that fits in `u64`.
    pub fn to_u64(&self) -> Option<u64> {
        if self.is_integer() {
            self.0.numer().to_u64()
        } else {
            None
        }
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Rat {
        Rat::int(v)
    }
}

impl From<BigRational> for Rat {
    fn from(v: BigRational) -> Rat {
        Rat(v)
    }
}

/// Parses `[+-]digits`, `[+-]digits/digits` or `[+-]digits.digits`.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let malformed = |reason: &str| Error::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let t = text.trim();
    let (negative, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());

    let value = if let Some((n, d)) = body.split_once('/') {
        if !all_digits(n) || !all_digits(d) {
            return Err(malformed("expected digits/digits"));
        }
        let num: BigInt = n.parse().map_err(|_| malformed("bad numerator"))?;
        let den: BigInt = d.parse().map_err(|_| malformed("bad denominator"))?;
        Rat::new(num, den)?
    } else if let Some((int_part, frac_part)) = body.split_once('.') {
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(malformed("expected digits.digits"));
        }
        let digits = format!("{int_part}{frac_part}");
        let num: BigInt = digits.parse().map_err(|_| malformed("bad decimal"))?;
        let den = num::pow::pow(BigInt::from(10), frac_part.len());
        Rat::new(num, den)?
    } else {
        if !all_digits(body) {
            return Err(malformed("expected a rational"));
        }
        Rat::from_bigint(body.parse().map_err(|_| malformed("bad integer"))?)
    };
    Ok(if negative { -value } else { value })
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        parse_rat(s)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0.$m(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

// Division by zero panics, as for the primitive types; use `checked_div`
// when the divisor is data.
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

/// A vector of rationals; ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point(Vec<Rat>);

impl Point {
    pub fn new(coords: Vec<Rat>) -> Point {
        Point(coords)
    }

    pub fn zero(dim: usize) -> Point {
        Point(vec![Rat::zero(); dim])
    }

    pub fn scalar(v: Rat) -> Point {
        Point(vec![v])
    }

    /// Shorthand for small literal points: `Point::ints(&[1, -1])`.
    pub fn ints(v: &[i64]) -> Point {
        Point(v.iter().map(|&x| Rat::int(x)).collect())
    }

    /// Shorthand for fractions: `Point::fracs(&[(7, 8), (1, 8)])`.
    pub fn fracs(v: &[(i64, i64)]) -> Point {
        Point(v.iter().map(|&(n, d)| Rat::frac(n, d)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.0[i]
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    fn zip_with(&self, other: &Point, f: impl Fn(&Rat, &Rat) -> Rat) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }

    /// Plain vector sum (no modular reduction).
    pub fn plus(&self, other: &Point) -> Point {
        self.zip_with(other, |a, b| a + b)
    }

    /// Plain vector difference (no modular reduction).
    pub fn minus(&self, other: &Point) -> Point {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn negated(&self) -> Point {
        Point(self.0.iter().map(|c| -c).collect())
    }

    pub fn scaled(&self, c: &Rat) -> Point {
        Point(self.0.iter().map(|x| x * c).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Point, D::Error> {
        Ok(Point(Vec::<Rat>::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_rat("3/6").unwrap(), Rat::frac(1, 2));
        assert_eq!(parse_rat("7/8").unwrap().to_string(), "7/8");
        let z = parse_rat("-0/5").unwrap();
        assert_eq!(z, Rat::zero());
        assert_eq!(z.to_string(), "0");
        assert_eq!(z.denom(), &BigInt::from(1));
        assert!(matches!(parse_rat("1/0"), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn parse_decimals_and_signs() {
        assert_eq!(parse_rat("0.125").unwrap(), Rat::frac(1, 8));
        assert_eq!(parse_rat("-2.50").unwrap(), Rat::frac(-5, 2));
        assert_eq!(parse_rat("+4").unwrap(), Rat::int(4));
        assert_eq!(parse_rat(" 12 ").unwrap(), Rat::int(12));
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in ["", "-", "1/", "/2", "1.2.3", "1/2/3", "a", "1e3", ".5", "5.", "--1", "1/-2"] {
            assert!(parse_rat(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn render_is_canonical() {
        assert_eq!(Rat::frac(4, -6).to_string(), "-2/3");
        assert_eq!(Rat::frac(8, 4).to_string(), "2");
        assert_eq!(Rat::pow2(-20).to_string(), "1/1048576");
    }

    #[test]
    fn wide_subset_sums_stay_exact() {
        // 20 terms over 2^20 overflow 64-bit numerators after a few products.
        let total: Rat = (1..=20).map(|k| Rat::pow2(-k) * Rat::pow2(-k)).sum();
        let expected = (Rat::one() - Rat::pow2(-40)) / Rat::int(3);
        assert_eq!(total, expected);
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (any::<i64>(), 1u64..=u64::MAX).prop_map(|(n, d)| Rat::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(r in arb_rat()) {
            prop_assert_eq!(parse_rat(&r.to_string()).unwrap(), r);
        }

        #[test]
        fn additive_inverse(a in arb_rat()) {
            prop_assert!((&a + &(-&a)).is_zero());
        }

        #[test]
        fn order_matches_sign_of_difference(a in arb_rat(), b in arb_rat()) {
            prop_assert_eq!(a < b, (&a - &b).is_negative());
            prop_assert_eq!(a == b, (&a - &b).is_zero());
        }

        #[test]
        fn arithmetic_is_exact(a in arb_rat(), b in arb_rat()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a);
            }
        }
    }
}
