//! Exact rational arithmetic.
//!
//! [`Rat`] is a reduced arbitrary-precision fraction and [`ExtRat`] adjoins a
//! single `+∞`. Both serialize as strings: `"p/q"` with `q > 0` in lowest
//! terms, or `"inf"`. Nothing in this crate touches floating point except
//! [`Rat::to_f64`], which exists for human-readable reporting only.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("expected a positive value, got {0}")]
    NonPositive(String),
    #[error("root index must be positive")]
    ZeroRoot,
    #[error("cannot parse {0:?} as a rational (expected \"p/q\", \"p\" or \"inf\")")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// Reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// Panics if `den == 0`; use [`Rat::from_parts`] for untrusted input.
    pub fn new(num: i64, den: i64) -> Self {
        Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn from_parts(num: BigInt, den: BigInt) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
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

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rat) -> Result<Self, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents invert (panics on `0^-k`).
    pub fn pow(&self, exp: i32) -> Self {
        Rat(Pow::pow(&self.0, exp))
    }

    /// The rational `n`-th root of `self`, if there is one.
    ///
    /// Only nonnegative inputs are considered; a reduced fraction is a
    /// perfect `n`-th power iff numerator and denominator both are.
    pub fn exact_root(&self, n: u32) -> Option<Rat> {
        if n == 0 || self.is_negative() {
            return None;
        }
        let num_root = self.numer().nth_root(n);
        let den_root = self.denom().nth_root(n);
        if Pow::pow(&num_root, n) == *self.numer() && Pow::pow(&den_root, n) == *self.denom() {
            Some(Rat(BigRational::new(num_root, den_root)))
        } else {
            None
        }
    }

    /// Lossy, for display columns only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn max(self, other: Rat) -> Rat {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Rat) -> Rat {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat(r)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || ExactError::Parse(s.to_string());
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = n.parse().map_err(|_| bad())?;
        let den: BigInt = d.parse().map_err(|_| bad())?;
        Rat::from_parts(num, den)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident) => {
        impl $Trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($Trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $Trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat($Trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $Trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($Trait::$method(&self.0, rhs.0))
            }
        }
        impl<'a, 'b> $Trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat($Trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division panics on a zero divisor, like the integer types.
forward_binop!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

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

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a Rat> for Rat {
    fn product<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |acc, x| acc * x)
    }
}

/// A rational or `+∞`. There is no `-∞`.
///
/// The derived order places every finite value below `Infinity`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRat {
    Finite(Rat),
    Infinity,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(Rat::zero())
    }

    pub fn one() -> Self {
        ExtRat::Finite(Rat::one())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinity)
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(q) => Some(q),
            ExtRat::Infinity => None,
        }
    }

    /// `c · self` for `c > 0`, with `c · ∞ = ∞`.
    pub fn scale(&self, c: &Rat) -> Result<ExtRat, ExactError> {
        if !c.is_positive() {
            return Err(ExactError::NonPositive(c.to_string()));
        }
        Ok(match self {
            ExtRat::Finite(q) => ExtRat::Finite(q * c),
            ExtRat::Infinity => ExtRat::Infinity,
        })
    }

    pub fn max(self, other: ExtRat) -> ExtRat {
        std::cmp::max(self, other)
    }

    pub fn min(self, other: ExtRat) -> ExtRat {
        std::cmp::min(self, other)
    }
}

impl From<Rat> for ExtRat {
    fn from(q: Rat) -> Self {
        ExtRat::Finite(q)
    }
}

impl PartialEq<Rat> for ExtRat {
    fn eq(&self, other: &Rat) -> bool {
        matches!(self, ExtRat::Finite(q) if q == other)
    }
}

impl PartialOrd<Rat> for ExtRat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(match self {
            ExtRat::Finite(q) => q.cmp(other),
            ExtRat::Infinity => Ordering::Greater,
        })
    }
}

impl Add for ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinity,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(q) => fmt::Display::fmt(q, f),
            ExtRat::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtRat {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" | "∞" => Ok(ExtRat::Infinity),
            other => other.parse().map(ExtRat::Finite),
        }
    }
}

impl Serialize for ExtRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Orders `q` against `base^(1/root)` by comparing `q^root` with `base`.
pub fn cmp_pow(q: &Rat, base: &Rat, root: u32) -> Result<Ordering, ExactError> {
    if root == 0 {
        return Err(ExactError::ZeroRoot);
    }
    if !q.is_positive() {
        return Err(ExactError::NonPositive(q.to_string()));
    }
    if !base.is_positive() {
        return Err(ExactError::NonPositive(base.to_string()));
    }
    let exp = i32::try_from(root).map_err(|_| ExactError::ZeroRoot)?;
    Ok(q.pow(exp).cmp(base))
}

/// Parses a comma-separated list of rationals such as `1,3/2,4`.
pub fn parse_list(s: &str) -> Result<Vec<Rat>, ExactError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_are_reduced() {
        assert_eq!(r("6/-4").to_string(), "-3/2");
        assert_eq!(r("5").to_string(), "5/1");
        assert_eq!(r("0/7").to_string(), "0/1");
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
        assert_eq!("inf".parse::<ExtRat>().unwrap(), ExtRat::Infinity);
    }

    #[test]
    fn cmp_pow_examples() {
        assert_eq!(cmp_pow(&r("21/20"), &r("2"), 4).unwrap(), Ordering::Less);
        assert_eq!(r("21/20").pow(4), r("194481/160000"));
        assert_eq!(cmp_pow(&r("1"), &r("1"), 7).unwrap(), Ordering::Equal);
        assert_eq!(cmp_pow(&r("3/2"), &r("2"), 4).unwrap(), Ordering::Greater);
    }

    #[test]
    fn cmp_pow_rejects_nonpositive() {
        assert!(cmp_pow(&r("0"), &r("2"), 2).is_err());
        assert!(cmp_pow(&r("1"), &r("-2"), 2).is_err());
        assert!(cmp_pow(&r("1"), &r("2"), 0).is_err());
    }

    #[test]
    fn extended_order_and_arithmetic() {
        let big = ExtRat::Finite(r("1000000000000000000000"));
        assert!(ExtRat::Infinity > big);
        assert_eq!(big.clone() + ExtRat::Infinity, ExtRat::Infinity);
        assert_eq!(ExtRat::Infinity.scale(&r("1/3")).unwrap(), ExtRat::Infinity);
        assert!(ExtRat::Infinity.scale(&r("0")).is_err());
        assert!(ExtRat::Infinity > r("5"));
    }

    #[test]
    fn exact_root() {
        assert_eq!(r("81/16").exact_root(4), Some(r("3/2")));
        assert_eq!(r("2").exact_root(2), None);
        assert_eq!(r("4/9").exact_root(2), Some(r("2/3")));
    }

    #[test]
    fn serde_round_trip_strings() {
        let v = vec![ExtRat::Finite(r("-7/3")), ExtRat::Infinity];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["-7/3","inf"]"#);
        let back: Vec<ExtRat> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn rat() -> impl Strategy<Value = Rat> {
            (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| Rat::new(n, d))
        }

        proptest! {
            #[test]
            fn add_sub_round_trip(a in rat(), b in rat()) {
                prop_assert_eq!((&a + &b) - &b, a);
            }

            #[test]
            fn mul_div_round_trip(a in rat(), b in rat()) {
                prop_assume!(!b.is_zero());
                prop_assert_eq!((&a * &b) / &b, a);
            }

            #[test]
            fn cmp_pow_matches_direct_powering(n in 1i64..500, d in 1i64..500,
                                               bn in 1i64..500, bd in 1i64..500, k in 1u32..=8) {
                let q = Rat::new(n, d);
                let b = Rat::new(bn, bd);
                let direct = (q.numer().pow(k) * b.denom()).cmp(&(b.numer() * q.denom().pow(k)));
                prop_assert_eq!(cmp_pow(&q, &b, k).unwrap(), direct);
            }
        }
    }
}
