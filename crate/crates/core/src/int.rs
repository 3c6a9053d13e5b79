//! Exact integers that stay in a machine word until an operation overflows.
//!
//! Every arithmetic operation is performed with checked `i64` arithmetic first
//! and only falls back to [`BigInt`] when the checked operation fails. Values
//! are kept normalized: a number that fits in `i64` is always stored as
//! [`Int::Small`], so the derived equality and hashing are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Int::Small(v) => *v > 0,
            Int::Big(b) => b.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Number of bits in the magnitude; used to report growth in diagnostics.
    pub fn bits(&self) -> u64 {
        match self {
            Int::Small(v) => 64 - v.unsigned_abs().leading_zeros() as u64,
            Int::Big(b) => b.bits(),
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let g = a.unsigned_abs().gcd(&b.unsigned_abs());
                match i64::try_from(g) {
                    Ok(v) => Int::Small(v),
                    Err(_) => Int::Big(BigInt::from(g)),
                }
            }
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g` and `g >= 0`.
    pub fn extended_gcd(&self, other: &Int) -> (Int, Int, Int) {
        let e = self.to_big().extended_gcd(&other.to_big());
        let (g, s, t) = if e.gcd.is_negative() {
            (-e.gcd, -e.x, -e.y)
        } else {
            (e.gcd, e.x, e.y)
        };
        (Int::from_big(g), Int::from_big(s), Int::from_big(t))
    }

    /// Exact division; `None` if `divisor` is zero or does not divide `self`.
    pub fn div_exact(&self, divisor: &Int) -> Option<Int> {
        if divisor.is_zero() {
            return None;
        }
        match (self, divisor) {
            (Int::Small(a), Int::Small(b)) => {
                if a.checked_rem(*b).unwrap_or(0) != 0 {
                    return None;
                }
                match a.checked_div(*b) {
                    Some(q) => Some(Int::Small(q)),
                    None => Some(Int::from_big(BigInt::from(*a) / BigInt::from(*b))),
                }
            }
            _ => {
                let (q, r) = self.to_big().div_rem(&divisor.to_big());
                r.is_zero().then(|| Int::from_big(q))
            }
        }
    }

    /// Floor division (rounds toward negative infinity).
    pub fn div_floor(&self, divisor: &Int) -> Int {
        assert!(!divisor.is_zero(), "division by zero");
        match (self, divisor) {
            (Int::Small(a), Int::Small(b)) if !(*a == i64::MIN && *b == -1) => Int::Small(a.div_floor(b)),
            _ => Int::from_big(self.to_big().div_floor(&divisor.to_big())),
        }
    }

    /// Least non-negative residue modulo a positive modulus.
    pub fn rem_euclid(&self, modulus: &Int) -> Int {
        assert!(modulus.is_positive(), "modulus must be positive");
        match (self, modulus) {
            (Int::Small(a), Int::Small(m)) => Int::Small(a.rem_euclid(*m)),
            _ => Int::from_big(self.to_big().mod_floor(&modulus.to_big())),
        }
    }

    pub fn square(&self) -> Int {
        self * self
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<u32> for Int {
    fn from(v: u32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<u64> for Int {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::Big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<i64> for Int {
    fn eq(&self, other: &i64) -> bool {
        matches!(self, Int::Small(v) if v == other)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $op:tt) => {
        impl<'a> $trait<&'a Int> for &'a Int {
            type Output = Int;
            fn $method(self, rhs: &'a Int) -> Int {
                if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Int::Small(v);
                    }
                }
                Int::from_big(self.to_big() $op rhs.to_big())
            }
        }
        impl $trait<Int> for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Int> for Int {
            type Output = Int;
            fn $method(self, rhs: &'a Int) -> Int {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Int> for &'a Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                self.$method(&rhs)
            }
        }
        impl $trait<i64> for &Int {
            type Output = Int;
            fn $method(self, rhs: i64) -> Int {
                self.$method(&Int::Small(rhs))
            }
        }
        impl $trait<i64> for Int {
            type Output = Int;
            fn $method(self, rhs: i64) -> Int {
                (&self).$method(&Int::Small(rhs))
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl std::iter::Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().parse::<i64>() {
            Ok(v) => Ok(Int::Small(v)),
            Err(_) => Ok(Int::from_big(s.trim().parse::<BigInt>()?)),
        }
    }
}

// Machine-sized values are JSON numbers; larger ones are decimal strings so
// that no JSON reader silently rounds them.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => s.serialize_i64(*v),
            Int::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int::Small(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int::from(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.parse().map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn overflow_escalates_and_shrinks_back() {
        let big = Int::from(i64::MAX) + Int::ONE;
        assert!(matches!(big, Int::Big(_)));
        let back = &big - Int::ONE;
        assert_eq!(back, Int::Small(i64::MAX));
        let sq = Int::from(1i64 << 40).square();
        assert_eq!(sq.to_big(), BigInt::from(1u8) << 80);
        assert_eq!(-Int::from(i64::MIN), Int::from(i64::MAX) + Int::ONE);
    }

    #[test]
    fn exact_division() {
        assert_eq!(Int::from(12).div_exact(&Int::from(4)), Some(Int::from(3)));
        assert_eq!(Int::from(12).div_exact(&Int::from(5)), None);
        assert_eq!(Int::from(12).div_exact(&Int::ZERO), None);
        assert_eq!(
            Int::from(i64::MIN).div_exact(&Int::from(-1)),
            Some(Int::from(i64::MAX) + Int::ONE)
        );
    }

    #[test]
    fn json_round_trip_of_large_values() {
        let v = Int::from(i64::MAX) * Int::from(1000);
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with('"'));
        let back: Int = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let small: Int = serde_json::from_str("-17").unwrap();
        assert_eq!(small, Int::from(-17));
    }

    fn arb_int() -> impl Strategy<Value = Int> {
        prop_oneof![
            any::<i64>().prop_map(Int::from),
            (any::<i64>(), any::<i64>()).prop_map(|(a, b)| Int::from(a) * Int::from(b)),
        ]
    }

    proptest! {
        #[test]
        fn agrees_with_bigint(a in arb_int(), b in arb_int()) {
            let (x, y) = (a.to_big(), b.to_big());
            prop_assert_eq!((&a + &b).to_big(), &x + &y);
            prop_assert_eq!((&a - &b).to_big(), &x - &y);
            prop_assert_eq!((&a * &b).to_big(), &x * &y);
            prop_assert_eq!(a.cmp(&b), x.cmp(&y));
            if !b.is_zero() {
                prop_assert_eq!(a.div_floor(&b).to_big(), x.div_floor(&y));
            }
            let (g, s, t) = a.extended_gcd(&b);
            prop_assert_eq!(&s * &a + &t * &b, g.clone());
            prop_assert_eq!(g, a.gcd(&b));
        }
    }
}
