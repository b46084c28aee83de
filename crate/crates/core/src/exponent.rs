//! Unbounded signed exponents.
//!
//! Exponents are stored inline while they fit in 62 bits and promoted to a
//! heap-allocated [`BigInt`] otherwise, so the common case costs one extra
//! branch per access and overflow can never happen.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

const SMALL_MAX: i64 = (1 << 62) - 1;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    Big(Box<BigInt>),
}

/// An arbitrary-size signed integer used for binary exponents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exponent(Repr);

impl Exponent {
    pub const ZERO: Exponent = Exponent(Repr::Small(0));

    pub fn from_bigint(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) if (-SMALL_MAX..=SMALL_MAX).contains(&s) => Exponent(Repr::Small(s)),
            _ => Exponent(Repr::Big(Box::new(v))),
        }
    }

    /// Returns the value if it fits in the inline representation.
    #[inline]
    pub fn small(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(b) => b.to_i64(),
        }
    }

    /// Saturating conversion, useful for heuristics (never for bounds).
    pub fn to_i64_saturating(&self) -> i64 {
        match &self.0 {
            Repr::Small(v) => *v,
            Repr::Big(b) => {
                if b.is_negative() {
                    i64::MIN
                } else {
                    i64::MAX
                }
            }
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Exponent {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Number of bits in the absolute value.
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Small(v) => 64 - v.unsigned_abs().leading_zeros() as u64,
            Repr::Big(b) => b.bits(),
        }
    }

    pub fn add_i64(&self, rhs: i64) -> Exponent {
        if let Repr::Small(a) = self.0 {
            let s = a as i128 + rhs as i128;
            if s.unsigned_abs() <= SMALL_MAX as u128 {
                return Exponent(Repr::Small(s as i64));
            }
        }
        Exponent::from_bigint(self.to_bigint() + rhs)
    }

    pub fn sub_i64(&self, rhs: i64) -> Exponent {
        match rhs.checked_neg() {
            Some(n) => self.add_i64(n),
            None => Exponent::from_bigint(self.to_bigint() - rhs),
        }
    }

    /// Difference `self - rhs` as an `i64`, if it fits.
    pub fn diff_i64(&self, rhs: &Exponent) -> Option<i64> {
        match (&self.0, &rhs.0) {
            (Repr::Small(a), Repr::Small(b)) => Some(a - b),
            _ => (self.to_bigint() - rhs.to_bigint()).to_i64(),
        }
    }

    pub fn max<'a>(&'a self, other: &'a Exponent) -> &'a Exponent {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min<'a>(&'a self, other: &'a Exponent) -> &'a Exponent {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl Default for Exponent {
    fn default() -> Self {
        Exponent::ZERO
    }
}

impl From<i64> for Exponent {
    fn from(v: i64) -> Self {
        if (-SMALL_MAX..=SMALL_MAX).contains(&v) {
            Exponent(Repr::Small(v))
        } else {
            Exponent(Repr::Big(Box::new(BigInt::from(v))))
        }
    }
}

impl From<i32> for Exponent {
    fn from(v: i32) -> Self {
        Exponent(Repr::Small(v as i64))
    }
}

impl From<BigInt> for Exponent {
    fn from(v: BigInt) -> Self {
        Exponent::from_bigint(v)
    }
}

impl From<&Exponent> for Exponent {
    fn from(v: &Exponent) -> Self {
        v.clone()
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            // a big value is always outside the small range
            (Repr::Small(_), Repr::Big(b)) => {
                if b.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (Repr::Big(a), Repr::Small(_)) => {
                if a.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Repr::Big(a), Repr::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<i64> for Exponent {
    fn eq(&self, other: &i64) -> bool {
        self.small() == Some(*other)
    }
}

impl PartialOrd<i64> for Exponent {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Exponent::from(*other)))
    }
}

impl Add<&Exponent> for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            // both below 2^62 in magnitude, so the sum fits in i64
            return Exponent::from(a + b);
        }
        Exponent::from_bigint(self.to_bigint() + rhs.to_bigint())
    }
}

impl Sub<&Exponent> for &Exponent {
    type Output = Exponent;
    fn sub(self, rhs: &Exponent) -> Exponent {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            return Exponent::from(a - b);
        }
        Exponent::from_bigint(self.to_bigint() - rhs.to_bigint())
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        &self + &rhs
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        &self - &rhs
    }
}

impl Add<i64> for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: i64) -> Exponent {
        self.add_i64(rhs)
    }
}

impl Sub<i64> for &Exponent {
    type Output = Exponent;
    fn sub(self, rhs: i64) -> Exponent {
        self.sub_i64(rhs)
    }
}

impl Add<i64> for Exponent {
    type Output = Exponent;
    fn add(self, rhs: i64) -> Exponent {
        self.add_i64(rhs)
    }
}

impl Sub<i64> for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: i64) -> Exponent {
        self.sub_i64(rhs)
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        match &self.0 {
            Repr::Small(v) => Exponent(Repr::Small(-v)),
            Repr::Big(b) => Exponent::from_bigint(-(**b).clone()),
        }
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        -&self
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for Exponent {
    fn zero() -> Self {
        Exponent::ZERO
    }
    fn is_zero(&self) -> bool {
        Exponent::is_zero(self)
    }
}
