//! Unsigned fixed-precision upper bounds.
//!
//! A [`Mag`] is `m·2^(e-30)` with a 30-bit mantissa `2^29 ≤ m < 2^30` and an
//! unbounded exponent, or one of `0` and `+∞`. Arithmetic rounds upward and
//! may overshoot the exact result by a few ulps (at most a factor
//! `1 + 2^-28` for `add`, `mul` and `addmul` on finite inputs). A handful of
//! `_lower` helpers round the other way for the denominators of division and
//! square-root bounds.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::bigfloat::{BigFloat, Rounding};
use crate::exponent::Exponent;

/// Mantissa width in bits.
pub const MAG_BITS: u32 = 30;

const MAG_ONE_HALF: u32 = 1 << (MAG_BITS - 1);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Zero,
    Inf,
    Regular { man: u32, exp: Exponent },
}

/// An upward-rounded magnitude bound.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mag(Repr);

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MagError {
    #[error("NaN cannot be bounded")]
    Nan,
    #[error("denominator not bounded away from zero")]
    DenominatorNotPositive,
}

impl Mag {
    pub const ZERO: Mag = Mag(Repr::Zero);
    pub const INF: Mag = Mag(Repr::Inf);

    pub fn one() -> Mag {
        Mag::pow2(0)
    }

    /// `2^e` exactly.
    pub fn pow2(e: impl Into<Exponent>) -> Mag {
        Mag(Repr::Regular {
            man: MAG_ONE_HALF,
            exp: e.into().add_i64(1),
        })
    }

    /// Upper bound of `m·2^e`.
    pub fn from_u128_2exp_upper(m: u128, e: &Exponent) -> Mag {
        Mag::normalize(m, e, true)
    }

    /// Lower bound of `m·2^e`.
    pub fn from_u128_2exp_lower(m: u128, e: &Exponent) -> Mag {
        Mag::normalize(m, e, false)
    }

    pub fn from_u64_upper(v: u64) -> Mag {
        Mag::normalize(v as u128, &Exponent::ZERO, true)
    }

    fn normalize(m: u128, e: &Exponent, up: bool) -> Mag {
        if m == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - m.leading_zeros();
        let (mut man, mut exp) = if bits <= MAG_BITS {
            ((m as u32) << (MAG_BITS - bits), e.add_i64(bits as i64))
        } else {
            let shift = bits - MAG_BITS;
            let mut man = (m >> shift) as u32;
            if up && m & ((1u128 << shift) - 1) != 0 {
                man += 1;
            }
            (man, e.add_i64(bits as i64))
        };
        if man == 1 << MAG_BITS {
            man = MAG_ONE_HALF;
            exp = exp.add_i64(1);
        }
        Mag(Repr::Regular { man, exp })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Zero)
    }

    pub fn is_inf(&self) -> bool {
        matches!(self.0, Repr::Inf)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_inf()
    }

    /// Exponent `e` with `2^(e-1) ≤ x < 2^e` for regular values.
    pub fn exponent(&self) -> Option<&Exponent> {
        match &self.0 {
            Repr::Regular { exp, .. } => Some(exp),
            _ => None,
        }
    }

    /// The 30-bit mantissa of a regular value.
    pub fn mantissa(&self) -> Option<u32> {
        match &self.0 {
            Repr::Regular { man, .. } => Some(*man),
            _ => None,
        }
    }

    pub fn add(&self, y: &Mag) -> Mag {
        match (&self.0, &y.0) {
            (Repr::Inf, _) | (_, Repr::Inf) => Mag::INF,
            (Repr::Zero, _) => y.clone(),
            (_, Repr::Zero) => self.clone(),
            (Repr::Regular { man: mx, exp: ex }, Repr::Regular { man: my, exp: ey }) => {
                let ((ma, ea), (mb, eb)) = if ex >= ey {
                    ((*mx, ex), (*my, ey))
                } else {
                    ((*my, ey), (*mx, ex))
                };
                match ea.diff_i64(eb) {
                    Some(d) if d <= 60 => {
                        let s = ((ma as u128) << d) + mb as u128;
                        Mag::normalize(s, &eb.sub_i64(MAG_BITS as i64), true)
                    }
                    _ => {
                        // the smaller term is below one unit at scale ea - 32
                        let s = ((ma as u128) << 2) + 1;
                        Mag::normalize(s, &ea.sub_i64(MAG_BITS as i64 + 2), true)
                    }
                }
            }
        }
    }

    pub fn mul(&self, y: &Mag) -> Mag {
        match (&self.0, &y.0) {
            (Repr::Zero, _) | (_, Repr::Zero) => Mag::ZERO,
            (Repr::Inf, _) | (_, Repr::Inf) => Mag::INF,
            (Repr::Regular { man: mx, exp: ex }, Repr::Regular { man: my, exp: ey }) => {
                let p = *mx as u128 * *my as u128;
                Mag::normalize(p, &(ex + ey).sub_i64(2 * MAG_BITS as i64), true)
            }
        }
    }

    pub fn mul_lower(&self, y: &Mag) -> Mag {
        match (&self.0, &y.0) {
            (Repr::Zero, _) | (_, Repr::Zero) => Mag::ZERO,
            (Repr::Inf, _) | (_, Repr::Inf) => Mag::INF,
            (Repr::Regular { man: mx, exp: ex }, Repr::Regular { man: my, exp: ey }) => {
                let p = *mx as u128 * *my as u128;
                Mag::normalize(p, &(ex + ey).sub_i64(2 * MAG_BITS as i64), false)
            }
        }
    }

    /// `self + x·y`.
    pub fn addmul(&self, x: &Mag, y: &Mag) -> Mag {
        self.add(&x.mul(y))
    }

    /// Upper bound of `self / y`; infinite when `y` is zero.
    pub fn div(&self, y: &Mag) -> Mag {
        match (&self.0, &y.0) {
            (Repr::Zero, _) => Mag::ZERO,
            (Repr::Inf, _) | (_, Repr::Zero) => Mag::INF,
            (_, Repr::Inf) => Mag::ZERO,
            (Repr::Regular { man: mx, exp: ex }, Repr::Regular { man: my, exp: ey }) => {
                let num = (*mx as u128) << 64;
                let q = num.div_ceil(*my as u128);
                Mag::normalize(q, &(ex - ey).sub_i64(64), true)
            }
        }
    }

    /// Lower bound of `self / y`.
    pub fn div_lower(&self, y: &Mag) -> Mag {
        match (&self.0, &y.0) {
            (Repr::Zero, _) => Mag::ZERO,
            (Repr::Inf, _) | (_, Repr::Zero) => Mag::INF,
            (_, Repr::Inf) => Mag::ZERO,
            (Repr::Regular { man: mx, exp: ex }, Repr::Regular { man: my, exp: ey }) => {
                let num = (*mx as u128) << 64;
                let q = num / *my as u128;
                Mag::normalize(q, &(ex - ey).sub_i64(64), false)
            }
        }
    }

    /// Upper bound of `self / lo` where `lo > 0` is a certified lower bound
    /// of some denominator's absolute value.
    pub fn div_lower_denominator(&self, lo: &BigFloat) -> Result<Mag, MagError> {
        if lo.is_nan() {
            return Err(MagError::Nan);
        }
        if !lo.is_positive() {
            return Err(MagError::DenominatorNotPositive);
        }
        let d = Mag::from_bigfloat_lower(lo)?;
        Ok(self.div(&d))
    }

    /// Lower bound of `max(self - y, 0)`.
    pub fn sub_lower(&self, y: &Mag) -> Mag {
        match (&self.0, &y.0) {
            (_, Repr::Zero) => self.clone(),
            (Repr::Inf, _) => Mag::INF,
            (_, Repr::Inf) | (Repr::Zero, _) => Mag::ZERO,
            (Repr::Regular { .. }, Repr::Regular { .. }) => {
                let (d, _) = self
                    .to_bigfloat()
                    .sub(&y.to_bigfloat(), MAG_BITS as u64, Rounding::Down);
                if d.is_positive() {
                    Mag::from_bigfloat_lower(&d).unwrap()
                } else {
                    Mag::ZERO
                }
            }
        }
    }

    /// Upper bound of `|self - y|` style differences `self - y` (clamped at 0).
    pub fn sub_upper(&self, y: &Mag) -> Mag {
        match (&self.0, &y.0) {
            (_, Repr::Zero) => self.clone(),
            (Repr::Inf, _) => Mag::INF,
            (Repr::Zero, _) => Mag::ZERO,
            (_, Repr::Inf) => Mag::ZERO,
            (Repr::Regular { .. }, Repr::Regular { .. }) => {
                let (d, _) = self.to_bigfloat().sub(&y.to_bigfloat(), MAG_BITS as u64, Rounding::Up);
                if d.is_positive() {
                    Mag::from_bigfloat_upper(&d).unwrap()
                } else {
                    Mag::ZERO
                }
            }
        }
    }

    pub fn mul_2exp(&self, e: &Exponent) -> Mag {
        match &self.0 {
            Repr::Regular { man, exp } => Mag(Repr::Regular {
                man: *man,
                exp: exp + e,
            }),
            _ => self.clone(),
        }
    }

    pub fn mul_2si(&self, e: i64) -> Mag {
        self.mul_2exp(&Exponent::from(e))
    }

    pub fn max(&self, other: &Mag) -> Mag {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &Mag) -> Mag {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Upper bound of `|x|`.
    pub fn from_bigfloat_upper(x: &BigFloat) -> Result<Mag, MagError> {
        Mag::from_bigfloat(x, true)
    }

    /// Lower bound of `|x|`.
    pub fn from_bigfloat_lower(x: &BigFloat) -> Result<Mag, MagError> {
        Mag::from_bigfloat(x, false)
    }

    fn from_bigfloat(x: &BigFloat, up: bool) -> Result<Mag, MagError> {
        if x.is_nan() {
            return Err(MagError::Nan);
        }
        if x.is_inf() {
            return Ok(Mag::INF);
        }
        if x.is_zero() {
            return Ok(Mag::ZERO);
        }
        let m = x.mantissa().unwrap();
        let e = x.exponent().unwrap();
        let bits = m.bits();
        Ok(if bits <= 64 {
            let v = m.to_u64().unwrap() as u128;
            Mag::normalize(v, &e.sub_i64(bits as i64), up)
        } else {
            // keep 64 leading bits plus a sticky bit (the mantissa is odd,
            // so the discarded part is nonzero)
            let top = (m >> (bits - 64)).to_u64().unwrap() as u128;
            let v = (top << 1) | 1;
            Mag::normalize(v, &e.sub_i64(65), up)
        })
    }

    /// Exact conversion.
    pub fn to_bigfloat(&self) -> BigFloat {
        match &self.0 {
            Repr::Zero => BigFloat::ZERO,
            Repr::Inf => BigFloat::POS_INF,
            Repr::Regular { man, exp } => {
                BigFloat::from_parts(false, BigUint::from(*man), exp.sub_i64(MAG_BITS as i64))
            }
        }
    }

    /// Upper bound of a nonnegative double (NaN and negatives are rejected).
    pub fn from_f64_upper(v: f64) -> Result<Mag, MagError> {
        if v.is_nan() {
            return Err(MagError::Nan);
        }
        Mag::from_bigfloat_upper(&BigFloat::from_f64(v.abs()))
    }

    /// The value `self·2^-shift` as a double; exact when the result lies in
    /// the normal double range. Values below the range flush to zero and
    /// values above it become infinite.
    pub fn to_f64_scaled(&self, shift: &Exponent) -> f64 {
        match &self.0 {
            Repr::Zero => 0.0,
            Repr::Inf => f64::INFINITY,
            Repr::Regular { man, exp } => match (exp - shift).to_i64() {
                Some(e) if e > 1024 => f64::INFINITY,
                Some(e) if e < -1020 => 0.0,
                Some(e) => *man as f64 * 2f64.powi(e as i32 - MAG_BITS as i32),
                None => {
                    if (exp - shift).is_negative() {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                }
            },
        }
    }

    /// Approximate double value, for heuristics and display.
    pub fn to_f64(&self) -> f64 {
        self.to_f64_scaled(&Exponent::ZERO)
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Zero, Repr::Zero) | (Repr::Inf, Repr::Inf) => Ordering::Equal,
            (Repr::Zero, _) | (_, Repr::Inf) => Ordering::Less,
            (_, Repr::Zero) | (Repr::Inf, _) => Ordering::Greater,
            (Repr::Regular { man: mx, exp: ex }, Repr::Regular { man: my, exp: ey }) => ex.cmp(ey).then(mx.cmp(my)),
        }
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Mag {
    fn default() -> Self {
        Mag::ZERO
    }
}

impl fmt::Display for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Zero => f.write_str("0"),
            Repr::Inf => f.write_str("inf"),
            Repr::Regular { .. } => fmt::Display::fmt(&self.to_bigfloat(), f),
        }
    }
}

impl fmt::Debug for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid magnitude literal {0:?}")]
pub struct ParseMagError(pub String);

impl FromStr for Mag {
    type Err = ParseMagError;

    /// Parses `0`, `inf` or `M*2^E`; values needing more than 30 bits are
    /// rejected since the text form is exact.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseMagError(s.to_string());
        let x: BigFloat = s.parse().map_err(|_| err())?;
        if x.is_nan() || x.is_negative() || x.bits() > MAG_BITS as u64 {
            return Err(err());
        }
        let m = Mag::from_bigfloat_upper(&x).map_err(|_| err())?;
        debug_assert_eq!(m.to_bigfloat(), x);
        Ok(m)
    }
}

impl From<&Mag> for BigFloat {
    fn from(m: &Mag) -> BigFloat {
        m.to_bigfloat()
    }
}

/// Upper bound of a big integer's absolute value.
pub fn mag_from_bigint_upper(v: &BigInt) -> Mag {
    if v.is_zero() {
        return Mag::ZERO;
    }
    Mag::from_bigfloat_upper(&BigFloat::from_bigint(v)).unwrap()
}
