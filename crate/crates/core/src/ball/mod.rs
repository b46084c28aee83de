//! Real balls `[m ± r]` with a [`BigFloat`] midpoint and a [`Mag`] radius.
//!
//! Midpoints are rounded toward zero and the rounding error (at most one ulp
//! of the rounded midpoint) is added to the radius, so every operation
//! returns a ball containing the exact image of its inputs. A NaN midpoint
//! marks an indeterminate result; an infinite radius with a finite midpoint
//! denotes the whole real line.

mod consts;
mod decimal;
mod elementary;
#[cfg(test)]
mod tests;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::bigfloat::{BigFloat, Rounding};
use crate::exponent::Exponent;
use crate::magnitude::Mag;

pub use decimal::ParseBallError;

/// Precision used for the radius-side BigFloat helpers.
const RAD_PREC: u64 = 32;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ball {
    mid: BigFloat,
    rad: Mag,
}

/// Relative accuracy of a ball in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AccuracyBits {
    /// The radius is zero.
    Exact,
    /// The ball does not determine the sign, or its midpoint is not finite.
    None,
    Bits(i64),
}

impl fmt::Display for AccuracyBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AccuracyBits::Exact => f.write_str("exact"),
            AccuracyBits::None => f.write_str("none"),
            AccuracyBits::Bits(b) => write!(f, "{b}"),
        }
    }
}

impl AccuracyBits {
    /// True when the accuracy is at least `bits` (always for exact balls).
    pub fn at_least(self, bits: i64) -> bool {
        match self {
            AccuracyBits::Exact => true,
            AccuracyBits::None => false,
            AccuracyBits::Bits(b) => b >= bits,
        }
    }

    /// The worse of two accuracies.
    pub fn min(self, other: AccuracyBits) -> AccuracyBits {
        use AccuracyBits::*;
        match (self, other) {
            (None, _) | (_, None) => None,
            (Exact, x) | (x, Exact) => x,
            (Bits(a), Bits(b)) => Bits(a.min(b)),
        }
    }
}

/// One unit in the last place of a `prec`-bit number with the exponent of `m`.
pub(crate) fn ulp(m: &BigFloat, prec: u64) -> Mag {
    match m.exponent() {
        Some(e) => Mag::pow2(e.sub_i64(prec as i64)),
        None => Mag::ZERO,
    }
}

fn mag_of(x: &BigFloat) -> Mag {
    Mag::from_bigfloat_upper(x).unwrap_or(Mag::INF)
}

fn sign_of(terms: &[BigFloat]) -> Ordering {
    let (s, _) = BigFloat::sum(terms, 2, Rounding::Down);
    s.signum().cmp(&0)
}

impl Ball {
    pub fn new(mid: BigFloat, rad: Mag) -> Ball {
        if mid.is_nan() || mid.is_inf() {
            return Ball::indeterminate();
        }
        Ball { mid, rad }
    }

    pub fn exact(mid: BigFloat) -> Ball {
        Ball::new(mid, Mag::ZERO)
    }

    pub fn zero() -> Ball {
        Ball::exact(BigFloat::ZERO)
    }

    pub fn one() -> Ball {
        Ball::exact(BigFloat::one())
    }

    pub fn from_i64(v: i64) -> Ball {
        Ball::exact(BigFloat::from(v))
    }

    pub fn from_bigint(v: &BigInt) -> Ball {
        Ball::exact(BigFloat::from_bigint(v))
    }

    /// `[nan ± inf]`.
    pub fn indeterminate() -> Ball {
        Ball {
            mid: BigFloat::NAN,
            rad: Mag::INF,
        }
    }

    /// `[0 ± inf]`, the whole real line.
    pub fn whole_line() -> Ball {
        Ball {
            mid: BigFloat::ZERO,
            rad: Mag::INF,
        }
    }

    /// Encloses `q`, exactly when `q` fits in `prec` bits.
    pub fn from_rational(q: &BigRational, prec: u64) -> Ball {
        let (m, inexact) = BigFloat::from_rational(q, prec, Rounding::TowardZero);
        let rad = if inexact { ulp(&m, prec) } else { Mag::ZERO };
        Ball::new(m, rad)
    }

    /// The ball `[0, hi]`.
    pub fn from_upper(hi: &Mag) -> Ball {
        let half = hi.mul_2si(-1);
        Ball::new(half.to_bigfloat(), half)
    }

    /// Smallest-ish ball containing `[lo, hi]`; requires `lo ≤ hi`.
    pub fn from_interval(lo: &BigFloat, hi: &BigFloat, prec: u64) -> Ball {
        if lo.is_nan() || hi.is_nan() {
            return Ball::indeterminate();
        }
        if lo.is_inf() || hi.is_inf() {
            return Ball::whole_line();
        }
        let (s, _) = BigFloat::sum(&[lo.clone(), hi.clone()], prec, Rounding::TowardZero);
        let mid = s.mul_2si(-1);
        let (d1, _) = BigFloat::sum(&[hi.clone(), mid.neg()], RAD_PREC, Rounding::Up);
        let (d2, _) = BigFloat::sum(&[mid.clone(), lo.neg()], RAD_PREC, Rounding::Up);
        let rad = Mag::max(&mag_of(&d1), &mag_of(&d2));
        Ball::new(mid, rad)
    }

    pub fn mid(&self) -> &BigFloat {
        &self.mid
    }

    pub fn rad(&self) -> &Mag {
        &self.rad
    }

    pub fn into_parts(self) -> (BigFloat, Mag) {
        (self.mid, self.rad)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero() && !self.mid.is_nan()
    }

    pub fn is_indeterminate(&self) -> bool {
        self.mid.is_nan()
    }

    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.mid.is_zero() && self.rad.is_zero()
    }

    /// Adds `e` to the radius.
    pub fn add_error(&self, e: &Mag) -> Ball {
        Ball::new(self.mid.clone(), self.rad.add(e))
    }

    /// Builds a ball from an exactly known midpoint, rounding it to `prec` bits.
    fn rounded(exact: &BigFloat, rad: Mag, prec: u64) -> Ball {
        let (m, inexact) = exact.round(prec, Rounding::TowardZero);
        Ball::finish(m, inexact, rad, prec)
    }

    /// `[round(Σ terms) ± rad]` with a single rounding of the exact sum.
    pub fn from_exact_sum(terms: &[BigFloat], rad: Mag, prec: u64) -> Ball {
        let (m, inexact) = BigFloat::sum(terms, prec, Rounding::TowardZero);
        Ball::finish(m, inexact, rad, prec)
    }

    fn finish(m: BigFloat, inexact: bool, rad: Mag, prec: u64) -> Ball {
        if m.is_nan() {
            return Ball::indeterminate();
        }
        let rad = if inexact { rad.add(&ulp(&m, prec)) } else { rad };
        Ball::new(m, rad)
    }

    /// Rounds the midpoint to `prec` bits.
    pub fn round(&self, prec: u64) -> Ball {
        if self.is_indeterminate() {
            return Ball::indeterminate();
        }
        Ball::rounded(&self.mid, self.rad.clone(), prec)
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: self.mid.neg(),
            rad: self.rad.clone(),
        }
    }

    /// `|x|` as a ball.
    pub fn abs(&self) -> Ball {
        if self.contains_zero() {
            if self.is_indeterminate() {
                return Ball::indeterminate();
            }
            Ball::from_upper(&self.mag_upper())
        } else {
            Ball {
                mid: self.mid.abs(),
                rad: self.rad.clone(),
            }
        }
    }

    pub fn add(&self, y: &Ball, prec: u64) -> Ball {
        if self.is_indeterminate() || y.is_indeterminate() {
            return Ball::indeterminate();
        }
        let (m, inexact) = self.mid.add(&y.mid, prec, Rounding::TowardZero);
        Ball::finish(m, inexact, self.rad.add(&y.rad), prec)
    }

    pub fn sub(&self, y: &Ball, prec: u64) -> Ball {
        self.add(&y.neg(), prec)
    }

    /// Propagated radius `|a|s + |b|r + rs` of a product.
    fn mul_rad(&self, y: &Ball) -> Mag {
        let a = mag_of(&self.mid);
        let b = mag_of(&y.mid);
        a.mul(&y.rad).add(&b.mul(&self.rad)).add(&self.rad.mul(&y.rad))
    }

    pub fn mul(&self, y: &Ball, prec: u64) -> Ball {
        if self.is_indeterminate() || y.is_indeterminate() {
            return Ball::indeterminate();
        }
        let (m, inexact) = self.mid.mul(&y.mid, prec, Rounding::TowardZero);
        Ball::finish(m, inexact, self.mul_rad(y), prec)
    }

    /// `z + x·y` with a single rounding of the midpoint.
    pub fn fma(z: &Ball, x: &Ball, y: &Ball, prec: u64) -> Ball {
        if z.is_indeterminate() || x.is_indeterminate() || y.is_indeterminate() {
            return Ball::indeterminate();
        }
        let p = x.mid.mul_exact(&y.mid);
        let (m, inexact) = BigFloat::sum(&[z.mid.clone(), p], prec, Rounding::TowardZero);
        Ball::finish(m, inexact, z.rad.add(&x.mul_rad(y)), prec)
    }

    pub fn mul_2si(&self, e: i64) -> Ball {
        self.mul_2exp(&Exponent::from(e))
    }

    pub fn mul_2exp(&self, e: &Exponent) -> Ball {
        Ball {
            mid: self.mid.mul_2exp(e),
            rad: self.rad.mul_2exp(e),
        }
    }

    /// `x²`, with the lower endpoint clamped at zero.
    pub fn sqr(&self, prec: u64) -> Ball {
        let s = self.mul(self, prec);
        if s.is_indeterminate() || !s.has_negative_points() {
            s
        } else {
            Ball::from_upper(&s.mag_upper())
        }
    }

    pub fn div(&self, y: &Ball, prec: u64) -> Ball {
        if self.is_indeterminate() || y.is_indeterminate() || y.contains_zero() {
            return Ball::indeterminate();
        }
        let (m, inexact) = self.mid.div(&y.mid, prec, Rounding::TowardZero);
        let rad = if self.rad.is_zero() && y.rad.is_zero() {
            Mag::ZERO
        } else {
            let b = y.mid.abs();
            let num = mag_of(&self.mid).mul(&y.rad).add(&mag_of(&b).mul(&self.rad));
            // |b|(|b| - s) from below
            let (gap, _) = BigFloat::sum(&[b.clone(), y.rad.to_bigfloat().neg()], RAD_PREC, Rounding::Down);
            let (den, _) = gap.mul(&b, RAD_PREC, Rounding::Down);
            num.div_lower_denominator(&den).unwrap_or(Mag::INF)
        };
        Ball::finish(m, inexact, rad, prec)
    }

    pub fn inv(&self, prec: u64) -> Ball {
        Ball::one().div(self, prec)
    }

    pub fn sqrt(&self, prec: u64) -> Ball {
        if self.is_indeterminate() || self.has_negative_points() {
            return Ball::indeterminate();
        }
        if !self.rad.is_finite() {
            return Ball::whole_line();
        }
        if self.rad.is_zero() {
            let (m, inexact) = self.mid.sqrt(prec, Rounding::TowardZero);
            return Ball::finish(m, inexact, Mag::ZERO, prec);
        }
        if self.mid <= self.rad.to_bigfloat() {
            // the ball is [0, 2m] at most
            let hi = self.upper(RAD_PREC);
            let (s, _) = hi.sqrt(RAD_PREC, Rounding::Up);
            return Ball::from_upper(&mag_of(&s));
        }
        let (m, inexact) = self.mid.sqrt(prec, Rounding::TowardZero);
        let (lo, _) = self.mid.sqrt(RAD_PREC, Rounding::Down);
        let rad = self.rad.div_lower_denominator(&lo).unwrap_or(Mag::INF);
        Ball::finish(m, inexact, rad, prec)
    }

    /// `x^n` by binary powering.
    pub fn pow_u64(&self, n: u64, prec: u64) -> Ball {
        if n == 0 {
            return Ball::one();
        }
        let wp = prec + 2 * (64 - n.leading_zeros() as u64) + 4;
        let mut result: Option<Ball> = None;
        let mut base = self.clone();
        let mut k = n;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base, wp),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.sqr(wp);
        }
        result.unwrap().round(prec)
    }

    /// Upper bound of `|x|`.
    pub fn mag_upper(&self) -> Mag {
        if self.is_indeterminate() {
            return Mag::INF;
        }
        mag_of(&self.mid).add(&self.rad)
    }

    /// Lower bound of `min |x|` over the ball.
    pub fn mag_lower(&self) -> Mag {
        if self.is_indeterminate() || self.contains_zero() {
            return Mag::ZERO;
        }
        let (d, _) = BigFloat::sum(
            &[self.mid.abs(), self.rad.to_bigfloat().neg()],
            RAD_PREC,
            Rounding::Down,
        );
        Mag::from_bigfloat_lower(&d).unwrap_or(Mag::ZERO)
    }

    /// `mid - rad` rounded down.
    pub fn lower(&self, prec: u64) -> BigFloat {
        if self.is_indeterminate() {
            return BigFloat::NAN;
        }
        BigFloat::sum(&[self.mid.clone(), self.rad.to_bigfloat().neg()], prec, Rounding::Down).0
    }

    /// `mid + rad` rounded up.
    pub fn upper(&self, prec: u64) -> BigFloat {
        if self.is_indeterminate() {
            return BigFloat::NAN;
        }
        BigFloat::sum(&[self.mid.clone(), self.rad.to_bigfloat()], prec, Rounding::Up).0
    }

    pub fn contains_zero(&self) -> bool {
        if self.is_indeterminate() {
            return true;
        }
        self.mid.abs() <= self.rad.to_bigfloat()
    }

    pub fn has_negative_points(&self) -> bool {
        self.is_indeterminate() || self.mid < self.rad.to_bigfloat()
    }

    /// Every point is `> 0`.
    pub fn is_positive(&self) -> bool {
        !self.is_indeterminate() && self.mid > self.rad.to_bigfloat()
    }

    /// Every point is `< 0`.
    pub fn is_negative(&self) -> bool {
        self.neg().is_positive()
    }

    /// Every point is `≥ 0`.
    pub fn is_nonnegative(&self) -> bool {
        !self.has_negative_points()
    }

    /// Every point is `≤ 0`.
    pub fn is_nonpositive(&self) -> bool {
        self.neg().is_nonnegative()
    }

    /// True if `y ⊆ self`.
    pub fn contains(&self, y: &Ball) -> bool {
        if self.is_indeterminate() || self.rad.is_inf() {
            return true;
        }
        if y.is_indeterminate() || y.rad.is_inf() {
            return false;
        }
        let (rx, ry) = (self.rad.to_bigfloat(), y.rad.to_bigfloat());
        // y.lo - x.lo ≥ 0 and x.hi - y.hi ≥ 0
        let lo = [y.mid.clone(), ry.neg(), self.mid.neg(), rx.clone()];
        let hi = [self.mid.clone(), rx, y.mid.neg(), ry.neg()];
        sign_of(&lo) != Ordering::Less && sign_of(&hi) != Ordering::Less
    }

    /// True if the balls share at least one point.
    pub fn overlaps(&self, y: &Ball) -> bool {
        if self.is_indeterminate() || y.is_indeterminate() || self.rad.is_inf() || y.rad.is_inf() {
            return true;
        }
        let (rx, ry) = (self.rad.to_bigfloat(), y.rad.to_bigfloat());
        let a = [self.mid.clone(), y.mid.neg(), rx.clone(), ry.clone()];
        let b = [y.mid.clone(), self.mid.neg(), rx, ry];
        sign_of(&a) != Ordering::Less && sign_of(&b) != Ordering::Less
    }

    pub fn contains_bigfloat(&self, x: &BigFloat) -> bool {
        if x.is_nan() {
            return self.is_indeterminate();
        }
        if x.is_inf() {
            return self.is_indeterminate() || self.rad.is_inf();
        }
        self.contains(&Ball::exact(x.clone()))
    }

    /// True if the rational `q` lies in the closed ball.
    pub fn contains_rational(&self, q: &BigRational) -> bool {
        if self.is_indeterminate() || self.rad.is_inf() {
            return true;
        }
        // mid·d - rad·d ≤ n ≤ mid·d + rad·d, with d > 0
        let d = BigFloat::from_bigint(q.denom());
        let n = BigFloat::from_bigint(q.numer());
        let md = self.mid.mul_exact(&d);
        let rd = self.rad.to_bigfloat().mul_exact(&d);
        let below = [md.clone(), rd.neg(), n.neg()];
        let above = [md, rd, n.neg()];
        sign_of(&below) != Ordering::Greater && sign_of(&above) != Ordering::Less
    }

    pub fn rel_accuracy_bits(&self) -> AccuracyBits {
        if self.mid.is_nan() {
            return AccuracyBits::None;
        }
        if self.rad.is_zero() {
            return AccuracyBits::Exact;
        }
        if self.rad.is_inf() || self.mid.is_zero() {
            return AccuracyBits::None;
        }
        if self.rad.to_bigfloat() >= self.mid.abs() {
            return AccuracyBits::None;
        }
        let em = self.mid.exponent().unwrap();
        let er = self.rad.exponent().unwrap();
        let diff = em - er;
        AccuracyBits::Bits(diff.to_i64_saturating().saturating_sub(1))
    }

    /// True if every point of the ball rounds to the same `prec`-bit value.
    pub fn can_round(&self, prec: u64, rnd: Rounding) -> bool {
        if self.is_indeterminate() || self.rad.is_inf() {
            return false;
        }
        if self.rad.is_zero() {
            return true;
        }
        let r = self.rad.to_bigfloat();
        let (lo, _) = BigFloat::sum(&[self.mid.clone(), r.neg()], prec, rnd);
        let (hi, _) = BigFloat::sum(&[self.mid.clone(), r], prec, rnd);
        lo == hi
    }

    /// Flushes midpoints with absurd exponents into the radius (underflow)
    /// or widens the ball to the whole line (overflow). Applied to the
    /// outputs of transcendental functions.
    pub fn clamp_exponent(&self, prec: u64) -> Ball {
        if self.is_indeterminate() {
            return self.clone();
        }
        // |e| ≥ 2^L with L = max(65536, 4·prec)
        let l = 4 * prec.max(16384);
        let huge = |e: &Exponent| e.abs().bits() > l;
        if self.mid.exponent().is_some_and(|e| huge(e) && !e.is_negative())
            || self.rad.exponent().is_some_and(|e| huge(e) && !e.is_negative())
        {
            return Ball::whole_line();
        }
        if self.mid.exponent().is_some_and(|e| huge(e) && e.is_negative()) {
            return Ball::new(BigFloat::ZERO, self.mag_upper());
        }
        self.clone()
    }

    /// Exact serialization `(mid; rad)`.
    pub fn to_exact_string(&self) -> String {
        format!("({}; {})", self.mid, self.rad)
    }

    /// Parses the `(mid; rad)` form.
    pub fn parse_exact(s: &str) -> Result<Ball, ParseBallError> {
        let err = |pos: usize, msg: &str| ParseBallError::new(pos, msg);
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| err(0, "expected (mid; rad)"))?;
        let (m, r) = inner
            .split_once("; ")
            .ok_or_else(|| err(1, "expected '; ' separator"))?;
        let mid: BigFloat = m.parse().map_err(|_| err(1, "invalid midpoint"))?;
        let rad: Mag = r.parse().map_err(|_| err(1 + m.len() + 2, "invalid radius"))?;
        if mid.is_nan() {
            return Ok(Ball::indeterminate());
        }
        Ok(Ball::new(mid, rad))
    }

    /// Exact value of an exact ball with an integer midpoint.
    pub fn to_bigint_exact(&self) -> Option<BigInt> {
        if self.rad.is_zero() {
            self.mid.to_bigint_exact()
        } else {
            None
        }
    }

    /// Sign of a ball that excludes zero, else `None`.
    pub fn sign(&self) -> Option<Ordering> {
        if self.is_positive() {
            Some(Ordering::Greater)
        } else if self.is_negative() {
            Some(Ordering::Less)
        } else if self.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl Default for Ball {
    fn default() -> Self {
        Ball::zero()
    }
}

impl From<i64> for Ball {
    fn from(v: i64) -> Self {
        Ball::from_i64(v)
    }
}

impl From<BigFloat> for Ball {
    fn from(v: BigFloat) -> Self {
        Ball::exact(v)
    }
}

impl fmt::Display for Ball {
    /// `{}` gives the exact `(mid; rad)` form; `{:.N}` prints `N` decimal digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(d) => f.write_str(&self.printn(d.max(1))),
            None => f.write_str(&self.to_exact_string()),
        }
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

impl FromStr for Ball {
    type Err = ParseBallError;

    /// Accepts the exact `(mid; rad)` form and the decimal grammar.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.starts_with('(') {
            Ball::parse_exact(s)
        } else {
            Ball::parse_decimal(s)
        }
    }
}

/// Upper bound of a nonnegative rational as a magnitude.
pub(crate) fn mag_from_rational_upper(q: &BigRational) -> Mag {
    if q.is_zero() {
        return Mag::ZERO;
    }
    let (x, _) = BigFloat::from_rational(&q.abs(), RAD_PREC, Rounding::Up);
    mag_of(&x)
}
