//! Arbitrary-precision dyadic floating-point numbers.
//!
//! A [`BigFloat`] is either a special value (zero, ±∞, NaN) or a regular
//! number `a·2^b` with `1/2 ≤ |a| < 1` and an unbounded exponent `b`. The
//! mantissa has whatever bit length the value needs; precision is a parameter
//! of each operation rather than a property of a variable. Every rounding
//! operation returns an `inexact` flag alongside the result. There is no
//! global state of any kind: no rounding mode, no default precision, no
//! exception flags.
//!
//! Domain errors (`0/0`, `sqrt(-1)`, `∞ - ∞`, `x/0`) produce NaN.

mod sum;
mod text;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exponent::Exponent;

pub use text::ParseBigFloatError;

/// Precision value requesting an exact (unrounded) result.
///
/// Only meaningful for operations whose exact result is a dyadic number
/// (addition, subtraction, multiplication, vector sums).
pub const PREC_EXACT: u64 = u64::MAX;

/// Direction used when a result must be rounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rounding {
    /// Toward −∞.
    Down,
    /// Toward +∞.
    Up,
    TowardZero,
    AwayFromZero,
    /// To nearest, ties to even mantissa.
    NearestEven,
}

impl Rounding {
    pub const ALL: [Rounding; 5] = [
        Rounding::Down,
        Rounding::Up,
        Rounding::TowardZero,
        Rounding::AwayFromZero,
        Rounding::NearestEven,
    ];
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Zero,
    PosInf,
    NegInf,
    Nan,
    /// `±mantissa·2^(exp - bits(mantissa))` with an odd mantissa.
    Regular {
        negative: bool,
        mantissa: BigUint,
        exp: Exponent,
    },
}

/// A dyadic floating-point number or special value.
///
/// Structural equality coincides with numeric equality for non-NaN values
/// because the representation is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigFloat(pub(crate) Repr);

/// Kind of a [`BigFloat`] value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Regular,
    Zero,
    PosInf,
    NegInf,
    Nan,
}

impl BigFloat {
    pub const ZERO: BigFloat = BigFloat(Repr::Zero);
    pub const POS_INF: BigFloat = BigFloat(Repr::PosInf);
    pub const NEG_INF: BigFloat = BigFloat(Repr::NegInf);
    pub const NAN: BigFloat = BigFloat(Repr::Nan);

    pub fn one() -> Self {
        BigFloat::from(1i64)
    }

    /// `2^e` exactly.
    pub fn pow2(e: impl Into<Exponent>) -> Self {
        BigFloat(Repr::Regular {
            negative: false,
            mantissa: BigUint::one(),
            exp: e.into() + 1,
        })
    }

    /// Builds `±m·2^e` exactly.
    pub fn from_parts(negative: bool, m: BigUint, e: Exponent) -> Self {
        if m.is_zero() {
            return BigFloat::ZERO;
        }
        let tz = m.trailing_zeros().unwrap_or(0);
        let m = if tz > 0 { m >> tz } else { m };
        let lsb = e.add_i64(tz as i64);
        let exp = lsb.add_i64(m.bits() as i64);
        BigFloat(Repr::Regular {
            negative,
            mantissa: m,
            exp,
        })
    }

    /// Builds `m·2^e` exactly from a signed integer.
    pub fn from_bigint_2exp(m: &BigInt, e: impl Into<Exponent>) -> Self {
        BigFloat::from_parts(m.is_negative(), m.magnitude().clone(), e.into())
    }

    pub fn from_bigint(m: &BigInt) -> Self {
        BigFloat::from_bigint_2exp(m, 0)
    }

    /// Exact conversion from a double.
    pub fn from_f64(v: f64) -> Self {
        if v.is_nan() {
            return BigFloat::NAN;
        }
        if v.is_infinite() {
            return if v > 0.0 { BigFloat::POS_INF } else { BigFloat::NEG_INF };
        }
        if v == 0.0 {
            return BigFloat::ZERO;
        }
        let bits = v.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        BigFloat::from_parts(negative, BigUint::from(m), Exponent::from(e))
    }

    /// Nearest double, saturating to ±∞ or 0 outside the double range.
    /// Intended for heuristics, never for bounds.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Zero => 0.0,
            Repr::PosInf => f64::INFINITY,
            Repr::NegInf => f64::NEG_INFINITY,
            Repr::Nan => f64::NAN,
            Repr::Regular {
                negative,
                mantissa,
                exp,
            } => {
                let e = exp.to_i64_saturating();
                let s = if *negative { -1.0 } else { 1.0 };
                if e > 1024 {
                    return s * f64::INFINITY;
                }
                if e < -1074 {
                    return s * 0.0;
                }
                // bits available in the binade [2^(e-1), 2^e)
                let prec = (53 - (-1021 - e).max(0)) as u64;
                if prec == 0 {
                    let above_half = mantissa.bits() > 1;
                    return s * if above_half { f64::from_bits(1) } else { 0.0 };
                }
                let (r, _) = self.round(prec, Rounding::NearestEven);
                let m = r.mantissa().unwrap().to_u64().unwrap() as f64;
                let lsb = r.lsb_exponent().unwrap().to_i64().unwrap();
                let half = lsb / 2;
                s * m * 2f64.powi(half as i32) * 2f64.powi((lsb - half) as i32)
            }
        }
    }

    pub fn kind(&self) -> Kind {
        match self.0 {
            Repr::Zero => Kind::Zero,
            Repr::PosInf => Kind::PosInf,
            Repr::NegInf => Kind::NegInf,
            Repr::Nan => Kind::Nan,
            Repr::Regular { .. } => Kind::Regular,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Zero)
    }

    pub fn is_nan(&self) -> bool {
        matches!(self.0, Repr::Nan)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0, Repr::Zero | Repr::Regular { .. })
    }

    pub fn is_regular(&self) -> bool {
        matches!(self.0, Repr::Regular { .. })
    }

    pub fn is_inf(&self) -> bool {
        matches!(self.0, Repr::PosInf | Repr::NegInf)
    }

    /// True for negative regular values and −∞.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::NegInf => true,
            Repr::Regular { negative, .. } => *negative,
            _ => false,
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::PosInf => true,
            Repr::Regular { negative, .. } => !*negative,
            _ => false,
        }
    }

    /// −1, 0 or 1; NaN reports 0.
    pub fn signum(&self) -> i32 {
        if self.is_negative() {
            -1
        } else if self.is_positive() {
            1
        } else {
            0
        }
    }

    /// The exponent `b` of `a·2^b` with `1/2 ≤ |a| < 1`, for regular values.
    pub fn exponent(&self) -> Option<&Exponent> {
        match &self.0 {
            Repr::Regular { exp, .. } => Some(exp),
            _ => None,
        }
    }

    /// The odd integer mantissa `m` such that the value is `±m·2^lsb`.
    pub fn mantissa(&self) -> Option<&BigUint> {
        match &self.0 {
            Repr::Regular { mantissa, .. } => Some(mantissa),
            _ => None,
        }
    }

    /// Exponent of the least significant set bit.
    pub fn lsb_exponent(&self) -> Option<Exponent> {
        match &self.0 {
            Repr::Regular { mantissa, exp, .. } => Some(exp.sub_i64(mantissa.bits() as i64)),
            _ => None,
        }
    }

    /// Number of significant bits (0 for specials).
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Regular { mantissa, .. } => mantissa.bits(),
            _ => 0,
        }
    }

    /// Mantissa as little-endian machine words, left-aligned so that the top
    /// bit of the top limb is set and the bottom limb is nonzero.
    pub fn limbs(&self) -> Vec<u64> {
        match &self.0 {
            Repr::Regular { mantissa, .. } => {
                let pad = (64 - mantissa.bits() % 64) % 64;
                (mantissa << pad).to_u64_digits()
            }
            _ => Vec::new(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Zero => true,
            Repr::Regular { mantissa, exp, .. } => *exp >= mantissa.bits() as i64,
            _ => false,
        }
    }

    pub fn neg(&self) -> BigFloat {
        match &self.0 {
            Repr::Zero => BigFloat::ZERO,
            Repr::PosInf => BigFloat::NEG_INF,
            Repr::NegInf => BigFloat::POS_INF,
            Repr::Nan => BigFloat::NAN,
            Repr::Regular {
                negative,
                mantissa,
                exp,
            } => BigFloat(Repr::Regular {
                negative: !negative,
                mantissa: mantissa.clone(),
                exp: exp.clone(),
            }),
        }
    }

    pub fn abs(&self) -> BigFloat {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact multiplication by `2^e`.
    pub fn mul_2exp(&self, e: &Exponent) -> BigFloat {
        match &self.0 {
            Repr::Regular {
                negative,
                mantissa,
                exp,
            } => BigFloat(Repr::Regular {
                negative: *negative,
                mantissa: mantissa.clone(),
                exp: exp + e,
            }),
            _ => self.clone(),
        }
    }

    pub fn mul_2si(&self, e: i64) -> BigFloat {
        self.mul_2exp(&Exponent::from(e))
    }

    /// Exact value as a rational, when the exponent is small enough to
    /// materialize (|lsb| below 2^24).
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Repr::Zero => Some(BigRational::zero()),
            Repr::Regular { negative, mantissa, .. } => {
                let lsb = self.lsb_exponent()?.to_i64()?;
                if lsb.unsigned_abs() > 1 << 24 {
                    return None;
                }
                let sign = if *negative { Sign::Minus } else { Sign::Plus };
                let m = BigInt::from_biguint(sign, mantissa.clone());
                Some(if lsb >= 0 {
                    BigRational::from_integer(m << lsb as usize)
                } else {
                    BigRational::new(m, BigInt::one() << (-lsb) as usize)
                })
            }
            _ => None,
        }
    }

    /// Exact integer value, when the number is an integer of manageable size.
    pub fn to_bigint_exact(&self) -> Option<BigInt> {
        if !self.is_integer() {
            return None;
        }
        let q = self.to_rational()?;
        Some(q.to_integer())
    }

    /// Nearest integer (ties away from zero); `None` for non-finite input or
    /// when the integer would be absurdly large (more than 2^32 bits).
    pub fn round_to_bigint(&self) -> Option<BigInt> {
        match &self.0 {
            Repr::Zero => Some(BigInt::zero()),
            Repr::Regular {
                negative,
                mantissa,
                exp,
            } => {
                if *exp < 0 {
                    return Some(BigInt::zero());
                }
                let e = exp.to_i64()?;
                if e > 1 << 32 {
                    return None;
                }
                let bits = mantissa.bits() as i64;
                let mag = if e >= bits {
                    mantissa << (e - bits) as usize
                } else {
                    // value = mantissa / 2^(bits - e); add one half and truncate
                    let sh = (bits - e) as usize;
                    ((mantissa >> (sh - 1)) + 1u32) >> 1
                };
                let sign = if *negative { Sign::Minus } else { Sign::Plus };
                Some(BigInt::from_biguint(sign, mag))
            }
            _ => None,
        }
    }

    /// Correctly rounded conversion of a rational number.
    pub fn from_rational(q: &BigRational, prec: u64, rnd: Rounding) -> (BigFloat, bool) {
        let n = q.numer();
        let d = q.denom();
        if n.is_zero() {
            return (BigFloat::ZERO, false);
        }
        let x = BigFloat::from_bigint(n);
        let y = BigFloat::from_bigint(d);
        x.div(&y, prec, rnd)
    }

    /// Rounds to `prec` bits.
    pub fn round(&self, prec: u64, rnd: Rounding) -> (BigFloat, bool) {
        match &self.0 {
            Repr::Regular {
                negative,
                mantissa,
                exp,
            } => {
                if mantissa.bits() <= prec {
                    return (self.clone(), false);
                }
                round_parts(
                    *negative,
                    mantissa.clone(),
                    exp.sub_i64(mantissa.bits() as i64),
                    prec,
                    rnd,
                )
            }
            _ => (self.clone(), false),
        }
    }

    pub fn add(&self, y: &BigFloat, prec: u64, rnd: Rounding) -> (BigFloat, bool) {
        match (&self.0, &y.0) {
            (Repr::Nan, _) | (_, Repr::Nan) => (BigFloat::NAN, false),
            (Repr::PosInf, Repr::NegInf) | (Repr::NegInf, Repr::PosInf) => (BigFloat::NAN, false),
            (Repr::PosInf | Repr::NegInf, _) => (self.clone(), false),
            (_, Repr::PosInf | Repr::NegInf) => (y.clone(), false),
            (Repr::Zero, _) => y.round(prec, rnd),
            (_, Repr::Zero) => self.round(prec, rnd),
            (Repr::Regular { .. }, Repr::Regular { .. }) => {
                let a = Parts::of(self);
                let b = Parts::of(y);
                let (big, small) = if a.exp() >= b.exp() { (a, b) } else { (b, a) };
                let small = if prec == PREC_EXACT {
                    small
                } else {
                    absorb_tiny(&big, small, prec)
                };
                match Parts::add_exact(&big, &small) {
                    None => (BigFloat::ZERO, false),
                    Some(s) => round_parts(s.negative, s.mantissa, s.lsb, prec, rnd),
                }
            }
        }
    }

    pub fn sub(&self, y: &BigFloat, prec: u64, rnd: Rounding) -> (BigFloat, bool) {
        self.add(&y.neg(), prec, rnd)
    }

    pub fn mul(&self, y: &BigFloat, prec: u64, rnd: Rounding) -> (BigFloat, bool) {
        match (&self.0, &y.0) {
            (Repr::Nan, _) | (_, Repr::Nan) => (BigFloat::NAN, false),
            (Repr::Zero, Repr::PosInf | Repr::NegInf) | (Repr::PosInf | Repr::NegInf, Repr::Zero) => {
                (BigFloat::NAN, false)
            }
            (Repr::PosInf | Repr::NegInf, _) | (_, Repr::PosInf | Repr::NegInf) => {
                if self.is_negative() != y.is_negative() {
                    (BigFloat::NEG_INF, false)
                } else {
                    (BigFloat::POS_INF, false)
                }
            }
            (Repr::Zero, _) | (_, Repr::Zero) => (BigFloat::ZERO, false),
            (
                Repr::Regular {
                    negative: na,
                    mantissa: ma,
                    exp: ea,
                },
                Repr::Regular {
                    negative: nb,
                    mantissa: mb,
                    exp: eb,
                },
            ) => {
                let m = ma * mb;
                // product of odd mantissas is odd: the result is already
                // normalized when no rounding is needed
                let bits = m.bits();
                let exp = &(ea + eb) - ((ma.bits() + mb.bits() - bits) as i64);
                if bits <= prec {
                    return (
                        BigFloat(Repr::Regular {
                            negative: na != nb,
                            mantissa: m,
                            exp,
                        }),
                        false,
                    );
                }
                let lsb = exp.sub_i64(bits as i64);
                round_parts(na != nb, m, lsb, prec, rnd)
            }
        }
    }

    /// Exact product.
    pub fn mul_exact(&self, y: &BigFloat) -> BigFloat {
        self.mul(y, PREC_EXACT, Rounding::Down).0
    }

    /// Exact sum (the exponent gap must be materializable).
    pub fn add_exact(&self, y: &BigFloat) -> BigFloat {
        self.add(y, PREC_EXACT, Rounding::Down).0
    }

    pub fn div(&self, y: &BigFloat, prec: u64, rnd: Rounding) -> (BigFloat, bool) {
        match (&self.0, &y.0) {
            (Repr::Nan, _) | (_, Repr::Nan) => (BigFloat::NAN, false),
            (_, Repr::Zero) => (BigFloat::NAN, false),
            (Repr::PosInf | Repr::NegInf, Repr::PosInf | Repr::NegInf) => (BigFloat::NAN, false),
            (Repr::PosInf | Repr::NegInf, _) => {
                if self.is_negative() != y.is_negative() {
                    (BigFloat::NEG_INF, false)
                } else {
                    (BigFloat::POS_INF, false)
                }
            }
            (_, Repr::PosInf | Repr::NegInf) => (BigFloat::ZERO, false),
            (Repr::Zero, _) => (BigFloat::ZERO, false),
            (
                Repr::Regular {
                    negative: na,
                    mantissa: ma,
                    exp: ea,
                },
                Repr::Regular {
                    negative: nb,
                    mantissa: mb,
                    exp: eb,
                },
            ) => {
                let negative = na != nb;
                let lsb_a = ea.sub_i64(ma.bits() as i64);
                let lsb_b = eb.sub_i64(mb.bits() as i64);
                if mb.is_one() {
                    return round_parts(negative, ma.clone(), &lsb_a - &lsb_b, prec, rnd);
                }
                assert!(
                    prec != PREC_EXACT,
                    "division by a non-power-of-two needs a finite precision"
                );
                let need = prec as i64 + 2 + mb.bits() as i64 - ma.bits() as i64;
                let k = need.max(0) as u64;
                let num = ma << k;
                let (q, r) = num_integer::Integer::div_rem(&num, mb);
                let lsb = (&lsb_a - &lsb_b).sub_i64(k as i64);
                round_parts_sticky(negative, q, lsb, !r.is_zero(), prec, rnd)
            }
        }
    }

    pub fn sqrt(&self, prec: u64, rnd: Rounding) -> (BigFloat, bool) {
        match &self.0 {
            Repr::Nan | Repr::NegInf => (BigFloat::NAN, false),
            Repr::Zero | Repr::PosInf => (self.clone(), false),
            Repr::Regular {
                negative,
                mantissa,
                exp,
            } => {
                if *negative {
                    return (BigFloat::NAN, false);
                }
                let bits = mantissa.bits();
                let lsb = exp.sub_i64(bits as i64);
                let target = if prec == PREC_EXACT { bits } else { 2 * (prec + 2) };
                let mut k = target.saturating_sub(bits) + 1;
                if is_odd(&lsb.sub_i64(k as i64)) {
                    k += 1;
                }
                let m = mantissa << k;
                let s = m.sqrt();
                let sticky = &s * &s != m;
                assert!(
                    !(sticky && prec == PREC_EXACT),
                    "inexact square root needs a finite precision"
                );
                let half = half_exponent(&lsb.sub_i64(k as i64));
                round_parts_sticky(false, s, half, sticky, prec, rnd)
            }
        }
    }

    /// Correctly rounded sum of all terms with no intermediate rounding.
    pub fn sum(terms: &[BigFloat], prec: u64, rnd: Rounding) -> (BigFloat, bool) {
        sum::sum(terms, prec, rnd)
    }

    /// `(a+bi)(c+di)` with each component rounded once.
    #[allow(clippy::too_many_arguments)]
    pub fn complex_mul(
        a: &BigFloat,
        b: &BigFloat,
        c: &BigFloat,
        d: &BigFloat,
        prec: u64,
        rnd: Rounding,
    ) -> ((BigFloat, bool), (BigFloat, bool)) {
        let ac = a.mul_exact(c);
        let bd = b.mul_exact(d);
        let ad = a.mul_exact(d);
        let bc = b.mul_exact(c);
        let re = BigFloat::sum(&[ac, bd.neg()], prec, rnd);
        let im = BigFloat::sum(&[ad, bc], prec, rnd);
        (re, im)
    }

    /// Compares absolute values; `None` if either is NaN.
    pub fn cmp_abs(&self, other: &BigFloat) -> Option<Ordering> {
        self.abs().partial_cmp(&other.abs())
    }

    /// Total comparison of non-NaN values.
    pub fn try_cmp(&self, other: &BigFloat) -> Result<Ordering, Unordered> {
        self.partial_cmp(other).ok_or(Unordered)
    }

    pub fn max(&self, other: &BigFloat) -> BigFloat {
        if self.is_nan() || other.is_nan() {
            return BigFloat::NAN;
        }
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &BigFloat) -> BigFloat {
        if self.is_nan() || other.is_nan() {
            return BigFloat::NAN;
        }
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }
}

/// Returned by comparisons involving NaN.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unordered comparison with NaN")]
pub struct Unordered;

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use Repr::*;
        Some(match (&self.0, &other.0) {
            (Nan, _) | (_, Nan) => return None,
            (PosInf, PosInf) | (NegInf, NegInf) | (Zero, Zero) => Ordering::Equal,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (Zero, Regular { negative, .. }) => {
                if *negative {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (Regular { negative, .. }, Zero) => {
                if *negative {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (
                Regular {
                    negative: na,
                    mantissa: ma,
                    exp: ea,
                },
                Regular {
                    negative: nb,
                    mantissa: mb,
                    exp: eb,
                },
            ) => {
                if na != nb {
                    return Some(if *na { Ordering::Less } else { Ordering::Greater });
                }
                let mag = ea.cmp(eb).then_with(|| cmp_aligned(ma, mb));
                if *na {
                    mag.reverse()
                } else {
                    mag
                }
            }
        })
    }
}

/// Compares `ma/2^bits(ma)` with `mb/2^bits(mb)`.
fn cmp_aligned(ma: &BigUint, mb: &BigUint) -> Ordering {
    let (ba, bb) = (ma.bits(), mb.bits());
    match ba.cmp(&bb) {
        Ordering::Equal => ma.cmp(mb),
        Ordering::Less => (ma << (bb - ba)).cmp(mb),
        Ordering::Greater => ma.cmp(&(mb << (ba - bb))),
    }
}

fn is_odd(e: &Exponent) -> bool {
    match e.small() {
        Some(v) => v & 1 == 1,
        None => e.to_bigint().bit(0),
    }
}

fn half_exponent(e: &Exponent) -> Exponent {
    match e.small() {
        Some(v) => Exponent::from(v >> 1),
        None => Exponent::from_bigint(e.to_bigint() >> 1),
    }
}

/// Signed exact value `±mantissa·2^lsb` used by the addition kernels.
#[derive(Clone, Debug)]
pub(crate) struct Parts {
    pub negative: bool,
    pub mantissa: BigUint,
    pub lsb: Exponent,
}

impl Parts {
    pub fn of(x: &BigFloat) -> Parts {
        match &x.0 {
            Repr::Regular {
                negative,
                mantissa,
                exp,
            } => Parts {
                negative: *negative,
                mantissa: mantissa.clone(),
                lsb: exp.sub_i64(mantissa.bits() as i64),
            },
            _ => panic!("Parts::of on a special value"),
        }
    }

    pub fn exp(&self) -> Exponent {
        self.lsb.add_i64(self.mantissa.bits() as i64)
    }

    pub fn add_exact(a: &Parts, b: &Parts) -> Option<Parts> {
        let lsb = Exponent::min(&a.lsb, &b.lsb).clone();
        let sa = a.lsb.diff_i64(&lsb).expect("exponent gap too large for exact addition") as u64;
        let sb = b.lsb.diff_i64(&lsb).expect("exponent gap too large for exact addition") as u64;
        let x = if sa > 0 { &a.mantissa << sa } else { a.mantissa.clone() };
        let y = if sb > 0 { &b.mantissa << sb } else { b.mantissa.clone() };
        let (negative, mantissa) = if a.negative == b.negative {
            (a.negative, x + y)
        } else {
            match x.cmp(&y) {
                Ordering::Equal => return None,
                Ordering::Greater => (a.negative, x - y),
                Ordering::Less => (b.negative, y - x),
            }
        };
        Some(Parts {
            negative,
            mantissa,
            lsb,
        })
    }
}

/// Replaces `small` by a proxy that rounds identically when it lies
/// entirely below every rounding boundary near `big`.
///
/// With `g = min(lsb(big), exp(big) - prec - 2)`, `big` is a multiple of
/// `2^g` and so is every rounding boundary for results with exponent in
/// `exp(big) ± 1`. Any `small` with `|small| < 2^g` therefore lands strictly
/// between the same pair of boundaries as `±2^(g-1)`.
fn absorb_tiny(big: &Parts, small: Parts, prec: u64) -> Parts {
    let g = Exponent::min(&big.lsb, &big.exp().sub_i64(prec as i64 + 2)).clone();
    if small.exp() <= g {
        Parts {
            negative: small.negative,
            mantissa: BigUint::one(),
            lsb: g.sub_i64(1),
        }
    } else {
        small
    }
}

/// Rounds `±m·2^lsb` to `prec` bits.
pub(crate) fn round_parts(negative: bool, m: BigUint, lsb: Exponent, prec: u64, rnd: Rounding) -> (BigFloat, bool) {
    if m.is_zero() {
        return (BigFloat::ZERO, false);
    }
    let bits = m.bits();
    if bits <= prec {
        return (BigFloat::from_parts(negative, m, lsb), false);
    }
    debug_assert!(prec >= 1);
    let shift = bits - prec;
    let tz = m.trailing_zeros().unwrap_or(0);
    if tz >= shift {
        return (BigFloat::from_parts(negative, m, lsb), false);
    }
    let half = m.bit(shift - 1);
    let below_half = tz < shift - 1;
    let mut q = m >> shift;
    let away = match rnd {
        Rounding::TowardZero => false,
        Rounding::AwayFromZero => true,
        Rounding::Down => negative,
        Rounding::Up => !negative,
        Rounding::NearestEven => half && (below_half || q.bit(0)),
    };
    if away {
        q += 1u32;
    }
    (BigFloat::from_parts(negative, q, lsb.add_i64(shift as i64)), true)
}

/// Rounds `±(m + δ)·2^lsb` where `0 < δ < 1` if `sticky`; requires
/// `bits(m) > prec` when `sticky` is set.
fn round_parts_sticky(
    negative: bool,
    m: BigUint,
    lsb: Exponent,
    sticky: bool,
    prec: u64,
    rnd: Rounding,
) -> (BigFloat, bool) {
    if !sticky {
        return round_parts(negative, m, lsb, prec, rnd);
    }
    debug_assert!(m.bits() > prec);
    let m = (m << 1u32) | BigUint::one();
    round_parts(negative, m, lsb.sub_i64(1), prec, rnd)
}

impl From<i64> for BigFloat {
    fn from(v: i64) -> Self {
        BigFloat::from_parts(v < 0, BigUint::from(v.unsigned_abs()), Exponent::ZERO)
    }
}

impl From<i32> for BigFloat {
    fn from(v: i32) -> Self {
        BigFloat::from(v as i64)
    }
}

impl From<u64> for BigFloat {
    fn from(v: u64) -> Self {
        BigFloat::from_parts(false, BigUint::from(v), Exponent::ZERO)
    }
}

impl From<&BigInt> for BigFloat {
    fn from(v: &BigInt) -> Self {
        BigFloat::from_bigint(v)
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
