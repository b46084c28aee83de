//! Guaranteed decimal output and decimal input.
//!
//! `printn` scales the ball by a power of ten so that its midpoint becomes
//! an integer with a few more digits than requested, then trims digits
//! while the accumulated error exceeds one unit in the last place. The
//! printed radius is a three-digit upper bound of the original radius plus
//! every conversion error, so the decimal ball always contains the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, Signed, ToPrimitive, Zero};

use super::{mag_from_rational_upper, Ball};
use crate::bigfloat::{BigFloat, Rounding};
use crate::magnitude::{mag_from_bigint_upper, Mag};

/// Exponents of ten up to this size are expanded into exact integers.
const EXACT_POW10_LIMIT: u64 = 200_000;

const LOG10_2: f64 = std::f64::consts::LOG10_2;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{msg} at byte {pos}")]
pub struct ParseBallError {
    pub pos: usize,
    pub msg: String,
}

impl ParseBallError {
    pub(crate) fn new(pos: usize, msg: &str) -> Self {
        ParseBallError {
            pos,
            msg: msg.to_string(),
        }
    }
}

/// `10^k` for `k ≥ 0`, to `prec` bits.
fn ten_pow(k: &BigInt, prec: u64) -> Ball {
    match k.to_u64() {
        Some(v) if v <= EXACT_POW10_LIMIT => Ball::from_bigint(&BigInt::from(10u32).pow(v as u32)).round(prec),
        _ => {
            let wp = prec + k.bits() + 16;
            let t = Ball::from_i64(10).log(wp).mul(&Ball::from_bigint(k), wp);
            t.exp(prec)
        }
    }
}

/// `x·10^k`.
fn scale10(x: &Ball, k: &BigInt, prec: u64) -> Ball {
    if k.is_negative() {
        x.div(&ten_pow(&-k, prec), prec)
    } else {
        x.mul(&ten_pow(k, prec), prec)
    }
}

/// An estimate of `floor(e·log10 2)`, off by at most one.
fn floor_log10_pow2(e: &BigInt) -> BigInt {
    if let Some(v) = e.to_i64().filter(|v| v.unsigned_abs() < 1 << 50) {
        return BigInt::from((v as f64 * LOG10_2).floor() as i64);
    }
    let wp = e.bits() + 64;
    let l = Ball::ln2(wp).div(&Ball::from_i64(10).log(wp), wp);
    let p = l.mul(&Ball::from_bigint(e), wp);
    let r = p.mid().round_to_bigint().unwrap();
    if BigFloat::from_bigint(&r) > *p.mid() {
        r - 1
    } else {
        r
    }
}

/// Positional or scientific rendering of `0.d1d2...·10^(lead+1)`.
fn format_digits(negative: bool, digits: &str, lead: &BigInt, hi: i64, lo: i64) -> String {
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    let k = digits.len() as i64;
    match lead.to_i64().filter(|l| (lo..=hi).contains(l)) {
        Some(l) if l >= 0 => {
            if k <= l + 1 {
                out.push_str(digits);
                out.extend(std::iter::repeat_n('0', (l + 1 - k) as usize));
            } else {
                out.push_str(&digits[..(l + 1) as usize]);
                out.push('.');
                out.push_str(&digits[(l + 1) as usize..]);
            }
        }
        Some(l) => {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-l - 1) as usize));
            out.push_str(digits);
        }
        None => {
            out.push_str(&digits[..1]);
            if k > 1 {
                out.push('.');
                out.push_str(&digits[1..]);
            }
            out.push('e');
            if !lead.is_negative() {
                out.push('+');
            }
            out.push_str(&lead.to_string());
        }
    }
    out
}

fn format_mid(negative: bool, digits: &str, lead: &BigInt, n: usize) -> String {
    format_digits(negative, digits, lead, 6.max(n as i64 - 1), -4)
}

/// Three-digit upward rounding of `r·10^exp10`.
fn format_rad(r: &Mag, exp10: &BigInt) -> String {
    if r.is_inf() {
        return "inf".to_string();
    }
    if r.is_zero() {
        return "0".to_string();
    }
    let e2 = r.exponent().unwrap().to_bigint();
    let mut g = floor_log10_pow2(&e2) + exp10 - 2;
    let x = Ball::exact(r.to_bigfloat());
    loop {
        let q = scale10(&x, &(exp10 - &g), 64).upper(64);
        if q >= BigFloat::from(1000) {
            g += 1;
            continue;
        }
        if q < BigFloat::from(100) {
            g -= 1;
            continue;
        }
        let mut digits = ceil_bigint(&q);
        if digits == BigInt::from(1000) {
            digits = BigInt::from(100);
            g += 1;
        }
        return format_digits(false, &digits.to_string(), &(g + 2), 2, -2);
    }
}

fn ceil_bigint(x: &BigFloat) -> BigInt {
    let q = x.to_rational().unwrap();
    q.ceil().to_integer()
}

/// Decimal digits and leading exponent of an exact value with at most `d`
/// significant digits.
fn exact_decimal(x: &BigFloat, d: usize) -> Option<(bool, String, BigInt)> {
    let m = BigInt::from(x.mantissa()?.clone());
    let e = x.lsb_exponent()?;
    let bits = m.bits();
    let (digits, shift) = if !e.is_negative() {
        let e = e.to_i64().filter(|&v| (v as u64) <= 4 * (d as u64 + bits) + 16)?;
        let n = m << e as usize;
        let s = n.to_string();
        let trimmed = s.trim_end_matches('0');
        let lead = BigInt::from(s.len() as i64 - 1);
        if trimmed.len() > d {
            return None;
        }
        return Some((x.is_negative(), trimmed.to_string(), lead));
    } else {
        let k = (-e).to_i64().filter(|&v| (v as f64) * 0.69 <= d as f64 + 2.0)?;
        let n = m * BigInt::from(5u32).pow(k as u32);
        (n.to_string(), k)
    };
    if digits.len() > d {
        return None;
    }
    let lead = BigInt::from(digits.len() as i64 - 1 - shift);
    Some((x.is_negative(), digits, lead))
}

impl Ball {
    /// Decimal enclosure with at most `d` significant digits in the midpoint.
    pub fn printn(&self, d: usize) -> String {
        let d = d.max(1);
        if self.is_indeterminate() {
            return "nan".to_string();
        }
        if self.rad().is_inf() {
            return "[+/- inf]".to_string();
        }
        if self.mid().is_zero() {
            return if self.rad().is_zero() {
                "0".to_string()
            } else {
                format!("[+/- {}]", format_rad(self.rad(), &BigInt::zero()))
            };
        }
        if self.rad().is_zero() {
            if let Some((neg, digits, lead)) = exact_decimal(self.mid(), d) {
                return format_mid(neg, &digits, &lead, d);
            }
        }
        let n = match self.rel_accuracy_bits() {
            super::AccuracyBits::Exact => d as i64,
            super::AccuracyBits::None => i64::MIN,
            super::AccuracyBits::Bits(b) => (d as i64).min((b as f64 * LOG10_2).floor() as i64 + 2),
        };
        if n < 1 {
            return format!("[+/- {}]", format_rad(&self.mag_upper(), &BigInt::zero()));
        }
        self.printn_digits(n as usize)
    }

    fn printn_digits(&self, n: usize) -> String {
        let e2 = self.mid().exponent().unwrap().to_bigint();
        let mut exp10 = floor_log10_pow2(&e2) - BigInt::from(n as u64 + 4);
        let wp = ((n + 8) as f64 / LOG10_2) as u64 + 32;
        let (ym, ry) = loop {
            let y = scale10(self, &-&exp10, wp);
            let ym = y.mid().round_to_bigint().unwrap();
            if ym.abs().to_string().len() > n {
                let (diff, _) = BigFloat::sum(&[y.mid().clone(), BigFloat::from_bigint(&ym).neg()], 32, Rounding::Up);
                let ry = y.rad().add(&Mag::from_bigfloat_upper(&diff).unwrap());
                break (ym, ry);
            }
            exp10 -= 4;
        };
        let negative = ym.is_negative();
        let ya = ym.abs();
        let total_digits = ya.to_string().len();
        let ten = BigInt::from(10u32);
        let mut k = n;
        let (mantissa, shift, total) = loop {
            let s = total_digits - k;
            let unit = Pow::pow(&ten, s as u32);
            let (q, rem) = ya.div_rem(&unit);
            let mut mk = q;
            let twice = &rem * 2u32;
            if twice >= unit {
                mk += 1u32;
            }
            let err = (&mk * &unit - &ya).abs();
            let total = ry.add(&mag_from_bigint_upper(&err));
            if total.to_bigfloat() < BigFloat::from_bigint(&unit) || k == 1 {
                let mut shift = s;
                if mk.to_string().len() > k {
                    mk /= 10u32;
                    shift += 1;
                }
                break (mk, shift, total);
            }
            k -= 1;
        };
        let digits = mantissa.to_string();
        let lead = &exp10 + BigInt::from((shift + digits.len() - 1) as u64);
        let m = format_mid(negative, &digits, &lead, n);
        if total.is_zero() {
            return m;
        }
        format!("[{m} +/- {}]", format_rad(&total, &exp10))
    }

    /// Parses the decimal grammar, choosing a precision that keeps every
    /// dyadic decimal exact.
    pub fn parse_decimal(s: &str) -> Result<Ball, ParseBallError> {
        let digits = s.bytes().filter(u8::is_ascii_digit).count() as u64;
        let prec = 64.max((digits as f64 * 3.33) as u64 + 8);
        Ball::parse_decimal_prec(s, prec)
    }

    /// Parses the decimal grammar; inexact midpoints are enclosed at `prec` bits.
    pub fn parse_decimal_prec(s: &str, prec: u64) -> Result<Ball, ParseBallError> {
        if s == "nan" {
            return Ok(Ball::indeterminate());
        }
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
        };
        let ball = if let Some(rest) = s.strip_prefix("[+/- ") {
            p.pos = s.len() - rest.len();
            let r = p.radius()?;
            p.expect("]")?;
            Ball::new(BigFloat::ZERO, r)
        } else if s.starts_with('[') {
            p.pos = 1;
            let m = p.number()?;
            p.expect(" +/- ")?;
            let r = p.radius()?;
            p.expect("]")?;
            m.to_ball(prec).add_error(&r)
        } else {
            p.number()?.to_ball(prec)
        };
        if p.pos != s.len() {
            return Err(ParseBallError::new(p.pos, "trailing characters"));
        }
        Ok(ball)
    }
}

/// `mantissa·10^exp10`.
struct Decimal {
    mantissa: BigInt,
    exp10: BigInt,
}

impl Decimal {
    fn exact_rational(&self) -> Option<BigRational> {
        let e = self.exp10.to_i64()?;
        if e.unsigned_abs() > EXACT_POW10_LIMIT {
            return None;
        }
        let p = BigInt::from(10u32).pow(e.unsigned_abs() as u32);
        Some(if e >= 0 {
            BigRational::from_integer(&self.mantissa * p)
        } else {
            BigRational::new(self.mantissa.clone(), p)
        })
    }

    fn to_ball(&self, prec: u64) -> Ball {
        if self.mantissa.is_zero() {
            return Ball::zero();
        }
        match self.exact_rational() {
            Some(q) => Ball::from_rational(&q, prec),
            None => scale10(&Ball::from_bigint(&self.mantissa), &self.exp10, prec),
        }
    }

    fn to_mag_upper(&self) -> Mag {
        if self.mantissa.is_zero() {
            return Mag::ZERO;
        }
        match self.exact_rational() {
            Some(q) => mag_from_rational_upper(&q),
            None => scale10(&Ball::from_bigint(&self.mantissa), &self.exp10, 64).mag_upper(),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, ParseBallError> {
        Err(ParseBallError::new(self.pos, msg))
    }

    fn expect(&mut self, lit: &str) -> Result<(), ParseBallError> {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            self.err(&format!("expected {lit:?}"))
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap()
    }

    fn number(&mut self) -> Result<Decimal, ParseBallError> {
        let negative = self.s.get(self.pos) == Some(&b'-');
        if negative {
            self.pos += 1;
        }
        self.unsigned().map(|mut d| {
            if negative {
                d.mantissa = -d.mantissa;
            }
            d
        })
    }

    fn radius(&mut self) -> Result<Mag, ParseBallError> {
        if self.s[self.pos..].starts_with(b"inf") {
            self.pos += 3;
            return Ok(Mag::INF);
        }
        Ok(self.unsigned()?.to_mag_upper())
    }

    fn unsigned(&mut self) -> Result<Decimal, ParseBallError> {
        let int = self.digits().to_string();
        if int.is_empty() {
            return self.err("expected digits");
        }
        let mut frac = String::new();
        if self.s.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            frac = self.digits().to_string();
            if frac.is_empty() {
                return self.err("expected digits after '.'");
            }
        }
        let mut exp = BigInt::zero();
        if self.s.get(self.pos) == Some(&b'e') {
            self.pos += 1;
            let sign = match self.s.get(self.pos) {
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                _ => 1,
            };
            let e = self.digits();
            if e.is_empty() {
                return self.err("expected exponent digits");
            }
            exp = BigInt::from(sign) * e.parse::<BigInt>().unwrap();
        }
        let mantissa: BigInt = format!("{int}{frac}").parse().unwrap();
        Ok(Decimal {
            mantissa,
            exp10: exp - BigInt::from(frac.len() as u64),
        })
    }
}
