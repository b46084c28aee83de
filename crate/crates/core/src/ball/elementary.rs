//! Elementary functions of balls.
//!
//! Each function evaluates the exact midpoint with ball arithmetic at a
//! slightly higher working precision, then widens the result by a bound on
//! the propagated input error. Inputs whose magnitude exceeds a
//! precision-dependent cutoff short-circuit to crude but valid enclosures,
//! so the work per call is bounded by a polynomial in the precision.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Ball;
use crate::bigfloat::{BigFloat, Rounding};
use crate::exponent::Exponent;
use crate::magnitude::Mag;

const GUARD: u64 = 16;

fn exponent_i64(e: Option<&Exponent>) -> i64 {
    e.map_or(i64::MIN, |e| e.to_i64_saturating())
}

/// Number of argument halvings for a series at working precision `wp`.
fn halvings(wp: u64) -> i64 {
    ((wp as f64).sqrt() / 2.0).max(1.0) as i64
}

impl Ball {
    pub(crate) fn div_ui(&self, n: u64, prec: u64) -> Ball {
        self.div(&Ball::exact(BigFloat::from(n)), prec)
    }

    /// `e^x`.
    pub fn exp(&self, prec: u64) -> Ball {
        if self.is_indeterminate() {
            return Ball::indeterminate();
        }
        if self.is_zero() {
            return Ball::one();
        }
        let cutoff = 128.max(2 * prec) as i64;
        let u = self.mag_upper();
        if u.is_inf() || exponent_i64(u.exponent()) > cutoff {
            return self.exp_huge(prec, cutoff);
        }
        let em = exp_point(self.mid(), prec + 4);
        let err = em.mag_upper().mul(&expm1_upper(self.rad()));
        em.add_error(&err).round(prec).clamp_exponent(prec)
    }

    /// `e^x` when `|x|` may exceed `2^cutoff`: only the upper endpoint matters.
    fn exp_huge(&self, prec: u64, cutoff: i64) -> Ball {
        if !self.rad().is_finite() {
            return Ball::whole_line();
        }
        let hi = self.upper(64);
        let big = exponent_i64(hi.exponent()) > cutoff;
        if big && hi.is_negative() {
            // e^hi ≤ 2^hi ≤ 2^(-2^cutoff)
            let e = Exponent::from_bigint(-(BigInt::from(1) << cutoff as usize));
            return Ball::from_upper(&Mag::pow2(e));
        }
        if big {
            return Ball::whole_line();
        }
        let top = Ball::exact(hi).exp(prec);
        Ball::from_upper(&top.mag_upper())
    }

    pub fn sin_cos(&self, prec: u64) -> (Ball, Ball) {
        if self.is_indeterminate() {
            return (Ball::indeterminate(), Ball::indeterminate());
        }
        if self.is_zero() {
            return (Ball::zero(), Ball::one());
        }
        let cutoff = 65536.max(4 * prec) as i64;
        let u = self.mag_upper();
        if u.is_inf() || exponent_i64(u.exponent()) > cutoff {
            let unit = Ball::new(BigFloat::ZERO, Mag::one());
            return (unit.clone(), unit);
        }
        let (s, c) = sin_cos_point(self.mid(), prec + 4);
        let err = Mag::min(self.rad(), &Mag::from_u64_upper(2));
        let fin = |b: Ball| b.add_error(&err).round(prec).clamp_exponent(prec);
        (fin(s), fin(c))
    }

    pub fn sin(&self, prec: u64) -> Ball {
        self.sin_cos(prec).0
    }

    pub fn cos(&self, prec: u64) -> Ball {
        self.sin_cos(prec).1
    }

    /// Natural logarithm; indeterminate unless the ball is strictly positive.
    pub fn log(&self, prec: u64) -> Ball {
        if !self.is_positive() || !self.rad().is_finite() {
            return Ball::indeterminate();
        }
        if self.is_exact() && *self.mid() == BigFloat::one() {
            return Ball::zero();
        }
        let l = log_point(self.mid(), prec + 4);
        let err = if self.rad().is_zero() {
            Mag::ZERO
        } else {
            // sup of 1/t over the ball
            let lo = self.lower(32);
            self.rad().div_lower_denominator(&lo).unwrap_or(Mag::INF)
        };
        l.add_error(&err).round(prec).clamp_exponent(prec)
    }

    pub fn atan(&self, prec: u64) -> Ball {
        if self.is_indeterminate() {
            return Ball::indeterminate();
        }
        if self.is_zero() {
            return Ball::zero();
        }
        if !self.rad().is_finite() {
            return Ball::new(BigFloat::ZERO, Mag::from_u64_upper(2));
        }
        if !self.rel_accuracy_bits().at_least(4) {
            // monotone: the image of a wide ball is spanned by its endpoints
            let wp = prec + 4;
            let lo = atan_point(&self.lower(wp), wp).lower(wp);
            let hi = atan_point(&self.upper(wp), wp).upper(wp);
            return Ball::from_interval(&lo, &hi, prec);
        }
        let a = atan_point(self.mid(), prec + 4);
        let r = self.rad();
        let err = if r.is_zero() {
            Mag::ZERO
        } else if self.contains_zero() {
            r.clone()
        } else {
            // sup of 1/(1+t²) over the ball
            let g = self.mag_lower().to_bigfloat();
            let (g2, _) = g.mul(&g, 32, Rounding::Down);
            let (den, _) = g2.add(&BigFloat::one(), 32, Rounding::Down);
            r.div_lower_denominator(&den).unwrap_or(Mag::INF)
        };
        let err = Mag::min(&err, &Mag::from_u64_upper(4));
        a.add_error(&err).round(prec).clamp_exponent(prec)
    }

    /// The principal argument of `x + iy`, in `(-π, π]`. Balls meeting the
    /// negative real axis with both signs of `y` give the hull `[-π, π]`.
    pub fn atan2(y: &Ball, x: &Ball, prec: u64) -> Ball {
        if x.is_indeterminate() || y.is_indeterminate() {
            return Ball::indeterminate();
        }
        let wp = prec + 4;
        let half_pi = Ball::pi(wp).mul_2si(-1);
        let r = if x.is_positive() {
            y.div(x, wp).atan(wp)
        } else if y.is_positive() {
            half_pi.sub(&x.div(y, wp).atan(wp), wp)
        } else if y.is_negative() {
            half_pi.neg().sub(&x.div(y, wp).atan(wp), wp)
        } else if x.is_negative() && y.is_nonnegative() {
            y.div(x, wp).atan(wp).add(&Ball::pi(wp), wp)
        } else {
            Ball::new(BigFloat::ZERO, Ball::pi(wp).mag_upper())
        };
        r.round(prec)
    }

    /// `x^y`. Exact integer exponents up to `2^20` use binary powering;
    /// otherwise `exp(y·log x)`, which requires `x > 0`.
    pub fn pow(&self, y: &Ball, prec: u64) -> Ball {
        if self.is_indeterminate() || y.is_indeterminate() {
            return Ball::indeterminate();
        }
        if let Some(n) = y.to_bigint_exact() {
            if n.abs() <= BigInt::from(1 << 20) {
                let k = n.abs().to_u64().unwrap();
                let p = self.pow_u64(k, prec + 8);
                return if n.is_negative() { p.inv(prec) } else { p.round(prec) };
            }
        }
        if self.is_zero() && y.is_positive() {
            return Ball::zero();
        }
        if !self.is_positive() {
            return Ball::indeterminate();
        }
        let mut wp = prec + GUARD;
        let mut t = y.mul(&self.log(wp), wp);
        let g = exponent_i64(t.mag_upper().exponent());
        if g > 0 && t.is_finite() {
            wp += (g as u64).min(4 * prec + 64);
            t = y.mul(&self.log(wp), wp);
        }
        t.exp(prec)
    }
}

/// Upper bound of `e^r - 1`.
fn expm1_upper(r: &Mag) -> Mag {
    if r.is_zero() {
        return Mag::ZERO;
    }
    if *r < Mag::pow2(-1) {
        // e^r - 1 ≤ r + r² for r ≤ 1
        return r.add(&r.mul(r));
    }
    if !r.is_finite() {
        return Mag::INF;
    }
    exp_point(&r.to_bigfloat(), 32).mag_upper()
}

/// `Σ x^j/j!` for `|x| ≤ 1/2`, with the truncation error in the radius.
fn exp_taylor(x: &Ball, wp: u64) -> Ball {
    let xm = x.mag_upper();
    let eps = Mag::pow2(-(wp as i64) - 2);
    let mut sum = Ball::one();
    let mut term = Ball::one();
    let mut tb = Mag::one();
    let mut j = 1u64;
    loop {
        term = term.mul(x, wp).div_ui(j, wp);
        tb = tb.mul(&xm).div(&Mag::from_u64_upper(j));
        sum = sum.add(&term, wp);
        let next = tb.mul(&xm).div(&Mag::from_u64_upper(j + 1));
        if next < eps || next.is_zero() {
            return sum.add_error(&next.mul_2si(1));
        }
        j += 1;
    }
}

/// Enclosure of `e^m` with relative accuracy about `2^-prec`.
pub(crate) fn exp_point(m: &BigFloat, prec: u64) -> Ball {
    if m.is_zero() {
        return Ball::one();
    }
    let e = exponent_i64(m.exponent());
    let nbits = e.max(0) as u64;
    let kk = halvings(prec);
    let wp = prec + nbits + GUARD + kk as u64;
    let (n, t) = if e >= 0 {
        let ln2 = Ball::ln2(wp + nbits);
        let (q, _) = m.div(ln2.mid(), nbits + 16, Rounding::NearestEven);
        let n = q.round_to_bigint().unwrap();
        let t = Ball::exact(m.clone()).sub(&Ball::from_bigint(&n).mul(&ln2, wp + nbits), wp);
        (n, t)
    } else {
        (BigInt::zero(), Ball::exact(m.clone()))
    };
    let te = exponent_i64(t.mag_upper().exponent());
    let k = (kk + te).clamp(0, kk + 2);
    let mut s = exp_taylor(&t.mul_2si(-k), wp);
    for _ in 0..k {
        s = s.mul(&s, wp);
    }
    s.mul_2exp(&Exponent::from_bigint(n))
}

/// Enclosures of `sin m` and `cos m` with absolute accuracy about `2^-prec`.
pub(crate) fn sin_cos_point(m: &BigFloat, prec: u64) -> (Ball, Ball) {
    if m.is_zero() {
        return (Ball::zero(), Ball::one());
    }
    let e = exponent_i64(m.exponent());
    let nbits = e.max(0) as u64;
    let wp = prec + nbits + GUARD;
    let (quadrant, r) = if e >= 0 {
        let half_pi = Ball::pi(wp + nbits).mul_2si(-1);
        let (q, _) = m.div(half_pi.mid(), nbits + 16, Rounding::NearestEven);
        let n = q.round_to_bigint().unwrap();
        let r = Ball::exact(m.clone()).sub(&Ball::from_bigint(&n).mul(&half_pi, wp + nbits), wp);
        let quadrant = (n % 4u32 + 4u32) % 4u32;
        (quadrant.to_u32().unwrap(), r)
    } else {
        (0, Ball::exact(m.clone()))
    };
    let (s, c) = sin_cos_taylor(&r, wp);
    match quadrant {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    }
}

/// Taylor series of sin and cos for `|x| < 1`.
fn sin_cos_taylor(x: &Ball, wp: u64) -> (Ball, Ball) {
    let xm = x.mag_upper();
    let eps = Mag::pow2(-(wp as i64) - 2);
    let mut sin = Ball::zero();
    let mut cos = Ball::one();
    let mut term = Ball::one();
    let mut tb = Mag::one();
    let mut j = 1u64;
    loop {
        term = term.mul(x, wp).div_ui(j, wp);
        tb = tb.mul(&xm).div(&Mag::from_u64_upper(j));
        let signed = if (j / 2) % 2 == 1 { term.neg() } else { term.clone() };
        if j % 2 == 1 {
            sin = sin.add(&signed, wp);
        } else {
            cos = cos.add(&signed, wp);
        }
        let next = tb.mul(&xm).div(&Mag::from_u64_upper(j + 1));
        if (next < eps || next.is_zero()) && j >= 2 {
            let tail = next.mul_2si(1);
            return (sin.add_error(&tail), cos.add_error(&tail));
        }
        j += 1;
    }
}

/// Enclosure of `log m` for `m > 0` with relative accuracy about `2^-prec`.
pub(crate) fn log_point(m: &BigFloat, prec: u64) -> Ball {
    let e = exponent_i64(m.exponent());
    let one = BigFloat::one();
    let near_one = e == 0 || e == 1;
    let d = if near_one {
        m.add_exact(&one.neg())
    } else {
        BigFloat::ZERO
    };
    let guard = if near_one && !d.is_zero() {
        (-exponent_i64(d.exponent())).max(0) as u64
    } else {
        0
    };
    let ebits = 64 - e.unsigned_abs().leading_zeros() as u64;
    let wp = prec + guard + GUARD + ebits;

    let mut y = initial_log(m, &d, near_one, e, wp);
    let mut cur = 40u64;
    loop {
        cur = (2 * cur).min(wp);
        let t = newton_residual(m, &y, cur + guard + 8);
        let (ny, _) = y.add(t.mid(), cur + guard + 8, Rounding::NearestEven);
        y = ny;
        if cur == wp {
            break;
        }
    }
    loop {
        let t = newton_residual(m, &y, wp);
        let tm = t.mag_upper();
        if tm < Mag::pow2(-1) {
            // |log(1+t) - t| ≤ t² for |t| ≤ 1/2
            return Ball::exact(y).add(&t, wp).add_error(&tm.mul(&tm));
        }
        y = y.add(t.mid(), wp, Rounding::NearestEven).0;
    }
}

/// `m·e^(-y) - 1`.
fn newton_residual(m: &BigFloat, y: &BigFloat, prec: u64) -> Ball {
    let ey = exp_point(&y.neg(), prec);
    Ball::exact(m.clone()).mul(&ey, prec).sub(&Ball::one(), prec)
}

/// A double-precision guess for `log m`.
fn initial_log(m: &BigFloat, d: &BigFloat, near_one: bool, e: i64, wp: u64) -> BigFloat {
    if near_one {
        return BigFloat::from_f64(d.to_f64().ln_1p());
    }
    // m = f·2^e with f in [1/2, 1)
    let f = m.mul_2exp(&-m.exponent().unwrap()).to_f64();
    let lf = BigFloat::from_f64(f.ln());
    if e.unsigned_abs() < 1 << 40 {
        let guess = lf.add(
            &BigFloat::from_f64(e as f64 * std::f64::consts::LN_2),
            53,
            Rounding::NearestEven,
        );
        return guess.0;
    }
    let ebig = Ball::exact(BigFloat::from_bigint(&m.exponent().unwrap().to_bigint()));
    let bits = 64 - 0u64.leading_zeros() as u64 + m.exponent().unwrap().bits() + 64;
    let el = ebig.mul(&Ball::ln2(bits), bits);
    el.mid().add(&lf, bits.min(wp), Rounding::NearestEven).0
}

/// Enclosure of `atan m` with relative accuracy about `2^-prec`.
pub(crate) fn atan_point(m: &BigFloat, prec: u64) -> Ball {
    if m.is_zero() {
        return Ball::zero();
    }
    let kk = halvings(prec);
    let wp = prec + GUARD + kk as u64 + 4;
    let x = Ball::exact(m.clone());
    if m.abs() > BigFloat::one() {
        // atan m = ±π/2 - atan(1/m)
        let half_pi = Ball::pi(wp).mul_2si(-1);
        let inner = atan_series(&x.inv(wp), wp, kk);
        let hp = if m.is_negative() { half_pi.neg() } else { half_pi };
        return hp.sub(&inner, wp);
    }
    atan_series(&x, wp, kk)
}

/// `atan x` for `|x| ≤ 1` by argument halving and Taylor series.
fn atan_series(x: &Ball, wp: u64, kk: i64) -> Ball {
    let mut x = x.clone();
    let small = Mag::pow2(-kk);
    let mut k = 0;
    while x.mag_upper() > small && k < kk + 4 {
        // atan x = 2·atan(x / (1 + sqrt(1 + x²)))
        let den = Ball::one().add(&Ball::one().add(&x.sqr(wp), wp).sqrt(wp), wp);
        x = x.div(&den, wp);
        k += 1;
    }
    let xm = x.mag_upper();
    let x2 = x.sqr(wp);
    let x2m = xm.mul(&xm);
    let eps = Mag::pow2(-(wp as i64) - 2);
    let mut power = x.clone();
    let mut pb = xm.clone();
    let mut sum = x.clone();
    let mut j = 1u64;
    loop {
        power = power.mul(&x2, wp);
        pb = pb.mul(&x2m);
        let term = power.div_ui(2 * j + 1, wp);
        sum = if j % 2 == 1 {
            sum.sub(&term, wp)
        } else {
            sum.add(&term, wp)
        };
        // |tail| ≤ Σ_{i>j} |x|^(2i+1) ≤ 2·|x|^(2j+3) for |x| ≤ 1/2
        let next = pb.mul(&x2m);
        if next < eps || next.is_zero() {
            return sum.add_error(&next.mul_2si(1)).mul_2si(k);
        }
        j += 1;
    }
}
