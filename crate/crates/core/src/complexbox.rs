//! Complex rectangles `re + im·i` with [`Ball`] parts.
//!
//! Functions follow principal branches. A box that straddles a branch cut
//! gets an image containing both one-sided limits, so the jump is enclosed
//! instead of hidden.

use std::fmt;
use std::str::FromStr;

use crate::ball::{Ball, ParseBallError};
use crate::bigfloat::{BigFloat, Rounding};
use crate::magnitude::Mag;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexBox {
    re: Ball,
    im: Ball,
}

impl ComplexBox {
    pub fn new(re: Ball, im: Ball) -> ComplexBox {
        ComplexBox { re, im }
    }

    pub fn from_real(re: Ball) -> ComplexBox {
        ComplexBox::new(re, Ball::zero())
    }

    pub fn zero() -> ComplexBox {
        ComplexBox::from_real(Ball::zero())
    }

    pub fn one() -> ComplexBox {
        ComplexBox::from_real(Ball::one())
    }

    pub fn i() -> ComplexBox {
        ComplexBox::new(Ball::zero(), Ball::one())
    }

    pub fn indeterminate() -> ComplexBox {
        ComplexBox::new(Ball::indeterminate(), Ball::indeterminate())
    }

    pub fn re(&self) -> &Ball {
        &self.re
    }

    pub fn im(&self) -> &Ball {
        &self.im
    }

    pub fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }

    pub fn is_indeterminate(&self) -> bool {
        self.re.is_indeterminate() || self.im.is_indeterminate()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// True if `y ⊆ self`.
    pub fn contains(&self, y: &ComplexBox) -> bool {
        self.re.contains(&y.re) && self.im.contains(&y.im)
    }

    pub fn overlaps(&self, y: &ComplexBox) -> bool {
        self.re.overlaps(&y.re) && self.im.overlaps(&y.im)
    }

    pub fn round(&self, prec: u64) -> ComplexBox {
        ComplexBox::new(self.re.round(prec), self.im.round(prec))
    }

    pub fn neg(&self) -> ComplexBox {
        ComplexBox::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> ComplexBox {
        ComplexBox::new(self.re.clone(), self.im.neg())
    }

    pub fn mul_2si(&self, e: i64) -> ComplexBox {
        ComplexBox::new(self.re.mul_2si(e), self.im.mul_2si(e))
    }

    /// `i·self`.
    pub fn mul_i(&self) -> ComplexBox {
        ComplexBox::new(self.im.neg(), self.re.clone())
    }

    pub fn add(&self, y: &ComplexBox, prec: u64) -> ComplexBox {
        ComplexBox::new(self.re.add(&y.re, prec), self.im.add(&y.im, prec))
    }

    pub fn sub(&self, y: &ComplexBox, prec: u64) -> ComplexBox {
        ComplexBox::new(self.re.sub(&y.re, prec), self.im.sub(&y.im, prec))
    }

    pub fn mul_ball(&self, y: &Ball, prec: u64) -> ComplexBox {
        ComplexBox::new(self.re.mul(y, prec), self.im.mul(y, prec))
    }

    /// Product from four real multiplications.
    pub fn mul(&self, y: &ComplexBox, prec: u64) -> ComplexBox {
        if self.is_real() {
            return y.mul_ball(&self.re, prec);
        }
        if y.is_real() {
            return self.mul_ball(&y.re, prec);
        }
        let (a, b, c, d) = (&self.re, &self.im, &y.re, &y.im);
        let bd = b.mul(d, prec + 8);
        let bc = b.mul(c, prec + 8);
        let re = Ball::fma(&bd.neg(), a, c, prec);
        let im = Ball::fma(&bc, a, d, prec);
        ComplexBox::new(re, im)
    }

    pub fn sqr(&self, prec: u64) -> ComplexBox {
        let re = self.re.sqr(prec + 8).sub(&self.im.sqr(prec + 8), prec);
        let im = self.re.mul(&self.im, prec).mul_2si(1);
        ComplexBox::new(re, im)
    }

    /// `z + x·y` with the product formed at extra precision.
    pub fn fma(z: &ComplexBox, x: &ComplexBox, y: &ComplexBox, prec: u64) -> ComplexBox {
        x.mul(y, prec + 16).add(z, prec)
    }

    /// `|self|²`.
    pub fn abs_sqr(&self, prec: u64) -> Ball {
        Ball::fma(&self.re.sqr(prec + 8), &self.im, &self.im, prec)
    }

    pub fn abs(&self, prec: u64) -> Ball {
        if self.is_real() {
            return self.re.abs();
        }
        self.abs_sqr(prec + 8).sqrt(prec)
    }

    /// `self·conj(y)/|y|²`; indeterminate when `y` may vanish.
    pub fn div(&self, y: &ComplexBox, prec: u64) -> ComplexBox {
        if y.is_real() {
            return ComplexBox::new(self.re.div(&y.re, prec), self.im.div(&y.re, prec));
        }
        let wp = prec + 16;
        let den = y.abs_sqr(wp);
        if !den.is_positive() {
            return ComplexBox::indeterminate();
        }
        let num = self.mul(&y.conj(), wp);
        ComplexBox::new(num.re.div(&den, prec), num.im.div(&den, prec))
    }

    pub fn inv(&self, prec: u64) -> ComplexBox {
        ComplexBox::one().div(self, prec)
    }

    pub fn exp(&self, prec: u64) -> ComplexBox {
        if self.is_real() {
            return ComplexBox::from_real(self.re.exp(prec));
        }
        let wp = prec + 8;
        let r = self.re.exp(wp);
        let (s, c) = self.im.sin_cos(wp);
        ComplexBox::new(r.mul(&c, prec), r.mul(&s, prec))
    }

    /// True when some point lies on or below the negative real axis while
    /// another lies above it, so the principal argument jumps inside the box.
    fn crosses_cut(&self) -> bool {
        !self.re.is_nonnegative() && !self.im.is_nonnegative() && !self.im.is_negative()
    }

    /// Principal argument in `(-π, π]`.
    pub fn arg(&self, prec: u64) -> Ball {
        if self.is_indeterminate() {
            return Ball::indeterminate();
        }
        if self.crosses_cut() || self.contains_zero() {
            return Ball::new(BigFloat::ZERO, Ball::pi(prec + 8).mag_upper());
        }
        Ball::atan2(&self.im, &self.re, prec)
    }

    /// Principal logarithm.
    pub fn log(&self, prec: u64) -> ComplexBox {
        if self.is_indeterminate() {
            return ComplexBox::indeterminate();
        }
        if self.contains_zero() {
            return ComplexBox::new(Ball::indeterminate(), self.arg(prec));
        }
        if self.is_real() && self.re.is_positive() {
            return ComplexBox::from_real(self.re.log(prec));
        }
        let wp = prec + 8;
        let re = self.abs_sqr(wp).log(wp).mul_2si(-1).round(prec);
        ComplexBox::new(re, self.arg(prec))
    }

    /// Principal square root.
    pub fn sqrt(&self, prec: u64) -> ComplexBox {
        if self.is_indeterminate() {
            return ComplexBox::indeterminate();
        }
        if self.is_real() {
            if self.re.is_nonnegative() {
                return ComplexBox::from_real(self.re.sqrt(prec));
            }
            if self.re.is_nonpositive() {
                return ComplexBox::new(Ball::zero(), self.re.neg().sqrt(prec));
            }
        }
        if self.contains_zero() {
            return ComplexBox::indeterminate();
        }
        let wp = prec + 16;
        if self.crosses_cut() {
            // |sqrt z| ≤ sqrt(max|z|), re ≥ 0
            let m = Ball::exact(self.abs(wp).upper(wp)).sqrt(wp).upper(wp);
            let half = Mag::from_bigfloat_upper(&m).unwrap_or(Mag::INF);
            return ComplexBox::new(Ball::from_upper(&half), Ball::new(BigFloat::ZERO, half));
        }
        let a = Ball::exact(self.re.mid().clone());
        let b = Ball::exact(self.im.mid().clone());
        let r = ComplexBox::new(a.clone(), b.clone()).abs(wp);
        let t = r.add(&a.abs(), wp).mul_2si(-1).sqrt(wp);
        let u = b.abs().div(&t, wp).mul_2si(-1);
        let (re, im) = if a.is_nonnegative() {
            (t.clone(), b.div(&t.mul_2si(1), wp))
        } else if b.is_negative() {
            (u, t.neg())
        } else {
            (u, t)
        };
        // |sqrt'(z)| = 1/(2·sqrt|z|) with |z| bounded below over the box
        let lo = |x: &Ball| x.mag_lower().to_bigfloat();
        let (lr, li) = (lo(&self.re), lo(&self.im));
        let min_abs_sqr = lr.mul_exact(&lr).add_exact(&li.mul_exact(&li));
        let (s, _) = min_abs_sqr.sqrt(32, Rounding::Down);
        let (s, _) = s.sqrt(32, Rounding::Down);
        let dz = self.re.rad().mul(self.re.rad()).add(&self.im.rad().mul(self.im.rad()));
        let dz = Ball::exact(dz.to_bigfloat()).sqrt(32).mag_upper();
        let err = dz.mul_2si(-1).div_lower_denominator(&s).unwrap_or(Mag::INF);
        ComplexBox::new(re.add_error(&err).round(prec), im.add_error(&err).round(prec))
    }

    /// `(sin z, cos z)`.
    pub fn sin_cos(&self, prec: u64) -> (ComplexBox, ComplexBox) {
        if self.is_real() {
            let (s, c) = self.re.sin_cos(prec);
            return (ComplexBox::from_real(s), ComplexBox::from_real(c));
        }
        let wp = prec + 8;
        let (sa, ca) = self.re.sin_cos(wp);
        let ep = self.im.exp(wp);
        let em = self.im.neg().exp(wp);
        let cosh = ep.add(&em, wp).mul_2si(-1);
        let sinh = ep.sub(&em, wp).mul_2si(-1);
        let s = ComplexBox::new(sa.mul(&cosh, prec), ca.mul(&sinh, prec));
        let c = ComplexBox::new(ca.mul(&cosh, prec), sa.mul(&sinh, prec).neg());
        (s, c)
    }

    pub fn sin(&self, prec: u64) -> ComplexBox {
        self.sin_cos(prec).0
    }

    pub fn cos(&self, prec: u64) -> ComplexBox {
        self.sin_cos(prec).1
    }

    /// Tangent; the quotient `sin/cos` is used only near the real axis,
    /// elsewhere `±i` plus a quotient of small exponentials.
    pub fn tan(&self, prec: u64) -> ComplexBox {
        if self.is_indeterminate() {
            return ComplexBox::indeterminate();
        }
        if self.is_real() {
            let (s, c) = self.re.sin_cos(prec + 8);
            return ComplexBox::from_real(s.div(&c, prec));
        }
        let m = self.im.mid();
        let one = BigFloat::one();
        if m.abs() < one {
            self.tan_quotient(prec)
        } else if *m >= one {
            self.tan_upper(prec)
        } else {
            self.tan_lower(prec)
        }
    }

    fn tan_quotient(&self, prec: u64) -> ComplexBox {
        let (s, c) = self.sin_cos(prec + 8);
        s.div(&c, prec)
    }

    /// `i - 2i·w/(1 + w)` with `w = exp(2iz)`.
    fn tan_upper(&self, prec: u64) -> ComplexBox {
        let wp = prec + 8;
        let w = self.mul_i().mul_2si(1).exp(wp);
        let t = w.div(&ComplexBox::one().add(&w, wp), wp);
        ComplexBox::new(t.im.mul_2si(1).round(prec), Ball::one().sub(&t.re.mul_2si(1), prec))
    }

    /// `-i + 2i·w/(1 + w)` with `w = exp(-2iz)`.
    fn tan_lower(&self, prec: u64) -> ComplexBox {
        let wp = prec + 8;
        let w = self.mul_i().mul_2si(1).neg().exp(wp);
        let t = w.div(&ComplexBox::one().add(&w, wp), wp);
        ComplexBox::new(
            t.im.mul_2si(1).neg().round(prec),
            t.re.mul_2si(1).sub(&Ball::one(), prec),
        )
    }

    /// `(re; im)` with each part printed to `d` digits.
    pub fn printn(&self, d: usize) -> String {
        format!("({}; {})", self.re.printn(d), self.im.printn(d))
    }
}

impl From<Ball> for ComplexBox {
    fn from(re: Ball) -> Self {
        ComplexBox::from_real(re)
    }
}

impl fmt::Display for ComplexBox {
    /// `{}` prints exact parts; `{:.N}` prints `N` decimal digits per part.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(d) => f.write_str(&self.printn(d)),
            None => write!(f, "({}; {})", self.re, self.im),
        }
    }
}

impl fmt::Debug for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.re, self.im)
    }
}

impl FromStr for ComplexBox {
    type Err = ParseBallError;

    /// Parses `(re; im)` where each part uses the ball grammar.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ParseBallError::new(0, "expected (re; im)"))?;
        let mut depth = 0i32;
        let split = inner.char_indices().find(|&(i, c)| {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                _ => {}
            }
            depth == 0 && inner[i..].starts_with("; ")
        });
        let (i, _) = split.ok_or_else(|| ParseBallError::new(1, "expected '; ' separator"))?;
        let shift = |e: ParseBallError, by: usize| ParseBallError::new(e.pos + by, &e.msg);
        let re = inner[..i].parse::<Ball>().map_err(|e| shift(e, 1))?;
        let im = inner[i + 2..].parse::<Ball>().map_err(|e| shift(e, i + 3))?;
        Ok(ComplexBox::new(re, im))
    }
}
