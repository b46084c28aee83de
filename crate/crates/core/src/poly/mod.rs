//! Dense polynomials with ball coefficients, also used as truncated power
//! series.

mod block;
mod complex;
mod intpoly;

use std::fmt;
use std::str::FromStr;

use crate::ball::{Ball, ParseBallError};
use crate::bigfloat::{BigFloat, PREC_EXACT};
use crate::magnitude::Mag;

pub use block::{block_mid_terms, height_cap, mag_product, plan_blocks, BlockPlan, MidRadSplit};
pub use complex::ComplexPoly;
pub use intpoly::IntPoly;

/// Coefficient `k` multiplies `x^k`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BallPoly {
    coeffs: Vec<Ball>,
}

impl BallPoly {
    pub fn new(coeffs: Vec<Ball>) -> BallPoly {
        BallPoly { coeffs }
    }

    pub fn zero() -> BallPoly {
        BallPoly::new(Vec::new())
    }

    pub fn from_i64s(c: &[i64]) -> BallPoly {
        BallPoly::new(c.iter().map(|&v| Ball::from_i64(v)).collect())
    }

    pub fn coeffs(&self) -> &[Ball] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Ball> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient `k`, zero past the end.
    pub fn coeff(&self, k: usize) -> Ball {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Ball::is_exact)
    }

    /// Drops trailing exact zeros.
    pub fn normalize(mut self) -> BallPoly {
        while self.coeffs.last().is_some_and(Ball::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn truncate(&self, n: usize) -> BallPoly {
        BallPoly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// True if every coefficient of `other` lies in the matching coefficient
    /// of `self`, reading missing coefficients as zero.
    pub fn contains(&self, other: &BallPoly) -> bool {
        (0..self.len().max(other.len())).all(|k| self.coeff(k).contains(&other.coeff(k)))
    }

    pub fn neg(&self) -> BallPoly {
        BallPoly::new(self.coeffs.iter().map(Ball::neg).collect())
    }

    pub fn add(&self, g: &BallPoly, prec: u64) -> BallPoly {
        let n = self.len().max(g.len());
        BallPoly::new((0..n).map(|k| self.coeff(k).add(&g.coeff(k), prec)).collect())
    }

    pub fn sub(&self, g: &BallPoly, prec: u64) -> BallPoly {
        self.add(&g.neg(), prec)
    }

    pub fn scalar_mul(&self, c: &Ball, prec: u64) -> BallPoly {
        BallPoly::new(self.coeffs.iter().map(|x| x.mul(c, prec)).collect())
    }

    /// Quadratic product; each coefficient is one rounding of the exact
    /// midpoint sum with radius `Σ |a|s + |b|r + rs`.
    pub fn mul_schoolbook(&self, g: &BallPoly, prec: u64) -> BallPoly {
        if self.is_empty() || g.is_empty() {
            return BallPoly::zero();
        }
        let (lf, lg) = (self.len(), g.len());
        let coeffs = (0..lf + lg - 1)
            .map(|k| {
                let lo = k.saturating_sub(lg - 1);
                let hi = k.min(lf - 1);
                dot(&self.coeffs[lo..=hi], g.coeffs[k - hi..=k - lo].iter().rev(), prec)
            })
            .collect();
        BallPoly::new(coeffs)
    }

    /// Product with schoolbook-quality bounds, using exact integer block
    /// products for long inputs.
    pub fn mul_block(&self, g: &BallPoly, prec: u64) -> BallPoly {
        if self.is_empty() || g.is_empty() {
            return BallPoly::zero();
        }
        block::mul_block(self, g, prec)
    }

    pub fn mul(&self, g: &BallPoly, prec: u64) -> BallPoly {
        self.mul_block(g, prec)
    }

    /// The first `n` coefficients of the product.
    pub fn mullow(&self, g: &BallPoly, n: usize, prec: u64) -> BallPoly {
        let p = self.truncate(n).mul(&g.truncate(n), prec);
        p.truncate(n)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &Ball, prec: u64) -> Ball {
        let mut acc = Ball::zero();
        for c in self.coeffs.iter().rev() {
            acc = Ball::fma(c, &acc, x, prec);
        }
        acc
    }

    pub fn derivative(&self) -> BallPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&Ball::from_i64(k as i64), PREC_EXACT))
            .collect();
        BallPoly::new(coeffs)
    }

    /// `Π (a_i + b_i x)` by balanced pairwise block products.
    pub fn product_tree(factors: &[(Ball, Ball)], prec: u64) -> BallPoly {
        match factors.len() {
            0 => BallPoly::from_i64s(&[1]),
            1 => BallPoly::new(vec![factors[0].0.clone(), factors[0].1.clone()]),
            n => {
                let (l, r) = factors.split_at(n / 2);
                let (pl, pr) = (BallPoly::product_tree(l, prec), BallPoly::product_tree(r, prec));
                pl.mul_block(&pr, prec)
            }
        }
    }
}

/// `Σ a_i b_i` with one rounding of the midpoint.
fn dot<'a>(a: &[Ball], b: impl Iterator<Item = &'a Ball>, prec: u64) -> Ball {
    let mut terms = Vec::with_capacity(a.len());
    let mut rad = Mag::ZERO;
    for (x, y) in a.iter().zip(b) {
        if x.is_indeterminate() || y.is_indeterminate() {
            return Ball::indeterminate();
        }
        let (mx, my) = (x.mid(), y.mid());
        if !mx.is_zero() && !my.is_zero() {
            terms.push(mx.mul_exact(my));
        }
        let ax = Mag::from_bigfloat_upper(&mx.abs()).unwrap_or(Mag::INF);
        let ay = Mag::from_bigfloat_upper(&my.abs()).unwrap_or(Mag::INF);
        rad = rad.addmul(&ax, y.rad()).addmul(&ay, x.rad()).addmul(x.rad(), y.rad());
    }
    if rad.is_inf() {
        let (m, _) = BigFloat::sum(&terms, prec, crate::bigfloat::Rounding::TowardZero);
        return Ball::new(m, Mag::INF);
    }
    Ball::from_exact_sum(&terms, rad, prec)
}

impl fmt::Display for BallPoly {
    /// One `k: (mid; rad)` line per coefficient; `{:.N}` prints decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            match f.precision() {
                Some(d) => write!(f, "{k}: {}", c.printn(d))?,
                None => write!(f, "{k}: {}", c.to_exact_string())?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BallPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for BallPoly {
    type Err = ParseBallError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut coeffs = Vec::new();
        let mut offset = 0;
        for (k, line) in s.lines().enumerate() {
            let prefix = format!("{k}: ");
            let body = line
                .strip_prefix(&prefix)
                .ok_or_else(|| ParseBallError::new(offset, &format!("expected index prefix {prefix:?}")))?;
            let c = body
                .parse::<Ball>()
                .map_err(|e| ParseBallError::new(offset + prefix.len() + e.pos, &e.msg))?;
            coeffs.push(c);
            offset += line.len() + 1;
        }
        Ok(BallPoly::new(coeffs))
    }
}
