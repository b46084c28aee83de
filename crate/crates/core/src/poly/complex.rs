//! Polynomials with complex box coefficients, stored as two real parts.

use super::BallPoly;
use crate::complexbox::ComplexBox;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ComplexPoly {
    pub re: BallPoly,
    pub im: BallPoly,
}

impl ComplexPoly {
    pub fn new(re: BallPoly, im: BallPoly) -> ComplexPoly {
        ComplexPoly { re, im }
    }

    pub fn from_coeffs(c: &[ComplexBox]) -> ComplexPoly {
        ComplexPoly::new(
            BallPoly::new(c.iter().map(|z| z.re().clone()).collect()),
            BallPoly::new(c.iter().map(|z| z.im().clone()).collect()),
        )
    }

    pub fn len(&self) -> usize {
        self.re.len().max(self.im.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coeff(&self, k: usize) -> ComplexBox {
        ComplexBox::new(self.re.coeff(k), self.im.coeff(k))
    }

    /// Product from four real block multiplications.
    pub fn mul(&self, g: &ComplexPoly, prec: u64) -> ComplexPoly {
        let wp = prec + 8;
        let ac = self.re.mul_block(&g.re, wp);
        let bd = self.im.mul_block(&g.im, wp);
        let ad = self.re.mul_block(&g.im, wp);
        let bc = self.im.mul_block(&g.re, wp);
        ComplexPoly::new(ac.sub(&bd, prec), ad.add(&bc, prec))
    }
}
