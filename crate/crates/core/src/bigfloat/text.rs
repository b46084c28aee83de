//! Exact text form: `M*2^E` with an odd (or zero) decimal integer `M`, plus
//! the literals `0`, `inf`, `-inf` and `nan`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};

use super::{BigFloat, Repr};
use crate::exponent::Exponent;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid exact float literal {0:?}")]
pub struct ParseBigFloatError(pub String);

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Zero => f.write_str("0"),
            Repr::PosInf => f.write_str("inf"),
            Repr::NegInf => f.write_str("-inf"),
            Repr::Nan => f.write_str("nan"),
            Repr::Regular { negative, mantissa, .. } => {
                let lsb = self.lsb_exponent().unwrap();
                if *negative {
                    f.write_str("-")?;
                }
                write!(f, "{mantissa}*2^{lsb}")
            }
        }
    }
}

impl FromStr for BigFloat {
    type Err = ParseBigFloatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseBigFloatError(s.to_string());
        match s {
            "0" => return Ok(BigFloat::ZERO),
            "inf" | "+inf" => return Ok(BigFloat::POS_INF),
            "-inf" => return Ok(BigFloat::NEG_INF),
            "nan" => return Ok(BigFloat::NAN),
            _ => {}
        }
        let (m, e) = s.split_once("*2^").ok_or_else(err)?;
        let m: BigInt = parse_int(m).ok_or_else(err)?;
        let e: BigInt = parse_int(e).ok_or_else(err)?;
        if m.sign() == Sign::NoSign {
            return Ok(BigFloat::ZERO);
        }
        Ok(BigFloat::from_bigint_2exp(&m, Exponent::from_bigint(e)))
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}
