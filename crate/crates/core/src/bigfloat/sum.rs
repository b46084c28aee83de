//! Exact vector summation with a single final rounding.
//!
//! Terms are accumulated exactly in order of decreasing magnitude. Once the
//! remaining tail is provably smaller than every rounding boundary near the
//! accumulator, only the sign of the tail can influence the result, and that
//! sign is obtained from a recursive 2-bit sum of the tail. The exponent gap
//! between terms therefore never has to be materialized.

use num_bigint::BigUint;
use num_traits::One;

use super::{round_parts, BigFloat, Parts, Repr, Rounding, PREC_EXACT};
use crate::exponent::Exponent;

pub(super) fn sum(terms: &[BigFloat], prec: u64, rnd: Rounding) -> (BigFloat, bool) {
    let mut pos_inf = false;
    let mut neg_inf = false;
    let mut parts = Vec::with_capacity(terms.len());
    for t in terms {
        match &t.0 {
            Repr::Nan => return (BigFloat::NAN, false),
            Repr::PosInf => pos_inf = true,
            Repr::NegInf => neg_inf = true,
            Repr::Zero => {}
            Repr::Regular { .. } => parts.push(Parts::of(t)),
        }
    }
    match (pos_inf, neg_inf) {
        (true, true) => return (BigFloat::NAN, false),
        (true, false) => return (BigFloat::POS_INF, false),
        (false, true) => return (BigFloat::NEG_INF, false),
        _ => {}
    }
    let mut keyed: Vec<_> = parts.into_iter().map(|p| (p.exp(), p)).collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0));
    let sorted: Vec<Parts> = keyed.into_iter().map(|(_, p)| p).collect();
    sum_sorted(&sorted, prec, rnd)
}

fn ceil_log2(n: usize) -> i64 {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as i64
    }
}

fn sum_sorted(terms: &[Parts], prec: u64, rnd: Rounding) -> (BigFloat, bool) {
    let mut acc: Option<Parts> = None;
    for (i, t) in terms.iter().enumerate() {
        if let (Some(a), true) = (&acc, prec != PREC_EXACT) {
            let g = Exponent::min(&a.lsb, &a.exp().sub_i64(prec as i64 + 2)).clone();
            // |tail| < (n - i)·2^exp(t)
            let tail_exp = t.exp().add_i64(ceil_log2(terms.len() - i));
            if tail_exp <= g {
                let (tail, _) = sum_sorted(&terms[i..], 2, Rounding::Down);
                let a = acc.take().unwrap();
                let total = if tail.is_zero() {
                    Some(a)
                } else {
                    let proxy = Parts {
                        negative: tail.is_negative(),
                        mantissa: BigUint::one(),
                        lsb: g.sub_i64(1),
                    };
                    Parts::add_exact(&a, &proxy)
                };
                return finish(total, prec, rnd);
            }
        }
        acc = match acc {
            None => Some(t.clone()),
            Some(a) => Parts::add_exact(&a, t),
        };
    }
    finish(acc, prec, rnd)
}

fn finish(acc: Option<Parts>, prec: u64, rnd: Rounding) -> (BigFloat, bool) {
    match acc {
        None => (BigFloat::ZERO, false),
        Some(p) => round_parts(p.negative, p.mantissa, p.lsb, prec, rnd),
    }
}
