//! Mathematical constants by binary splitting, with a process-wide cache.
//!
//! The public constructors return `[RN_p(c) ± ulp/2]`, a function of the
//! precision alone: cached enclosures only speed up the computation of the
//! correctly rounded midpoint and never change the result.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::One;

use super::{ulp, Ball};
use crate::bigfloat::Rounding;
use crate::magnitude::Mag;

/// Partial products of a series `Σ a(n)/b(n) · Π_{k≤n} p(k)/q(k)`.
struct Split {
    p: BigInt,
    q: BigInt,
    b: BigInt,
    t: BigInt,
}

/// Binary splitting over `[n1, n2)`; `term(n)` yields `(a, b, p, q)`.
fn bsplit(n1: u64, n2: u64, term: &dyn Fn(u64) -> [BigInt; 4]) -> Split {
    if n2 - n1 == 1 {
        let [a, b, p, q] = term(n1);
        let t = a * &p;
        return Split { p, q, b, t };
    }
    let m = n1 + (n2 - n1) / 2;
    let l = bsplit(n1, m, term);
    let r = bsplit(m, n2, term);
    Split {
        t: &r.b * &r.q * &l.t + &l.b * &l.p * &r.t,
        p: l.p * r.p,
        q: l.q * r.q,
        b: l.b * r.b,
    }
}

/// Encloses the partial sum `T/(BQ)` and widens it by `tail`.
fn series_ball(s: &Split, tail: Mag, prec: u64) -> Ball {
    let num = Ball::from_bigint(&s.t);
    let den = Ball::from_bigint(&(&s.b * &s.q));
    num.div(&den, prec).add_error(&tail)
}

fn pi_enclosure(prec: u64) -> Ball {
    let wp = prec + 32;
    // each term shrinks by a factor of at least 2^47
    let k = wp / 47 + 2;
    let s = bsplit(0, k, &|n| {
        if n == 0 {
            return [BigInt::from(13591409), BigInt::one(), BigInt::one(), BigInt::one()];
        }
        let n_big = BigInt::from(n);
        let a = BigInt::from(13591409) + BigInt::from(545140134u64) * &n_big;
        let p = -(BigInt::from(6 * n - 5) * BigInt::from(2 * n - 1) * BigInt::from(6 * n - 1));
        let q = BigInt::from(10939058860032000u64) * &n_big * &n_big * &n_big;
        [a, BigInt::one(), p, q]
    });
    // |term_k| ≤ 1728^k·(13591409 + 545140134k)/640320^(3k) < 2^(30 + log2(k+1) - 47k)
    let tail_exp = 31 + (64 - (k + 1).leading_zeros() as i64) - 47 * k as i64;
    let sum = series_ball(&s, Mag::pow2(tail_exp), wp);
    let c = Ball::from_i64(10005).sqrt(wp).mul(&Ball::from_i64(426880), wp);
    c.div(&sum, wp)
}

fn ln2_enclosure(prec: u64) -> Ball {
    let wp = prec + 32;
    // ln 2 = 2·Σ 1/((2n+1)·3^(2n+1)); the factor 9 per term gives > 3 bits
    let k = wp / 3 + 2;
    let s = bsplit(0, k, &|n| {
        let q = if n == 0 { 3 } else { 9 };
        [BigInt::one(), BigInt::from(2 * n + 1), BigInt::one(), BigInt::from(q)]
    });
    // tail ≤ 2·3^(-2k-1) < 2^(1 - 3k)
    let tail = Mag::pow2(1 - 3 * k as i64);
    series_ball(&s, tail, wp).mul_2si(1)
}

struct ConstCache {
    pi: RwLock<Option<Ball>>,
    ln2: RwLock<Option<Ball>>,
}

static CACHE: ConstCache = ConstCache {
    pi: RwLock::new(None),
    ln2: RwLock::new(None),
};

fn accuracy(b: &Ball) -> i64 {
    match b.rel_accuracy_bits() {
        super::AccuracyBits::Bits(v) => v,
        super::AccuracyBits::Exact => i64::MAX,
        super::AccuracyBits::None => i64::MIN,
    }
}

/// An enclosure accurate to at least `prec` bits, from the cache when possible.
fn cached(slot: &RwLock<Option<Ball>>, prec: u64, compute: fn(u64) -> Ball) -> Ball {
    if let Some(b) = slot.read().unwrap().as_ref() {
        if accuracy(b) >= prec as i64 {
            return b.clone();
        }
    }
    let have = slot.read().unwrap().as_ref().map_or(0, |b| accuracy(b).max(0) as u64);
    let b = compute(prec.max(2 * have));
    let mut w = slot.write().unwrap();
    if w.as_ref().is_none_or(|old| accuracy(old) < accuracy(&b)) {
        *w = Some(b.clone());
    }
    b
}

/// `[RN_p(c) ± ulp/2]` from enclosures of increasing accuracy.
fn correctly_rounded(slot: &RwLock<Option<Ball>>, prec: u64, compute: fn(u64) -> Ball) -> Ball {
    let mut extra = 64;
    loop {
        let enc = cached(slot, prec + extra, compute);
        if enc.can_round(prec, Rounding::NearestEven) {
            let (m, inexact) = enc.mid().round(prec, Rounding::NearestEven);
            let rad = if inexact { ulp(&m, prec + 1) } else { Mag::ZERO };
            return Ball::new(m, rad);
        }
        extra *= 2;
    }
}

impl Ball {
    /// π to `prec` bits: the nearest `prec`-bit value with a half-ulp radius.
    pub fn pi(prec: u64) -> Ball {
        correctly_rounded(&CACHE.pi, prec.max(2), pi_enclosure)
    }

    /// ln 2 to `prec` bits: the nearest `prec`-bit value with a half-ulp radius.
    pub fn ln2(prec: u64) -> Ball {
        correctly_rounded(&CACHE.ln2, prec.max(2), ln2_enclosure)
    }
}

#[cfg(test)]
pub(super) fn pi_uncached(prec: u64) -> Ball {
    pi_enclosure(prec)
}

#[cfg(test)]
pub(super) fn ln2_uncached(prec: u64) -> Ball {
    ln2_enclosure(prec)
}
