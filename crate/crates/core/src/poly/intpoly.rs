//! Exact products of integer polynomials.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};

/// `2^exp · Σ coeffs[k]·x^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
    pub exp: i64,
}

const KARATSUBA_CUTOFF: usize = 16;
const KRONECKER_CUTOFF: usize = 64;

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>, exp: i64) -> IntPoly {
        IntPoly { coeffs, exp }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exact product; the algorithm is chosen from the input sizes.
    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        IntPoly::new(mul(&self.coeffs, &other.coeffs), self.exp + other.exp)
    }
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().min(b.len());
    if n < KARATSUBA_CUTOFF {
        mul_schoolbook(a, b)
    } else if n < KRONECKER_CUTOFF {
        mul_karatsuba(a, b)
    } else {
        mul_kronecker(a, b)
    }
}

pub fn mul_schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

pub fn mul_karatsuba(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    karatsuba_into(a, b, &mut out);
    out
}

/// Adds `a·b` into `out`.
fn karatsuba_into(a: &[BigInt], b: &[BigInt], out: &mut [BigInt]) {
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        for (k, c) in mul_schoolbook(a, b).into_iter().enumerate() {
            out[k] += c;
        }
        return;
    }
    let h = a.len().max(b.len()) / 2;
    if a.len() <= h || b.len() <= h {
        // unbalanced: split the longer operand only
        let (long, short) = if a.len() > b.len() { (a, b) } else { (b, a) };
        for (i, chunk) in long.chunks(short.len()).enumerate() {
            karatsuba_into(chunk, short, &mut out[i * short.len()..]);
        }
        return;
    }
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let z0 = mul_karatsuba(a0, b0);
    let z2 = mul_karatsuba(a1, b1);
    let sa = add_slices(a0, a1);
    let sb = add_slices(b0, b1);
    let mut z1 = mul_karatsuba(&sa, &sb);
    for (k, c) in z0.iter().enumerate() {
        z1[k] -= c;
        out[k] += c;
    }
    for (k, c) in z2.iter().enumerate() {
        z1[k] -= c;
        out[k + 2 * h] += c;
    }
    for (k, c) in z1.into_iter().enumerate() {
        if !c.is_zero() {
            out[k + h] += c;
        }
    }
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut s = long.to_vec();
    for (x, y) in s.iter_mut().zip(short) {
        *x += y;
    }
    s
}

fn max_bits(a: &[BigInt]) -> u64 {
    a.iter().map(|c| c.bits()).max().unwrap_or(0)
}

/// Product through one large integer multiplication. Coefficients are
/// packed as balanced digits in slots wide enough that every output
/// coefficient `c` satisfies `|c| < 2^(w-1)`.
pub fn mul_kronecker(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let len = a.len() + b.len() - 1;
    let (ba, bb) = (max_bits(a), max_bits(b));
    if ba == 0 || bb == 0 {
        return vec![BigInt::zero(); len];
    }
    let terms = a.len().min(b.len()) as u64;
    let w = ba + bb + (64 - terms.leading_zeros() as u64) + 1;
    let p = pack(a, w) * pack(b, w);
    unpack(&p, w, len)
}

fn pack(a: &[BigInt], w: u64) -> BigInt {
    let words = ((a.len() as u64 * w) / 64 + 2) as usize;
    let mut pos = vec![0u64; words];
    let mut neg = vec![0u64; words];
    for (k, c) in a.iter().enumerate() {
        let target = if c.is_negative() { &mut neg } else { &mut pos };
        write_bits(target, k as u64 * w, &c.magnitude().to_u64_digits());
    }
    BigInt::from(BigUint::new(to_u32(&pos))) - BigInt::from(BigUint::new(to_u32(&neg)))
}

fn to_u32(words: &[u64]) -> Vec<u32> {
    words.iter().flat_map(|&w| [w as u32, (w >> 32) as u32]).collect()
}

/// ORs `digits` into `limbs` starting at bit `offset`.
fn write_bits(limbs: &mut [u64], offset: u64, digits: &[u64]) {
    let (word, shift) = ((offset / 64) as usize, offset % 64);
    for (i, &d) in digits.iter().enumerate() {
        limbs[word + i] |= d << shift;
        if shift > 0 {
            limbs[word + i + 1] |= d >> (64 - shift);
        }
    }
}

/// Bits `[offset, offset + w)` of `limbs`.
fn read_bits(limbs: &[u64], offset: u64, w: u64) -> BigUint {
    let (word, shift) = ((offset / 64) as usize, offset % 64);
    let count = ((shift + w) / 64 + 1) as usize;
    let end = (word + count).min(limbs.len());
    if word >= end {
        return BigUint::zero();
    }
    let chunk = BigUint::new(to_u32(&limbs[word..end])) >> shift;
    let mask = (BigUint::from(1u32) << w) - 1u32;
    chunk & mask
}

fn unpack(p: &BigInt, w: u64, len: usize) -> Vec<BigInt> {
    let negative = p.sign() == Sign::Minus;
    let limbs = p.magnitude().to_u64_digits();
    let half = BigUint::from(1u32) << (w - 1);
    let full = BigInt::from(BigUint::from(1u32) << w);
    let mut carry = false;
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let mut d = read_bits(&limbs, k as u64 * w, w);
        if carry {
            d += 1u32;
        }
        let mut c = BigInt::from(d.clone());
        carry = d >= half;
        if carry {
            c -= &full;
        }
        out.push(if negative { -c } else { c });
    }
    out
}
