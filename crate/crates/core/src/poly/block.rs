//! Block multiplication of interval polynomials.
//!
//! For `(A ± a)(B ± b)` the midpoint product `AB` is computed exactly over
//! the integers, one pair of blocks at a time, after a substitution
//! `x → 2^c x` that flattens the coefficient magnitudes. Blocks are cut so
//! that exponents inside a block span at most `3p + 512` bits. Each output
//! coefficient is rounded once. The radius `|A|b + a(|B| + b)` is formed
//! from nonnegative magnitudes with a double-precision schoolbook product
//! on chunks whose entries stay inside the normal double range.

use std::ops::Range;

use num_bigint::BigInt;
use num_traits::Zero;

use super::intpoly::IntPoly;
use super::BallPoly;
use crate::ball::Ball;
use crate::bigfloat::BigFloat;
use crate::magnitude::Mag;

/// Below this length both operands go through the schoolbook product.
const SCHOOLBOOK_CUTOFF: usize = 16;
/// Exponents beyond this size disable the block path.
const EXP_LIMIT: i64 = 1 << 40;
const CHUNK_WIDTH: usize = 512;
/// Scaled radius entries lie in `[2^-CHUNK_RANGE, 1]`, so products stay normal.
const CHUNK_RANGE: i64 = 480;

/// Midpoints and radii of an interval polynomial.
#[derive(Clone, Debug)]
pub struct MidRadSplit {
    pub mids: Vec<BigFloat>,
    pub rads: Vec<Mag>,
}

impl MidRadSplit {
    pub fn of(f: &BallPoly) -> MidRadSplit {
        MidRadSplit {
            mids: f.coeffs().iter().map(|c| c.mid().clone()).collect(),
            rads: f.coeffs().iter().map(|c| c.rad().clone()).collect(),
        }
    }

    pub fn reconstruct(&self) -> BallPoly {
        let coeffs = self
            .mids
            .iter()
            .zip(&self.rads)
            .map(|(m, r)| Ball::new(m.clone(), r.clone()))
            .collect();
        BallPoly::new(coeffs)
    }
}

/// A scaling `x → 2^scale·x` and a partition of each operand into blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPlan {
    pub scale: i64,
    pub f_blocks: Vec<Range<usize>>,
    pub g_blocks: Vec<Range<usize>>,
}

impl BlockPlan {
    pub fn block_count(&self) -> usize {
        self.f_blocks.len() + self.g_blocks.len()
    }
}

pub fn height_cap(prec: u64) -> i64 {
    3 * prec as i64 + 512
}

fn top_exponent(x: &BigFloat) -> Option<i64> {
    x.exponent().map(|e| e.to_i64_saturating())
}

/// Slope numerator and denominator from the first and last nonzero entries.
fn slope(exps: &[Option<i64>]) -> Option<(i128, i128)> {
    let first = exps.iter().position(Option::is_some)?;
    let last = exps.iter().rposition(Option::is_some)?;
    if last == first {
        return None;
    }
    let de = exps[last].unwrap() as i128 - exps[first].unwrap() as i128;
    Some((de, (last - first) as i128))
}

/// `num/den` rounded to the nearest integer, ties toward zero.
fn round_half_toward_zero(num: i128, den: i128) -> i64 {
    let (q, r) = (num / den, num % den);
    let twice = 2 * r.abs();
    let away = if num < 0 { -1 } else { 1 };
    (if twice > den { q + away } else { q }) as i64
}

/// Scale from the weighted average of the operand slopes, each weighted by
/// the length of its nonzero range.
fn choose_scale(f: &[Option<i64>], g: &[Option<i64>]) -> i64 {
    let (mut num, mut den) = (0i128, 0i128);
    for (de, di) in [slope(f), slope(g)].into_iter().flatten() {
        num += de;
        den += di;
    }
    if den == 0 {
        0
    } else {
        -round_half_toward_zero(num, den)
    }
}

/// Greedy left-to-right partition with block heights at most `cap`.
fn partition(exps: &[Option<i64>], scale: i64, cap: i64, max_width: usize) -> Vec<Range<usize>> {
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut span: Option<(i64, i64)> = None;
    for (k, e) in exps.iter().enumerate() {
        let Some(e) = e else { continue };
        let e = e.saturating_add(scale.saturating_mul(k as i64));
        span = match span {
            None => Some((e, e)),
            Some((lo, hi)) => {
                let (lo2, hi2) = (lo.min(e), hi.max(e));
                if hi2.saturating_sub(lo2) > cap || k - start >= max_width {
                    blocks.push(start..k);
                    start = k;
                    Some((e, e))
                } else {
                    Some((lo2, hi2))
                }
            }
        };
    }
    if start < exps.len() {
        blocks.push(start..exps.len());
    }
    blocks
}

pub fn plan_blocks(f: &BallPoly, g: &BallPoly, prec: u64) -> BlockPlan {
    let fe: Vec<_> = f.coeffs().iter().map(|c| top_exponent(c.mid())).collect();
    let ge: Vec<_> = g.coeffs().iter().map(|c| top_exponent(c.mid())).collect();
    let scale = choose_scale(&fe, &ge);
    let cap = height_cap(prec);
    BlockPlan {
        scale,
        f_blocks: partition(&fe, scale, cap, usize::MAX),
        g_blocks: partition(&ge, scale, cap, usize::MAX),
    }
}

/// `2^exp·Σ n_i x^i` equal to the scaled block `Σ m_{s+i} 2^(c(s+i)) x^i`.
fn int_block(mids: &[BigFloat], range: Range<usize>, scale: i64) -> IntPoly {
    let lsb = |k: usize| -> Option<i64> {
        let l = mids[k].lsb_exponent()?.to_i64()?;
        Some(l + scale * k as i64)
    };
    let exp = range.clone().filter_map(lsb).min().unwrap_or(0);
    let coeffs = range
        .map(|k| match (mids[k].mantissa(), lsb(k)) {
            (Some(m), Some(l)) => {
                let n = BigInt::from(m.clone()) << (l - exp) as usize;
                if mids[k].is_negative() {
                    -n
                } else {
                    n
                }
            }
            _ => BigInt::zero(),
        })
        .collect();
    IntPoly::new(coeffs, exp)
}

/// Exact midpoint terms of every output coefficient, one per block pair.
pub fn block_mid_terms(f: &[BigFloat], g: &[BigFloat], plan: &BlockPlan) -> Vec<Vec<BigFloat>> {
    let n = f.len() + g.len() - 1;
    let mut terms = vec![Vec::new(); n];
    let c = plan.scale;
    let gb: Vec<_> = plan
        .g_blocks
        .iter()
        .map(|r| (r.start, int_block(g, r.clone(), c)))
        .collect();
    for fr in &plan.f_blocks {
        let fa = int_block(f, fr.clone(), c);
        if fa.is_zero() {
            continue;
        }
        for (gs, gbl) in &gb {
            if gbl.is_zero() {
                continue;
            }
            let p = fa.mul(gbl);
            for (j, v) in p.coeffs.into_iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let k = fr.start + gs + j;
                terms[k].push(BigFloat::from_bigint_2exp(&v, p.exp - c * k as i64));
            }
        }
    }
    terms
}

fn mag_exponent(m: &Mag) -> Option<i64> {
    m.exponent().and_then(|e| e.to_i64())
}

/// `Σ x_i y_{k-i}` bounded from above, for nonnegative magnitudes.
pub fn mag_product(x: &[Mag], y: &[Mag], scale: i64) -> Vec<Mag> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Mag::ZERO; x.len() + y.len() - 1];
    let finite = |v: &[Mag]| {
        v.iter()
            .all(|m| m.is_zero() || mag_exponent(m).is_some_and(|e| e.abs() < EXP_LIMIT))
    };
    if !finite(x) || !finite(y) {
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                out[i + j] = out[i + j].addmul(a, b);
            }
        }
        return out;
    }
    let ex: Vec<_> = x.iter().map(mag_exponent).collect();
    let ey: Vec<_> = y.iter().map(mag_exponent).collect();
    let cx = partition(&ex, scale, CHUNK_RANGE, CHUNK_WIDTH);
    let cy = partition(&ey, scale, CHUNK_RANGE, CHUNK_WIDTH);
    let chunks_y: Vec<_> = cy.iter().filter_map(|r| scaled_chunk(y, r.clone(), scale)).collect();
    for r in cx {
        let Some(a) = scaled_chunk(x, r, scale) else { continue };
        for b in &chunks_y {
            accumulate_chunk_product(&a, b, scale, &mut out);
        }
    }
    out
}

/// Entries `v_k·2^(c·k - top)` of a chunk as doubles in `[2^-CHUNK_RANGE, 1]`.
struct Chunk {
    start: usize,
    top: i64,
    vals: Vec<f64>,
}

fn scaled_chunk(v: &[Mag], r: Range<usize>, scale: i64) -> Option<Chunk> {
    let exps: Vec<_> = r
        .clone()
        .map(|k| mag_exponent(&v[k]).map(|e| e + scale * k as i64))
        .collect();
    let top = exps.iter().flatten().copied().max()?;
    let vals = r
        .clone()
        .zip(&exps)
        .map(|(k, e)| match e {
            Some(e) => v[k].mantissa().unwrap() as f64 * 2f64.powi((e - top - 30) as i32),
            None => 0.0,
        })
        .collect();
    Some(Chunk {
        start: r.start,
        top,
        vals,
    })
}

fn accumulate_chunk_product(a: &Chunk, b: &Chunk, scale: i64, out: &mut [Mag]) {
    let mut acc = vec![0.0f64; a.vals.len() + b.vals.len() - 1];
    for (i, &x) in a.vals.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.vals.iter().enumerate() {
            acc[i + j] += x * y;
        }
    }
    // each entry is a sum of at most `terms` products, each operation
    // contributing a relative error of at most 2^-53
    let terms = a.vals.len().min(b.vals.len()) as u64;
    let inflate = Mag::one().add(&Mag::from_u64_upper(terms + 1).mul_2si(-50));
    for (j, v) in acc.into_iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        let k = a.start + b.start + j;
        let m = Mag::from_f64_upper(v)
            .unwrap()
            .mul(&inflate)
            .mul_2si(a.top + b.top - scale * k as i64);
        out[k] = out[k].add(&m);
    }
}

fn abs_mags(mids: &[BigFloat]) -> Vec<Mag> {
    mids.iter()
        .map(|m| Mag::from_bigfloat_upper(&m.abs()).unwrap_or(Mag::INF))
        .collect()
}

fn usable(f: &BallPoly) -> bool {
    f.coeffs().iter().all(|c| {
        c.is_finite()
            && c.mid()
                .exponent()
                .is_none_or(|e| e.to_i64().is_some_and(|v| v.abs() < EXP_LIMIT))
    })
}

pub fn mul_block(f: &BallPoly, g: &BallPoly, prec: u64) -> BallPoly {
    if f.len().min(g.len()) < SCHOOLBOOK_CUTOFF || !usable(f) || !usable(g) {
        return f.mul_schoolbook(g, prec);
    }
    let (fs, gs) = (MidRadSplit::of(f), MidRadSplit::of(g));
    let plan = plan_blocks(f, g, prec);
    let terms = block_mid_terms(&fs.mids, &gs.mids, &plan);

    let abs_f = abs_mags(&fs.mids);
    let abs_g_plus = abs_mags(&gs.mids)
        .iter()
        .zip(&gs.rads)
        .map(|(m, r)| m.add(r))
        .collect::<Vec<_>>();
    let r1 = mag_product(&abs_f, &gs.rads, plan.scale);
    let r2 = mag_product(&fs.rads, &abs_g_plus, plan.scale);

    let coeffs = terms
        .iter()
        .enumerate()
        .map(|(k, t)| Ball::from_exact_sum(t, r1[k].add(&r2[k]), prec))
        .collect();
    BallPoly::new(coeffs)
}
