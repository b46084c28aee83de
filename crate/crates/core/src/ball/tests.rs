use super::*;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;
use std::time::Instant;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn bf(m: i64, e: i64) -> BigFloat {
    BigFloat::from_bigint_2exp(&BigInt::from(m), e)
}

fn ball(m: i64, e: i64, rm: u64, re: i64) -> Ball {
    Ball::new(bf(m, e), Mag::from_u64_upper(rm).mul_2si(re))
}

fn rad_f64(b: &Ball) -> f64 {
    b.rad().to_f64()
}

/// The point `mid + t·rad` for `t = k/2^16`, exactly.
fn point(x: &Ball, k: i32) -> BigFloat {
    let t = bf(k as i64, -16);
    x.mid().add_exact(&x.rad().to_bigfloat().mul_exact(&t))
}

fn rational(x: &BigFloat) -> BigRational {
    x.to_rational().unwrap()
}

/// Reference values from rational series with explicit tail bounds.
mod oracle {
    use super::*;

    /// `[lo, hi]` enclosing `e^x` for `|x| ≤ 1`.
    pub fn exp(x: &BigRational, terms: u32) -> (BigRational, BigRational) {
        let mut sum = BigRational::zero();
        let mut term = BigRational::one();
        for k in 1..=terms {
            sum += &term;
            term = term * x / BigInt::from(k);
        }
        // |tail| ≤ 2·|next term| for |x| ≤ 1
        let tail = term.abs() * BigInt::from(2);
        (&sum - &tail, sum + tail)
    }

    /// `sin x` and `atan x` for `|x| ≤ 1/2` by alternating series.
    pub fn alternating(x: &BigRational, terms: u32, sin: bool) -> (BigRational, BigRational) {
        let mut sum = BigRational::zero();
        let x2 = x * x;
        let mut pow = x.clone();
        let mut fact = BigInt::one();
        // the alternating tail is bounded by its first term
        for j in 0..=terms {
            let n = 2 * j + 1;
            let denom = if sin {
                if j > 0 {
                    fact *= BigInt::from((n - 1) * n);
                }
                fact.clone()
            } else {
                BigInt::from(n)
            };
            let t = &pow / denom;
            if j == terms {
                return (&sum - t.abs(), sum + t.abs());
            }
            if j % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            pow *= &x2;
        }
        unreachable!()
    }

    /// `ln 2 = 2·Σ 1/((2n+1)·3^(2n+1))`.
    pub fn ln2(terms: u32) -> (BigRational, BigRational) {
        let mut sum = BigRational::zero();
        for n in 0..terms {
            let d = BigInt::from(2 * n + 1) * BigInt::from(3).pow(2 * n + 1);
            sum += BigRational::new(BigInt::from(2), d);
        }
        let tail = BigRational::new(BigInt::one(), BigInt::from(3).pow(2 * terms));
        (sum.clone(), sum + tail)
    }

    /// π by Machin's formula from the atan series.
    pub fn pi(terms: u32) -> (BigRational, BigRational) {
        let (a_lo, a_hi) = alternating(&q(1, 5), terms, false);
        let (b_lo, b_hi) = alternating(&q(1, 239), terms, false);
        let four = BigInt::from(4);
        let sixteen = BigInt::from(16);
        (&a_lo * &sixteen - &b_hi * &four, a_hi * sixteen - b_lo * four)
    }
}

fn encloses(b: &Ball, (lo, hi): &(BigRational, BigRational)) -> bool {
    b.contains_rational(lo) && b.contains_rational(hi)
}

#[test]
fn add_examples() {
    let r = Ball::from_i64(1).add(&Ball::from_i64(2), 53);
    assert_eq!(r, Ball::from_i64(3));

    let x = Ball::new(BigFloat::one(), Mag::pow2(-2));
    let r = x.add(&x, 53);
    assert_eq!(r.mid(), &BigFloat::from(2));
    assert!(rad_f64(&r) >= 0.5 && rad_f64(&r) <= 0.5 * (1.0 + 2f64.powi(-26)));

    let r = Ball::exact(BigFloat::pow2(100)).add(&Ball::one(), 53);
    assert_eq!(r.mid(), &BigFloat::pow2(100));
    assert!(r.rad().to_bigfloat() >= BigFloat::one());
    assert!(r.rad().to_bigfloat() <= BigFloat::pow2(48));
}

#[test]
fn mul_examples() {
    let x = Ball::new(BigFloat::from(2), Mag::pow2(-1));
    let y = Ball::new(BigFloat::from(3), Mag::pow2(-1));
    let r = x.mul(&y, 200);
    assert_eq!(r.mid(), &BigFloat::from(6));
    assert!(rad_f64(&r) >= 2.75 && rad_f64(&r) <= 2.75 * (1.0 + 2f64.powi(-26)));
    assert!(Ball::from_i64(7).mul(&Ball::zero(), 53).is_zero());
}

#[test]
fn fma_examples() {
    let r = Ball::fma(&Ball::zero(), &Ball::from_i64(2), &Ball::from_i64(3), 53);
    assert_eq!(r, Ball::from_i64(6));
    let (z, x, y) = (Ball::from_i64(5), Ball::from_i64(-7), Ball::from_i64(11));
    let fused = Ball::fma(&z, &x, &y, 53);
    assert_eq!(fused.mid(), z.add(&x.mul(&y, 53), 53).mid());
}

#[test]
fn div_sqrt_examples() {
    assert_eq!(Ball::from_i64(4).sqrt(53), Ball::from_i64(2));
    let r = Ball::one().div(&Ball::from_i64(3), 53);
    assert!(r.contains_rational(&q(1, 3)));
    assert!(r.rad().to_bigfloat() <= BigFloat::pow2(-50).mul_exact(&r.mid().abs()));
    assert!(Ball::one()
        .div(&Ball::new(BigFloat::ZERO, Mag::one()), 53)
        .is_indeterminate());
    assert!(Ball::new(BigFloat::one(), Mag::from_u64_upper(2))
        .sqrt(53)
        .is_indeterminate());
}

#[test]
fn pi_matches_series_oracle() {
    let p = Ball::pi(100);
    assert!(encloses(&p, &oracle::pi(40)));
    assert_eq!(p.printn(30), "[3.14159265358979323846264338328 +/- 2.25e-30]");
    let reference: Ball = "[3.14159265358979323846264338328 +/- 1.07e-30]".parse().unwrap();
    assert!(reference.overlaps(&p));

    let low = Ball::pi(10);
    assert!(encloses(&low, &oracle::pi(40)));
    for prec in [2, 3, 10, 53, 64, 100, 200, 1000] {
        let b = Ball::pi(prec);
        let bound = Mag::pow2(4 - prec as i64).mul(&Mag::from_u64_upper(4));
        assert!(*b.rad() <= bound, "prec {prec}");
        assert!(b.overlaps(&Ball::pi(prec + 1)));
    }
}

#[test]
fn pi_is_cache_transparent() {
    // the uncached enclosure rounds to the same value regardless of cache state
    for prec in [64, 333, 2000, 70, 10] {
        let cached = Ball::pi(prec);
        let fresh = super::consts::pi_uncached(prec + 64);
        assert!(fresh.can_round(prec, Rounding::NearestEven));
        let (m, _) = fresh.mid().round(prec, Rounding::NearestEven);
        assert_eq!(cached.mid(), &m);
        assert_eq!(cached, Ball::pi(prec));
    }
}

#[test]
fn ln2_matches_series_oracle() {
    for prec in [8, 64, 300] {
        let b = Ball::ln2(prec);
        assert!(encloses(&b, &oracle::ln2(200)));
        let fresh = super::consts::ln2_uncached(prec + 64);
        assert_eq!(fresh.mid().round(prec, Rounding::NearestEven).0, *b.mid());
    }
}

#[test]
fn elementary_examples() {
    let (s, c) = Ball::zero().sin_cos(64);
    assert_eq!((s, c), (Ball::zero(), Ball::one()));
    assert_eq!(Ball::one().log(53), Ball::zero());
    assert_eq!(Ball::zero().exp(53), Ball::one());

    let e = Ball::one().exp(53);
    assert!(encloses(&e, &oracle::exp(&BigRational::one(), 60)));
    assert!(e.rel_accuracy_bits().at_least(47));

    let p = Ball::from_i64(2).pow(&Ball::from_i64(3), 53);
    assert_eq!(p, Ball::from_i64(8));

    let half = q(1, 2);
    let s = Ball::from_rational(&half, 64).sin(128);
    assert!(encloses(&s, &oracle::alternating(&half, 40, true)));
    let a = Ball::from_rational(&half, 64).atan(128);
    assert!(encloses(&a, &oracle::alternating(&half, 200, false)));
    let l = Ball::from_i64(2).log(128);
    assert!(encloses(&l, &oracle::ln2(100)));
}

#[test]
fn cutoffs() {
    let huge = BigFloat::pow2(Exponent::from_bigint(BigInt::one() << 100usize));
    let t = Instant::now();
    let s = Ball::exact(huge.clone()).sin(64);
    assert_eq!(s, Ball::new(BigFloat::ZERO, Mag::one()));
    let c = Ball::exact(huge.clone()).cos(64);
    assert_eq!(c, Ball::new(BigFloat::ZERO, Mag::one()));

    let e = Ball::exact(huge.neg()).exp(64);
    let bound = BigFloat::pow2(Exponent::from_bigint(-(BigInt::one() << 128usize)));
    assert!(e.lower(64) >= BigFloat::ZERO.neg() || e.lower(64).is_zero());
    assert!(e.upper(64) <= bound);
    assert!(e.contains_bigfloat(&BigFloat::ZERO));

    let e = Ball::exact(huge).exp(64);
    assert_eq!(e, Ball::whole_line());
    assert!(t.elapsed().as_millis() < 100);
}

#[test]
fn cutoff_totality() {
    let big = Ball::exact(BigFloat::pow2(Exponent::from_bigint(BigInt::one() << 60usize)).mul_2si(0));
    let ordinary = Ball::from_rational(&q(7, 3), 256);
    let time = |f: &dyn Fn()| {
        let t = Instant::now();
        for _ in 0..20 {
            f();
        }
        t.elapsed().as_secs_f64()
    };
    let base = time(&|| {
        ordinary.sin(256);
        ordinary.exp(256);
    });
    let cut = time(&|| {
        big.sin(256);
        big.exp(256);
        big.neg().exp(256);
    });
    assert!(cut <= 10.0 * base + 1e-3, "{cut} vs {base}");
}

#[test]
fn clamping() {
    let tiny = Ball::exact(BigFloat::pow2(Exponent::from_bigint(-(BigInt::one() << 70000usize))));
    let c = tiny.clamp_exponent(64);
    assert!(c.mid().is_zero());
    assert!(c.contains(&tiny));
    let big = Ball::exact(BigFloat::pow2(Exponent::from_bigint(BigInt::one() << 70000usize)));
    assert_eq!(big.clamp_exponent(64), Ball::whole_line());
    assert_eq!(Ball::one().clamp_exponent(64), Ball::one());
}

#[test]
fn log_domain() {
    assert!(Ball::zero().log(64).is_indeterminate());
    assert!(Ball::new(BigFloat::one(), Mag::one()).log(64).is_indeterminate());
    assert!(Ball::from_i64(-2).log(64).is_indeterminate());
    assert!(Ball::from_i64(-2)
        .pow(&Ball::from_rational(&q(1, 2), 64), 64)
        .is_indeterminate());
    assert_eq!(Ball::from_i64(-2).pow(&Ball::from_i64(3), 64), Ball::from_i64(-8));
}

#[test]
fn predicates() {
    assert!(ball(0, 0, 2, 0).contains(&ball(1, 0, 1, 0)));
    assert!(!ball(0, 0, 1, 0).overlaps(&ball(3, 0, 1, 0)));
    let x = ball(3, 0, 1, -1);
    assert!(x.contains_rational(&q(7, 2)));
    assert!(x.contains_rational(&q(5, 2)));
    assert!(!x.contains_rational(&q(71, 20)));

    // mixed exponents far beyond any fixed-precision comparison
    let tiny = Mag::pow2(Exponent::from_bigint(-(BigInt::one() << 40usize)));
    let a = Ball::new(BigFloat::one(), tiny.clone());
    let b = Ball::one();
    assert!(a.contains(&b) && !b.contains(&a) && a.overlaps(&b));
    let c = Ball::exact(BigFloat::one().add_exact(&BigFloat::pow2(-3000)));
    assert!(!a.contains(&c) && !a.overlaps(&c));
    let big = BigFloat::pow2(Exponent::from_bigint(BigInt::one() << 40usize));
    let d = Ball::new(big.clone(), Mag::one());
    let e = Ball::new(big.neg(), tiny);
    assert!(!d.overlaps(&e) && e.contains(&Ball::exact(big.neg())));
    assert!(d.contains_bigfloat(&big) && !d.contains_bigfloat(&big.neg()));
}

#[test]
fn accuracy_bits() {
    let x = Ball::new(BigFloat::one(), Mag::pow2(-54));
    assert_eq!(x.rel_accuracy_bits(), AccuracyBits::Bits(53));
    assert_eq!(Ball::from_i64(5).rel_accuracy_bits(), AccuracyBits::Exact);
    assert_eq!(
        Ball::new(BigFloat::ZERO, Mag::one()).rel_accuracy_bits(),
        AccuracyBits::None
    );
    assert_eq!(ball(1, 0, 1, 0).rel_accuracy_bits(), AccuracyBits::None);
}

#[test]
fn can_round_examples() {
    let p = Ball::pi(128);
    assert!(*p.rad() < Mag::pow2(-60));
    assert!(p.can_round(53, Rounding::NearestEven));
    // the distance from π to the nearest 53-bit rounding boundary exceeds the radius
    let pr = oracle::pi(60).0;
    let scaled = &pr * BigInt::from(2).pow(52);
    let frac = &scaled - scaled.floor();
    let gap = (frac - q(1, 2)).abs() / BigInt::from(2).pow(52);
    assert!(gap > rational(&p.rad().to_bigfloat()));

    // [a, b] straddling the halfway point of two 53-bit neighbours
    let half = BigFloat::one().add_exact(&BigFloat::pow2(-53));
    let straddle = Ball::new(half, Mag::pow2(-60));
    assert!(!straddle.can_round(53, Rounding::NearestEven));
    for prec in [1, 2, 53, 1000] {
        assert!(Ball::from_i64(2).can_round(prec, Rounding::NearestEven));
    }
}

#[test]
fn printn_golden() {
    let x = Ball::new(bf(884279719003555, -48), Mag::from_u64_upper(536870913).mul_2si(-80));
    assert_eq!(x.printn(30), "[3.141592653589793 +/- 5.61e-16]");
    assert_eq!(x.printn(3), "[3.14 +/- 1.60e-3]");
    assert_eq!(format!("{x:.3}"), "[3.14 +/- 1.60e-3]");

    let eighth: Ball = "0.125".parse().unwrap();
    assert_eq!(eighth, Ball::exact(BigFloat::pow2(-3)));
    assert_eq!(eighth.printn(3), "0.125");

    let unknown = Ball::new(bf(1, -40), Mag::from_u64_upper(123).mul_2si(-40));
    assert!(unknown.printn(10).starts_with("[+/- "));
    assert_eq!(Ball::indeterminate().printn(5), "nan");
    assert_eq!(Ball::whole_line().printn(5), "[+/- inf]");
    assert_eq!(Ball::from_i64(-42).printn(5), "-42");
    assert_eq!(Ball::from_rational(&q(-1, 3), 64).printn(5), "[-0.33333 +/- 3.34e-6]");
}

#[test]
fn parse_grammar() {
    assert_eq!("nan".parse::<Ball>().unwrap(), Ball::indeterminate());
    assert_eq!("[+/- inf]".parse::<Ball>().unwrap(), Ball::whole_line());
    let b: Ball = "[-1.5e2 +/- 0.5]".parse().unwrap();
    assert_eq!(b, Ball::new(BigFloat::from(-150), Mag::pow2(-1)));
    let r: Ball = "[+/- 1.23e-8]".parse().unwrap();
    assert!(r.mid().is_zero() && r.contains_rational(&q(123, 10_000_000_000)));
    let tenth: Ball = "0.1".parse().unwrap();
    assert!(tenth.contains_rational(&q(1, 10)) && !tenth.is_exact());

    for (s, pos) in [
        ("", 0),
        ("1.", 2),
        ("[1 +/- ]", 7),
        ("1e", 2),
        ("[1 +/- 2", 8),
        ("12x", 2),
        ("-", 1),
    ] {
        let e = s.parse::<Ball>().unwrap_err();
        assert_eq!(e.pos, pos, "{s:?}: {e}");
    }
}

#[test]
fn exact_text_round_trip() {
    for b in [
        Ball::pi(80),
        Ball::indeterminate(),
        Ball::whole_line(),
        Ball::from_i64(-3),
        Ball::exact(BigFloat::pow2(Exponent::from_bigint(BigInt::one() << 80usize))),
    ] {
        let s = b.to_exact_string();
        assert_eq!(s.parse::<Ball>().unwrap(), b, "{s}");
    }
}

#[test]
fn convergence_slope() {
    let x = Ball::from_rational(&q(3, 7), 4096);
    type Named = (&'static str, fn(&Ball, u64) -> Ball);
    let fs: [Named; 4] = [
        ("exp", |x, p| x.exact_mid().exp(p)),
        ("log", |x, p| x.exact_mid().log(p)),
        ("sin", |x, p| x.exact_mid().sin(p)),
        ("atan", |x, p| x.exact_mid().atan(p)),
    ];
    for (name, f) in fs {
        let pts: Vec<(f64, f64)> = (4..=10)
            .map(|k| {
                let p = 1u64 << k;
                let r = f(&x, p);
                let e = r.rad().exponent().unwrap().to_i64().unwrap();
                (p as f64, e as f64)
            })
            .collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        assert!(num / den <= -0.9, "{name}: slope {}", num / den);
    }
}

#[test]
fn exactness() {
    for prec in [2, 10, 53, 200] {
        assert_eq!(Ball::from_i64(4).sqrt(prec), Ball::from_i64(2));
        assert_eq!(Ball::zero().exp(prec), Ball::one());
        assert_eq!(Ball::one().log(prec), Ball::zero());
        assert_eq!(Ball::zero().atan(prec), Ball::zero());
        assert_eq!(Ball::from_i64(3).pow_u64(4, prec.max(8)), Ball::from_i64(81));
    }
}

impl Ball {
    fn exact_mid(&self) -> Ball {
        Ball::exact(self.mid().clone())
    }
}

fn arb_ball() -> impl Strategy<Value = Ball> {
    (any::<i32>(), -40i64..40, 0u64..1 << 30, -60i64..0).prop_map(|(m, e, rm, re)| {
        let mid = bf(m as i64, e - 31);
        Ball::new(
            mid.clone(),
            Mag::from_u64_upper(rm)
                .mul_2si(re)
                .mul_2exp(mid.exponent().unwrap_or(&Exponent::ZERO)),
        )
    })
}

fn arb_positive() -> impl Strategy<Value = Ball> {
    (1u32..u32::MAX, -30i64..30, 0u64..1 << 30, -60i64..-2).prop_map(|(m, e, rm, re)| {
        let mid = bf(m as i64, e - 32);
        let rad = Mag::from_u64_upper(rm)
            .mul_2si(re - 30)
            .mul_2exp(mid.exponent().unwrap());
        Ball::new(mid, rad)
    })
}

fn prec_strategy() -> impl Strategy<Value = u64> {
    prop_oneof![Just(16u64), Just(53), Just(64), Just(128), 2u64..300]
}

const REF: u64 = 512;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn inclusion_arith(x in arb_ball(), y in arb_ball(), z in arb_ball(), prec in prec_strategy(),
                       k1 in -65536i32..=65536, k2 in -65536i32..=65536, k3 in -65536i32..=65536) {
        let (a, b, c) = (point(&x, k1), point(&y, k2), point(&z, k3));
        let (qa, qb, qc) = (rational(&a), rational(&b), rational(&c));
        prop_assert!(x.add(&y, prec).contains_rational(&(&qa + &qb)));
        prop_assert!(x.sub(&y, prec).contains_rational(&(&qa - &qb)));
        prop_assert!(x.mul(&y, prec).contains_rational(&(&qa * &qb)));
        prop_assert!(Ball::fma(&z, &x, &y, prec).contains_rational(&(&qc + &qa * &qb)));
        prop_assert!(x.sqr(prec).contains_rational(&(&qa * &qa)));
        if !qb.is_zero() {
            prop_assert!(x.div(&y, prec).contains_rational(&(&qa / &qb)));
        }
        prop_assert!(x.pow_u64(3, prec).contains_rational(&(&qa * &qa * &qa)));
    }

    #[test]
    fn inclusion_sqrt_log(x in arb_positive(), prec in prec_strategy(), k in -65536i32..=65536) {
        let a = Ball::exact(point(&x, k));
        let s = x.sqrt(prec);
        let sr = a.sqrt(REF);
        prop_assert!(s.contains(&sr), "{:?} {:?}", s, sr);
        prop_assert!(x.log(prec).contains(&a.log(REF)));
    }

    #[test]
    fn inclusion_transcendental(x in arb_ball(), prec in prec_strategy(), k in -65536i32..=65536) {
        let a = Ball::exact(point(&x, k));
        let e = x.exp(prec);
        prop_assert!(e.contains(&a.exp(REF)), "exp {:?}", x);
        let (s, c) = x.sin_cos(prec);
        let (sr, cr) = a.sin_cos(REF);
        prop_assert!(s.contains(&sr) && c.contains(&cr), "sin_cos {:?}", x);
        prop_assert!(x.atan(prec).contains(&a.atan(REF)), "atan {:?}", x);
    }

    #[test]
    fn inclusion_pow(x in arb_positive(), y in arb_ball(), prec in prec_strategy(),
                     k1 in -65536i32..=65536, k2 in -65536i32..=65536) {
        let a = Ball::exact(point(&x, k1));
        let b = Ball::exact(point(&y, k2));
        prop_assert!(x.pow(&y, prec).contains(&a.pow(&b, REF)));
    }

    #[test]
    fn exp_point_oracle(m in -(1i64 << 20)..(1i64 << 20)) {
        let x = q(m, 1 << 20);
        let b = Ball::from_rational(&x, 64).exp(96);
        prop_assert!(encloses(&b, &oracle::exp(&x, 50)));
    }

    #[test]
    fn decimal_round_trip(x in arb_ball(), d in 1usize..40) {
        let s = x.printn(d);
        let back: Ball = s.parse().unwrap();
        prop_assert!(back.contains(&x), "{} from {:?}", s, x);
        if x.is_exact() {
            let s = x.printn(200);
            prop_assert_eq!(s.parse::<Ball>().unwrap(), x.clone());
        }
    }

    #[test]
    fn predicates_match_rationals(m1 in any::<i32>(), e1 in -3000i64..3000, r1 in 0u64..1 << 30, f1 in -3000i64..3000,
                                  m2 in any::<i32>(), e2 in -3000i64..3000, r2 in 0u64..1 << 30, f2 in -3000i64..3000) {
        let x = ball(m1 as i64, e1, r1, f1);
        let y = ball(m2 as i64, e2, r2, f2);
        let (mx, rx) = (rational(x.mid()), rational(&x.rad().to_bigfloat()));
        let (my, ry) = (rational(y.mid()), rational(&y.rad().to_bigfloat()));
        let contains = &mx - &rx <= &my - &ry && &my + &ry <= &mx + &rx;
        let overlaps = (&mx - &my).abs() <= &rx + &ry;
        prop_assert_eq!(x.contains(&y), contains);
        prop_assert_eq!(x.overlaps(&y), overlaps);
        prop_assert!(x.contains_rational(&(&mx + &rx)));
        prop_assert_eq!(x.contains_rational(&my), (&mx - &my).abs() <= rx);
    }
}
