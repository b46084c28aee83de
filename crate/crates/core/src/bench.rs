//! Timing workloads: the recursive factorial product, falling factorial
//! expansion and power series squaring. Rows print as
//! `name,param,prec,seconds,metric` CSV, where the metric is the worst
//! relative accuracy in bits of the output.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::ball::{AccuracyBits, Ball};
use crate::poly::BallPoly;

/// `(a+1)(a+2)···b` by balanced recursion.
pub fn factorial_range(a: u64, b: u64, prec: u64) -> Ball {
    if b - a == 1 {
        return Ball::from_i64(b as i64);
    }
    let m = a + (b - a) / 2;
    factorial_range(a, m, prec).mul(&factorial_range(m, b, prec), prec)
}

pub fn factorial(n: u64, prec: u64) -> Ball {
    if n == 0 {
        return Ball::one();
    }
    factorial_range(0, n, prec)
}

/// `x(x-1)···(x-n+1)` by a product tree.
pub fn falling_factorial(n: u64, prec: u64) -> BallPoly {
    let factors: Vec<(Ball, Ball)> = (0..n).map(|j| (Ball::from_i64(-(j as i64)), Ball::one())).collect();
    BallPoly::product_tree(&factors, prec)
}

/// `Σ_{k<n} x^k/k!` with each coefficient enclosed at `prec` bits.
pub fn exp_series(n: usize, prec: u64) -> BallPoly {
    let mut fact = BigInt::one();
    let coeffs = (0..n)
        .map(|k| {
            if k > 0 {
                fact *= k;
            }
            Ball::from_rational(&BigRational::new(BigInt::one(), fact.clone()), prec)
        })
        .collect();
    BallPoly::new(coeffs)
}

pub fn poly_accuracy(p: &BallPoly) -> AccuracyBits {
    p.coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .fold(AccuracyBits::Exact, |acc, c| acc.min(c.rel_accuracy_bits()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub name: String,
    pub param: u64,
    pub prec: u64,
    pub seconds: f64,
    pub metric: AccuracyBits,
}

impl BenchRow {
    pub const HEADER: &'static str = "name,param,prec,seconds,metric";
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{:.6},{}",
            self.name, self.param, self.prec, self.seconds, self.metric
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Workload {
    Factorial,
    FallingFactorial,
    PolymulBlock,
    PolymulSchoolbook,
}

impl Workload {
    pub const ALL: [Workload; 4] = [
        Workload::Factorial,
        Workload::FallingFactorial,
        Workload::PolymulBlock,
        Workload::PolymulSchoolbook,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Workload::Factorial => "factorial",
            Workload::FallingFactorial => "falling_factorial",
            Workload::PolymulBlock => "polymul_block",
            Workload::PolymulSchoolbook => "polymul_schoolbook",
        }
    }

    /// Times one run with size parameter `n`.
    pub fn run(self, n: u64, prec: u64) -> BenchRow {
        let start = Instant::now();
        let metric = match self {
            Workload::Factorial => factorial(n, prec).rel_accuracy_bits(),
            Workload::FallingFactorial => poly_accuracy(&falling_factorial(n, prec)),
            Workload::PolymulBlock | Workload::PolymulSchoolbook => {
                let f = exp_series(n as usize, prec);
                let sq = if self == Workload::PolymulBlock {
                    f.mul_block(&f, prec)
                } else {
                    f.mul_schoolbook(&f, prec)
                };
                poly_accuracy(&sq)
            }
        };
        BenchRow {
            name: self.name().to_string(),
            param: n,
            prec,
            seconds: start.elapsed().as_secs_f64(),
            metric,
        }
    }
}

/// Every combination of workload, size and precision, in that order.
pub fn grid(workloads: &[Workload], sizes: &[u64], precs: &[u64]) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &w in workloads {
        for &n in sizes {
            for &p in precs {
                rows.push(w.run(n, p));
            }
        }
    }
    rows
}
