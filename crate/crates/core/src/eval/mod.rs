//! Expressions over balls and a precision-doubling evaluator that stops
//! once the result is certified to a requested relative accuracy.

mod parse;

use std::collections::{BTreeMap, BTreeSet};

use crate::ball::{Ball, ParseBallError};
use crate::bigfloat::{BigFloat, Rounding};

pub use parse::parse_expr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Atan,
    Sqrt,
    Pow,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "atan" => Func::Atan,
            "sqrt" => Func::Sqrt,
            "pow" => Func::Pow,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Atan => "atan",
            Func::Sqrt => "sqrt",
            Func::Pow => "pow",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Pow => 2,
            _ => 1,
        }
    }

    fn apply(self, args: &[Ball], prec: u64) -> Ball {
        let x = &args[0];
        match self {
            Func::Exp => x.exp(prec),
            Func::Log => x.log(prec),
            Func::Sin => x.sin(prec),
            Func::Cos => x.cos(prec),
            Func::Atan => x.atan(prec),
            Func::Sqrt => x.sqrt(prec),
            Func::Pow => x.pow(&args[1], prec),
        }
    }
}

/// Expression tree. Literals keep their decimal text so that inexact ones
/// are re-enclosed at every working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(String),
    Pi,
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown function {name:?} at byte {pos}")]
    UnknownIdent { pos: usize, name: String },
    #[error("{func} takes {expected} argument(s) but {found} were given (byte {pos})")]
    Arity {
        pos: usize,
        func: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("unbound variable {0:?}")]
    Unbound(String),
    #[error("bad binding {0:?}: expected name=value")]
    BadAssignment(String),
    #[error("invalid value for {name}: {source}")]
    BadValue { name: String, source: ParseBallError },
    #[error("rounding not certified at {prec} bits: possible exact or near-exact case")]
    Unconverged { prec: u64 },
    #[error("the expression is not defined at the given point")]
    Indeterminate,
}

impl Expr {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) | Expr::Pi => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Neg(a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Call(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// One evaluation at working precision `prec`.
    pub fn eval(&self, vars: &Bindings, prec: u64) -> Result<Ball, EvalError> {
        let bin =
            |a: &Expr, b: &Expr| -> Result<(Ball, Ball), EvalError> { Ok((a.eval(vars, prec)?, b.eval(vars, prec)?)) };
        Ok(match self {
            Expr::Num(s) => Ball::parse_decimal_prec(s, prec).expect("literal checked by the parser"),
            Expr::Pi => Ball::pi(prec),
            Expr::Var(v) => vars.value(v, prec)?,
            Expr::Neg(a) => a.eval(vars, prec)?.neg(),
            Expr::Add(a, b) => bin(a, b).map(|(x, y)| x.add(&y, prec))?,
            Expr::Sub(a, b) => bin(a, b).map(|(x, y)| x.sub(&y, prec))?,
            Expr::Mul(a, b) => bin(a, b).map(|(x, y)| x.mul(&y, prec))?,
            Expr::Div(a, b) => bin(a, b).map(|(x, y)| x.div(&y, prec))?,
            Expr::Pow(a, b) => bin(a, b).map(|(x, y)| x.pow(&y, prec))?,
            Expr::Call(f, args) => {
                let vals = args.iter().map(|a| a.eval(vars, prec)).collect::<Result<Vec<_>, _>>()?;
                f.apply(&vals, prec)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Binding {
    Decimal(String),
    Ball(Ball),
}

/// Values of free variables. Decimal bindings are re-enclosed at each
/// working precision.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings(BTreeMap<String, Binding>);

impl Bindings {
    pub fn new() -> Bindings {
        Bindings::default()
    }

    pub fn bind_ball(&mut self, name: &str, value: Ball) {
        self.0.insert(name.to_string(), Binding::Ball(value));
    }

    /// Binds `name` to a decimal number or `[m +/- r]` ball.
    pub fn bind_decimal(&mut self, name: &str, text: &str) -> Result<(), EvalError> {
        Ball::parse_decimal(text).map_err(|source| EvalError::BadValue {
            name: name.to_string(),
            source,
        })?;
        self.0.insert(name.to_string(), Binding::Decimal(text.to_string()));
        Ok(())
    }

    /// Parses and binds `name=value`.
    pub fn bind_assignment(&mut self, s: &str) -> Result<(), EvalError> {
        let (name, value) = s
            .split_once('=')
            .filter(|(n, _)| !n.trim().is_empty())
            .ok_or_else(|| EvalError::BadAssignment(s.to_string()))?;
        self.bind_decimal(name.trim(), value.trim())
    }

    fn value(&self, name: &str, prec: u64) -> Result<Ball, EvalError> {
        match self.0.get(name) {
            Some(Binding::Ball(b)) => Ok(b.clone()),
            Some(Binding::Decimal(s)) => Ok(Ball::parse_decimal_prec(s, prec).expect("validated on bind")),
            None => Err(EvalError::Unbound(name.to_string())),
        }
    }

    fn check(&self, e: &Expr) -> Result<(), EvalError> {
        match e.free_vars().into_iter().find(|v| !self.0.contains_key(v)) {
            Some(v) => Err(EvalError::Unbound(v)),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    pub target_bits: u64,
    pub start_prec: u64,
    pub max_prec: u64,
    /// Consecutive indeterminate iterates after which the result is
    /// reported as undefined.
    pub nan_patience: u32,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            target_bits: 53,
            start_prec: 64,
            max_prec: 1 << 24,
            nan_patience: 4,
        }
    }
}

impl EvalConfig {
    pub fn with_digits(digits: u64) -> EvalConfig {
        EvalConfig {
            target_bits: digits_to_bits(digits),
            ..EvalConfig::default()
        }
    }
}

/// Relative accuracy in bits that makes `d` printed digits meaningful.
pub fn digits_to_bits(d: u64) -> u64 {
    (d as f64 * std::f64::consts::LOG2_10).ceil() as u64 + 3
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Converged,
    /// Every recent iterate was `nan`: the expression is undefined there.
    Indeterminate,
    /// The precision cap was reached first.
    Unconverged,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub ball: Ball,
    pub prec: u64,
    pub status: Status,
}

pub fn eval_adaptive(e: &Expr, vars: &Bindings, cfg: &EvalConfig) -> Result<Evaluation, EvalError> {
    eval_adaptive_traced(e, vars, cfg, |_, _| {})
}

/// As [`eval_adaptive`], calling `trace(prec, &ball)` on every iterate.
pub fn eval_adaptive_traced(
    e: &Expr,
    vars: &Bindings,
    cfg: &EvalConfig,
    mut trace: impl FnMut(u64, &Ball),
) -> Result<Evaluation, EvalError> {
    vars.check(e)?;
    let mut prec = cfg.start_prec.clamp(2, cfg.max_prec.max(2));
    let mut nans = 0;
    loop {
        let ball = e.eval(vars, prec)?;
        trace(prec, &ball);
        let done = |status| {
            Ok(Evaluation {
                ball: ball.clone(),
                prec,
                status,
            })
        };
        if ball.rel_accuracy_bits().at_least(cfg.target_bits as i64) {
            return done(Status::Converged);
        }
        nans = if ball.is_indeterminate() { nans + 1 } else { 0 };
        if nans >= cfg.nan_patience {
            return done(Status::Indeterminate);
        }
        if prec >= cfg.max_prec {
            return done(Status::Unconverged);
        }
        prec = prec.saturating_mul(2).min(cfg.max_prec);
    }
}

/// The value of `e` correctly rounded to `prec` bits in direction `rnd`.
pub fn eval_correctly_rounded(
    e: &Expr,
    vars: &Bindings,
    prec: u64,
    rnd: Rounding,
    cfg: &EvalConfig,
) -> Result<BigFloat, EvalError> {
    vars.check(e)?;
    let mut wp = cfg.start_prec.max(prec + 16);
    let mut nans = 0;
    loop {
        let ball = e.eval(vars, wp)?;
        if ball.can_round(prec, rnd) {
            return Ok(ball.mid().round(prec, rnd).0);
        }
        nans = if ball.is_indeterminate() { nans + 1 } else { 0 };
        if nans >= cfg.nan_patience {
            return Err(EvalError::Indeterminate);
        }
        if wp >= cfg.max_prec {
            return Err(EvalError::Unconverged { prec: wp });
        }
        wp = wp.saturating_mul(2).min(cfg.max_prec);
    }
}
