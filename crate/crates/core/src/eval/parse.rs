//! Recursive-descent parser for arithmetic expressions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
//! ```

use std::fmt;
use std::str::FromStr;

use super::{EvalError, Expr, Func};
use crate::ball::Ball;

pub fn parse_expr(src: &str) -> Result<Expr, EvalError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.syntax("unexpected character"));
    }
    Ok(e)
}

impl FromStr for Expr {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn syntax(&self, msg: &str) -> EvalError {
        EvalError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, EvalError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, EvalError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, EvalError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, EvalError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.ident(),
            Some(_) => Err(self.syntax("expected a number, name or '('")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && f(bytes[self.pos]) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<Expr, EvalError> {
        let start = self.pos;
        let int = self.take_while(|c| c.is_ascii_digit()).len();
        let mut frac = 0;
        if self.src[self.pos..].starts_with('.') {
            self.pos += 1;
            frac = self.take_while(|c| c.is_ascii_digit()).len();
        }
        if int + frac == 0 {
            self.pos = start;
            return Err(self.syntax("malformed number"));
        }
        let rest = &self.src.as_bytes()[self.pos..];
        if matches!(rest.first(), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.src.as_bytes().get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.take_while(|c| c.is_ascii_digit()).is_empty() {
                self.pos = save;
                return Err(self.syntax("malformed exponent"));
            }
        }
        let text = &self.src[start..self.pos];
        if let Err(e) = Ball::parse_decimal(text) {
            return Err(EvalError::Syntax {
                pos: start + e.pos,
                msg: e.msg,
            });
        }
        Ok(Expr::Num(text.to_string()))
    }

    fn ident(&mut self) -> Result<Expr, EvalError> {
        let start = self.pos;
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_').to_string();
        if self.peek() != Some(b'(') {
            return Ok(match name.as_str() {
                "pi" => Expr::Pi,
                _ if Func::from_name(&name).is_some() => return Err(self.syntax("expected '(' after function name")),
                _ => Expr::Var(name),
            });
        }
        let func = Func::from_name(&name).ok_or(EvalError::UnknownIdent { pos: start, name })?;
        self.pos += 1;
        let mut args = vec![self.expr()?];
        while self.eat(b',') {
            args.push(self.expr()?);
        }
        if !self.eat(b')') {
            return Err(self.syntax("expected ')' or ','"));
        }
        if args.len() != func.arity() {
            return Err(EvalError::Arity {
                pos: start,
                func: func.name(),
                expected: func.arity(),
                found: args.len(),
            });
        }
        Ok(Expr::Call(func, args))
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesized form, which parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr| write!(f, "({a} {op} {b})");
        match self {
            Expr::Num(s) => f.write_str(s),
            Expr::Pi => f.write_str("pi"),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => bin(f, a, "+", b),
            Expr::Sub(a, b) => bin(f, a, "-", b),
            Expr::Mul(a, b) => bin(f, a, "*", b),
            Expr::Div(a, b) => bin(f, a, "/", b),
            Expr::Pow(a, b) => bin(f, a, "^", b),
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}
