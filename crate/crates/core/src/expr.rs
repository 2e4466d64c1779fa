//! Integrand expressions in one variable `t`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] integer)?
//! atom  := number | 't' | 'pi' | ident '(' expr ')' | '(' expr ')'
//! ident := sin | cos | exp | log | sqrt | atan
//! ```

use std::fmt;

use rug::{Float, Integer, Rational};

use crate::composite::{pi_guard, NumericContext};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("pole: division by zero")]
    Pole,
    #[error("exact evaluation does not support {0}")]
    Unsupported(&'static str),
    #[error("domain error: {0}")]
    Domain(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Atan,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "atan" => Func::Atan,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Atan => "atan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Integer and decimal literals, held exactly.
    Number(Rational),
    Var,
    Pi,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Self, ExprError> {
        parse(text)
    }

    /// True when [`eval_exact`] can succeed: no `pi` and no functions.
    pub fn is_rational(&self) -> bool {
        match self {
            Expr::Number(_) | Expr::Var => true,
            Expr::Pi | Expr::Call(..) => false,
            Expr::Neg(e) | Expr::Pow(e, _) => e.is_rational(),
            Expr::Binary(_, l, r) => l.is_rational() && r.is_rational(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, ..) => op.precedence(),
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Number(r) if !is_terminating(r) || *r < 0 => 0,
            _ => 5,
        }
    }
}

fn is_terminating(r: &Rational) -> bool {
    let mut d = r.denom().clone();
    for p in [2u32, 5] {
        while d.is_divisible_u(p) {
            d /= p;
        }
    }
    d == 1
}

fn write_decimal(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if *r.denom() == 1 {
        return write!(f, "{}", r.numer());
    }
    let mut scale = 0u32;
    let mut scaled = r.clone();
    while *scaled.denom() != 1 {
        scaled *= 10u32;
        scale += 1;
    }
    let digits = scaled.numer().to_string();
    let (sign, digits) = digits.strip_prefix('-').map_or(("", digits.as_str()), |d| ("-", d));
    let padded = format!("{:0>width$}", digits, width = scale as usize + 1);
    let (int, frac) = padded.split_at(padded.len() - scale as usize);
    write!(f, "{sign}{int}.{frac}")
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(r) if is_terminating(r) && *r >= 0 => write_decimal(f, r),
            Expr::Number(r) => write!(f, "{r}"),
            Expr::Var => f.write_str("t"),
            Expr::Pi => f.write_str("pi"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_child(f, e, 3)
            }
            Expr::Binary(op, l, r) => {
                let p = op.precedence();
                write_child(f, l, p)?;
                write!(f, " {} ", op.symbol())?;
                write_child(f, r, p + 1)
            }
            Expr::Pow(base, k) => {
                write_child(f, base, 5)?;
                write!(f, "^{k}")
            }
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { offset, message: message.into() })
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.error(self.pos, format!("expected `{}`, found `{}`", c as char, x as char)),
            None => self.error(self.pos, format!("expected `{}`, found end of input", c as char)),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let op = if c == b'+' { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let op = if c == b'*' { BinOp::Mul } else { BinOp::Div };
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error(start, "exponent must be an integer literal");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let k: i32 = match text.parse() {
            Ok(k) => k,
            Err(_) => return self.error(start, "exponent too large"),
        };
        Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
    }

    fn number(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - s
        };
        let int_len = digits(self);
        let mut frac_len = 0;
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            frac_len = digits(self);
        }
        if int_len + frac_len == 0 {
            return self.error(start, "malformed number");
        }
        let text: String = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").chars().filter(|&c| c != '.').collect();
        let mantissa: Integer = text.parse().expect("digits");
        let scale = Integer::from(Integer::u_pow_u(10, frac_len as u32));
        Ok(Expr::Number(Rational::from((mantissa, scale))))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let Some(c) = self.peek() else {
            return self.error(self.pos, "unexpected end of input");
        };
        if c.is_ascii_digit() || c == b'.' {
            return self.number();
        }
        if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            self.expect(b')')?;
            return Ok(inner);
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            return match name {
                "t" => Ok(Expr::Var),
                "pi" => Ok(Expr::Pi),
                _ => match Func::from_name(name) {
                    Some(func) => {
                        self.expect(b'(')?;
                        let arg = self.expr()?;
                        self.expect(b')')?;
                        Ok(Expr::Call(func, Box::new(arg)))
                    }
                    None => Err(ExprError::UnknownIdentifier { offset: start, name: name.to_string() }),
                },
            };
        }
        let ch = std::str::from_utf8(&self.src[self.pos..]).ok().and_then(|s| s.chars().next()).unwrap_or('?');
        self.error(self.pos, format!("unexpected `{ch}`"))
    }
}

/// Parses `text`; error offsets are byte offsets into `text`.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        let ch = text[p.pos..].chars().next().unwrap_or(c as char);
        return p.error(p.pos, format!("unexpected `{ch}`"));
    }
    Ok(e)
}

/// Exact value at a rational point.
pub fn eval_exact(e: &Expr, t: &Rational) -> Result<Rational, ExprError> {
    Ok(match e {
        Expr::Number(r) => r.clone(),
        Expr::Var => t.clone(),
        Expr::Pi => return Err(ExprError::Unsupported("pi")),
        Expr::Call(func, _) => return Err(ExprError::Unsupported(func.name())),
        Expr::Neg(a) => -eval_exact(a, t)?,
        Expr::Binary(op, l, r) => {
            let (l, r) = (eval_exact(l, t)?, eval_exact(r, t)?);
            match op {
                BinOp::Add => l + r,
                BinOp::Sub => l - r,
                BinOp::Mul => l * r,
                BinOp::Div if r == 0 => return Err(ExprError::Pole),
                BinOp::Div => l / r,
            }
        }
        Expr::Pow(base, k) => {
            let b = eval_exact(base, t)?;
            if b == 0 && *k < 0 {
                return Err(ExprError::Pole);
            }
            rug::ops::Pow::pow(b, *k)
        }
    })
}

/// Value at `prec` bits with every operation correctly rounded.
pub fn eval_float_prec(e: &Expr, t: &Float, prec: u32) -> Result<Float, ExprError> {
    Ok(match e {
        Expr::Number(r) => Float::with_val(prec, r),
        Expr::Var => Float::with_val(prec, t),
        Expr::Pi => Float::with_val(prec, &*pi_guard(prec)),
        Expr::Neg(a) => -eval_float_prec(a, t, prec)?,
        Expr::Binary(op, l, r) => {
            let (l, r) = (eval_float_prec(l, t, prec)?, eval_float_prec(r, t, prec)?);
            match op {
                BinOp::Add => l + r,
                BinOp::Sub => l - r,
                BinOp::Mul => l * r,
                BinOp::Div if r.is_zero() => return Err(ExprError::Pole),
                BinOp::Div => l / r,
            }
        }
        Expr::Pow(base, k) => {
            let b = eval_float_prec(base, t, prec)?;
            if b.is_zero() && *k < 0 {
                return Err(ExprError::Pole);
            }
            rug::ops::Pow::pow(b, *k)
        }
        Expr::Call(func, arg) => {
            let x = eval_float_prec(arg, t, prec)?;
            match func {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Exp => x.exp(),
                Func::Atan => x.atan(),
                Func::Log if x <= 0 => return Err(ExprError::Domain("log of a non-positive number")),
                Func::Log => x.ln(),
                Func::Sqrt if x < 0 => return Err(ExprError::Domain("sqrt of a negative number")),
                Func::Sqrt => x.sqrt(),
            }
        }
    })
}

/// Evaluates at guard precision and rounds to the context precision.
pub fn eval_float(e: &Expr, t: &Float, context: &NumericContext) -> Result<Float, ExprError> {
    let v = eval_float_prec(e, t, context.guard_bits())?;
    Ok(Float::with_val(context.bits(), v))
}
