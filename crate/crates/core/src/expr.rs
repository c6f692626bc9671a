//! Arithmetic expressions over exact literals, evaluated digit by digit
//! through the hinted addition and multiplication rules or as p-adic
//! numbers.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := literal | '(' expr ')' | 'neg(' expr ')' | 'recip(' expr ')'
//! ```

use std::fmt;

use thiserror::Error;

use crate::decimal::Decimal;
use crate::literal::{self, LiteralError};
use crate::padic::{padic_add, padic_from_rational_with_min_order, padic_mul, padic_neg, padic_sub, PAdic, PAdicError};
use crate::rational::BigRat;
use crate::trace::ReadTrace;
use crate::weak::{hint_for_value, weak_op, Hint, HintPayload, MulPath, Op, WeakError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(BigRat),
    Neg(Box<Expr>),
    Recip(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("at {position}: {source}")]
    InvalidLiteral { position: usize, source: LiteralError },
    #[error("reciprocal of zero")]
    ZeroReciprocal,
    #[error("a hint applies only to a top-level sum, difference or product")]
    HintNotApplicable,
    #[error(transparent)]
    Weak(#[from] WeakError),
    #[error(transparent)]
    PAdic(#[from] PAdicError),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ExprError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.syntax(format!("expected {token:?}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        while self.eat("*") {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.eat("neg(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(Expr::Neg(Box::new(e)));
        }
        if self.eat("recip(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(Expr::Recip(Box::new(e)));
        }
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '-' => self.literal(),
            Some(c) => self.syntax(format!("unexpected {c:?}")),
            None => self.syntax("unexpected end of input"),
        }
    }

    /// `[-] digits [. digits [(digits)]]` or `[-] digits / digits`.
    fn literal(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = start;
        let digits = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
        };
        if bytes[i] == b'-' {
            i += 1;
        }
        digits(&mut i);
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            digits(&mut i);
            if i < bytes.len() && bytes[i] == b'(' {
                i += 1;
                digits(&mut i);
                if i < bytes.len() && bytes[i] == b')' {
                    i += 1;
                }
            }
        } else if i < bytes.len() && bytes[i] == b'/' {
            i += 1;
            digits(&mut i);
        }
        let text = &self.src[start..i];
        self.pos = i;
        literal::parse(text)
            .map(Expr::Lit)
            .map_err(|source| ExprError::InvalidLiteral { position: start, source })
    }
}

pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.syntax("trailing input");
    }
    Ok(e)
}

impl Expr {
    /// The exact value.
    pub fn value(&self) -> Result<BigRat, ExprError> {
        Ok(match self {
            Expr::Lit(q) => q.clone(),
            Expr::Neg(a) => -a.value()?,
            Expr::Recip(a) => a.value()?.recip().map_err(|_| ExprError::ZeroReciprocal)?,
            Expr::Add(a, b) => a.value()? + b.value()?,
            Expr::Sub(a, b) => a.value()? - b.value()?,
            Expr::Mul(a, b) => a.value()? * b.value()?,
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(q) => write!(f, "{}", literal::format(q, 64)),
            Expr::Neg(a) => write!(f, "neg({a})"),
            Expr::Recip(a) => write!(f, "recip({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EvalOptions {
    /// Replaces the computed hint of the top-level operation.
    pub hint: Option<Hint>,
    /// Records how deep the top-level operation reads each operand.
    pub trace: bool,
    pub path: MulPath,
}

#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: Decimal,
    pub exact: BigRat,
    /// Hint used by the top-level operation.
    pub hint: Option<Hint>,
    /// Read traces of the two top-level operands.
    pub traces: Option<(ReadTrace, ReadTrace)>,
}

/// Short description of a hint.
pub fn describe_hint(h: &Hint) -> String {
    match &h.payload {
        HintPayload::NonTerminating => format!("NonTerminating(order {})", h.kpp),
        HintPayload::Terminating(t) => format!("Terminating({t})"),
    }
}

fn depth(t: &ReadTrace) -> String {
    t.max_index().map_or_else(|| "not read".to_string(), |m| format!("depth {m}"))
}

impl Evaluation {
    /// The result to `digits` places, then the order, hint and traces.
    pub fn report(&self, digits: u64) -> String {
        let mut out = self.value.to_fixed_string(digits);
        out.push_str(&format!("\norder: {}", self.value.order()));
        if let Some(h) = &self.hint {
            out.push_str(&format!("\nhint: {} = {h}", describe_hint(h)));
        }
        if let Some((l, r)) = &self.traces {
            out.push_str(&format!("\ntrace: left {}, right {}", depth(l), depth(r)));
        }
        out
    }
}

fn binary(e: &Expr) -> Option<(Op, &Expr, &Expr, bool)> {
    match e {
        Expr::Add(a, b) => Some((Op::Add, a, b, false)),
        Expr::Sub(a, b) => Some((Op::Add, a, b, true)),
        Expr::Mul(a, b) => Some((Op::Mul, a, b, false)),
        _ => None,
    }
}

/// Digits of `e` computed by the hinted digit rules, with each hint derived
/// from the exact value of its subexpression.
fn eval_node(e: &Expr, path: MulPath) -> Result<(Decimal, BigRat), ExprError> {
    match e {
        Expr::Lit(q) => Ok((Decimal::from_rational(q.clone()), q.clone())),
        Expr::Neg(a) => {
            let (d, q) = eval_node(a, path)?;
            Ok((d.neg(), -q))
        }
        Expr::Recip(_) => {
            let q = e.value()?;
            Ok((Decimal::from_rational(q.clone()), q))
        }
        _ => {
            let (op, a, b, negate) = binary(e).expect("binary node");
            let (x, _) = eval_node(a, path)?;
            let (y, _) = eval_node(b, path)?;
            let y = if negate { y.neg() } else { y };
            let exact = e.value()?;
            let hint = hint_for_value(&exact);
            Ok((weak_op(op, &x, &y, &hint, path)?, exact))
        }
    }
}

pub fn evaluate(e: &Expr, opts: &EvalOptions) -> Result<Evaluation, ExprError> {
    let exact = e.value()?;
    let Some((op, a, b, negate)) = binary(e) else {
        if opts.hint.is_some() {
            return Err(ExprError::HintNotApplicable);
        }
        let (value, exact) = eval_node(e, opts.path)?;
        return Ok(Evaluation {
            value,
            exact,
            hint: None,
            traces: None,
        });
    };
    let (x, _) = eval_node(a, opts.path)?;
    let (y, _) = eval_node(b, opts.path)?;
    let y = if negate { y.neg() } else { y };
    let traces = opts.trace.then(|| (ReadTrace::new(), ReadTrace::new()));
    let (x, y) = match &traces {
        Some((l, r)) => (x.with_trace(l), y.with_trace(r)),
        None => (x, y),
    };
    let hint = opts.hint.clone().unwrap_or_else(|| hint_for_value(&exact));
    let value = weak_op(op, &x, &y, &hint, opts.path)?;
    Ok(Evaluation {
        value,
        exact,
        hint: Some(hint),
        traces,
    })
}

/// The p-adic value of `e`. Literals may have `p` in the denominator.
pub fn evaluate_padic(e: &Expr, p: u32) -> Result<PAdic, ExprError> {
    Ok(match e {
        Expr::Lit(q) => padic_from_rational_with_min_order(p, q, i64::MIN)?,
        Expr::Neg(a) => padic_neg(&evaluate_padic(a, p)?),
        Expr::Recip(_) => padic_from_rational_with_min_order(p, &e.value()?, i64::MIN)?,
        Expr::Add(a, b) => padic_add(&evaluate_padic(a, p)?, &evaluate_padic(b, p)?)?,
        Expr::Sub(a, b) => padic_sub(&evaluate_padic(a, p)?, &evaluate_padic(b, p)?)?,
        Expr::Mul(a, b) => padic_mul(&evaluate_padic(a, p)?, &evaluate_padic(b, p)?)?,
    })
}

/// Prime, order, exact value and `digits` digits from the order upward.
pub fn padic_report(a: &PAdic, digits: usize) -> String {
    let mut out = format!("p: {}\norder: {}", a.prime(), a.order());
    if let Some(q) = a.exact_value() {
        out.push_str(&format!("\nvalue: {}", literal::format(q, 64)));
    }
    out.push_str(&format!("\ndigits: {}", a.render(digits)));
    out
}
