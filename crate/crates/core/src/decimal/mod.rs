//! Decimals as signed digit words, with terminating and false decimals,
//! truncation, the order `<_R` and digitwise suprema of finite sets.

mod order;
mod sup;
mod term;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::literal::{self, LiteralError};
use crate::rational::{order_of, BigRat, DecFrac};
use crate::trace::ReadTrace;

pub use order::{compare, compare_words, Comparison, SeparationWitness};
pub use sup::{inf_finite, inf_finite_real, sup_finite, sup_finite_real, Supremum};
pub use term::{bar, bar_inv, ExtDecimal, FalseDecimal, TermDecimal};

/// A decimal digit, `0..=9`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digit(u8);

impl Digit {
    pub const ZERO: Digit = Digit(0);
    pub const NINE: Digit = Digit(9);

    pub fn new(value: u8) -> Option<Self> {
        (value <= 9).then_some(Digit(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign of a product.
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Read access to a signed digit word `(-) sum d_n 10^n`, `n <= order`.
///
/// Digits above the order read as zero.
pub trait DigitWord {
    fn sign(&self) -> Sign;
    fn order(&self) -> i64;
    fn digit_at(&self, n: i64) -> Digit;
}

/// The digits at positions `top, top-1, ...`, `count` of them.
pub fn digits_from<W: DigitWord + ?Sized>(w: &W, top: i64, count: usize) -> Vec<u8> {
    (0..count as i64).map(|i| w.digit_at(top - i).value()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    LeadingZero,
    NineTail,
    NegativeZero,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::LeadingZero => "zero leading digit with positive order",
            Condition::NineTail => "run of 9s without an escape",
            Condition::NegativeZero => "minus sign on an all-zero word",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecimalError {
    #[error("invariant violated at position {position}: {condition}")]
    InvariantViolation { position: i64, condition: Condition },
    #[error("empty set")]
    EmptySet,
    #[error("order must be nonnegative, got {0}")]
    NegativeOrder(i64),
    #[error(transparent)]
    Literal(#[from] LiteralError),
}

type Producer = Arc<dyn Fn(i64) -> u8 + Send + Sync>;

/// For each position `n`, a lower position whose digit is not 9.
#[derive(Clone)]
pub struct NineEscapeWitness(Arc<dyn Fn(i64) -> i64 + Send + Sync>);

impl NineEscapeWitness {
    pub fn new(f: impl Fn(i64) -> i64 + Send + Sync + 'static) -> Self {
        NineEscapeWitness(Arc::new(f))
    }

    pub fn escape(&self, n: i64) -> i64 {
        (self.0)(n)
    }

    fn scanning(producer: Producer) -> Self {
        NineEscapeWitness::new(move |n| {
            let mut m = n - 1;
            while producer(m) == 9 {
                m -= 1;
            }
            m
        })
    }
}

impl fmt::Debug for NineEscapeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("NineEscapeWitness")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackingKind {
    Terminating,
    Rational,
    Stream,
}

#[derive(Clone)]
enum Backing {
    Terminating(TermDecimal),
    Rational { value: BigRat, magnitude: BigRat },
    Stream { producer: Producer, escape: NineEscapeWitness },
}

/// A decimal `(-) sum_{n <= k} d_n 10^n`.
///
/// Digits come from a terminating decimal, from exact long division of a
/// rational, or from a digit producer carrying a nine-escape witness. A
/// decimal may carry a [`ReadTrace`]; every digit read is then recorded at
/// depth `-n`, and exact shortcuts are disabled.
#[derive(Clone)]
pub struct Decimal {
    sign: Sign,
    order: i64,
    backing: Backing,
    trace: Option<ReadTrace>,
}

impl Decimal {
    pub fn zero() -> Self {
        Self::from_term(TermDecimal::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_term(TermDecimal::from_decfrac(&DecFrac::from_integer(n)))
    }

    pub fn from_term(t: TermDecimal) -> Self {
        Decimal {
            sign: t.sign(),
            order: t.order(),
            backing: Backing::Terminating(t),
            trace: None,
        }
    }

    pub fn from_decfrac(f: &DecFrac) -> Self {
        Self::from_term(TermDecimal::from_decfrac(f))
    }

    /// The decimal expansion of `q`, digits by long division.
    pub fn from_rational(q: BigRat) -> Self {
        let sign = if q.is_negative() { Sign::Minus } else { Sign::Plus };
        Decimal {
            sign,
            order: order_of(&q),
            backing: Backing::Rational {
                magnitude: q.abs(),
                value: q,
            },
            trace: None,
        }
    }

    /// A decimal given by a digit producer for positions `n <= order`.
    ///
    /// The producer must return values in `0..=9`. Nothing else is checked
    /// here; see [`Decimal::validate_prefix`].
    pub fn from_stream(
        sign: Sign,
        order: i64,
        producer: impl Fn(i64) -> u8 + Send + Sync + 'static,
        escape: NineEscapeWitness,
    ) -> Result<Self, DecimalError> {
        if order < 0 {
            return Err(DecimalError::NegativeOrder(order));
        }
        Ok(Decimal {
            sign,
            order,
            backing: Backing::Stream {
                producer: Arc::new(producer),
                escape,
            },
            trace: None,
        })
    }

    /// Like [`Decimal::from_stream`], with an escape witness that scans down
    /// for the next digit other than 9. Only valid for words without a 9-tail.
    pub fn from_stream_scanning(
        sign: Sign,
        order: i64,
        producer: impl Fn(i64) -> u8 + Send + Sync + 'static,
    ) -> Result<Self, DecimalError> {
        let producer: Producer = Arc::new(producer);
        let escape = NineEscapeWitness::scanning(producer.clone());
        let p = producer.clone();
        Self::from_stream(sign, order, move |n| p(n), escape)
    }

    /// Caches produced digits. Has no effect on exact backings.
    pub fn memoized(self) -> Self {
        let Backing::Stream { producer, escape } = self.backing else {
            return self;
        };
        let cache: Arc<Mutex<HashMap<i64, u8>>> = Arc::default();
        let memo: Producer = Arc::new(move |n| {
            if let Some(&d) = cache.lock().expect("digit cache").get(&n) {
                return d;
            }
            let d = producer(n);
            cache.lock().expect("digit cache").insert(n, d);
            d
        });
        Decimal {
            backing: Backing::Stream {
                producer: memo,
                escape,
            },
            ..self
        }
    }

    /// A copy whose digit reads are recorded in `trace`.
    pub fn with_trace(&self, trace: &ReadTrace) -> Self {
        Decimal {
            trace: Some(trace.clone()),
            ..self.clone()
        }
    }

    pub fn without_trace(&self) -> Self {
        Decimal {
            trace: None,
            ..self.clone()
        }
    }

    pub fn is_traced(&self) -> bool {
        self.trace.is_some()
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// The digit at `10^n`; zero above the order.
    pub fn digit_at(&self, n: i64) -> Digit {
        if let Some(t) = &self.trace {
            t.record(-n);
        }
        Digit(self.raw_digit(n))
    }

    pub fn backing_kind(&self) -> BackingKind {
        match self.backing {
            Backing::Terminating(_) => BackingKind::Terminating,
            Backing::Rational { .. } => BackingKind::Rational,
            Backing::Stream { .. } => BackingKind::Stream,
        }
    }

    /// The exact value, when the backing provides one and no trace is attached.
    pub fn exact_value(&self) -> Option<BigRat> {
        if self.trace.is_some() {
            return None;
        }
        match &self.backing {
            Backing::Terminating(t) => Some(t.to_decfrac().to_rat()),
            Backing::Rational { value, .. } => Some(value.clone()),
            Backing::Stream { .. } => None,
        }
    }

    pub fn is_zero_exact(&self) -> Option<bool> {
        self.exact_value().map(|q| q.is_zero())
    }

    fn is_exact_zero_backing(&self) -> bool {
        match &self.backing {
            Backing::Terminating(t) => t.is_zero(),
            Backing::Rational { value, .. } => value.is_zero(),
            Backing::Stream { .. } => false,
        }
    }

    /// True for terminating decimals, when that is decidable.
    pub fn is_terminating_exact(&self) -> Option<bool> {
        self.exact_value().map(|q| q.is_terminating())
    }

    fn raw_digit(&self, n: i64) -> u8 {
        if n > self.order {
            return 0;
        }
        match &self.backing {
            Backing::Terminating(t) => t.digit_at(n).value(),
            Backing::Rational { magnitude, .. } => {
                let units = magnitude.floor_in_units(n);
                units.mod_floor(&BigInt::from(10u32)).to_u8().expect("digit")
            }
            Backing::Stream { producer, .. } => {
                let d = producer(n);
                assert!(d <= 9, "digit producer returned {d} at position {n}");
                d
            }
        }
    }

    /// The position below `n` of a digit other than 9.
    pub fn nine_escape(&self, n: i64) -> i64 {
        match &self.backing {
            Backing::Stream { escape, .. } => escape.escape(n),
            _ => {
                let mut m = n - 1;
                while self.digit_at(m).value() == 9 {
                    m -= 1;
                }
                m
            }
        }
    }

    /// Negation within the decimals; zero is fixed.
    pub fn neg(&self) -> Self {
        let backing = match &self.backing {
            Backing::Terminating(t) => Backing::Terminating(t.neg()),
            Backing::Rational { value, magnitude } => Backing::Rational {
                value: -value,
                magnitude: magnitude.clone(),
            },
            s @ Backing::Stream { .. } => s.clone(),
        };
        let sign = if self.is_exact_zero_backing() {
            Sign::Plus
        } else {
            self.sign.flip()
        };
        Decimal {
            sign,
            order: self.order,
            backing,
            trace: self.trace.clone(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign == Sign::Plus {
            return self.clone();
        }
        self.neg()
    }

    /// The truncation `d|m`: digits down to `10^{-m}`.
    pub fn truncate(&self, m: u64) -> TermDecimal {
        let low = -(m as i64);
        if self.trace.is_none() {
            let magnitude = match &self.backing {
                Backing::Terminating(t) => Some(t.abs().to_decfrac().to_rat()),
                Backing::Rational { magnitude, .. } => Some(magnitude.clone()),
                Backing::Stream { .. } => None,
            };
            if let Some(mag) = magnitude {
                let mant = mag.floor_in_units(low);
                let mant = if self.sign == Sign::Minus { -mant } else { mant };
                return TermDecimal::from_decfrac(&DecFrac::new(mant, low));
            }
        }
        if low > self.order {
            return TermDecimal::zero();
        }
        let count = (self.order - low + 1) as usize;
        TermDecimal::from_digits(self.sign, self.order, &digits_from(self, self.order, count))
    }

    /// `r(d|m)`.
    pub fn truncation_value(&self, m: u64) -> DecFrac {
        self.truncate(m).to_decfrac()
    }

    /// Checks conditions (i)–(iii) on the digits from the order down to
    /// `order - depth`, and nine-escape witnesses at every 9 in that window.
    pub fn validate_prefix(&self, depth: u64) -> Result<PrefixReport, DecimalError> {
        let top = self.order;
        let bottom = top - depth as i64;
        let digits = digits_from(self, top, depth as usize + 1);
        let violation = |position, condition| DecimalError::InvariantViolation {
            position,
            condition,
        };
        if top > 0 && digits[0] == 0 {
            return Err(violation(top, Condition::LeadingZero));
        }
        let exact = !matches!(self.backing, Backing::Stream { .. });
        if self.sign == Sign::Minus {
            let zero = if exact {
                self.is_exact_zero_backing()
            } else {
                digits.iter().all(|&d| d == 0)
            };
            if zero {
                return Err(violation(bottom, Condition::NegativeZero));
            }
        }
        if !exact {
            let nines = (0..digits.len()).rev().filter(|&i| digits[i] == 9);
            for i in nines {
                let n = top - i as i64;
                let m = self.nine_escape(n);
                if m >= n || self.digit_at(m).value() == 9 {
                    return Err(violation(n, Condition::NineTail));
                }
            }
        }
        Ok(PrefixReport {
            top,
            bottom,
            backing: self.backing_kind(),
        })
    }

    /// Sign, integer digits, and `frac_digits` digits after the point.
    pub fn to_fixed_string(&self, frac_digits: u64) -> String {
        let mut s = String::new();
        if self.sign == Sign::Minus {
            s.push('-');
        }
        for n in (0..=self.order).rev() {
            s.push(char::from(b'0' + self.digit_at(n).value()));
        }
        if frac_digits > 0 {
            s.push('.');
            for n in 1..=frac_digits as i64 {
                s.push(char::from(b'0' + self.digit_at(-n).value()));
            }
        }
        s
    }
}

impl DigitWord for Decimal {
    fn sign(&self) -> Sign {
        Decimal::sign(self)
    }

    fn order(&self) -> i64 {
        Decimal::order(self)
    }

    fn digit_at(&self, n: i64) -> Digit {
        Decimal::digit_at(self, n)
    }
}

impl fmt::Debug for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plain = self.without_trace();
        match &self.backing {
            Backing::Terminating(t) => write!(f, "Decimal({t})"),
            Backing::Rational { value, .. } => write!(f, "Decimal({value})"),
            Backing::Stream { .. } => write!(f, "Decimal({}...)", plain.to_fixed_string(12)),
        }
    }
}

impl FromStr for Decimal {
    type Err = DecimalError;

    /// Decimal literals with an optional repeating block, or `a/b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Decimal::from_rational(literal::parse(s)?))
    }
}

impl From<TermDecimal> for Decimal {
    fn from(t: TermDecimal) -> Self {
        Decimal::from_term(t)
    }
}

impl From<BigRat> for Decimal {
    fn from(q: BigRat) -> Self {
        Decimal::from_rational(q)
    }
}

/// Outcome of [`Decimal::validate_prefix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixReport {
    pub top: i64,
    pub bottom: i64,
    pub backing: BackingKind,
}
