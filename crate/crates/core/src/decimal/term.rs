use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign as BigSign};
use num_traits::Zero;

use super::{Decimal, Digit, DigitWord, Sign};
use crate::rational::{DecFrac, RationalError};

/// A terminating decimal: finitely many nonzero digits.
///
/// Stored as the magnitude's digits, least significant first, together with
/// the position of the lowest stored digit. Zero stores no digits and has a
/// plus sign; the word "-0.000..." is not a terminating decimal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TermDecimal {
    sign: Sign,
    digits: Vec<u8>,
    low: i64,
}

impl TermDecimal {
    pub fn zero() -> Self {
        TermDecimal {
            sign: Sign::Plus,
            digits: Vec::new(),
            low: 0,
        }
    }

    /// `r^{-1}`: the terminating decimal whose value is `f`.
    pub fn from_decfrac(f: &DecFrac) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        let sign = if f.is_negative() { Sign::Minus } else { Sign::Plus };
        let digits = f
            .mant()
            .magnitude()
            .to_string()
            .bytes()
            .rev()
            .map(|b| b - b'0')
            .collect();
        TermDecimal {
            sign,
            digits,
            low: f.exp(),
        }
    }

    /// `r`: the exact value.
    pub fn to_decfrac(&self) -> DecFrac {
        if self.digits.is_empty() {
            return DecFrac::zero();
        }
        let mag: Vec<u8> = self.digits.iter().rev().map(|d| d + b'0').collect();
        let mag = BigInt::parse_bytes(&mag, 10).expect("digit bytes");
        let mant = match self.sign {
            Sign::Plus => mag,
            Sign::Minus => -mag,
        };
        DecFrac::new(mant, self.low)
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Position of the least significant nonzero digit, `None` for zero.
    pub fn lowest_position(&self) -> Option<i64> {
        (!self.digits.is_empty()).then_some(self.low)
    }

    /// Position of the most significant nonzero digit, `None` for zero.
    pub fn leading_position(&self) -> Option<i64> {
        (!self.digits.is_empty()).then(|| self.low + self.digits.len() as i64 - 1)
    }

    /// Negation within the decimals: zero stays zero.
    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        TermDecimal {
            sign: self.sign.flip(),
            ..self.clone()
        }
    }

    pub fn abs(&self) -> Self {
        TermDecimal {
            sign: Sign::Plus,
            ..self.clone()
        }
    }

    pub fn into_decimal(self) -> Decimal {
        Decimal::from_term(self)
    }

    /// Builds from a sign and the digits at positions `top, top-1, ...`,
    /// canonicalizing (leading and trailing zeros dropped, `-0` becomes `0`).
    pub fn from_digits(sign: Sign, top: i64, digits_from_top: &[u8]) -> Self {
        let mut mag = BigInt::zero();
        for &d in digits_from_top {
            mag = mag * 10u32 + u32::from(d);
        }
        let exp = top - digits_from_top.len() as i64 + 1;
        let mant = match sign {
            Sign::Plus => mag,
            Sign::Minus => BigInt::from_biguint(BigSign::Minus, mag.magnitude().clone()),
        };
        Self::from_decfrac(&DecFrac::new(mant, exp))
    }
}

impl DigitWord for TermDecimal {
    fn sign(&self) -> Sign {
        self.sign
    }

    fn order(&self) -> i64 {
        self.leading_position().unwrap_or(0).max(0)
    }

    fn digit_at(&self, n: i64) -> Digit {
        let i = n - self.low;
        if i < 0 || i >= self.digits.len() as i64 {
            return Digit::ZERO;
        }
        Digit::new(self.digits[i as usize]).expect("stored digit")
    }
}

impl fmt::Debug for TermDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TermDecimal({})", self.to_decfrac())
    }
}

impl fmt::Display for TermDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decfrac())
    }
}

impl FromStr for TermDecimal {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Self::from_decfrac(&s.parse()?))
    }
}

/// A false decimal: the 9-tail twin `bar(t)` of a terminating decimal `t`.
///
/// `bar(0)` is the word `-0.000...`. For `t != 0` with lowest nonzero digit
/// at `10^n`, `bar(t)` keeps the digits above `n`, lowers `t_n` by one and
/// puts 9 at every position below `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FalseDecimal {
    base: TermDecimal,
}

impl FalseDecimal {
    /// The preimage under `bar`.
    pub fn base(&self) -> &TermDecimal {
        &self.base
    }

    pub fn is_negative_zero(&self) -> bool {
        self.base.is_zero()
    }
}

/// `bar`: terminating decimals onto false decimals.
pub fn bar(t: &TermDecimal) -> FalseDecimal {
    FalseDecimal { base: t.clone() }
}

/// Inverse of [`bar`].
pub fn bar_inv(f: &FalseDecimal) -> TermDecimal {
    f.base.clone()
}

impl DigitWord for FalseDecimal {
    fn sign(&self) -> Sign {
        if self.base.is_zero() {
            Sign::Minus
        } else {
            self.base.sign()
        }
    }

    fn order(&self) -> i64 {
        let Some(n) = self.base.lowest_position() else {
            return 0;
        };
        let k = self.base.order();
        if n == k && k > 0 && self.base.digit_at(n).value() == 1 {
            k - 1
        } else {
            k
        }
    }

    fn digit_at(&self, m: i64) -> Digit {
        let Some(n) = self.base.lowest_position() else {
            return Digit::ZERO;
        };
        match m.cmp(&n) {
            std::cmp::Ordering::Less => Digit::NINE,
            std::cmp::Ordering::Equal => {
                Digit::new(self.base.digit_at(n).value() - 1).expect("lowest digit is nonzero")
            }
            std::cmp::Ordering::Greater => self.base.digit_at(m),
        }
    }
}

impl fmt::Debug for FalseDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bar({})", self.base)
    }
}

/// An element of the decimals together with the false decimals.
#[derive(Clone, Debug)]
pub enum ExtDecimal {
    Real(Decimal),
    False(FalseDecimal),
}

impl ExtDecimal {
    /// Negation on decimals and false decimals: swaps `0` and `-0.000...`.
    pub fn neg(&self) -> Self {
        match self {
            ExtDecimal::Real(d) if d.is_zero_exact() == Some(true) => {
                ExtDecimal::False(bar(&TermDecimal::zero()))
            }
            ExtDecimal::Real(d) => ExtDecimal::Real(d.neg()),
            ExtDecimal::False(f) if f.is_negative_zero() => ExtDecimal::Real(Decimal::zero()),
            ExtDecimal::False(f) => ExtDecimal::False(bar(&f.base.neg())),
        }
    }

    /// Word equality when it can be decided exactly.
    pub fn exact_eq(&self, other: &Self) -> Option<bool> {
        match (self, other) {
            (ExtDecimal::False(a), ExtDecimal::False(b)) => Some(a == b),
            (ExtDecimal::Real(a), ExtDecimal::Real(b)) => {
                Some(a.exact_value()? == b.exact_value()?)
            }
            _ => Some(false),
        }
    }

    pub fn is_false(&self) -> bool {
        matches!(self, ExtDecimal::False(_))
    }
}

impl DigitWord for ExtDecimal {
    fn sign(&self) -> Sign {
        match self {
            ExtDecimal::Real(d) => d.sign(),
            ExtDecimal::False(f) => f.sign(),
        }
    }

    fn order(&self) -> i64 {
        match self {
            ExtDecimal::Real(d) => d.order(),
            ExtDecimal::False(f) => f.order(),
        }
    }

    fn digit_at(&self, n: i64) -> Digit {
        match self {
            ExtDecimal::Real(d) => d.digit_at(n),
            ExtDecimal::False(f) => f.digit_at(n),
        }
    }
}

impl From<Decimal> for ExtDecimal {
    fn from(d: Decimal) -> Self {
        ExtDecimal::Real(d)
    }
}

impl From<FalseDecimal> for ExtDecimal {
    fn from(f: FalseDecimal) -> Self {
        ExtDecimal::False(f)
    }
}
