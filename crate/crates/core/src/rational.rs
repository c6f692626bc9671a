//! Exact scalars: arbitrary-precision rationals and the ring of terminating
//! decimal fractions `mant * 10^exp`.
//!
//! Everything else in the crate is checked against these types, so nothing
//! here ever rounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("division by zero")]
    ZeroDivision,
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: &'static str },
}

/// `10^n` as a big integer.
pub fn pow10(n: u64) -> BigInt {
    let n = u32::try_from(n).expect("power of ten exponent out of range");
    BigInt::from(10u32).pow(n)
}

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BigRat(BigRational);

impl BigRat {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, RationalError> {
        if den.is_zero() {
            return Err(RationalError::ZeroDivision);
        }
        Ok(BigRat(BigRational::new(num, den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        BigRat(BigRational::from_integer(n.into()))
    }

    /// Convenience constructor for small literals; panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num.into(), den.into()).expect("zero denominator")
    }

    pub fn zero() -> Self {
        BigRat(BigRational::zero())
    }

    pub fn one() -> Self {
        BigRat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        BigRat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, RationalError> {
        if self.is_zero() {
            return Err(RationalError::ZeroDivision);
        }
        Ok(BigRat(self.0.recip()))
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    /// `floor(self * 10^(-n))`, i.e. the value measured in units of `10^n`.
    pub fn floor_in_units(&self, n: i64) -> BigInt {
        let (num, den) = scaled_parts(self, n);
        num.div_floor(&den)
    }

    /// True when the reduced denominator divides a power of ten.
    pub fn is_terminating(&self) -> bool {
        strip_2_5(self.denom()).is_one()
    }

    /// Multiply by `10^n` for any integer `n`.
    pub fn mul_pow10(&self, n: i64) -> Self {
        let p = pow10(n.unsigned_abs());
        if n >= 0 {
            BigRat(BigRational::new(self.numer() * p, self.denom().clone()))
        } else {
            BigRat(BigRational::new(self.numer().clone(), self.denom() * p))
        }
    }
}

fn scaled_parts(q: &BigRat, n: i64) -> (BigInt, BigInt) {
    let p = pow10(n.unsigned_abs());
    if n >= 0 {
        (q.numer().clone(), q.denom() * p)
    } else {
        (q.numer() * p, q.denom().clone())
    }
}

fn strip_2_5(den: &BigInt) -> BigInt {
    let mut d = den.abs();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    while !d.is_zero() && d.is_even() {
        d /= &two;
    }
    while !d.is_zero() && (&d % &five).is_zero() {
        d /= &five;
    }
    d
}

impl fmt::Debug for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// Text form `num/den`, always with an explicit denominator.
impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// Accepts `num/den` or a bare integer.
impl FromStr for BigRat {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason| RationalError::Parse {
            input: s.to_string(),
            reason,
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        if !is_signed_int(num) || !den.bytes().all(|b| b.is_ascii_digit()) || den.is_empty() {
            return Err(bad("expected [-]int/posint"));
        }
        let num: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
        let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
        BigRat::new(num, den)
    }
}

fn is_signed_int(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&BigRat> for &BigRat {
            type Output = BigRat;
            fn $m(self, rhs: &BigRat) -> BigRat {
                BigRat((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<BigRat> for BigRat {
            type Output = BigRat;
            fn $m(self, rhs: BigRat) -> BigRat {
                BigRat(self.0.$m(rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl Neg for BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-self.0)
    }
}

impl Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-&self.0)
    }
}

/// An element of the ring of terminating decimal fractions, `mant * 10^exp`.
///
/// Canonical form: zero is `(0, 0)`; otherwise `mant` is not divisible by 10.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecFrac {
    mant: BigInt,
    exp: i64,
}

impl DecFrac {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = DecFrac { mant, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        DecFrac {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::new(n.into(), 0)
    }

    /// `10^n`.
    pub fn pow10(n: i64) -> Self {
        DecFrac {
            mant: BigInt::one(),
            exp: n,
        }
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let ten = BigInt::from(10u32);
        loop {
            let (q, r) = self.mant.div_rem(&ten);
            if !r.is_zero() {
                break;
            }
            self.mant = q;
            self.exp += 1;
        }
    }

    /// Returns a canonical copy. Idempotent.
    pub fn normalized(&self) -> Self {
        Self::new(self.mant.clone(), self.exp)
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        DecFrac {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn to_rat(&self) -> BigRat {
        BigRat::from_integer(self.mant.clone()).mul_pow10(self.exp)
    }

    /// The decimal fraction equal to `q`, if `q`'s denominator divides a power of ten.
    pub fn try_from_rat(q: &BigRat) -> Option<Self> {
        let den = q.denom();
        let two = BigInt::from(2u32);
        let five = BigInt::from(5u32);
        let mut d = den.clone();
        let (mut a, mut b) = (0u64, 0u64);
        while d.is_even() {
            d /= &two;
            a += 1;
        }
        while (&d % &five).is_zero() {
            d /= &five;
            b += 1;
        }
        if !d.is_one() {
            return None;
        }
        let e = a.max(b);
        let scale = pow10(e) / den;
        Some(Self::new(q.numer() * scale, -(e as i64)))
    }

    /// `floor(self / 10^n)`.
    pub fn floor_in_units(&self, n: i64) -> BigInt {
        let shift = self.exp - n;
        if shift >= 0 {
            &self.mant * pow10(shift as u64)
        } else {
            self.mant.div_floor(&pow10(shift.unsigned_abs()))
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        let a = &self.mant * pow10((self.exp - e) as u64);
        let b = &other.mant * pow10((other.exp - e) as u64);
        (a, b, e)
    }
}

impl fmt::Debug for DecFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DecFrac({}e{})", self.mant, self.exp)
    }
}

/// Plain decimal literal, e.g. `-20.3`, `0.0005`, `1200`.
impl fmt::Display for DecFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mant.magnitude().to_string();
        let sign = if self.mant.is_negative() { "-" } else { "" };
        if self.exp >= 0 {
            let zeros = "0".repeat(self.exp as usize);
            return write!(f, "{sign}{digits}{zeros}");
        }
        let frac_len = self.exp.unsigned_abs() as usize;
        if digits.len() > frac_len {
            let (int, frac) = digits.split_at(digits.len() - frac_len);
            write!(f, "{sign}{int}.{frac}")
        } else {
            let pad = "0".repeat(frac_len - digits.len());
            write!(f, "{sign}0.{pad}{digits}")
        }
    }
}

impl FromStr for DecFrac {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason| RationalError::Parse {
            input: s.to_string(),
            reason,
        };
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("expected digits before the point"));
        }
        if !frac.bytes().all(|b| b.is_ascii_digit()) || (body.contains('.') && frac.is_empty()) {
            return Err(bad("expected digits after the point"));
        }
        let mut mant: BigInt = format!("{int}{frac}").parse().map_err(|_| bad("bad digits"))?;
        if neg {
            mant = -mant;
        }
        Ok(DecFrac::new(mant, -(frac.len() as i64)))
    }
}

impl Ord for DecFrac {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for DecFrac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&DecFrac> for &DecFrac {
    type Output = DecFrac;
    fn add(self, rhs: &DecFrac) -> DecFrac {
        let (a, b, e) = self.aligned(rhs);
        DecFrac::new(a + b, e)
    }
}

impl Sub<&DecFrac> for &DecFrac {
    type Output = DecFrac;
    fn sub(self, rhs: &DecFrac) -> DecFrac {
        let (a, b, e) = self.aligned(rhs);
        DecFrac::new(a - b, e)
    }
}

impl Mul<&DecFrac> for &DecFrac {
    type Output = DecFrac;
    fn mul(self, rhs: &DecFrac) -> DecFrac {
        DecFrac::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }
}

impl Neg for &DecFrac {
    type Output = DecFrac;
    fn neg(self) -> DecFrac {
        DecFrac {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

macro_rules! decfrac_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<DecFrac> for DecFrac {
            type Output = DecFrac;
            fn $m(self, rhs: DecFrac) -> DecFrac {
                (&self).$m(&rhs)
            }
        }
    };
}

decfrac_owned!(Add, add);
decfrac_owned!(Sub, sub);
decfrac_owned!(Mul, mul);

impl Neg for DecFrac {
    type Output = DecFrac;
    fn neg(self) -> DecFrac {
        -&self
    }
}

/// A terminating decimal `b` with `|a*b - 1| < 1/k`.
///
/// Writes `a = m/n`, takes the least `l >= 1` with `|m| * k < 10^l` and the
/// integer `p` nearest to `10^l / m` (ties toward the smaller `|p|`), and
/// returns `p * n / 10^l`. The error is then `|p*m - 10^l| / 10^l <= |m| / (2*10^l)`.
pub fn approx_recip(a: &BigRat, k: &BigUint) -> Result<DecFrac, RationalError> {
    if a.is_zero() {
        return Err(RationalError::ZeroDivision);
    }
    if k.is_zero() {
        return Err(RationalError::InvalidArgument("precision k must be positive"));
    }
    let m = a.numer();
    let n = a.denom();
    let bound = BigInt::from_biguint(BigSign::Plus, m.magnitude() * k);
    let mut l = 1u64;
    let mut ten_l = BigInt::from(10u32);
    while ten_l <= bound {
        ten_l *= 10u32;
        l += 1;
    }
    let m_abs = m.abs();
    let (q, r) = ten_l.div_rem(&m_abs);
    let p_abs = if (&r * 2u32) > m_abs { q + 1u32 } else { q };
    let p = if m.is_negative() { -p_abs } else { p_abs };
    Ok(DecFrac::new(p * n, -(l as i64)))
}

/// Number of decimal digits in the integer part of `|q|` minus one, floored
/// at zero: the order of the decimal expansion of `q`.
pub(crate) fn order_of(q: &BigRat) -> i64 {
    let int = q.abs().floor();
    if int.is_zero() {
        0
    } else {
        int.to_string().len() as i64 - 1
    }
}
