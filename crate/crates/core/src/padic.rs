//! Streaming p-adic numbers.
//!
//! A p-adic number is `sum_{n >= k} a_n p^n` with digits in `0..p` and order
//! `k <= 0`. Digits are produced in increasing position with carries moving
//! upward, so the digit at `p^n` of a sum reads operand digits only at
//! positions up to `n`.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::encoding::{bin_lsb_encode, read_bin, Alphabet, EncodingError, InfWord, Letter};
use crate::rational::BigRat;
use crate::trace::ReadTrace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PAdicError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("operands use different primes {left} and {right}")]
    PrimeMismatch { left: u32, right: u32 },
    #[error("denominator divisible by {p} beyond the allowed order")]
    DenominatorDivisibleByP { p: u32 },
    #[error("order {0} is positive")]
    PositiveOrder(i64),
    #[error("zero digit at the negative order {order}")]
    LeadingZero { order: i64 },
    #[error(transparent)]
    Encoding(#[from] EncodingError),
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|i| i * i <= p).all(|i| !p.is_multiple_of(i))
}

fn check_prime(p: u32) -> Result<(), PAdicError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(PAdicError::NotPrime(p))
    }
}

struct Stream {
    produce: Box<dyn FnMut() -> u32 + Send>,
    memo: Vec<u32>,
}

/// A p-adic number as a memoized digit stream.
///
/// `start` is the lowest position that may hold a nonzero digit. It equals
/// the order for numbers built from rationals or digit functions. For sums
/// it is the smaller operand order and [`PAdic::order`] finds the true one.
#[derive(Clone)]
pub struct PAdic {
    p: u32,
    start: i64,
    stream: Arc<Mutex<Stream>>,
    trace: Option<ReadTrace>,
    exact: Option<BigRat>,
}

impl PAdic {
    fn from_producer(p: u32, start: i64, produce: impl FnMut() -> u32 + Send + 'static, exact: Option<BigRat>) -> Self {
        PAdic {
            p,
            start,
            stream: Arc::new(Mutex::new(Stream {
                produce: Box::new(produce),
                memo: Vec::new(),
            })),
            trace: None,
            exact,
        }
    }

    pub fn zero(p: u32) -> Result<Self, PAdicError> {
        padic_from_rational(p, &BigRat::zero())
    }

    pub fn one(p: u32) -> Result<Self, PAdicError> {
        padic_from_rational(p, &BigRat::one())
    }

    /// The number with order `order` and digit `digits(n)` at `p^n`.
    ///
    /// Panics on first read of a digit outside `0..p`.
    pub fn from_digits(p: u32, order: i64, digits: impl Fn(i64) -> u32 + Send + Sync + 'static) -> Result<Self, PAdicError> {
        check_prime(p)?;
        if order > 0 {
            return Err(PAdicError::PositiveOrder(order));
        }
        if order < 0 && digits(order) == 0 {
            return Err(PAdicError::LeadingZero { order });
        }
        let mut n = order;
        Ok(PAdic::from_producer(
            p,
            order,
            move || {
                let d = digits(n);
                assert!(d < p, "digit {d} at position {n} is not below {p}");
                n += 1;
                d
            },
            None,
        ))
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Digit at `p^n`, recorded on the trace as `n`.
    pub fn digit(&self, n: i64) -> u32 {
        if let Some(t) = &self.trace {
            t.record(n);
        }
        if n < self.start {
            return 0;
        }
        let idx = (n - self.start) as usize;
        let mut s = self.stream.lock().expect("digit stream poisoned");
        while s.memo.len() <= idx {
            let d = (s.produce)();
            s.memo.push(d);
        }
        s.memo[idx]
    }

    /// Digits at `p^from, ..., p^(from+count-1)`.
    pub fn digits(&self, from: i64, count: usize) -> Vec<u32> {
        (from..from + count as i64).map(|n| self.digit(n)).collect()
    }

    /// The least `j <= 0` with a nonzero digit, or `0` if there is none.
    /// Scans positions `start..=0`, so it always terminates.
    pub fn order(&self) -> i64 {
        (self.start..0).find(|&n| self.digit(n) != 0).unwrap_or(0)
    }

    pub fn exact_value(&self) -> Option<&BigRat> {
        self.exact.as_ref()
    }

    pub fn with_trace(&self, trace: &ReadTrace) -> Self {
        PAdic {
            trace: Some(trace.clone()),
            ..self.clone()
        }
    }

    pub fn traced(&self) -> (Self, ReadTrace) {
        let t = ReadTrace::new();
        (self.with_trace(&t), t)
    }

    pub fn without_trace(&self) -> Self {
        PAdic {
            trace: None,
            ..self.clone()
        }
    }

    /// `count` digits from the order upward, space separated.
    pub fn render(&self, count: usize) -> String {
        let k = self.order();
        self.digits(k, count)
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PAdic(p = {}, start = {}", self.p, self.start)?;
        if let Some(q) = &self.exact {
            write!(f, ", value = {q}")?;
        }
        f.write_str(")")
    }
}

fn same_prime(a: &PAdic, b: &PAdic) -> Result<u32, PAdicError> {
    if a.p == b.p {
        Ok(a.p)
    } else {
        Err(PAdicError::PrimeMismatch { left: a.p, right: b.p })
    }
}

fn both_exact(a: &PAdic, b: &PAdic, op: impl Fn(&BigRat, &BigRat) -> BigRat) -> Option<BigRat> {
    Some(op(a.exact.as_ref()?, b.exact.as_ref()?))
}

/// Digitwise sum with carries in `{0, 1}`.
pub fn padic_add(a: &PAdic, b: &PAdic) -> Result<PAdic, PAdicError> {
    let p = same_prime(a, b)?;
    let start = a.start.min(b.start);
    let exact = both_exact(a, b, |x, y| x + y);
    let (a, b) = (a.clone(), b.clone());
    let mut n = start;
    let mut carry = 0u32;
    Ok(PAdic::from_producer(
        p,
        start,
        move || {
            let raw = u64::from(a.digit(n)) + u64::from(b.digit(n)) + u64::from(carry);
            n += 1;
            carry = u32::from(raw >= u64::from(p));
            (raw % u64::from(p)) as u32
        },
        exact,
    ))
}

/// Additive inverse: the lowest nonzero digit `d` becomes `p - d` and every
/// later digit `d` becomes `p - 1 - d`.
pub fn padic_neg(a: &PAdic) -> PAdic {
    let p = a.p;
    let exact = a.exact.as_ref().map(|q| -q.clone());
    let a = a.clone();
    let mut n = a.start;
    let mut borrowed = false;
    PAdic::from_producer(
        p,
        a.start,
        move || {
            let d = a.digit(n);
            n += 1;
            if borrowed {
                p - 1 - d
            } else if d == 0 {
                0
            } else {
                borrowed = true;
                p - d
            }
        },
        exact,
    )
}

pub fn padic_sub(a: &PAdic, b: &PAdic) -> Result<PAdic, PAdicError> {
    padic_add(a, &padic_neg(b))
}

/// Product by column convolution: column `t` adds `a_i b_j` over `i + j = t`
/// (positions relative to each operand's start) to the incoming carry.
///
/// The digit at `p^n` reads `a` up to `n - b.start()` and `b` up to
/// `n - a.start()`, which is `n` when both orders are zero.
pub fn padic_mul(a: &PAdic, b: &PAdic) -> Result<PAdic, PAdicError> {
    let p = same_prime(a, b)?;
    let start = a.start + b.start;
    let exact = both_exact(a, b, |x, y| x * y);
    let (a, b) = (a.clone(), b.clone());
    let mut xs: Vec<u128> = Vec::new();
    let mut ys: Vec<u128> = Vec::new();
    let mut carry: u128 = 0;
    Ok(PAdic::from_producer(
        p,
        start,
        move || {
            let t = xs.len();
            xs.push(u128::from(a.digit(a.start + t as i64)));
            ys.push(u128::from(b.digit(b.start + t as i64)));
            let column: u128 = (0..=t).map(|i| xs[i] * ys[t - i]).sum::<u128>() + carry;
            carry = column / u128::from(p);
            (column % u128::from(p)) as u32
        },
        exact,
    ))
}

/// p-adic valuation of a nonzero integer, and the integer with `p` removed.
fn strip(mut x: BigInt, p: &BigInt) -> (i64, BigInt) {
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return (v, x);
        }
        x = q;
        v += 1;
    }
}

/// The expansion of `q`; the denominator must be prime to `p`.
pub fn padic_from_rational(p: u32, q: &BigRat) -> Result<PAdic, PAdicError> {
    padic_from_rational_with_min_order(p, q, 0)
}

/// The expansion of `q`, allowing a factor `p^m` in the denominator with
/// `-m >= min_order`.
pub fn padic_from_rational_with_min_order(p: u32, q: &BigRat, min_order: i64) -> Result<PAdic, PAdicError> {
    check_prime(p)?;
    let pb = BigInt::from(p);
    if q.is_zero() {
        return Ok(PAdic::from_producer(p, 0, || 0, Some(BigRat::zero())));
    }
    let (vn, num) = strip(q.numer().clone(), &pb);
    let (vd, den) = strip(q.denom().clone(), &pb);
    let v = vn - vd;
    if v < min_order {
        return Err(PAdicError::DenominatorDivisibleByP { p });
    }
    let start = v.min(0);
    // x = num * p^(v - start) / den, with den prime to p
    let mut a = num * pb.pow((v - start) as u32);
    let inv = den
        .extended_gcd(&pb)
        .x
        .mod_floor(&pb);
    debug_assert!((&den * &inv).mod_floor(&pb).is_one());
    Ok(PAdic::from_producer(
        p,
        start,
        move || {
            let d = (a.mod_floor(&pb) * &inv).mod_floor(&pb);
            a = (&a - &d * &den) / &pb;
            d.to_u32().expect("digit below p")
        },
        Some(q.clone()),
    ))
}

/// The canonical encoding: `|k|` in LSB-first binary, ξ, then
/// `a_k a_{k+1} ...`. Building the word reads digits down to the order,
/// which is at most position `0`.
pub fn padic_encode(a: &PAdic) -> InfWord {
    let k = a.order();
    let mut header = bin_lsb_encode(k.unsigned_abs());
    header.push(Letter::Xi);
    let h = header.len() as u64;
    let aa = a.clone();
    InfWord::new(Alphabet::padic(a.p), move |m| {
        if m < h {
            header[m as usize]
        } else {
            Letter::Digit(aa.digit(k + (m - h) as i64))
        }
    })
    .with_exact(a.exact.clone())
}

/// Inverse of [`padic_encode`]. The header is read now; each digit reads
/// one letter when asked for and panics if that letter is not a digit
/// below `p`.
pub fn padic_decode(p: u32, w: &InfWord) -> Result<PAdic, PAdicError> {
    check_prime(p)?;
    let (abs_k, body) = read_bin(w, 0)?;
    let order = -(abs_k as i64);
    let ww = w.clone();
    let digit = move |n: i64| match ww.letter(body + (n - order) as u64) {
        Letter::Digit(v) if v < p => v,
        l => panic!("letter {l} is not a base-{p} digit"),
    };
    let mut padic = PAdic::from_digits(p, order, digit)?;
    padic.exact = w.exact_value().cloned();
    Ok(padic)
}

/// Value of the digits at `p^start, ..., p^(start+count-1)` as an integer,
/// i.e. `p^(-start) a mod p^count`.
pub fn scaled_residue(a: &PAdic, count: usize) -> BigInt {
    let pb = BigInt::from(a.p);
    a.digits(a.start, count)
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, &d| acc * &pb + d)
}
