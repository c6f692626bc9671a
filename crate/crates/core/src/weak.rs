//! Digit rules for decimal addition and multiplication given a finite hint.
//!
//! The hint carries the order of the result and, when the result
//! terminates, the result itself. With the hint, every output digit is
//! produced from finitely many operand digits.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::decimal::{Decimal, Digit, DigitWord, Sign, TermDecimal};
use crate::encoding::{bin_lsb_decode, bin_lsb_encode, decode_xr, EncodingError, InfWord, Letter};
use crate::rational::{order_of, BigRat, DecFrac};
use crate::trace::ReadTrace;

/// Largest exponent `r` for which `h = (2k+1) 2^r` is materialized.
pub const MAX_HINT_EXPONENT: u64 = 1 << 25;

const TERM: u8 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeakError {
    #[error("malformed hint: {0}")]
    MalformedHint(&'static str),
    #[error("hint integer would need more than 2^25 binary digits; use the factored form")]
    HintTooLarge,
    #[error("oracle unavailable: {0}")]
    OracleUnavailable(&'static str),
    #[error("hint contradicts the operands at 10^{position}")]
    HintMismatch { position: i64 },
    #[error(transparent)]
    MalformedWord(#[from] EncodingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Mul,
}

impl FromStr for Op {
    type Err = WeakError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "add" => Ok(Op::Add),
            "mul" => Ok(Op::Mul),
            _ => Err(WeakError::MalformedHint("operation must be add or mul")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HintPayload {
    NonTerminating,
    Terminating(TermDecimal),
}

/// The order of a result and, if it terminates, the result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hint {
    pub kpp: u64,
    pub payload: HintPayload,
}

impl Hint {
    pub fn non_terminating(kpp: u64) -> Self {
        Hint {
            kpp,
            payload: HintPayload::NonTerminating,
        }
    }

    pub fn terminating(t: TermDecimal) -> Self {
        Hint {
            kpp: t.order() as u64,
            payload: HintPayload::Terminating(t),
        }
    }

    /// `(2 kpp + 1, r)` with `h = (2 kpp + 1) 2^r`.
    pub fn factored(&self) -> (BigUint, BigUint) {
        let odd = BigUint::from(self.kpp) * 2u32 + 1u32;
        let r = match &self.payload {
            HintPayload::NonTerminating => BigUint::zero(),
            HintPayload::Terminating(t) => code(t) + 1u32,
        };
        (odd, r)
    }
}

/// Letters of the significant word of `t` over `0..=10`: sign bit, order
/// bits LSB-first, terminator, digits from the order down to the lowest
/// nonzero digit (a single 0 for zero), terminator.
fn code_word(t: &TermDecimal) -> Vec<u8> {
    let mut w = vec![u8::from(t.sign() == Sign::Minus)];
    for l in bin_lsb_encode(t.order() as u64) {
        w.push(l.digit().expect("bit") as u8);
    }
    w.push(TERM);
    match t.lowest_position() {
        None => w.push(0),
        Some(low) => w.extend((low..=t.order()).rev().map(|n| t.digit_at(n).value())),
    }
    w.push(TERM);
    w
}

/// The code word read as a base-11 numeral, first letter least significant.
fn code(t: &TermDecimal) -> BigUint {
    code_word(t)
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, &l| acc * 11u32 + u32::from(l))
}

fn decode_code(c: &BigUint) -> Result<TermDecimal, WeakError> {
    let bad = WeakError::MalformedHint;
    let mut word = Vec::new();
    let mut rest = c.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&BigUint::from(11u32));
        word.push(r.to_u8().expect("base-11 letter"));
        rest = q;
    }
    let sign = match word.first() {
        Some(0) => Sign::Plus,
        Some(1) => Sign::Minus,
        _ => return Err(bad("payload sign letter")),
    };
    let t1 = word.iter().position(|&l| l == TERM).ok_or(bad("payload terminator"))?;
    let bits: Vec<Letter> = word[1..t1].iter().map(|&b| Letter::Digit(u32::from(b))).collect();
    let order = bin_lsb_decode(&bits).map_err(|_| bad("payload order bits"))?;
    let digits = &word[t1 + 1..];
    let Some((&TERM, digits)) = digits.split_last() else {
        return Err(bad("payload digits"));
    };
    if digits.is_empty() || digits.contains(&TERM) {
        return Err(bad("payload digits"));
    }
    let order = i64::try_from(order).map_err(|_| bad("payload order"))?;
    let t = TermDecimal::from_digits(sign, order, digits);
    if code_word(&t) != word {
        return Err(bad("payload is not canonical"));
    }
    Ok(t)
}

/// `h = (2 kpp + 1) 2^r`, `r = 0` for a non-terminating result and
/// `r = 1 + code(t)` for a terminating result `t`.
pub fn hint_encode(hint: &Hint) -> Result<BigUint, WeakError> {
    if let HintPayload::Terminating(t) = &hint.payload {
        if t.order() as u64 != hint.kpp {
            return Err(WeakError::MalformedHint("payload order differs from kpp"));
        }
    }
    let (odd, r) = hint.factored();
    let r = r.to_u64().filter(|&r| r <= MAX_HINT_EXPONENT).ok_or(WeakError::HintTooLarge)?;
    Ok(odd << r)
}

pub fn hint_decode(h: &BigUint) -> Result<Hint, WeakError> {
    if h.is_zero() {
        return Err(WeakError::MalformedHint("hint must be positive"));
    }
    let r = h.trailing_zeros().expect("nonzero");
    hint_decode_factored(&(h >> r), &BigUint::from(r))
}

/// Decodes `odd * 2^r`.
pub fn hint_decode_factored(odd: &BigUint, r: &BigUint) -> Result<Hint, WeakError> {
    if odd.is_even() {
        return Err(WeakError::MalformedHint("odd factor is even"));
    }
    let kpp = ((odd - 1u32) >> 1u32)
        .to_u64()
        .ok_or(WeakError::MalformedHint("order out of range"))?;
    if r.is_zero() {
        return Ok(Hint::non_terminating(kpp));
    }
    let t = decode_code(&(r - 1u32))?;
    if t.order() as u64 != kpp {
        return Err(WeakError::MalformedHint("payload order differs from kpp"));
    }
    Ok(Hint::terminating(t))
}

/// Parses `h` or `odd*2^r`.
pub fn parse_hint(s: &str) -> Result<Hint, WeakError> {
    let num = |t: &str| {
        t.trim()
            .parse::<BigUint>()
            .map_err(|_| WeakError::MalformedHint("expected a positive integer or odd*2^r"))
    };
    match s.split_once("*2^") {
        Some((odd, r)) => hint_decode_factored(&num(odd)?, &num(r)?),
        None => hint_decode(&num(s)?),
    }
}

impl fmt::Display for Hint {
    /// The factored form `odd*2^r`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (odd, r) = self.factored();
        write!(f, "{odd}*2^{r}")
    }
}

fn exact_operands(d: &Decimal, e: &Decimal) -> Result<(BigRat, BigRat), WeakError> {
    let unavailable = WeakError::OracleUnavailable("hints need exactly known operands");
    Ok((d.exact_value().ok_or(unavailable.clone())?, e.exact_value().ok_or(unavailable)?))
}

/// The hint for `d op e`, computed from the exact operand values.
pub fn compute_hint(op: Op, d: &Decimal, e: &Decimal) -> Result<Hint, WeakError> {
    let (a, b) = exact_operands(d, e)?;
    let f = match op {
        Op::Add => a + b,
        Op::Mul => a * b,
    };
    Ok(hint_for_value(&f))
}

pub(crate) fn hint_for_value(f: &BigRat) -> Hint {
    match DecFrac::try_from_rat(f) {
        Some(t) => Hint::terminating(TermDecimal::from_decfrac(&t)),
        None => Hint::non_terminating(order_of(f) as u64),
    }
}

/// How the magnitudes combine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Combine {
    /// `a + b`
    Sum,
    /// `a - b` with `a > b`
    Difference,
}

/// Digit at `10^n` of `a + b` or `a - b` for nonnegative `a`, `b`, scanning
/// down for the first position that settles the carry or borrow. The scan
/// ends because the result does not terminate.
fn magnitude_digit(how: Combine, a: &Decimal, b: &Decimal, n: i64) -> Digit {
    let (x, y) = (a.digit_at(n).value(), b.digit_at(n).value());
    let mut i = n - 1;
    let v = match how {
        Combine::Sum => loop {
            let s = a.digit_at(i).value() + b.digit_at(i).value();
            if s != 9 {
                break (x + y + u8::from(s > 9)) % 10;
            }
            i -= 1;
        },
        Combine::Difference => loop {
            let (p, q) = (a.digit_at(i).value(), b.digit_at(i).value());
            if p != q {
                break (10 + x - y - u8::from(p < q)) % 10;
            }
            i -= 1;
        },
    };
    Digit::new(v).expect("digit")
}

/// Which of two nonnegative decimals is larger, by scanning digits from the
/// top. Does not return when they are equal.
fn larger_magnitude(a: &Decimal, b: &Decimal) -> std::cmp::Ordering {
    let mut n = a.order().max(b.order());
    loop {
        let (x, y) = (a.digit_at(n).value(), b.digit_at(n).value());
        if x != y {
            return x.cmp(&y);
        }
        n -= 1;
    }
}

/// The sign of `d + e` and the reduction of its magnitude to a sum or a
/// difference of nonnegative decimals.
fn reduce_add(d: &Decimal, e: &Decimal) -> (Sign, Combine, Decimal, Decimal) {
    let (a, b) = (d.abs(), e.abs());
    if d.sign() == e.sign() {
        return (d.sign(), Combine::Sum, a, b);
    }
    match larger_magnitude(&a, &b) {
        std::cmp::Ordering::Less => (e.sign(), Combine::Difference, b, a),
        _ => (d.sign(), Combine::Difference, a, b),
    }
}

/// Digit at `10^n` of `d + e`, for a non-terminating sum.
pub fn add_digit_rule(d: &Decimal, e: &Decimal, n: i64) -> Digit {
    let (_, how, a, b) = reduce_add(d, e);
    magnitude_digit(how, &a, &b, n)
}

/// Best-effort check of the hinted order against the digit rule.
fn check_order(digit: &impl Fn(i64) -> u8, kpp: i64) -> Result<(), WeakError> {
    if digit(kpp + 1) != 0 {
        return Err(WeakError::HintMismatch { position: kpp + 1 });
    }
    if kpp > 0 && digit(kpp) == 0 {
        return Err(WeakError::HintMismatch { position: kpp });
    }
    Ok(())
}

fn stream_result(sign: Sign, kpp: i64, digit: impl Fn(i64) -> u8 + Send + Sync + 'static) -> Decimal {
    Decimal::from_stream_scanning(sign, kpp, digit)
        .expect("order is nonnegative")
        .memoized()
}

/// `d + e` under a trusted hint.
pub fn weak_add(d: &Decimal, e: &Decimal, hint: &Hint) -> Result<Decimal, WeakError> {
    if let HintPayload::Terminating(t) = &hint.payload {
        return Ok(Decimal::from_term(t.clone()));
    }
    let kpp = hint.kpp as i64;
    let (sign, how, a, b) = reduce_add(d, e);
    let digit = move |n| magnitude_digit(how, &a, &b, n).value();
    check_order(&digit, kpp)?;
    Ok(stream_result(sign, kpp, digit))
}

/// The product of the truncations `(d|l)(e|l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTruncation {
    pub l: u64,
    pub value: TermDecimal,
}

pub fn mul_truncation(d: &Decimal, e: &Decimal, l: u64) -> MulTruncation {
    let value = &d.truncation_value(l) * &e.truncation_value(l);
    MulTruncation {
        l,
        value: TermDecimal::from_decfrac(&value),
    }
}

/// Where the truncation products are known to stabilize at `10^n`:
/// `max(1, K - n + 2)` with `K` the larger operand order.
pub fn stabilization_depth(d: &Decimal, e: &Decimal, n: i64) -> u64 {
    let k = d.order().max(e.order());
    (k - n + 2).max(1) as u64
}

fn digit_of(f: &DecFrac, n: i64) -> Digit {
    let c = f.floor_in_units(n);
    Digit::new(c.mod_floor(&10.into()).to_u8().expect("digit")).expect("digit")
}

/// The digit at `10^n` of `f(L_n)` for `d, e >= 0`.
pub fn mul_stabilized_digit(d: &Decimal, e: &Decimal, n: i64) -> Digit {
    let l = stabilization_depth(d, e, n);
    digit_of(&mul_truncation(d, e, l).value.to_decfrac(), n)
}

/// The digit at `10^n` of `d e` for `d, e >= 0` with a non-terminating
/// product, certified by `f(l) <= d e < f(l) + 2 10^{K+1-l}`.
pub fn mul_certified_digit(d: &Decimal, e: &Decimal, n: i64) -> Digit {
    let k = d.order().max(e.order());
    let mut l = stabilization_depth(d, e, n);
    loop {
        let f = mul_truncation(d, e, l).value.to_decfrac();
        let width = &DecFrac::pow10(k + 1 - l as i64) * &DecFrac::from_integer(2);
        let c = f.floor_in_units(n);
        let cell_top = DecFrac::new(c + 1u32, n);
        if &f + &width <= cell_top {
            return digit_of(&f, n);
        }
        l += 1;
    }
}

/// Choice of digit rule for products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MulPath {
    #[default]
    Certified,
    /// `f(L_n)_n`.
    Stabilized,
}

impl FromStr for MulPath {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "certified" => Ok(MulPath::Certified),
            "stabilized" => Ok(MulPath::Stabilized),
            _ => Err(format!("unknown path {s:?}; expected certified or stabilized")),
        }
    }
}

/// `d e` under a trusted hint.
pub fn weak_mul(d: &Decimal, e: &Decimal, hint: &Hint, path: MulPath) -> Result<Decimal, WeakError> {
    if let HintPayload::Terminating(t) = &hint.payload {
        return Ok(Decimal::from_term(t.clone()));
    }
    let kpp = hint.kpp as i64;
    let sign = d.sign().times(e.sign());
    let (a, b) = (d.abs(), e.abs());
    let rule = move |n: i64| match path {
        MulPath::Certified => mul_certified_digit(&a, &b, n).value(),
        MulPath::Stabilized => mul_stabilized_digit(&a, &b, n).value(),
    };
    check_order(&rule, kpp)?;
    Ok(stream_result(sign, kpp, rule))
}

/// `d op e` under a trusted hint.
pub fn weak_op(op: Op, d: &Decimal, e: &Decimal, hint: &Hint, path: MulPath) -> Result<Decimal, WeakError> {
    match op {
        Op::Add => weak_add(d, e, hint),
        Op::Mul => weak_mul(d, e, hint, path),
    }
}

/// One letter of `u(x op y)` and how far each input word was read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultLetter {
    pub letter: Letter,
    pub x_read: Option<i64>,
    pub y_read: Option<i64>,
}

/// The `m`-th letter of the canonical encoding of `x op y`, computed from
/// the input words and the hint.
pub fn result_letter(op: Op, x: &InfWord, y: &InfWord, m: u64, hint: &Hint) -> Result<ResultLetter, WeakError> {
    let (tx, ty) = (ReadTrace::new(), ReadTrace::new());
    let (xw, yw) = (x.with_trace(&tx), y.with_trace(&ty));
    let letter = match &hint.payload {
        HintPayload::Terminating(t) => crate::encoding::encode_xr(&Decimal::from_term(t.clone())).letter(m),
        HintPayload::NonTerminating => {
            let (d, e) = (decode_xr(&xw)?, decode_xr(&yw)?);
            let f = weak_op(op, &d, &e, hint, MulPath::Certified)?;
            crate::encoding::encode_xr(&f).letter(m)
        }
    };
    Ok(ResultLetter {
        letter,
        x_read: tx.max_index(),
        y_read: ty.max_index(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decimal::digits_from;
    use crate::encoding::encode_xr;
    use proptest::prelude::*;

    fn dec(s: &str) -> Decimal {
        s.parse().unwrap()
    }

    fn t(s: &str) -> TermDecimal {
        s.parse().unwrap()
    }

    #[test]
    fn hint_integers() {
        assert_eq!(hint_encode(&Hint::non_terminating(0)).unwrap(), BigUint::from(1u32));
        assert_eq!(hint_encode(&Hint::non_terminating(3)).unwrap(), BigUint::from(7u32));
        let h = Hint::terminating(t("1.25"));
        assert_eq!(hint_decode(&hint_encode(&h).unwrap()).unwrap(), h);
        let one = Hint::terminating(t("1"));
        // word 0 0 T 1 T: 0 + 0*11 + 10*121 + 1*1331 + 10*14641
        assert_eq!(one.factored().1, BigUint::from(148_952u32));
        assert_eq!(one.to_string(), "1*2^148952");
        assert_eq!(parse_hint("1*2^148952").unwrap(), one);
        let long = Hint::terminating(t("-0.00001"));
        assert_eq!(hint_encode(&long), Err(WeakError::HintTooLarge));
        assert_eq!(parse_hint(&long.to_string()).unwrap(), long);
        assert!(hint_decode(&BigUint::zero()).is_err());
        assert!(parse_hint("3*2^5").is_err());
    }

    #[test]
    fn computed_hints() {
        assert_eq!(compute_hint(Op::Add, &dec("0.(3)"), &dec("0.(6)")).unwrap(), Hint::terminating(t("1")));
        assert_eq!(compute_hint(Op::Mul, &dec("0.(3)"), &dec("3")).unwrap(), Hint::terminating(t("1")));
        assert_eq!(compute_hint(Op::Add, &dec("0.(3)"), &dec("0.(3)")).unwrap(), Hint::non_terminating(0));
        assert_eq!(compute_hint(Op::Add, &dec("95.(3)"), &dec("7")).unwrap(), Hint::non_terminating(2));
        let s = Decimal::from_stream_scanning(Sign::Plus, 0, |_| 3).unwrap();
        assert!(matches!(compute_hint(Op::Add, &s, &dec("1")), Err(WeakError::OracleUnavailable(_))));
    }

    #[test]
    fn add_digit_examples() {
        let d = dec("0.3333371");
        let e = dec("0.6666640");
        assert_eq!(add_digit_rule(&d, &e, -6).value(), 1);
        assert_eq!(add_digit_rule(&d, &e, 0).value(), 1);
        assert_eq!(add_digit_rule(&dec("0.5"), &dec("0.2(6)"), -1).value(), 7);
        assert_eq!(add_digit_rule(&dec("1"), &dec("-1/3"), -2).value(), 6);
    }

    #[test]
    fn weak_add_examples() {
        let one = weak_add(&dec("0.(3)"), &dec("0.(6)"), &Hint::terminating(t("1"))).unwrap();
        assert_eq!(one.exact_value(), Some(BigRat::one()));
        let f = weak_add(&dec("0.(3)"), &dec("0.(3)"), &Hint::non_terminating(0)).unwrap();
        assert_eq!(f.to_fixed_string(50), format!("0.{}", "6".repeat(50)));
        let r = 7;
        let tiny = format!("-1.{}1", "0".repeat(r - 1));
        let h = compute_hint(Op::Add, &dec("1"), &dec(&tiny)).unwrap();
        let f = weak_add(&dec("1"), &dec(&tiny), &h).unwrap();
        assert_eq!(f.to_fixed_string(r as u64), format!("-0.{}1", "0".repeat(r - 1)));
        let g = weak_add(&dec("-2/3"), &dec("1/9"), &Hint::non_terminating(0)).unwrap();
        assert_eq!(g.to_fixed_string(6), "-0.555555");
        assert_eq!(
            weak_add(&dec("50/3"), &dec("1/9"), &Hint::non_terminating(0)).err(),
            Some(WeakError::HintMismatch { position: 1 })
        );
    }

    #[test]
    fn truncation_products() {
        let d = dec("0.34");
        assert_eq!(mul_truncation(&d, &d, 1).value, t("0.09"));
        assert_eq!(mul_truncation(&d, &d, 2).value, t("0.1156"));
        assert_eq!(mul_truncation(&dec("7/3"), &Decimal::zero(), 5).value, TermDecimal::zero());
    }

    #[test]
    fn mul_digit_examples() {
        let d = dec("0.(34)");
        assert_eq!(mul_stabilized_digit(&d, &d, -1).value(), 1);
        // (4/9)^2 = 16/81 = 0.19753...
        let four = dec("0.(4)");
        assert_eq!(mul_stabilized_digit(&four, &four, -2).value(), 9);
        assert_eq!(mul_certified_digit(&four, &four, -3).value(), 7);
        assert_eq!(mul_certified_digit(&four, &four, -4).value(), 5);
        let six = dec("0.(6)");
        assert_eq!(mul_certified_digit(&six, &six, -3).value(), 4);
        assert_eq!(mul_certified_digit(&dec("0.(142857)"), &dec("0.(3)"), -2).value(), 4);
        assert_eq!(mul_certified_digit(&dec("0.(142857)"), &dec("0.(3)"), -3).value(), 7);
    }

    #[test]
    fn weak_mul_examples() {
        let one = weak_mul(&dec("0.(3)"), &dec("3"), &Hint::terminating(t("1")), MulPath::Certified).unwrap();
        assert_eq!(one.to_fixed_string(3), "1.000");
        let r = 6;
        let small = format!("0.{}1", "0".repeat(r - 1));
        let h = compute_hint(Op::Mul, &dec("-1"), &dec(&small)).unwrap();
        let f = weak_mul(&dec("-1"), &dec(&small), &h, MulPath::Certified).unwrap();
        assert_eq!(f.to_fixed_string(r as u64), format!("-{small}"));
        let ninth = weak_mul(&dec("0.(3)"), &dec("0.(3)"), &Hint::non_terminating(0), MulPath::Certified).unwrap();
        assert_eq!(ninth.to_fixed_string(40), format!("0.{}", "1".repeat(40)));
        let neg = weak_mul(&dec("-2/3"), &dec("-4/7"), &Hint::non_terminating(0), MulPath::Certified).unwrap();
        assert_eq!(neg.sign(), Sign::Plus);
        assert_eq!(neg.to_fixed_string(12), "0.380952380952");
    }

    #[test]
    fn letters_of_results() {
        let one = Hint::terminating(t("1"));
        let (x, y) = (encode_xr(&dec("0.(6)")), encode_xr(&dec("0.(3)")));
        assert_eq!(result_letter(Op::Add, &x, &y, 2, &one).unwrap().letter, Letter::Digit(1));
        assert_eq!(result_letter(Op::Add, &x, &y, 0, &one).unwrap().letter, Letter::Digit(0));
        let three = encode_xr(&dec("3"));
        let third = encode_xr(&dec("0.(3)"));
        assert_eq!(result_letter(Op::Mul, &third, &three, 2, &one).unwrap().letter, Letter::Digit(1));

        let h = Hint::non_terminating(0);
        let r = result_letter(Op::Add, &third, &third, 4, &h).unwrap();
        assert_eq!(r.letter, Letter::Digit(6));
        assert!(r.x_read.unwrap() >= 4);
    }

    #[test]
    fn lookahead_grows_with_the_perturbation_depth() {
        let y = encode_xr(&dec("0.(3)"));
        let mut last = 0;
        for r in [5usize, 10, 20, 40] {
            let x_dec = dec(&format!("0.{}5", "6".repeat(r - 1)));
            let h = compute_hint(Op::Add, &x_dec, &dec("0.(3)")).unwrap();
            let out = result_letter(Op::Add, &encode_xr(&x_dec), &y, 2, &h).unwrap();
            assert_eq!(out.letter, Letter::Digit(0));
            // letter 2 + j of x holds the digit at 10^{-j}
            let depth = out.x_read.unwrap() - 2;
            assert!(depth >= r as i64, "r = {r}, depth = {depth}");
            assert!(depth > last);
            last = depth;
        }
    }

    fn arb_hint() -> impl Strategy<Value = Hint> {
        prop_oneof![
            (0u64..1000).prop_map(Hint::non_terminating),
            (-99_999i64..99_999, -3i64..3).prop_map(|(m, e)| Hint::terminating(TermDecimal::from_decfrac(&DecFrac::new(m.into(), e)))),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn hint_round_trip(h in arb_hint()) {
            prop_assert_eq!(parse_hint(&h.to_string()).unwrap(), h.clone());
            let (odd, r) = h.factored();
            prop_assert_eq!(hint_decode_factored(&odd, &r).unwrap(), h);
        }
    }

    proptest! {
        #[test]
        fn weak_digits_match_long_division(a in -1_000_000i64..1_000_000, b in 1i64..1_000_000, c in -1_000_000i64..1_000_000, e in 1i64..1_000_000) {
            let (p, q) = (BigRat::frac(a, b), BigRat::frac(c, e));
            let (d, f) = (Decimal::from(p.clone()), Decimal::from(q.clone()));
            let sum = Decimal::from(p.clone() + q.clone());
            let s = weak_add(&d, &f, &compute_hint(Op::Add, &d, &f).unwrap()).unwrap();
            prop_assert_eq!(s.sign(), sum.sign());
            prop_assert_eq!(s.order(), sum.order());
            prop_assert_eq!(digits_from(&s, s.order(), 30), digits_from(&sum, sum.order(), 30));
            let prod = Decimal::from(p * q);
            let m = weak_mul(&d, &f, &compute_hint(Op::Mul, &d, &f).unwrap(), MulPath::Certified).unwrap();
            prop_assert_eq!(m.sign(), prod.sign());
            prop_assert_eq!(digits_from(&m, m.order(), 30), digits_from(&prod, prod.order(), 30));
        }
    }
}
