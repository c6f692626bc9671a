//! Text literals for exact values.
//!
//! A decimal literal is `[-] digits [ "." digits ] [ "(" digits ")" ]`, the
//! parenthesized block repeating forever, so `0.(3)` is one third. A
//! rational literal is `[-] int "/" posint`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{pow10, BigRat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid literal {input:?}: {reason}")]
pub struct LiteralError {
    pub input: String,
    pub reason: &'static str,
}

/// Parses a decimal or rational literal.
pub fn parse(s: &str) -> Result<BigRat, LiteralError> {
    let bad = |reason| LiteralError {
        input: s.to_string(),
        reason,
    };
    if s.contains('/') {
        return s.parse().map_err(|_| bad("expected [-]int/posint with a nonzero denominator"));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (fixed, repeat) = match body.split_once('(') {
        Some((f, r)) => {
            let r = r.strip_suffix(')').ok_or_else(|| bad("unclosed repeating block"))?;
            (f, Some(r))
        }
        None => (body, None),
    };
    let (int, frac) = match fixed.split_once('.') {
        Some((i, f)) => (i, f),
        None if repeat.is_some() => return Err(bad("a repeating block needs a decimal point")),
        None => (fixed, ""),
    };
    let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if int.is_empty() || !all_digits(int) || !all_digits(frac) {
        return Err(bad("expected digits"));
    }
    if fixed.ends_with('.') && repeat.is_none() {
        return Err(bad("expected digits after the point"));
    }
    let whole: BigInt = format!("{int}{frac}").parse().expect("digits");
    let scale = pow10(frac.len() as u64);
    let mut value = BigRat::new(whole, scale.clone()).expect("nonzero scale");
    if let Some(r) = repeat {
        if r.is_empty() || !all_digits(r) {
            return Err(bad("expected digits in the repeating block"));
        }
        let block: BigInt = r.parse().expect("digits");
        let nines = pow10(r.len() as u64) - 1;
        value = value + BigRat::new(block, nines * scale).expect("nonzero");
    }
    Ok(if neg { -value } else { value })
}

/// Renders `q` as a decimal literal, with a repeating block when the
/// expansion does not terminate. Periods longer than `max_period` fall
/// back to the `num/den` form.
pub fn format(q: &BigRat, max_period: usize) -> String {
    let sign = if q.is_negative() { "-" } else { "" };
    let num = q.numer().abs();
    let den = q.denom();
    let (int, mut rem) = num.div_rem(den);
    if rem.is_zero() {
        return format!("{sign}{int}");
    }
    let mut digits = String::new();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    while !rem.is_zero() {
        if let Some(&start) = seen.get(&rem) {
            let (pre, rep) = digits.split_at(start);
            return format!("{sign}{int}.{pre}({rep})");
        }
        if digits.len() > max_period {
            return q.to_string();
        }
        seen.insert(rem.clone(), digits.len());
        let (d, r) = (rem * 10u32).div_rem(den);
        digits.push_str(&d.to_string());
        rem = r;
    }
    format!("{sign}{int}.{digits}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literal_examples() {
        assert_eq!(parse("0.(3)").unwrap(), BigRat::frac(1, 3));
        assert_eq!(parse("-20.3").unwrap(), BigRat::frac(-203, 10));
        assert_eq!(parse("1.0000011").unwrap(), BigRat::frac(10_000_011, 10_000_000));
        assert_eq!(parse("0.2(6)").unwrap(), BigRat::frac(4, 15));
        assert_eq!(parse("0.(142857)").unwrap(), BigRat::frac(1, 7));
        assert_eq!(parse("1.(0)").unwrap(), BigRat::one());
        assert_eq!(parse("-7/2").unwrap(), BigRat::frac(-7, 2));
        assert_eq!(parse("12").unwrap(), BigRat::from_integer(12));
        assert_eq!(parse("0.4(9)").unwrap(), BigRat::frac(1, 2));
        for bad in ["", "-", ".5", "1.", "1(3)", "0.(3", "0.()", "1/0", "1/-2", "a", "1.2.3", "--1"] {
            assert!(parse(bad).is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn format_examples() {
        assert_eq!(format(&BigRat::frac(1, 3), 100), "0.(3)");
        assert_eq!(format(&BigRat::frac(-203, 10), 100), "-20.3");
        assert_eq!(format(&BigRat::frac(23, 30), 100), "0.7(6)");
        assert_eq!(format(&BigRat::frac(1, 7), 100), "0.(142857)");
        assert_eq!(format(&BigRat::from_integer(-4), 100), "-4");
        assert_eq!(format(&BigRat::frac(1, 97), 10), "1/97");
    }

    proptest! {
        #[test]
        fn format_then_parse(a in -1_000_000i64..1_000_000, b in 1i64..5000) {
            let q = BigRat::frac(a, b);
            prop_assert_eq!(parse(&format(&q, 10_000)).unwrap(), q);
        }
    }
}
