//! Oracles shared by the integration tests, written without the crate's
//! own digit machinery.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use decireal::{BigRat, Decimal};

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::frac(n, d)
}

pub fn dec(q: &BigRat) -> Decimal {
    Decimal::from_rational(q.clone())
}

fn ten_pow(n: u32) -> BigInt {
    BigInt::from(10u32).pow(n)
}

/// Digit at `10^n` of `|q|` by long division.
pub fn digit(q: &BigRat, n: i64) -> u8 {
    let (a, b) = (q.numer().abs(), q.denom().abs());
    let v = if n >= 0 { a / (b * ten_pow(n as u32)) } else { a * ten_pow((-n) as u32) / b };
    (v % BigInt::from(10u32)).to_u8().unwrap()
}

/// Top stored position: 0 below one, else the integer digit count minus one.
pub fn order(q: &BigRat) -> i64 {
    let int = q.numer().abs() / q.denom().abs();
    if int.is_zero() {
        0
    } else {
        int.to_string().len() as i64 - 1
    }
}

pub fn terminates(q: &BigRat) -> bool {
    let mut d = q.denom().abs();
    for p in [2u32, 5] {
        while (&d % p).is_zero() {
            d /= p;
        }
    }
    d.is_one()
}

pub fn arb_rat(max: i64) -> impl Strategy<Value = BigRat> {
    (-max..=max, 1..=max).prop_map(|(n, d)| rat(n, d))
}

pub fn arb_nonzero(max: i64) -> impl Strategy<Value = BigRat> {
    arb_rat(max).prop_filter("nonzero", |q| !q.is_zero())
}
