mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use common::rat;
use decireal::padic::{padic_add, padic_decode, padic_encode, padic_from_rational, padic_mul, padic_sub, PAdic};
use decireal::{BigRat, ReadTrace};

const N: usize = 24;

/// Digits `0..N` of `q` with `p` not dividing its denominator, from
/// `q mod p^N` computed with a modular inverse.
fn residue_digits(q: &BigRat, p: u32) -> Vec<u32> {
    let m = BigInt::from(p).pow(N as u32);
    let den = q.denom().mod_floor(&m);
    let inv = den.extended_gcd(&m).x.mod_floor(&m);
    let mut v = (q.numer() * inv).mod_floor(&m);
    (0..N)
        .map(|_| {
            let (next, d) = v.div_rem(&BigInt::from(p));
            v = next;
            d.to_u32().unwrap()
        })
        .collect()
}

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(7), Just(11)]
}

fn coprime_rat(p: u32) -> impl Strategy<Value = BigRat> {
    (-5000i64..5000, 1i64..500).prop_map(move |(n, d)| {
        let d = if d % p as i64 == 0 { d + 1 } else { d };
        rat(n, d)
    })
}

fn case() -> impl Strategy<Value = (u32, BigRat, BigRat)> {
    prime().prop_flat_map(|p| (Just(p), coprime_rat(p), coprime_rat(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_operations_match_residues((p, x, y) in case()) {
        let (a, b) = (padic_from_rational(p, &x).unwrap(), padic_from_rational(p, &y).unwrap());
        prop_assert_eq!(padic_add(&a, &b).unwrap().digits(0, N), residue_digits(&(&x + &y), p));
        prop_assert_eq!(padic_sub(&a, &b).unwrap().digits(0, N), residue_digits(&(&x - &y), p));
        prop_assert_eq!(padic_mul(&a, &b).unwrap().digits(0, N), residue_digits(&(&x * &y), p));
    }

    #[test]
    fn encoding_round_trips((p, x, _) in case()) {
        let a = padic_from_rational(p, &x).unwrap();
        let back = padic_decode(p, &padic_encode(&a)).unwrap();
        prop_assert_eq!(back.digits(0, N), residue_digits(&x, p));
    }

    #[test]
    fn output_digit_reads_no_higher_input_digit((p, x, y) in case(), n in 0i64..N as i64) {
        let (ta, tb) = (ReadTrace::new(), ReadTrace::new());
        let a = padic_from_rational(p, &x).unwrap().with_trace(&ta);
        let b = padic_from_rational(p, &y).unwrap().with_trace(&tb);
        padic_mul(&a, &b).unwrap().digit(n);
        prop_assert!(ta.max_index().unwrap_or(0) <= n && tb.max_index().unwrap_or(0) <= n);
    }
}

#[test]
fn minus_one_is_all_top_digits() {
    for p in [2u32, 3, 5, 7] {
        let m = PAdic::from_digits(p, 0, move |_| p - 1).unwrap();
        let sum = padic_add(&m, &PAdic::one(p).unwrap()).unwrap();
        assert!(sum.digits(0, 40).iter().all(|&d| d == 0));
    }
}
