mod common;

use common::{arb_rat, dec, digit, order, rat};
use decireal::weak::{compute_hint, hint_decode, hint_encode, parse_hint, weak_op, HintPayload, MulPath, Op, WeakError};
use decireal::Sign;
use proptest::prelude::*;

fn op_strategy() -> impl Strategy<Value = Op> {
    prop_oneof![Just(Op::Add), Just(Op::Mul)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn weak_results_match_long_division(x in arb_rat(100_000), y in arb_rat(100_000), op in op_strategy()) {
        let q = match op { Op::Add => &x + &y, Op::Mul => &x * &y };
        let h = compute_hint(op, &dec(&x), &dec(&y)).unwrap();
        prop_assert_eq!(h.kpp as i64, order(&q));
        for path in [MulPath::Certified, MulPath::Stabilized] {
            let r = weak_op(op, &dec(&x), &dec(&y), &h, path).unwrap();
            prop_assert_eq!(r.sign() == Sign::Minus, q.is_negative());
            if op == Op::Mul && path == MulPath::Stabilized {
                continue;
            }
            for n in (-25..=order(&q)).rev() {
                prop_assert_eq!(r.digit_at(n).value(), digit(&q, n), "10^{}", n);
            }
        }
    }

    #[test]
    fn hints_round_trip_through_integers(x in arb_rat(1000), y in arb_rat(1000), op in op_strategy()) {
        let h = compute_hint(op, &dec(&x), &dec(&y)).unwrap();
        if let Ok(n) = hint_encode(&h) {
            prop_assert_eq!(hint_decode(&n).unwrap(), h.clone());
        }
        prop_assert_eq!(parse_hint(&h.to_string()).unwrap(), h);
    }

    #[test]
    fn terminating_hints_carry_the_result(m in -999i64..999, e in 0u32..6, n in -999i64..999) {
        let x = rat(m, 10i64.pow(e));
        let y = rat(n, 2i64.pow(e));
        let q = &x * &y;
        let h = compute_hint(Op::Mul, &dec(&x), &dec(&y)).unwrap();
        let HintPayload::Terminating(t) = &h.payload else {
            return Err(TestCaseError::fail("terminating product without payload"));
        };
        prop_assert_eq!(t.to_decfrac().to_rat(), q);
    }
}

#[test]
fn wrong_order_hint_is_reported() {
    let (x, y) = (dec(&rat(1, 3)), dec(&rat(1, 9)));
    let h = parse_hint("5").unwrap();
    let err = weak_op(Op::Add, &x, &y, &h, MulPath::Certified).unwrap_err();
    assert!(matches!(err, WeakError::HintMismatch { .. }), "{err}");
}
