use std::cmp::Ordering;

use num_bigint::BigUint;

use super::{Decimal, DigitWord, Sign};
use crate::rational::{pow10, BigRat};

/// `(k, n0)` with `r(e|n) - r(d|n) > 1/k` for every `n >= n0`, where `d < e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationWitness {
    pub k: BigUint,
    pub n0: u64,
}

impl SeparationWitness {
    /// Built from a position `m` such that the truncation gap exceeds `10^m`
    /// once position `m` is kept.
    fn at_position(m: i64) -> Self {
        SeparationWitness {
            k: pow10(m.min(0).unsigned_abs()).magnitude().clone(),
            n0: m.min(-1).unsigned_abs(),
        }
    }

    /// Exact check of the separation inequality at truncation depth `n`.
    pub fn holds_at(&self, lower: &Decimal, upper: &Decimal, n: u64) -> bool {
        let gap = upper.truncation_value(n).to_rat() - lower.truncation_value(n).to_rat();
        let bound = BigRat::new(1.into(), self.k.clone().into()).expect("k is positive");
        gap > bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Less(SeparationWitness),
    Greater(SeparationWitness),
    EqualExact,
    UndecidedAtBudget,
}

/// The order `<_R` on decimals.
///
/// Exact backings are decided exactly. Otherwise digits are compared from
/// the top, at most `budget` positions. A strict answer carries a witness
/// separating the truncations.
pub fn compare(d: &Decimal, e: &Decimal, budget: u64) -> Comparison {
    let ordering = match (d.exact_value(), e.exact_value()) {
        (Some(a), Some(b)) => a.cmp(&b),
        _ => match (d.sign(), e.sign()) {
            (Sign::Minus, Sign::Plus) => Ordering::Less,
            (Sign::Plus, Sign::Minus) => Ordering::Greater,
            (s, _) => match first_difference(d, e, Some(budget)) {
                None => return Comparison::UndecidedAtBudget,
                Some((_, a, b)) if s == Sign::Plus => a.cmp(&b),
                Some((_, a, b)) => b.cmp(&a),
            },
        },
    };
    match ordering {
        Ordering::Equal => Comparison::EqualExact,
        Ordering::Less => Comparison::Less(witness(d, e)),
        Ordering::Greater => Comparison::Greater(witness(e, d)),
    }
}

/// Witness for `lower < upper`, which the caller has established.
fn witness(lower: &Decimal, upper: &Decimal) -> SeparationWitness {
    match (lower.sign(), upper.sign()) {
        (Sign::Plus, Sign::Plus) => magnitude_witness(Some(lower), upper),
        (Sign::Minus, Sign::Minus) => magnitude_witness(Some(&upper.abs()), &lower.abs()),
        (Sign::Minus, Sign::Plus) => magnitude_witness(None, &lower.abs()),
        (Sign::Plus, Sign::Minus) => unreachable!("a negative decimal below a nonnegative one"),
    }
}

/// Witness for `small < big` with both nonnegative; `None` stands for zero.
fn magnitude_witness(small: Option<&Decimal>, big: &Decimal) -> SeparationWitness {
    let zero = Decimal::zero();
    let s = small.unwrap_or(&zero);
    let (i, a, b) = first_difference(s, big, None).expect("unequal decimals differ in a digit");
    if b - a >= 2 {
        return SeparationWitness::at_position(i);
    }
    SeparationWitness::at_position(s.nine_escape(i))
}

/// First position, scanning down from the top, where the magnitudes differ.
fn first_difference<A, B>(d: &A, e: &B, budget: Option<u64>) -> Option<(i64, u8, u8)>
where
    A: DigitWord + ?Sized,
    B: DigitWord + ?Sized,
{
    let top = d.order().max(e.order());
    let mut n = top;
    let mut steps = 0u64;
    loop {
        if budget.is_some_and(|b| steps >= b) {
            return None;
        }
        let (a, b) = (d.digit_at(n).value(), e.digit_at(n).value());
        if a != b {
            return Some((n, a, b));
        }
        n -= 1;
        steps += 1;
    }
}

/// The order `<_R` on signed digit words, including false decimals.
///
/// A word is negative when it carries a minus sign, so `-0.000...` lies
/// just below `0`. `None` when the words agree on `budget` positions.
pub fn compare_words<A, B>(d: &A, e: &B, budget: u64) -> Option<Ordering>
where
    A: DigitWord + ?Sized,
    B: DigitWord + ?Sized,
{
    match (d.sign(), e.sign()) {
        (Sign::Minus, Sign::Plus) => Some(Ordering::Less),
        (Sign::Plus, Sign::Minus) => Some(Ordering::Greater),
        (s, _) => {
            let (_, a, b) = first_difference(d, e, Some(budget))?;
            Some(if s == Sign::Plus { a.cmp(&b) } else { b.cmp(&a) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decimal::{bar, TermDecimal};
    use proptest::prelude::*;

    fn dec(s: &str) -> Decimal {
        s.parse().unwrap()
    }

    fn assert_witness(lower: &Decimal, upper: &Decimal, w: &SeparationWitness) {
        for n in w.n0..w.n0 + 20 {
            assert!(w.holds_at(lower, upper, n), "witness {w:?} fails at {n}");
        }
    }

    #[test]
    fn point_four_nine_recurring_below_one_half() {
        let d = dec("0.4(9)");
        // the literal 0.4(9) denotes the rational 1/2
        assert_eq!(compare(&d, &dec("0.5"), 10), Comparison::EqualExact);

        let d = dec("0.49999");
        let e = dec("0.5");
        let Comparison::Less(w) = compare(&d, &e, 10) else {
            panic!("expected Less");
        };
        assert_eq!(w, SeparationWitness { k: 1_000_000u32.into(), n0: 6 });
        assert_witness(&d, &e, &w);
    }

    #[test]
    fn stream_ties_are_undecided() {
        let s = Decimal::from_stream_scanning(Sign::Plus, 0, |n| if n < 0 { 3 } else { 0 }).unwrap();
        assert_eq!(compare(&s, &dec("1/3"), 50), Comparison::UndecidedAtBudget);
        assert_eq!(compare(&dec("1/3"), &dec("0.(3)"), 50), Comparison::EqualExact);
    }

    #[test]
    fn wide_gap_uses_the_differing_position() {
        let d = dec("0.31");
        let e = dec("0.57");
        let Comparison::Less(w) = compare(&d, &e, 10) else {
            panic!("expected Less");
        };
        assert_eq!(w, SeparationWitness { k: 10u32.into(), n0: 1 });
        assert_witness(&d, &e, &w);
    }

    #[test]
    fn signs_and_negatives() {
        let cases = [("-20.3", "-20"), ("-1/3", "0"), ("-5", "3"), ("-0.5", "-0.49"), ("-7/9", "-1/9")];
        for (a, b) in cases {
            let (d, e) = (dec(a), dec(b));
            let Comparison::Less(w) = compare(&d, &e, 100) else {
                panic!("{a} < {b}");
            };
            assert_witness(&d, &e, &w);
            assert!(matches!(compare(&e, &d, 100), Comparison::Greater(_)));
        }
    }

    #[test]
    fn false_zero_sits_below_zero() {
        let z = TermDecimal::zero();
        let nz = bar(&z);
        assert_eq!(compare_words(&nz, &z, 10), Some(Ordering::Less));
        assert_eq!(compare_words(&bar(&"1".parse().unwrap()), &z, 10), Some(Ordering::Greater));
        let neg = dec("-0.001");
        assert_eq!(compare_words(&neg, &nz, 10), Some(Ordering::Less));
    }

    fn arb_rat() -> impl Strategy<Value = BigRat> {
        (-100_000i64..100_000, 1i64..2000).prop_map(|(a, b)| BigRat::frac(a, b))
    }

    proptest! {
        #[test]
        fn compare_agrees_with_value_order(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            let (d, e, f) = (Decimal::from(a.clone()), Decimal::from(b.clone()), Decimal::from(c.clone()));
            let de = compare(&d, &e, 200);
            match a.cmp(&b) {
                Ordering::Less => {
                    let Comparison::Less(w) = &de else { panic!() };
                    for n in w.n0..w.n0 + 20 {
                        prop_assert!(w.holds_at(&d, &e, n));
                    }
                    prop_assert!(matches!(compare(&e, &d, 200), Comparison::Greater(_)));
                }
                Ordering::Greater => prop_assert!(matches!(de, Comparison::Greater(_))),
                Ordering::Equal => prop_assert_eq!(de, Comparison::EqualExact),
            }
            // transitivity on the sample
            let lt = |x: &Decimal, y: &Decimal| matches!(compare(x, y, 200), Comparison::Less(_));
            if lt(&d, &e) && lt(&e, &f) {
                prop_assert!(lt(&d, &f));
            }
        }

        #[test]
        fn terminating_words_compare_like_values(a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000, ea in -6i64..2, eb in -6i64..2) {
            let x = TermDecimal::from_decfrac(&crate::rational::DecFrac::new(a.into(), ea));
            let y = TermDecimal::from_decfrac(&crate::rational::DecFrac::new(b.into(), eb));
            let words = compare_words(&x, &y, 64);
            let values = x.to_decfrac().cmp(&y.to_decfrac());
            if values == Ordering::Equal {
                prop_assert_eq!(words, None);
            } else {
                prop_assert_eq!(words, Some(values));
            }
        }
    }
}
