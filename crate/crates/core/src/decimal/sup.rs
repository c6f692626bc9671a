use std::sync::{Arc, Mutex};

use super::{Decimal, DecimalError, Digit, DigitWord, ExtDecimal, Sign};

/// Supremum or infimum of a finite set, produced digit by digit.
///
/// The candidates start as the elements of the relevant sign group with the
/// extreme order. At each position, moving down, only the candidates
/// carrying the largest (or smallest) digit survive, and that digit is
/// emitted.
#[derive(Clone)]
pub struct Supremum {
    sign: Sign,
    order: i64,
    pick_max: bool,
    state: Arc<Mutex<State>>,
}

struct State {
    elements: Vec<ExtDecimal>,
    candidates: Vec<usize>,
    digits: Vec<u8>,
}

impl Supremum {
    fn build(u: &[ExtDecimal], upper: bool) -> Result<Self, DecimalError> {
        if u.is_empty() {
            return Err(DecimalError::EmptySet);
        }
        // the sign whose elements dominate: plus for sup, minus for inf
        let lead = if upper { Sign::Plus } else { Sign::Minus };
        let lead_group: Vec<&ExtDecimal> = u.iter().filter(|x| x.sign() == lead).collect();
        let (sign, group, pick_max) = if lead_group.is_empty() {
            (lead.flip(), u.iter().collect::<Vec<_>>(), false)
        } else {
            (lead, lead_group, true)
        };
        let orders = group.iter().map(|x| x.order());
        let order = if pick_max { orders.max() } else { orders.min() }.expect("nonempty group");
        let elements: Vec<ExtDecimal> = group
            .into_iter()
            .filter(|x| x.order() == order)
            .cloned()
            .collect();
        let candidates = (0..elements.len()).collect();
        Ok(Supremum {
            sign,
            order,
            pick_max,
            state: Arc::new(Mutex::new(State {
                elements,
                candidates,
                digits: Vec::new(),
            })),
        })
    }

    /// An element equal to the result as a word, found by scanning at most
    /// `depth` digits; `None` if several elements still tie.
    pub fn witness_element(&self, depth: u64) -> Option<ExtDecimal> {
        let _ = self.digit_at(self.order - depth as i64);
        let st = self.state.lock().expect("supremum state");
        let first = st.candidates[0];
        let tied = st.candidates.iter().all(|&i| {
            st.elements[i].exact_eq(&st.elements[first]).unwrap_or(false)
        });
        tied.then(|| st.elements[first].clone())
    }

    /// The result as a decimal, when the set consists of decimals.
    fn into_decimal(self) -> Decimal {
        let sign = self.sign;
        let order = self.order;
        Decimal::from_stream_scanning(sign, order, move |n| self.digit_at(n).value())
            .expect("orders are nonnegative")
            .memoized()
    }
}

impl DigitWord for Supremum {
    fn sign(&self) -> Sign {
        self.sign
    }

    fn order(&self) -> i64 {
        self.order
    }

    fn digit_at(&self, n: i64) -> Digit {
        if n > self.order {
            return Digit::ZERO;
        }
        let idx = (self.order - n) as usize;
        let mut st = self.state.lock().expect("supremum state");
        while st.digits.len() <= idx {
            let pos = self.order - st.digits.len() as i64;
            let read: Vec<(usize, u8)> = st
                .candidates
                .iter()
                .map(|&i| (i, st.elements[i].digit_at(pos).value()))
                .collect();
            let best = if self.pick_max {
                read.iter().map(|&(_, d)| d).max()
            } else {
                read.iter().map(|&(_, d)| d).min()
            }
            .expect("candidates never run out");
            st.candidates = read
                .into_iter()
                .filter(|&(_, d)| d == best)
                .map(|(i, _)| i)
                .collect();
            st.digits.push(best);
        }
        Digit::new(st.digits[idx]).expect("digit")
    }
}

/// Supremum in the decimals together with the false decimals.
pub fn sup_finite(u: &[ExtDecimal]) -> Result<Supremum, DecimalError> {
    Supremum::build(u, true)
}

/// Infimum in the decimals together with the false decimals.
pub fn inf_finite(u: &[ExtDecimal]) -> Result<Supremum, DecimalError> {
    Supremum::build(u, false)
}

/// Supremum of a finite set of decimals.
pub fn sup_finite_real(u: &[Decimal]) -> Result<Decimal, DecimalError> {
    let ext: Vec<ExtDecimal> = u.iter().cloned().map(ExtDecimal::Real).collect();
    Ok(sup_finite(&ext)?.into_decimal())
}

/// Infimum of a finite set of decimals.
pub fn inf_finite_real(u: &[Decimal]) -> Result<Decimal, DecimalError> {
    let ext: Vec<ExtDecimal> = u.iter().cloned().map(ExtDecimal::Real).collect();
    Ok(inf_finite(&ext)?.into_decimal())
}
