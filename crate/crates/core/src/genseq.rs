//! Generating sequences: Cauchy sequences over the decimal fractions with an
//! explicit modulus, their termwise arithmetic, and digit extraction from
//! the limit by interval nesting.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::decimal::{Decimal, Digit};
use crate::rational::{approx_recip, pow10, BigRat, DecFrac};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenSeqError {
    #[error("nonzero witness fails at index {index}")]
    NonzeroWitnessInvalid { index: u64 },
}

type TermFn = Arc<dyn Fn(u64) -> DecFrac + Send + Sync>;
type ModulusFn = Arc<dyn Fn(&BigUint) -> u64 + Send + Sync>;

/// A sequence `a_1, a_2, ...` of decimal fractions with a modulus `M`:
/// `|a_m - a_n| < 1/k` whenever `m, n >= M(k)`.
#[derive(Clone)]
pub struct CauchySeqQD {
    term: TermFn,
    modulus: ModulusFn,
}

impl CauchySeqQD {
    /// `modulus` must be non-decreasing in `k`.
    pub fn new(
        term: impl Fn(u64) -> DecFrac + Send + Sync + 'static,
        modulus: impl Fn(&BigUint) -> u64 + Send + Sync + 'static,
    ) -> Self {
        CauchySeqQD {
            term: Arc::new(term),
            modulus: Arc::new(modulus),
        }
    }

    /// The term `a_n`, `n >= 1`.
    pub fn term(&self, n: u64) -> DecFrac {
        (self.term)(n.max(1))
    }

    pub fn modulus(&self, k: &BigUint) -> u64 {
        (self.modulus)(k).max(1)
    }

    /// The constant sequence `c_q`.
    pub fn constant(q: DecFrac) -> Self {
        CauchySeqQD::new(move |_| q.clone(), |_| 1)
    }

    /// Exact check of the Cauchy condition for one `(k, m, n)` past the modulus.
    pub fn check_cauchy(&self, k: &BigUint, m: u64, n: u64) -> bool {
        let start = self.modulus(k);
        let (m, n) = (m.max(start), n.max(start));
        let gap = (&self.term(m) - &self.term(n)).abs().to_rat();
        gap < one_over(k)
    }
}

impl std::fmt::Debug for CauchySeqQD {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CauchySeqQD({}, {}, {}, ...)", self.term(1), self.term(2), self.term(3))
    }
}

fn one_over(k: &BigUint) -> BigRat {
    BigRat::new(BigInt::one(), BigInt::from(k.clone())).expect("k is positive")
}

/// Least `m >= 1` with `10^m > x`.
fn digits_exceeding(x: &BigUint) -> u64 {
    let mut m = 1u64;
    let mut p = BigUint::from(10u32);
    while &p <= x {
        p *= 10u32;
        m += 1;
    }
    m
}

/// The sequence of truncations `r(d|n)`.
pub fn from_decimal(d: &Decimal) -> CauchySeqQD {
    let d = d.clone();
    CauchySeqQD::new(
        move |n| d.truncation_value(n),
        |k| digits_exceeding(&(k * 2u32)),
    )
}

pub fn seq_add(a: &CauchySeqQD, b: &CauchySeqQD) -> CauchySeqQD {
    let (ta, tb) = (a.clone(), b.clone());
    let (ma, mb) = (a.clone(), b.clone());
    CauchySeqQD::new(
        move |n| &ta.term(n) + &tb.term(n),
        move |k| {
            let k2 = k * 2u32;
            ma.modulus(&k2).max(mb.modulus(&k2))
        },
    )
}

pub fn seq_neg(a: &CauchySeqQD) -> CauchySeqQD {
    let (t, m) = (a.clone(), a.clone());
    CauchySeqQD::new(move |n| -t.term(n), move |k| m.modulus(k))
}

/// An integer bound on every `|a_n|`: the largest of the first `M(1)` terms
/// and `|a_{M(1)}| + 1`.
fn term_bound(a: &CauchySeqQD) -> BigUint {
    let m1 = a.modulus(&BigUint::one());
    let mut best = (a.term(m1).abs().to_rat() + BigRat::one()).floor() + 1u32;
    for n in 1..m1 {
        best = best.max(a.term(n).abs().to_rat().floor() + 1u32);
    }
    best.to_biguint().expect("bound is positive")
}

pub fn seq_mul(a: &CauchySeqQD, b: &CauchySeqQD) -> CauchySeqQD {
    let bound = term_bound(a).max(term_bound(b));
    let (ta, tb) = (a.clone(), b.clone());
    let (ma, mb) = (a.clone(), b.clone());
    CauchySeqQD::new(
        move |n| &ta.term(n) * &tb.term(n),
        move |k| {
            let kb = k * 2u32 * &bound;
            ma.modulus(&kb).max(mb.modulus(&kb))
        },
    )
}

/// `(k, n0)` with `|a_n| > 1/k` for every `n >= n0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonzeroWitness {
    pub k: BigUint,
    pub n0: u64,
}

impl NonzeroWitness {
    pub fn new(k: u64, n0: u64) -> Self {
        NonzeroWitness {
            k: k.max(1).into(),
            n0: n0.max(1),
        }
    }

    /// Checks the bound exactly at `samples` indices from `n0` on.
    pub fn validate(&self, a: &CauchySeqQD, samples: u64) -> Result<(), GenSeqError> {
        let bound = one_over(&self.k);
        for index in self.n0..self.n0 + samples {
            if a.term(index).abs().to_rat() <= bound {
                return Err(GenSeqError::NonzeroWitnessInvalid { index });
            }
        }
        Ok(())
    }
}

/// Termwise reciprocal `b_n = approx_recip(a_{n'}, 10^n)`, `n' = max(n, n0)`.
///
/// Each term satisfies `|a_{n'} b_n - 1| < 10^{-n}`.
pub fn seq_recip(a: &CauchySeqQD, w: &NonzeroWitness) -> Result<CauchySeqQD, GenSeqError> {
    w.validate(a, 16)?;
    let n0 = w.n0;
    let ta = a.clone();
    let ma = a.clone();
    let k = w.k.clone();
    let k2 = &w.k * &w.k;
    Ok(CauchySeqQD::new(
        move |n| {
            let an = ta.term(n.max(n0));
            let prec = pow10(n).to_biguint().expect("positive");
            approx_recip(&an.to_rat(), &prec).expect("witness excludes zero terms")
        },
        move |big_k| {
            let lead = digits_exceeding(&(&k * big_k * 3u32));
            let tail = ma.modulus(&(&k2 * big_k * 3u32));
            lead.max(tail).max(n0)
        },
    ))
}

/// Probes `|a_n - b_n| < 1/k` at `samples` indices past both moduli at `2k`.
pub fn mutually_close_probe(a: &CauchySeqQD, b: &CauchySeqQD, k: u64, samples: u64) -> bool {
    let k = BigUint::from(k.max(1));
    let k2 = &k * 2u32;
    let start = a.modulus(&k2).max(b.modulus(&k2));
    let bound = one_over(&k);
    (start..start + samples).all(|n| (&a.term(n) - &b.term(n)).abs().to_rat() < bound)
}

/// The decimal generated by a sequence.
#[derive(Clone, Debug)]
pub struct GenReal {
    pub seq: CauchySeqQD,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitDigit {
    Digit(Digit),
    UndecidedAtBudget,
}

impl GenReal {
    pub fn new(seq: CauchySeqQD) -> Self {
        GenReal { seq }
    }

    /// An interval of radius `1/K` around the limit, `K = 10^j`.
    pub fn bracket(&self, j: u64) -> (BigRat, BigRat) {
        let big_k = pow10(j).to_biguint().expect("positive");
        let centre = self.seq.term(self.seq.modulus(&big_k)).to_rat();
        let r = one_over(&big_k);
        (&centre - &r, &centre + &r)
    }

    /// The digit at `10^n` of the limit, certified once a bracket lies
    /// strictly inside one digit cell. At most `budget` refinements.
    pub fn limit_digits(&self, n: i64, budget: u64) -> LimitDigit {
        let base = n.min(0).unsigned_abs();
        for j in 0..budget {
            let (lo, hi) = self.bracket(base + j + 1);
            if let Some(d) = cell_digit(&lo, &hi, n) {
                return LimitDigit::Digit(d);
            }
        }
        LimitDigit::UndecidedAtBudget
    }

    /// Sign of the limit once a bracket excludes zero.
    pub fn limit_sign(&self, budget: u64) -> Option<Ordering> {
        (0..budget).find_map(|j| {
            let (lo, hi) = self.bracket(j);
            if lo.is_positive() {
                Some(Ordering::Greater)
            } else if hi.is_negative() {
                Some(Ordering::Less)
            } else {
                None
            }
        })
    }
}

/// The digit at `10^n` shared by every value in `[lo, hi]`, if the interval
/// sits strictly inside one open digit cell or strictly inside `(-10^n, 10^n)`.
fn cell_digit(lo: &BigRat, hi: &BigRat, n: i64) -> Option<Digit> {
    let unit = DecFrac::pow10(n).to_rat();
    if -&unit < *lo && *hi < unit {
        return Some(Digit::ZERO);
    }
    let (a, b) = if lo.is_positive() {
        (lo.clone(), hi.clone())
    } else if hi.is_negative() {
        (-hi, -lo)
    } else {
        return None;
    };
    let c = a.floor_in_units(n);
    let low_edge = BigRat::from_integer(c.clone()).mul_pow10(n);
    let high_edge = BigRat::from_integer(&c + 1u32).mul_pow10(n);
    if a > low_edge && b < high_edge {
        let d = c.mod_floor(&BigInt::from(10u32)).to_u8().expect("digit");
        Digit::new(d)
    } else {
        None
    }
}

/// Indices of a monotone subsequence of `xs`.
///
/// A horizon is an index whose element exceeds every later element; the
/// horizons give a strictly decreasing run. From the index after the
/// second-to-last horizon every element has a later element at least as
/// large, which gives a non-decreasing run. The longer run is returned.
pub fn monotone_subsequence_by<T>(xs: &[T], cmp: impl Fn(&T, &T) -> Ordering) -> Vec<usize> {
    if xs.is_empty() {
        return Vec::new();
    }
    let mut horizons = Vec::new();
    let mut best: Option<usize> = None;
    for i in (0..xs.len()).rev() {
        if best.is_none_or(|b| cmp(&xs[i], &xs[b]) == Ordering::Greater) {
            horizons.push(i);
            best = Some(i);
        }
    }
    horizons.reverse();
    let start = if horizons.len() >= 2 {
        horizons[horizons.len() - 2] + 1
    } else {
        0
    };
    let mut run = vec![start];
    let mut i = start;
    while let Some(j) = (i + 1..xs.len()).find(|&j| cmp(&xs[j], &xs[i]) != Ordering::Less) {
        run.push(j);
        i = j;
    }
    if run.len() > horizons.len() {
        run
    } else {
        horizons
    }
}

pub fn monotone_subsequence<T: Ord>(xs: &[T]) -> Vec<usize> {
    monotone_subsequence_by(xs, T::cmp)
}
