//! Additive and multiplicative shifts `x -> d + x` and `x -> d * x` on the
//! canonical encoding: which ones are computable, empirical continuity
//! probes, the conjugation of additive shifts to `x -> -1 + x`, and the
//! digit-shifting involution `F`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::decimal::{Decimal, Sign};
use crate::encoding::{decode_xr, decode_xr_prefix, encode_xr, InfWord, Letter};
use crate::literal;
use crate::rational::BigRat;
use crate::weak::Op;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error("needs an exactly known shift: {0}")]
    OracleUnavailable(&'static str),
    #[error("the shift by zero has no conjugation")]
    ZeroShift,
}

fn exact(d: &Decimal) -> Result<BigRat, ShiftError> {
    d.without_trace()
        .exact_value()
        .ok_or(ShiftError::OracleUnavailable("stream-backed decimal"))
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Computable,
    /// The shift is discontinuous at `u(witness)`.
    Discontinuous { witness: Decimal },
}

#[derive(Clone, Debug)]
pub struct ShiftClass {
    pub verdict: Verdict,
    pub rationale: String,
}

impl ShiftClass {
    pub fn is_computable(&self) -> bool {
        matches!(self.verdict, Verdict::Computable)
    }

    pub fn witness(&self) -> Option<&Decimal> {
        match &self.verdict {
            Verdict::Computable => None,
            Verdict::Discontinuous { witness } => Some(witness),
        }
    }
}

fn show(q: &BigRat) -> String {
    literal::format(q, 64)
}

impl fmt::Display for ShiftClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Computable => writeln!(f, "Computable")?,
            Verdict::Discontinuous { witness } => {
                let q = witness.exact_value().expect("witnesses are exact");
                writeln!(f, "Discontinuous at u({})", show(&q))?
            }
        }
        write!(f, "rationale: {}", self.rationale)
    }
}

fn discontinuous(witness: BigRat, rationale: String) -> ShiftClass {
    ShiftClass {
        verdict: Verdict::Discontinuous {
            witness: Decimal::from_rational(witness),
        },
        rationale,
    }
}

/// Classifies `x -> d + x` by the criterion "computable iff `d` terminates
/// and `d <= 0`", with the witness `u(1 - d)` for non-terminating `d` and
/// `u(-d)` for positive terminating `d`.
///
/// The criterion overstates the negative case. For terminating `d < 0` the
/// shift is discontinuous at `u(0)`: the image `u(d)` and the images of
/// `0.00...01...`, whose values lie just above `d`, part at the first digit
/// letter. [`continuity_probe`] exhibits this for `k` past the header.
pub fn classify_add_shift(d: &Decimal) -> Result<ShiftClass, ShiftError> {
    let q = exact(d)?;
    let s = show(&q);
    Ok(if !q.is_terminating() {
        discontinuous(
            BigRat::one() - q.clone(),
            format!("{s} does not terminate; near 1 - d the sum reads either 1.000... or 0.999..."),
        )
    } else if q.is_positive() {
        discontinuous(
            -q.clone(),
            format!("{s} is positive; inputs just below -d give a negative sum, -d itself gives 0"),
        )
    } else {
        ShiftClass {
            verdict: Verdict::Computable,
            rationale: format!("{s} terminates and is not positive"),
        }
    })
}

fn only_twos_and_fives(a: &BigInt) -> bool {
    let mut a = a.abs();
    for f in [2u32, 5] {
        let f = BigInt::from(f);
        while a.is_multiple_of(&f) && !a.is_zero() {
            a /= &f;
        }
    }
    a.is_one()
}

/// `x -> d * x` is computable iff `d = a/b >= 0` in lowest terms with `a = 0`
/// or `a` free of primes other than 2 and 5.
pub fn classify_mul_shift(d: &Decimal) -> Result<ShiftClass, ShiftError> {
    let q = exact(d)?;
    let s = show(&q);
    Ok(if q.is_negative() {
        discontinuous(
            BigRat::zero(),
            format!("{s} is negative; small positive inputs give a negative product, 0 gives 0"),
        )
    } else if q.is_zero() || only_twos_and_fives(q.numer()) {
        ShiftClass {
            verdict: Verdict::Computable,
            rationale: format!("{s} is nonnegative with numerator free of primes other than 2 and 5"),
        }
    } else {
        let inv = q.recip().expect("nonzero");
        let rationale = format!("the numerator of {s} has a prime factor other than 2 and 5, so 1/d = {} does not terminate", show(&inv));
        discontinuous(inv, rationale)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphType {
    CFreeway,
    CSink,
    CLoops,
    LoopPlusFreeway,
    LoopPlusTwoCycles,
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphType::CFreeway => "c-freeway",
            GraphType::CSink => "c-sink",
            GraphType::CLoops => "c-loops",
            GraphType::LoopPlusFreeway => "loop plus c-freeway",
            GraphType::LoopPlusTwoCycles => "loop plus c many 2-cycles",
        })
    }
}

/// Isomorphism type of the graph with an arrow from `x` to each shift image.
pub fn graph_type(op: Op, d: &Decimal) -> Result<GraphType, ShiftError> {
    let q = exact(d)?;
    Ok(match op {
        Op::Add if q.is_zero() => GraphType::CLoops,
        Op::Add => GraphType::CFreeway,
        Op::Mul if q.is_zero() => GraphType::CSink,
        Op::Mul if q == BigRat::one() => GraphType::CLoops,
        Op::Mul if q == BigRat::from_integer(-1) => GraphType::LoopPlusTwoCycles,
        Op::Mul => GraphType::LoopPlusFreeway,
    })
}

/// A map on infinite words.
pub type WordMap = Arc<dyn Fn(&InfWord) -> InfWord + Send + Sync>;

fn word_value(w: &InfWord) -> BigRat {
    w.exact_value()
        .cloned()
        .or_else(|| decode_xr(w).ok().and_then(|d| d.exact_value()))
        .expect("shift maps act on words with exact values")
}

/// The shift `x -> d op x` on canonical words. The words it is applied to
/// must carry exact values, as all words encoded from exact decimals do.
pub fn shift_map(op: Op, d: BigRat) -> WordMap {
    Arc::new(move |w| {
        let x = word_value(w);
        let y = match op {
            Op::Add => &d + &x,
            Op::Mul => &d * &x,
        };
        encode_xr(&Decimal::from_rational(y))
    })
}

pub fn identity_map() -> WordMap {
    Arc::new(|w| w.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum N0 {
    Found(u64),
    NotFoundAtDepth(u64),
}

#[derive(Clone, Debug)]
pub struct ContinuityReport {
    pub point: InfWord,
    pub k: u64,
    pub n0: N0,
}

impl fmt::Display for ContinuityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "point: {} ...", self.point.render_prefix(8))?;
        writeln!(f, "k = {}", self.k)?;
        match self.n0 {
            N0::Found(n) => write!(f, "n0 = {n}"),
            N0::NotFoundAtDepth(d) => write!(f, "n0 not found at depth {d}"),
        }
    }
}

const PROBE_SEED: u64 = 0x005e_ed0f_c0de;
const ATTEMPTS: usize = 64;

fn random_digits(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..10)).collect()
}

/// A random word with an exact value sharing its first `n` letters with
/// `point`. Tails are eventually periodic and never all nines.
fn perturb(point: &InfWord, n: u64, rng: &mut ChaCha8Rng) -> Option<InfWord> {
    let head = decode_xr_prefix(point, 0).ok()?;
    let body = point.prefix(n + 64).iter().position(|l| *l == Letter::Xi)? as u64 + 1;
    let target = point.prefix(n);
    for _ in 0..ATTEMPTS {
        let (sign, order, mut digits) = if n >= body {
            let fixed = decode_xr_prefix(point, n - body).ok()?.digits;
            (head.sign, head.order, fixed)
        } else {
            let sign = if rng.gen_bool(0.5) { Sign::Minus } else { Sign::Plus };
            (sign, rng.gen_range(0..=2 * head.order + 3), Vec::new())
        };
        let extra = rng.gen_range(0..8);
        digits.extend(random_digits(rng, extra));
        while (digits.len() as i64) < order + 1 {
            digits.push(rng.gen_range(0..10));
        }
        let period = rng.gen_range(1..5);
        let block = random_digits(rng, period);
        if block.iter().all(|&b| b == 9) {
            continue;
        }
        let text = |ds: &[u8]| ds.iter().map(|d| char::from(b'0' + d)).collect::<String>();
        let split = order as usize + 1;
        let lit = format!(
            "{}{}.{}({})",
            if sign == Sign::Minus { "-" } else { "" },
            text(&digits[..split]),
            text(&digits[split..]),
            text(&block)
        );
        let q = literal::parse(&lit).expect("generated literal");
        let w = encode_xr(&Decimal::from_rational(q));
        if w.prefix(n) == target {
            return Some(w);
        }
    }
    None
}

/// Searches for `n0 <= depth` such that every probed input sharing `n0`
/// letters with `point` has an image sharing `k` letters with the image of
/// `point`. Probes are `trials` random words with exact values.
///
/// Finding no `n0` is evidence of discontinuity, not a proof, and a found
/// `n0` is evidence of continuity at `point` for this `k`.
pub fn continuity_probe(f: &WordMap, point: &InfWord, k: u64, depth: u64, trials: usize) -> ContinuityReport {
    continuity_probe_seeded(f, point, k, depth, trials, PROBE_SEED)
}

pub fn continuity_probe_seeded(f: &WordMap, point: &InfWord, k: u64, depth: u64, trials: usize, seed: u64) -> ContinuityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reference = f(point).prefix(k);
    let n0 = (0..=depth)
        .find(|&n| {
            let mut probed = 0;
            for _ in 0..trials {
                let Some(w) = perturb(point, n, &mut rng) else { continue };
                probed += 1;
                if f(&w).prefix(k) != reference {
                    return false;
                }
            }
            probed > 0
        })
        .map_or(N0::NotFoundAtDepth(depth), N0::Found);
    ContinuityReport {
        point: point.clone(),
        k,
        n0,
    }
}

/// The three steps of `pi o F_d o pi^-1` applied to `u(e)`, where
/// `pi(u(x)) = u(-x/d)` and `F_d(u(x)) = u(d + x)`.
#[derive(Clone, Debug)]
pub struct Conjugation {
    /// `pi^-1(u(e)) = u(-d e)`.
    pub preimage: Decimal,
    /// `F_d` of the preimage.
    pub shifted: Decimal,
    /// `pi` of that, equal to `u(-1 + e)`.
    pub image: Decimal,
}

pub fn conjugation_pi(d: &BigRat, x: &BigRat) -> Result<BigRat, ShiftError> {
    let inv = d.recip().map_err(|_| ShiftError::ZeroShift)?;
    Ok(-(inv * x.clone()))
}

pub fn conjugation_pi_inverse(d: &BigRat, x: &BigRat) -> Result<BigRat, ShiftError> {
    if d.is_zero() {
        return Err(ShiftError::ZeroShift);
    }
    Ok(-(d * x))
}

/// Conjugates the shift by `d != 0` to the shift by `-1` and applies it to
/// `u(e)`.
pub fn add_shift_conjugate(d: &Decimal, e: &Decimal) -> Result<Conjugation, ShiftError> {
    let d = exact(d)?;
    let e = exact(e)?;
    let pre = conjugation_pi_inverse(&d, &e)?;
    let shifted = &d + &pre;
    let image = conjugation_pi(&d, &shifted)?;
    Ok(Conjugation {
        preimage: Decimal::from_rational(pre),
        shifted: Decimal::from_rational(shifted),
        image: Decimal::from_rational(image),
    })
}

/// Moves every digit one place up when the leading nonzero digit sits at
/// an odd power of ten, one place down when at an even one. Zero is fixed.
///
/// Untraced exact inputs give an exact result. Otherwise the output digit
/// at `10^m` scans the input from the top down to `10^(m-1)` at most.
pub fn involution_f(d: &Decimal) -> Decimal {
    if let Some(q) = d.exact_value() {
        return Decimal::from_rational(match crate::encoding::leading_of_value(&q) {
            crate::encoding::Leading::Zero => q,
            crate::encoding::Leading::At(l) if l.is_odd() => q.mul_pow10(1),
            crate::encoding::Leading::At(_) => q.mul_pow10(-1),
        });
    }
    let k = d.order();
    let order = if k > 0 { if k.is_odd() { k + 1 } else { k - 1 } } else { 0 };
    let input = d.clone();
    let digit = move |m: i64| {
        let leading = (m - 1..=k).rev().find(|&n| input.digit_at(n).value() != 0);
        match leading {
            None => 0,
            Some(l) if l.is_odd() => input.digit_at(m - 1).value(),
            Some(_) if m + 1 > k => 0,
            Some(_) => input.digit_at(m + 1).value(),
        }
    };
    Decimal::from_stream_scanning(d.sign(), order, digit)
        .expect("nonnegative order")
        .memoized()
}

/// [`involution_f`] on canonical words.
pub fn involution_map() -> WordMap {
    Arc::new(|w| {
        let d = decode_xr(w).expect("canonical word");
        encode_xr(&involution_f(&d))
    })
}
