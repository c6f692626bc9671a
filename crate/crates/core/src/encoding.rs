//! Infinite words over finite alphabets, the canonical and scientific
//! encodings of decimals, LSB-first binary numerals and tape rendering.

use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use thiserror::Error;

use crate::decimal::{Decimal, Sign};
use crate::rational::BigRat;
use crate::trace::ReadTrace;

/// Longest binary numeral accepted in a header.
const MAX_BITS: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Digit(u32),
    Minus,
    Xi,
}

impl Letter {
    /// Parses `"ξ"` (or `"x"`), `"-"`, or a digit value.
    pub fn parse(s: &str) -> Option<Letter> {
        match s {
            "ξ" | "x" => Some(Letter::Xi),
            "-" => Some(Letter::Minus),
            _ if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) => s.parse().ok().map(Letter::Digit),
            _ => None,
        }
    }

    pub fn digit(self) -> Option<u32> {
        match self {
            Letter::Digit(v) => Some(v),
            _ => None,
        }
    }

    /// ASCII rendering, with `x` for ξ.
    pub fn ascii(self) -> String {
        match self {
            Letter::Xi => "x".to_string(),
            other => other.to_string(),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Digit(v) => write!(f, "{v}"),
            Letter::Minus => f.write_str("-"),
            Letter::Xi => f.write_str("ξ"),
        }
    }
}

/// Digits `0..base`, optionally with the minus sign and ξ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alphabet {
    pub base: u32,
    pub minus: bool,
    pub xi: bool,
}

impl Alphabet {
    /// Letters of decimal encodings: `0..=9`, `-`, ξ.
    pub fn decimal() -> Self {
        Alphabet {
            base: 10,
            minus: true,
            xi: true,
        }
    }

    /// Letters of p-adic encodings: `0..p`, ξ.
    pub fn padic(p: u32) -> Self {
        Alphabet {
            base: p,
            minus: false,
            xi: true,
        }
    }

    pub fn contains(&self, l: Letter) -> bool {
        match l {
            Letter::Digit(v) => v < self.base,
            Letter::Minus => self.minus,
            Letter::Xi => self.xi,
        }
    }
}

type LetterFn = Arc<dyn Fn(u64) -> Letter + Send + Sync>;

/// An infinite word `u_0 u_1 u_2 ...`.
///
/// A word may carry a [`ReadTrace`] recording each letter index read, and
/// the exact value it encodes when it was built from an exact decimal.
#[derive(Clone)]
pub struct InfWord {
    alphabet: Alphabet,
    letters: LetterFn,
    trace: Option<ReadTrace>,
    exact: Option<BigRat>,
}

impl InfWord {
    pub fn new(alphabet: Alphabet, letters: impl Fn(u64) -> Letter + Send + Sync + 'static) -> Self {
        InfWord {
            alphabet,
            letters: Arc::new(letters),
            trace: None,
            exact: None,
        }
    }

    /// `prefix` followed by `fill` forever.
    pub fn from_prefix(alphabet: Alphabet, prefix: Vec<Letter>, fill: Letter) -> Self {
        InfWord::new(alphabet, move |m| prefix.get(m as usize).copied().unwrap_or(fill))
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letter(&self, m: u64) -> Letter {
        if let Some(t) = &self.trace {
            t.record(m as i64);
        }
        let l = (self.letters)(m);
        debug_assert!(self.alphabet.contains(l), "letter {l} outside the alphabet");
        l
    }

    pub fn prefix(&self, n: u64) -> Vec<Letter> {
        (0..n).map(|m| self.letter(m)).collect()
    }

    /// The same word with reads recorded on a fresh handle.
    pub fn traced(&self) -> (InfWord, ReadTrace) {
        let t = ReadTrace::new();
        (self.with_trace(&t), t)
    }

    pub fn with_trace(&self, trace: &ReadTrace) -> InfWord {
        InfWord {
            trace: Some(trace.clone()),
            ..self.clone()
        }
    }

    /// The encoded value, when known exactly.
    pub fn exact_value(&self) -> Option<&BigRat> {
        self.exact.as_ref()
    }

    pub(crate) fn with_exact(mut self, q: Option<BigRat>) -> Self {
        self.exact = q;
        self
    }

    /// The first `n` letters, space separated.
    pub fn render_prefix(&self, n: u64) -> String {
        join(self.prefix(n).iter().map(Letter::to_string))
    }
}

impl fmt::Debug for InfWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plain = InfWord {
            trace: None,
            ..self.clone()
        };
        write!(f, "InfWord({} ...)", plain.render_prefix(12))
    }
}

fn join(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("malformed word at letter {index}: {reason}")]
    MalformedWord { index: u64, reason: &'static str },
    #[error("leading digit position unavailable: {0}")]
    OracleUnavailable(&'static str),
}

pub(crate) fn malformed(index: u64, reason: &'static str) -> EncodingError {
    EncodingError::MalformedWord { index, reason }
}

/// LSB-first binary digits of `n`; `0` is the single letter `0`.
pub fn bin_lsb_encode(n: u64) -> Vec<Letter> {
    if n == 0 {
        return vec![Letter::Digit(0)];
    }
    let bits = 64 - n.leading_zeros();
    (0..bits).map(|i| Letter::Digit(((n >> i) & 1) as u32)).collect()
}

/// Inverse of [`bin_lsb_encode`]; rejects trailing zeros and non-bits.
pub fn bin_lsb_decode(letters: &[Letter]) -> Result<u64, EncodingError> {
    if letters.is_empty() {
        return Err(malformed(0, "empty binary numeral"));
    }
    if letters.len() as u64 > MAX_BITS {
        return Err(malformed(MAX_BITS, "binary numeral too long"));
    }
    let mut n = 0u64;
    for (i, l) in letters.iter().enumerate() {
        match l {
            Letter::Digit(b @ (0 | 1)) => n |= u64::from(*b) << i,
            _ => return Err(malformed(i as u64, "expected a binary digit")),
        }
    }
    if letters.len() > 1 && letters.last() == Some(&Letter::Digit(0)) {
        return Err(malformed(letters.len() as u64 - 1, "trailing zero in binary numeral"));
    }
    Ok(n)
}

/// Reads a binary numeral starting at `start` up to the next ξ.
/// Returns the value and the index just past the ξ.
pub(crate) fn read_bin(w: &InfWord, start: u64) -> Result<(u64, u64), EncodingError> {
    let mut bits = Vec::new();
    let mut m = start;
    loop {
        match w.letter(m) {
            Letter::Xi => break,
            l => bits.push(l),
        }
        m += 1;
        if m - start > MAX_BITS {
            return Err(malformed(m, "no ξ after the binary numeral"));
        }
    }
    let n = bin_lsb_decode(&bits).map_err(|e| match e {
        EncodingError::MalformedWord { index, reason } => malformed(start + index, reason),
        other => other,
    })?;
    Ok((n, m + 1))
}

fn header_xr(sign: Sign, order: i64) -> Vec<Letter> {
    let mut h = Vec::new();
    if sign == Sign::Minus {
        h.push(Letter::Minus);
    }
    h.extend(bin_lsb_encode(order as u64));
    h.push(Letter::Xi);
    h
}

/// The canonical encoding `u(d)`: optional minus, the order in LSB-first
/// binary, ξ, then `d_k d_{k-1} ...`.
pub fn encode_xr(d: &Decimal) -> InfWord {
    let header = header_xr(d.sign(), d.order());
    let h = header.len() as u64;
    let k = d.order();
    let dd = d.clone();
    InfWord::new(Alphabet::decimal(), move |m| {
        if m < h {
            header[m as usize]
        } else {
            Letter::Digit(u32::from(dd.digit_at(k - (m - h) as i64).value()))
        }
    })
    .with_exact(d.exact_value())
}

/// Sign, order and the first digits of a word in the canonical encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XrPrefix {
    pub sign: Sign,
    pub order: i64,
    pub digits: Vec<u8>,
}

/// Position of the first digit letter and the header fields.
fn parse_xr_header(w: &InfWord) -> Result<(Sign, i64, u64), EncodingError> {
    let (sign, start) = match w.letter(0) {
        Letter::Minus => (Sign::Minus, 1),
        _ => (Sign::Plus, 0),
    };
    let (order, body) = read_bin(w, start)?;
    let order = i64::try_from(order).map_err(|_| malformed(start, "order out of range"))?;
    Ok((sign, order, body))
}

fn digit_letter(w: &InfWord, m: u64) -> u8 {
    match w.letter(m) {
        Letter::Digit(v) if v <= 9 => v as u8,
        l => panic!("letter {l} at {m} is not a decimal digit"),
    }
}

/// Decodes the header and `depth` digits, checking every letter read.
pub fn decode_xr_prefix(w: &InfWord, depth: u64) -> Result<XrPrefix, EncodingError> {
    let (sign, order, body) = parse_xr_header(w)?;
    let mut digits = Vec::with_capacity(depth as usize);
    for m in body..body + depth {
        match w.letter(m) {
            Letter::Digit(v) if v <= 9 => digits.push(v as u8),
            _ => return Err(malformed(m, "expected a decimal digit")),
        }
    }
    if order > 0 && digits.first() == Some(&0) {
        return Err(malformed(body, "leading zero digit with positive order"));
    }
    Ok(XrPrefix { sign, order, digits })
}

/// The decimal encoded by a canonical word. Header letters are read now;
/// each digit of the result reads one letter of `w` when asked for.
pub fn decode_xr(w: &InfWord) -> Result<Decimal, EncodingError> {
    let (sign, order, body) = parse_xr_header(w)?;
    if let Some(q) = w.exact_value().filter(|_| w.trace.is_none()) {
        return Ok(Decimal::from_rational(q.clone()));
    }
    let ww = w.clone();
    let d = Decimal::from_stream_scanning(sign, order, move |n| {
        digit_letter(&ww, body + (order - n) as u64)
    })
    .expect("order is nonnegative");
    Ok(d)
}

/// Where the most significant nonzero digit of a decimal sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leading {
    Zero,
    At(i64),
}

/// Source of the leading digit position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeadingIndexOracle {
    /// Use the exact value behind the decimal or word.
    FromBacking,
    /// Trust the supplied answer.
    Supplied(Leading),
    /// Scan at most `budget` digits from the top; zero cannot be certified.
    Search { budget: u64 },
}

/// Leading digit position of an exact value.
pub fn leading_of_value(q: &BigRat) -> Leading {
    if q.is_zero() {
        return Leading::Zero;
    }
    let a = q.abs();
    let mut m = crate::rational::order_of(&a);
    while a.floor_in_units(m).sign() == num_bigint::Sign::NoSign {
        m -= 1;
    }
    Leading::At(m)
}

impl LeadingIndexOracle {
    fn resolve(&self, d: &Decimal, exact: Option<&BigRat>) -> Result<Leading, EncodingError> {
        match self {
            LeadingIndexOracle::FromBacking => exact
                .cloned()
                .or_else(|| d.without_trace().exact_value())
                .map(|q| leading_of_value(&q))
                .ok_or(EncodingError::OracleUnavailable("no exact backing to locate the leading digit")),
            LeadingIndexOracle::Supplied(l) => Ok(*l),
            LeadingIndexOracle::Search { budget } => (0..*budget as i64)
                .map(|i| d.order() - i)
                .find(|&n| d.digit_at(n).value() != 0)
                .map(Leading::At)
                .ok_or(EncodingError::OracleUnavailable("no nonzero digit within the search budget")),
        }
    }
}

fn encode_xs_with(d: &Decimal, leading: Leading, exact: Option<BigRat>) -> InfWord {
    let alphabet = Alphabet::decimal();
    let m = match leading {
        Leading::Zero => {
            return InfWord::from_prefix(alphabet, vec![Letter::Xi, Letter::Minus], Letter::Digit(0))
                .with_exact(Some(BigRat::zero()));
        }
        Leading::At(m) => m,
    };
    let mut header = Vec::new();
    if d.sign() == Sign::Minus {
        header.push(Letter::Minus);
    }
    header.push(Letter::Xi);
    if m < 0 {
        header.push(Letter::Minus);
    }
    header.extend(bin_lsb_encode(m.unsigned_abs()));
    header.push(Letter::Xi);
    let h = header.len() as u64;
    let dd = d.clone();
    InfWord::new(alphabet, move |i| {
        if i < h {
            header[i as usize]
        } else {
            Letter::Digit(u32::from(dd.digit_at(m - (i - h) as i64).value()))
        }
    })
    .with_exact(exact)
}

/// The scientific encoding `v(d)`: optional minus, ξ, the exponent `m` of
/// the leading nonzero digit (sign, then LSB-first binary of `|m|`), ξ,
/// then `d_m d_{m-1} ...`. Zero is `ξ - 0 0 0 ...`.
pub fn encode_xs(d: &Decimal, leading: LeadingIndexOracle) -> Result<InfWord, EncodingError> {
    let lead = leading.resolve(d, None)?;
    Ok(encode_xs_with(d, lead, d.exact_value()))
}

/// The decimal encoded by a scientific word.
pub fn decode_xs(w: &InfWord) -> Result<Decimal, EncodingError> {
    let (sign, xi) = match w.letter(0) {
        Letter::Minus => (Sign::Minus, 1),
        _ => (Sign::Plus, 0),
    };
    if w.letter(xi) != Letter::Xi {
        return Err(malformed(xi, "expected ξ"));
    }
    let (neg_exp, start) = match w.letter(xi + 1) {
        Letter::Minus => (true, xi + 2),
        _ => (false, xi + 1),
    };
    // ξ - 0 0 0 ... : a run of zeros too long to be an exponent
    if neg_exp && sign == Sign::Plus && (start..=start + MAX_BITS).all(|m| w.letter(m) == Letter::Digit(0)) {
        return Ok(Decimal::zero());
    }
    let (mag, body) = read_bin(w, start)?;
    let mag = i64::try_from(mag).map_err(|_| malformed(start, "exponent out of range"))?;
    if neg_exp && mag == 0 {
        return Err(malformed(start, "negative zero exponent"));
    }
    let m = if neg_exp { -mag } else { mag };
    if digit_letter(w, body) == 0 {
        return Err(malformed(body, "leading digit is zero"));
    }
    let order = m.max(0);
    if let Some(q) = w.exact_value().filter(|_| w.trace.is_none()) {
        return Ok(Decimal::from_rational(q.clone()));
    }
    let ww = w.clone();
    let d = Decimal::from_stream_scanning(sign, order, move |n| {
        if n > m {
            0
        } else {
            digit_letter(&ww, body + (m - n) as u64)
        }
    })
    .expect("order is nonnegative");
    Ok(d)
}

/// `u(d)` to `v(d)`.
pub fn convert_xr_xs(w: &InfWord, leading: LeadingIndexOracle) -> Result<InfWord, EncodingError> {
    let d = decode_xr(w)?;
    let lead = leading.resolve(&d, w.exact_value())?;
    Ok(encode_xs_with(&d, lead, w.exact_value().cloned()))
}

/// `v(d)` to `u(d)`. The exponent fixes the order, so no oracle is needed.
pub fn convert_xs_xr(w: &InfWord) -> Result<InfWord, EncodingError> {
    let d = decode_xs(w)?;
    Ok(encode_xr(&d).with_exact(w.exact_value().cloned()))
}

/// A window of tape cells; cells outside the content hold ε.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapeSnapshot {
    pub first: i64,
    pub cells: Vec<Option<Letter>>,
}

impl TapeSnapshot {
    /// Finite content in cells `0..len`. The default window shows one blank
    /// cell on each side.
    pub fn from_content(content: &[Letter], window: Option<RangeInclusive<i64>>) -> Self {
        let window = window.unwrap_or(-1..=(content.len() as i64).max(1));
        let cells = window
            .clone()
            .map(|c| usize::try_from(c).ok().and_then(|i| content.get(i).copied()))
            .collect();
        TapeSnapshot {
            first: *window.start(),
            cells,
        }
    }

    /// Cells of a word; negative cells are blank.
    pub fn from_word(w: &InfWord, window: RangeInclusive<i64>) -> Self {
        let cells = window
            .clone()
            .map(|c| u64::try_from(c).ok().map(|m| w.letter(m)))
            .collect();
        TapeSnapshot {
            first: *window.start(),
            cells,
        }
    }

    /// Space separated cells, `eps` for ε, cell 0 in brackets.
    pub fn render(&self, ascii: bool) -> String {
        join(self.cells.iter().enumerate().map(|(i, c)| {
            let text = match c {
                None => "eps".to_string(),
                Some(l) if ascii => l.ascii(),
                Some(l) => l.to_string(),
            };
            if self.first + i as i64 == 0 {
                format!("[{text}]")
            } else {
                text
            }
        }))
    }
}

impl fmt::Display for TapeSnapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Renders finite tape content with the default window.
pub fn render_tape(content: &[Letter]) -> String {
    TapeSnapshot::from_content(content, None).to_string()
}

/// Parses space-separated letters.
pub fn parse_letters(s: &str) -> Option<Vec<Letter>> {
    s.split_whitespace().map(Letter::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dec(s: &str) -> Decimal {
        s.parse().unwrap()
    }

    fn letters(s: &str) -> Vec<Letter> {
        parse_letters(s).unwrap()
    }

    #[test]
    fn binary_numerals() {
        assert_eq!(bin_lsb_encode(16), letters("0 0 0 0 1"));
        assert_eq!(bin_lsb_encode(0), letters("0"));
        assert_eq!(bin_lsb_encode(6), letters("0 1 1"));
        for n in 0..=10_000u64 {
            assert_eq!(bin_lsb_decode(&bin_lsb_encode(n)).unwrap(), n);
        }
        assert!(bin_lsb_decode(&letters("1 0")).is_err());
        assert!(bin_lsb_decode(&letters("2")).is_err());
    }

    #[test]
    fn tapes() {
        assert_eq!(render_tape(&bin_lsb_encode(16)), "eps [0] 0 0 0 1 eps");
        assert_eq!(render_tape(&[]), "eps [eps] eps");
        let u1 = encode_xr(&Decimal::one());
        assert_eq!(TapeSnapshot::from_word(&u1, 0..=5).to_string(), "[0] ξ 1 0 0 0");
        assert_eq!(TapeSnapshot::from_word(&u1, -2..=2).render(true), "eps eps [0] x 1");
    }

    #[test]
    fn canonical_layout() {
        assert_eq!(encode_xr(&Decimal::one()).render_prefix(6), "0 ξ 1 0 0 0");
        assert_eq!(encode_xr(&dec("-123.5")).render_prefix(8), "- 0 1 ξ 1 2 3 5");
        assert_eq!(encode_xr(&dec("0.(6)")).render_prefix(5), "0 ξ 0 6 6");
        // a nonnegative decimal of order 0 keeps d_0 in cell 2
        for s in ["0", "7.25", "1/3", "0.001"] {
            let d = dec(s);
            assert_eq!(encode_xr(&d).letter(2), Letter::Digit(u32::from(d.digit_at(0).value())));
        }
    }

    #[test]
    fn scientific_layout() {
        let d = dec("0.0000000000000017566");
        let v = encode_xs(&d, LeadingIndexOracle::FromBacking).unwrap();
        assert_eq!(v.render_prefix(13), "ξ - 1 1 1 1 ξ 1 7 5 6 6 0");
        let z = encode_xs(&Decimal::zero(), LeadingIndexOracle::FromBacking).unwrap();
        assert_eq!(z.render_prefix(5), "ξ - 0 0 0");
        let v1 = convert_xr_xs(&encode_xr(&Decimal::one()), LeadingIndexOracle::FromBacking).unwrap();
        assert_eq!(v1.render_prefix(6), "ξ 0 ξ 1 0 0");
        let third = convert_xr_xs(
            &encode_xr(&dec("0.(3)")),
            LeadingIndexOracle::Supplied(Leading::At(-1)),
        )
        .unwrap();
        assert_eq!(third.render_prefix(7), "ξ - 1 ξ 3 3 3");
        let neg = encode_xs(&dec("-250"), LeadingIndexOracle::FromBacking).unwrap();
        assert_eq!(neg.render_prefix(7), "- ξ 0 1 ξ 2 5");
    }

    #[test]
    fn scientific_round_trips() {
        for s in ["0.0000000000000017566", "0", "-250", "1", "-0.5", "123.456"] {
            let d = dec(s);
            let v = encode_xs(&d, LeadingIndexOracle::FromBacking).unwrap();
            let plain = InfWord::new(v.alphabet(), {
                let v = v.clone();
                move |m| v.letter(m)
            });
            let back = decode_xs(&plain).unwrap();
            assert_eq!(back.to_fixed_string(30), d.to_fixed_string(30), "{s}");
            let u = convert_xs_xr(&plain).unwrap();
            assert_eq!(u.prefix(40), encode_xr(&d).prefix(40));
        }
    }

    #[test]
    fn stream_inputs_need_an_oracle() {
        let s = Decimal::from_stream_scanning(Sign::Plus, 0, |n| u8::from(n == -3)).unwrap();
        assert!(matches!(
            encode_xs(&s, LeadingIndexOracle::FromBacking),
            Err(EncodingError::OracleUnavailable(_))
        ));
        let v = encode_xs(&s, LeadingIndexOracle::Search { budget: 10 }).unwrap();
        assert_eq!(v.render_prefix(7), "ξ - 1 1 ξ 1 0");
        assert!(encode_xs(&Decimal::from_stream_scanning(Sign::Plus, 0, |_| 0).unwrap(), LeadingIndexOracle::Search { budget: 10 }).is_err());
    }

    #[test]
    fn malformed_words() {
        let w = InfWord::from_prefix(Alphabet::decimal(), letters("1 0 ξ 5"), Letter::Digit(0));
        assert!(matches!(decode_xr(&w), Err(EncodingError::MalformedWord { .. })));
        let w = InfWord::from_prefix(Alphabet::decimal(), vec![], Letter::Digit(1));
        assert!(matches!(decode_xr(&w), Err(EncodingError::MalformedWord { .. })));
        let w = InfWord::from_prefix(Alphabet::decimal(), letters("1 ξ 0 5"), Letter::Digit(0));
        assert!(decode_xr_prefix(&w, 3).is_err());
    }

    #[test]
    fn tracing_is_transparent() {
        let u = encode_xr(&dec("-22/7"));
        let (t, handle) = u.traced();
        assert_eq!(t.prefix(30), u.prefix(30));
        assert_eq!(handle.max_index(), Some(29));
        let (t, handle) = u.traced();
        for m in 0..10 {
            t.letter(m);
        }
        assert_eq!(handle.max_index(), Some(9));
    }

    fn arb_dec() -> impl Strategy<Value = Decimal> {
        (-10_000_000i64..10_000_000, 1i64..10_000).prop_map(|(a, b)| Decimal::from(BigRat::frac(a, b)))
    }

    proptest! {
        #[test]
        fn canonical_round_trip(d in arb_dec()) {
            let u = encode_xr(&d);
            let (traced, _) = u.traced();
            let back = decode_xr(&traced).unwrap();
            prop_assert_eq!(encode_xr(&back).prefix(200), u.prefix(200));
            let p = decode_xr_prefix(&u, 20).unwrap();
            prop_assert_eq!(p.sign, d.sign());
            prop_assert_eq!(p.order, d.order());
        }

        #[test]
        fn conversions_round_trip(d in arb_dec()) {
            let u = encode_xr(&d);
            let v = convert_xr_xs(&u, LeadingIndexOracle::FromBacking).unwrap();
            let u2 = convert_xs_xr(&v).unwrap();
            prop_assert_eq!(u2.prefix(200), u.prefix(200));
        }

        #[test]
        fn canonical_encoding_is_injective(a in arb_dec(), b in arb_dec()) {
            if a.exact_value() != b.exact_value() {
                prop_assert_ne!(encode_xr(&a).prefix(200), encode_xr(&b).prefix(200));
            }
        }
    }
}
