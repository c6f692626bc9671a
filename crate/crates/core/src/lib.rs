//! Exact decimal real arithmetic.
//!
//! Decimals are signed digit words backed by terminating expansions, exact
//! rationals, or digit producers. On top of them sit generating sequences,
//! digit rules for addition and multiplication driven by a finite hint,
//! streaming p-adic arithmetic, infinite-word encodings with read tracing,
//! and the additive and multiplicative shift maps.

pub mod decimal;
pub mod encoding;
pub mod expr;
pub mod genseq;
pub mod literal;
pub mod padic;
pub mod rational;
pub mod shift;
pub mod trace;
pub mod weak;

pub use decimal::{Decimal, Digit, DigitWord, Sign, TermDecimal};
pub use rational::{approx_recip, BigRat, DecFrac, RationalError};
pub use trace::ReadTrace;
