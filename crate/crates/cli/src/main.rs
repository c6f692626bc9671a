use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use decireal::decimal::{inf_finite_real, sup_finite_real, DecimalError};
use decireal::encoding::{
    bin_lsb_encode, encode_xr, encode_xs, render_tape, EncodingError, InfWord, LeadingIndexOracle, TapeSnapshot,
};
use decireal::expr::{self, EvalOptions, ExprError};
use decireal::padic::{padic_encode, PAdicError};
use decireal::shift::{classify_add_shift, classify_mul_shift, graph_type, involution_f, ShiftError};
use decireal::weak::{compute_hint, hint_encode, parse_hint, MulPath, Op, WeakError};
use decireal::{literal, BigRat, Decimal};

#[derive(Parser)]
#[command(name = "decireal", version, about = "Exact decimal arithmetic, weak digit rules, p-adic streams and encodings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Add,
    Mul,
}

impl From<OpArg> for Op {
    fn from(o: OpArg) -> Op {
        match o {
            OpArg::Add => Op::Add,
            OpArg::Mul => Op::Mul,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    Certified,
    Stabilized,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Xr,
    Xs,
    Xp,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression to a number of fractional digits
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(default_value_t = 30)]
        digits: u64,
        /// Report how deep each operand of the top-level operation was read
        #[arg(long)]
        trace: bool,
        /// Hint for the top-level operation, as an integer or `odd*2^r`
        #[arg(long)]
        hint: Option<String>,
        #[arg(long, value_enum, default_value = "certified")]
        path: PathArg,
    },
    /// Evaluate an expression as a p-adic number
    Padic {
        p: u32,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(default_value_t = 30)]
        digits: usize,
    },
    /// Render the encoding of a value as a tape
    Encode {
        #[arg(allow_hyphen_values = true)]
        value: String,
        #[arg(long, value_enum, default_value = "xr")]
        format: Format,
        /// Prime for the p-adic format
        #[arg(long, default_value_t = 2)]
        prime: u32,
        /// LSB-first binary numeral of a nonnegative integer
        #[arg(long)]
        as_binary_tape: bool,
        /// Number of letters shown
        #[arg(long, default_value_t = 30)]
        letters: u64,
        /// Write ξ as x
        #[arg(long)]
        ascii: bool,
    },
    /// Decide whether the shift x -> d + x or x -> d * x is computable
    Classify {
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Hint for a op b
    Hint {
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Print `odd*2^r` instead of the integer
        #[arg(long)]
        factored: bool,
    },
    /// Supremum (or infimum) of finitely many values
    #[command(allow_negative_numbers = true)]
    Sup {
        #[arg(required = true)]
        values: Vec<String>,
        #[arg(long)]
        inf: bool,
        #[arg(long, default_value_t = 30)]
        digits: u64,
    },
    /// Apply the digit-shifting involution F
    Involution {
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(default_value_t = 30)]
        digits: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl ToString) -> Self {
        Failure { code: 2, message: message.to_string() }
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        let code = match &e {
            ExprError::Syntax { .. } | ExprError::InvalidLiteral { .. } | ExprError::HintNotApplicable => 2,
            ExprError::Weak(w) => return w.clone().into(),
            ExprError::PAdic(p) => return p.clone().into(),
            ExprError::ZeroReciprocal => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<WeakError> for Failure {
    fn from(e: WeakError) -> Self {
        let code = match &e {
            WeakError::MalformedHint(_) | WeakError::MalformedWord(_) => 2,
            WeakError::OracleUnavailable(_) | WeakError::HintTooLarge => 3,
            WeakError::HintMismatch { .. } => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<PAdicError> for Failure {
    fn from(e: PAdicError) -> Self {
        let code = match &e {
            PAdicError::NotPrime(_) => 2,
            _ => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<EncodingError> for Failure {
    fn from(e: EncodingError) -> Self {
        let code = match &e {
            EncodingError::OracleUnavailable(_) => 3,
            EncodingError::MalformedWord { .. } => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<ShiftError> for Failure {
    fn from(e: ShiftError) -> Self {
        let code = match &e {
            ShiftError::OracleUnavailable(_) => 3,
            ShiftError::ZeroShift => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<DecimalError> for Failure {
    fn from(e: DecimalError) -> Self {
        Failure { code: 4, message: e.to_string() }
    }
}

fn value(text: &str) -> Result<BigRat, Failure> {
    Ok(expr::parse(text)?.value()?)
}

fn decimal(text: &str) -> Result<Decimal, Failure> {
    Ok(Decimal::from_rational(value(text)?))
}

fn tape(w: &InfWord, letters: u64, ascii: bool) -> String {
    TapeSnapshot::from_word(w, 0..=letters as i64 - 1).render(ascii)
}

fn run(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Eval { expr: text, digits, trace, hint, path } => {
            let e = expr::parse(&text)?;
            let opts = EvalOptions {
                hint: hint.as_deref().map(parse_hint).transpose()?,
                trace,
                path: match path {
                    PathArg::Certified => MulPath::Certified,
                    PathArg::Stabilized => MulPath::Stabilized,
                },
            };
            Ok(expr::evaluate(&e, &opts)?.report(digits))
        }
        Command::Padic { p, expr: text, digits } => {
            let a = expr::evaluate_padic(&expr::parse(&text)?, p)?;
            Ok(expr::padic_report(&a, digits))
        }
        Command::Encode { value: text, format, prime, as_binary_tape, letters, ascii } => {
            let q = value(&text)?;
            if as_binary_tape {
                if !q.is_integer() || q.is_negative() {
                    return Err(Failure::parse("--as-binary-tape needs a nonnegative integer"));
                }
                let n: u64 = q.numer().try_into().map_err(|_| Failure::parse("integer too large for a binary tape"))?;
                return Ok(render_tape(&bin_lsb_encode(n)));
            }
            let w = match format {
                Format::Xr => encode_xr(&Decimal::from_rational(q)),
                Format::Xs => encode_xs(&Decimal::from_rational(q), LeadingIndexOracle::FromBacking)?,
                Format::Xp => padic_encode(&expr::evaluate_padic(&expr::Expr::Lit(q), prime)?),
            };
            Ok(tape(&w, letters, ascii))
        }
        Command::Classify { op, d } => {
            let d = decimal(&d)?;
            let class = match op {
                OpArg::Add => classify_add_shift(&d)?,
                OpArg::Mul => classify_mul_shift(&d)?,
            };
            Ok(format!("{class}\ngraph: {}", graph_type(op.into(), &d)?))
        }
        Command::Hint { op, a, b, factored } => {
            let h = compute_hint(op.into(), &decimal(&a)?, &decimal(&b)?)?;
            if factored {
                Ok(h.to_string())
            } else {
                let n: BigUint = hint_encode(&h)?;
                Ok(n.to_string())
            }
        }
        Command::Sup { values, inf, digits } => {
            let ds = values.iter().map(|v| decimal(v)).collect::<Result<Vec<_>, _>>()?;
            let s = if inf { inf_finite_real(&ds)? } else { sup_finite_real(&ds)? };
            Ok(match s.exact_value() {
                Some(q) => literal::format(&q, 64),
                None => s.to_fixed_string(digits),
            })
        }
        Command::Involution { d, digits } => Ok(involution_f(&decimal(&d)?).to_fixed_string(digits)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
