//! Command-line front end: value parsing and printing, subcommands and the
//! TSV emitters for the error and remainder profiles.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{ExtReal, Rat};
use crate::feasibility::{feasibility_witness, is_feasible};
use crate::format::{Float, FloatFormat, FloatInterval};
use crate::oracle::{cap_from_env, oracle_feasible, oracle_next_feasible, oracle_prev_feasible, oracle_solve};
use crate::propagator::{solve_mul_constraint, PropagationResult, PropagatorConfig};
use crate::rounding::{round_value, RoundingMode};
use crate::solver::{next_feasible, next_feasible_iterated, prev_feasible};

pub const EXIT_OK: i32 = 0;
pub const EXIT_EMPTY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Lib(Error::Domain(_)) => EXIT_USAGE,
            Failure::Lib(Error::Precondition(_) | Error::UndefinedProduct) => EXIT_PRECONDITION,
            Failure::Lib(Error::Resource { .. } | Error::Exhausted(_)) => EXIT_RESOURCE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

#[derive(Parser, Debug)]
#[command(name = "fpfactor", version, about = "Floating-point factors and bounds for x (*) y = z")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Setting {
    /// Format as `b=..,p=..,emin=..,emax=..`, or `binary64`
    #[arg(long)]
    format: String,
    /// Rounding: rd, ru or rne
    #[arg(long, default_value = "rne")]
    round: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Direction {
    Up,
    Down,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the parameters and extreme values of a format
    Info {
        #[arg(long)]
        format: String,
    },
    /// Decide whether x is a factor of some member of Z
    Feasible {
        #[command(flatten)]
        setting: Setting,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Answer by exhaustive enumeration
        #[arg(long)]
        oracle: bool,
    },
    /// Nearest feasible value at or beyond a starting point
    NextFactor {
        #[command(flatten)]
        setting: Setting,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, value_enum, default_value = "up")]
        direction: Direction,
        /// Allow up to N restarts for numerators outside the analytic case
        #[arg(long)]
        iterate: Option<usize>,
        #[arg(long)]
        oracle: bool,
    },
    /// Tighten X, Y and Z under x (*) y = z
    Propagate {
        #[command(flatten)]
        setting: Setting,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        oracle: bool,
        /// Replace corner bounds on Z by exact ones when X and Y are small
        #[arg(long)]
        confirm_product: bool,
    },
    /// Exact products x * RD(z/x) and x * RU(z/x) for every positive finite x
    ErrorProfile {
        #[arg(long)]
        format: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Rows n, (-a mod n), floor(-a/n) for n = 1..=n_max
    ModProfile {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        n_max: u64,
    },
}

/// Parses a format flag: `b=2,p=53,emin=-1022,emax=1023` in any key order,
/// or the name `binary64`.
pub fn parse_format(s: &str) -> Result<FloatFormat> {
    if s.trim().eq_ignore_ascii_case("binary64") {
        return Ok(FloatFormat::binary64());
    }
    let (mut b, mut p, mut emin, mut emax) = (None, None, None, None);
    for part in s.split(',') {
        let Some((k, v)) = part.split_once('=') else {
            return Err(Error::Domain(format!("bad format component '{part}'")));
        };
        let bad = || Error::Domain(format!("bad value in format component '{part}'"));
        match k.trim() {
            "b" | "beta" => b = Some(v.trim().parse::<u32>().map_err(|_| bad())?),
            "p" => p = Some(v.trim().parse::<u32>().map_err(|_| bad())?),
            "emin" => emin = Some(v.trim().parse::<i64>().map_err(|_| bad())?),
            "emax" => emax = Some(v.trim().parse::<i64>().map_err(|_| bad())?),
            other => return Err(Error::Domain(format!("unknown format key '{other}'"))),
        }
    }
    match (b, p, emin, emax) {
        (Some(b), Some(p), Some(emin), Some(emax)) => FloatFormat::new(b, p, emin, emax),
        _ => Err(Error::Domain(format!("format '{s}' needs b, p, emin and emax"))),
    }
}

fn parse_mode(s: &str) -> CliResult<RoundingMode> {
    match s.to_ascii_lowercase().as_str() {
        "rd" => Ok(RoundingMode::RD),
        "ru" => Ok(RoundingMode::RU),
        "rne" => Ok(RoundingMode::RNE),
        _ => usage(format!("unknown rounding mode '{s}' (expected rd, ru or rne)")),
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() || !s.trim_start_matches('-').bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].strip_prefix('+').unwrap_or(&s[i + 1..]).parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac}0").parse::<BigInt>().ok()? / 10;
    let scale = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    let mut v = if scale >= 0 {
        Rat::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rat::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        v = -v;
    }
    Some(v)
}

/// Exact value of a literal: `inf`, `-inf`, `M*b^q`, `num/den` or a decimal.
pub fn parse_value(s: &str) -> Result<ExtReal> {
    let t = s.trim();
    let bad = || Error::Domain(format!("cannot parse value '{s}'"));
    match t.to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" | "+infinity" => return Ok(ExtReal::PosInf),
        "-inf" | "-infinity" => return Ok(ExtReal::NegInf),
        _ => {}
    }
    if let Some((m, power)) = t.split_once('*') {
        let (b, q) = power.split_once('^').ok_or_else(bad)?;
        let m = parse_int(m.trim()).ok_or_else(bad)?;
        let b = parse_int(b.trim()).ok_or_else(bad)?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if b < BigInt::from(2) {
            return Err(bad());
        }
        let scale = num_traits::pow(b, q.unsigned_abs() as usize);
        let v = if q >= 0 {
            Rat::from_integer(m * scale)
        } else {
            Rat::new(m, scale)
        };
        return Ok(ExtReal::Finite(v));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_int(n.trim()).ok_or_else(bad)?;
        let d = parse_int(d.trim()).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(ExtReal::Finite(Rat::new(n, d)));
    }
    parse_decimal(t).map(ExtReal::Finite).ok_or_else(bad)
}

/// A literal that must name a member of `format` exactly.
pub fn parse_float(format: &FloatFormat, s: &str) -> Result<Float> {
    let v = parse_value(s)?;
    format
        .from_ext(&v)
        .ok_or_else(|| Error::Domain(format!("value '{s}' is not representable in format {format}")))
}

/// `lo:hi`, or a single value for a one-point interval.
pub fn parse_interval(format: &FloatFormat, s: &str) -> Result<FloatInterval> {
    let (lo, hi) = match s.split_once(':') {
        Some((lo, hi)) => (parse_float(format, lo)?, parse_float(format, hi)?),
        None => {
            let v = parse_float(format, s)?;
            (v.clone(), v)
        }
    };
    if lo > hi {
        return Err(Error::Domain(format!("interval '{s}' has lo > hi")));
    }
    Ok(FloatInterval::new(lo, hi))
}

/// Decimal digits with the quantum of `x` when the base is 10, `M*b^q`
/// otherwise.
pub fn format_float(format: &FloatFormat, x: &Float) -> String {
    match x.value() {
        ExtReal::PosInf => return "inf".into(),
        ExtReal::NegInf => return "-inf".into(),
        ExtReal::Finite(_) if x.is_zero() => return "0".into(),
        ExtReal::Finite(_) => {}
    }
    let m = x.significand();
    let q = x.quantum_exponent();
    if format.beta() != 10 {
        return format!("{m}*{}^{q}", format.beta());
    }
    let sign = if m.is_negative() { "-" } else { "" };
    let digits = m.abs().to_string();
    if q >= 0 {
        return format!("{sign}{digits}{}", "0".repeat(q as usize));
    }
    let frac = (-q) as usize;
    let padded = format!("{digits:0>width$}", width = frac + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - frac);
    format!("{sign}{int_part}.{frac_part}")
}

pub fn format_interval(format: &FloatFormat, i: &FloatInterval) -> String {
    match i {
        FloatInterval::Empty => "empty".into(),
        FloatInterval::Range { lo, hi } => {
            format!("[{}, {}]", format_float(format, lo), format_float(format, hi))
        }
    }
}

/// Shortest exact decimal when the denominator divides a power of ten,
/// `num/den` otherwise.
pub fn format_rat(r: &Rat) -> String {
    let den = r.denom().clone();
    let (mut rest, mut twos, mut fives) = (den.clone(), 0usize, 0usize);
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    while rest.is_even() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", r.numer(), den);
    }
    let k = twos.max(fives);
    if k == 0 {
        return r.numer().to_string();
    }
    let scaled = r.numer() * num_traits::pow(BigInt::from(10), k) / den;
    let sign = if scaled.is_negative() { "-" } else { "" };
    let digits = format!("{:0>width$}", scaled.abs().to_string(), width = k + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - k);
    format!("{sign}{int_part}.{}", frac_part.trim_end_matches('0'))
}

fn format_ext(v: &ExtReal) -> String {
    match v {
        ExtReal::Finite(r) => format_rat(r),
        other => other.to_string(),
    }
}

/// One row of the error profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorProfileRow {
    pub x: Rat,
    pub down: ExtReal,
    pub up: ExtReal,
    /// `|z/x|` exceeds the largest finite float.
    pub overflow: bool,
}

/// Exact products `x * RD(z/x)` and `x * RU(z/x)` for each positive finite `x`.
pub fn error_profile(format: &FloatFormat, z: &Float, cap: u64) -> Result<Vec<ErrorProfileRow>> {
    let Some(zr) = z.rat().filter(|r| !r.is_zero()) else {
        return Err(Error::Domain("z must be finite and nonzero".into()));
    };
    let max = format.max_finite().rat().unwrap().clone();
    let floats = format.enumerate(cap)?;
    Ok(floats
        .iter()
        .filter(|x| x.is_finite() && x.signum() > 0)
        .map(|x| {
            let xr = x.rat().unwrap();
            let q = ExtReal::Finite(zr / xr);
            let product = |m| {
                let y = round_value(format, m, &q);
                y.value().scale(xr)
            };
            ErrorProfileRow {
                x: xr.clone(),
                down: product(RoundingMode::RD),
                up: product(RoundingMode::RU),
                overflow: (zr / xr).abs() > max,
            }
        })
        .collect())
}

pub fn emit_error_profile(format: &FloatFormat, z: &Float, cap: u64) -> Result<String> {
    let mut out = String::from("x\tx*RD(z/x)\tx*RU(z/x)\tnote\n");
    for row in error_profile(format, z, cap)? {
        let note = if row.overflow { "overflow" } else { "ok" };
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{note}",
            format_rat(&row.x),
            format_ext(&row.down),
            format_ext(&row.up)
        );
    }
    Ok(out)
}

/// Rows `(n, (-a mod n), floor(-a/n))` for `n = 1..=n_max`.
pub fn mod_profile(a: &BigInt, n_max: u64) -> Result<Vec<(u64, BigInt, BigInt)>> {
    if n_max < 1 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let neg = -a;
    Ok((1..=n_max)
        .map(|n| {
            let (q, r) = neg.div_mod_floor(&BigInt::from(n));
            (n, r, q)
        })
        .collect())
}

pub fn emit_mod_profile(a: &BigInt, n_max: u64) -> Result<String> {
    let mut out = String::from("n\tmod\tfloor\n");
    for (n, r, q) in mod_profile(a, n_max)? {
        let _ = writeln!(out, "{n}\t{r}\t{q}");
    }
    Ok(out)
}

fn setting(s: &Setting) -> CliResult<(FloatFormat, RoundingMode)> {
    Ok((parse_format(&s.format)?, parse_mode(&s.round)?))
}

fn propagation_lines(format: &FloatFormat, r: &PropagationResult) -> String {
    let flag = |ok: bool| if ok { "optimal" } else { "relaxed" };
    let mut out = String::new();
    for (name, i, ok) in [("x", &r.x, r.x_optimal), ("y", &r.y, r.y_optimal), ("z", &r.z, r.z_optimal)] {
        let _ = writeln!(out, "{name}\t{}\t{}", format_interval(format, i), flag(ok));
    }
    out
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let emit = |out: &mut dyn Write, text: &str| out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()));
    match cmd {
        Command::Info { format } => {
            let f = parse_format(&format)?;
            let (b, p, emin, emax) = f.params();
            let text = format!(
                "beta\t{b}\nprecision\t{p}\nemin\t{emin}\nemax\t{emax}\nqmin\t{}\nqmax\t{}\n\
                 max\t{}\nmin_normal\t{}\nmin_positive\t{}\ncount\t{}\n",
                f.qmin(),
                f.qmax(),
                format_float(&f, &f.max_finite()),
                format_float(&f, &f.min_normal()),
                format_float(&f, &f.min_positive()),
                f.count()
            );
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Feasible { setting: s, x, z, oracle } => {
            let (f, mode) = setting(&s)?;
            let x = parse_float(&f, &x)?;
            let z = parse_interval(&f, &z)?;
            let witness = if oracle {
                oracle_feasible(&f, mode, &x, &z, cap_from_env())?
            } else {
                feasibility_witness(&f, mode, &x, &z)
            };
            match witness {
                Some(y) => {
                    emit(out, "yes\n")?;
                    let _ = writeln!(err, "witness\t{}", format_float(&f, &y));
                    Ok(EXIT_OK)
                }
                None => {
                    emit(out, "no\n")?;
                    Ok(EXIT_EMPTY)
                }
            }
        }
        Command::NextFactor {
            setting: s,
            from,
            z,
            direction,
            iterate,
            oracle,
        } => {
            let (f, mode) = setting(&s)?;
            let x = parse_float(&f, &from)?;
            let z = parse_interval(&f, &z)?;
            let up = direction == Direction::Up;
            let v = match (oracle, iterate) {
                (true, _) if up => oracle_next_feasible(&f, mode, &x, &z, cap_from_env())?,
                (true, _) => oracle_prev_feasible(&f, mode, &x, &z, cap_from_env())?,
                (false, Some(n)) if up => next_feasible_iterated(&f, mode, &x, &z, n)?,
                (false, Some(n)) => -next_feasible_iterated(&f, mode, &-x.clone(), &z, n)?,
                (false, None) if up => next_feasible(&f, mode, &x, &z)?,
                (false, None) => prev_feasible(&f, mode, &x, &z)?,
            };
            emit(out, &format!("{}\n", format_float(&f, &v)))?;
            if v.is_infinite() && !is_feasible(&f, mode, &v, &z) {
                let _ = writeln!(err, "no feasible value in that direction");
                return Ok(EXIT_EMPTY);
            }
            Ok(EXIT_OK)
        }
        Command::Propagate {
            setting: s,
            x,
            y,
            z,
            oracle,
            confirm_product,
        } => {
            let (f, mode) = setting(&s)?;
            let (x, y, z) = (parse_interval(&f, &x)?, parse_interval(&f, &y)?, parse_interval(&f, &z)?);
            let cfg = PropagatorConfig {
                confirm_product,
                ..PropagatorConfig::default()
            };
            let r = if oracle {
                oracle_solve(&f, mode, &x, &y, &z, cfg.oracle_cap)?
            } else {
                solve_mul_constraint(&f, mode, &x, &y, &z, &cfg)?
            };
            emit(out, &propagation_lines(&f, &r))?;
            Ok(if r.is_empty() { EXIT_EMPTY } else { EXIT_OK })
        }
        Command::ErrorProfile { format, z } => {
            let f = parse_format(&format)?;
            let z = parse_float(&f, &z)?;
            emit(out, &emit_error_profile(&f, &z, cap_from_env())?)?;
            Ok(EXIT_OK)
        }
        Command::ModProfile { a, n_max } => {
            let Some(a) = parse_int(a.trim()) else {
                return usage(format!("cannot parse integer '{a}'"));
            };
            emit(out, &emit_mod_profile(&a, n_max)?)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs one invocation. `args` includes the program name. Results go to
/// `out`, diagnostics to `err`; the return value is the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
