//! Rounding functions, their preimages, and rounded multiplication.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{floor, ExtReal, Rat, RealInterval};
use crate::format::{Float, FloatFormat, FloatInterval};
use crate::opcount::tick;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RoundingMode {
    /// Toward negative infinity.
    RD,
    /// Toward positive infinity.
    RU,
    /// To nearest, ties to even significand, overflowing to infinity.
    RNE,
    /// Toward negative infinity, except that values above the largest finite
    /// float go to positive infinity. Not regular; used to exercise rejection.
    ClampedRD,
}

impl RoundingMode {
    pub const REGULAR: [RoundingMode; 3] = [RoundingMode::RD, RoundingMode::RU, RoundingMode::RNE];

    pub fn is_regular(self) -> bool {
        !matches!(self, RoundingMode::ClampedRD)
    }

    pub fn name(self) -> &'static str {
        match self {
            RoundingMode::RD => "rd",
            RoundingMode::RU => "ru",
            RoundingMode::RNE => "rne",
            RoundingMode::ClampedRD => "clamped-rd",
        }
    }
}

impl fmt::Display for RoundingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RoundingMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rd" => Ok(RoundingMode::RD),
            "ru" => Ok(RoundingMode::RU),
            "rne" => Ok(RoundingMode::RNE),
            "clamped-rd" => Ok(RoundingMode::ClampedRD),
            _ => domain(format!("unknown rounding mode '{s}'")),
        }
    }
}

/// Magnitude at and above which round-to-nearest returns an infinity:
/// the midpoint between the largest finite float and `beta^(emax+1)`.
pub fn overflow_threshold(format: &FloatFormat) -> Rat {
    let two_m = format.sig_bound().into_owned() * 2 - 1;
    Rat::new(two_m, BigInt::from(2)) * format.pow_rat(format.qmax())
}

fn scaled(format: &FloatFormat, x: &Rat) -> (Rat, i64) {
    let e = format.floor_log(x).max(format.emin());
    let q = e - format.precision() as i64 + 1;
    tick(1);
    (x * format.pow_rat(-q), q)
}

fn round_down_finite(format: &FloatFormat, x: &Rat) -> Float {
    if x.is_zero() {
        return format.zero();
    }
    let max = format.max_finite();
    tick(2);
    if x > max.rat().unwrap() {
        return max;
    }
    if -x > *max.rat().unwrap() {
        return Float::neg_inf();
    }
    let (s, q) = scaled(format, x);
    format
        .from_parts(floor(&s), q)
        .expect("rounded value is representable")
}

fn round_nearest_even_finite(format: &FloatFormat, x: &Rat) -> Float {
    if x.is_zero() {
        return format.zero();
    }
    tick(1);
    if x.abs() >= overflow_threshold(format) {
        return if x.is_positive() {
            Float::pos_inf()
        } else {
            Float::neg_inf()
        };
    }
    let (s, q) = scaled(format, x);
    let m = floor(&s);
    tick(2);
    let frac = &s - Rat::from_integer(m.clone());
    if frac.is_zero() {
        return format.from_parts(m, q).expect("exact value is representable");
    }
    let half = Rat::new(1.into(), 2.into());
    let down = || format.from_parts(m.clone(), q).expect("neighbour is representable");
    let up = || format.from_parts(&m + 1, q).expect("neighbour is representable");
    if frac < half {
        down()
    } else if frac > half {
        up()
    } else {
        let d = down();
        if d.significand().is_even() {
            d
        } else {
            up()
        }
    }
}

/// `fl(x)` for the given mode.
pub fn round_value(format: &FloatFormat, mode: RoundingMode, x: &ExtReal) -> Float {
    let r = match x {
        ExtReal::NegInf => return Float::neg_inf(),
        ExtReal::PosInf => return Float::pos_inf(),
        ExtReal::Finite(r) => r,
    };
    match mode {
        RoundingMode::RD => round_down_finite(format, r),
        RoundingMode::RU => -round_down_finite(format, &-r),
        RoundingMode::RNE => round_nearest_even_finite(format, r),
        RoundingMode::ClampedRD => {
            tick(1);
            if r > format.max_finite().rat().unwrap() {
                Float::pos_inf()
            } else {
                round_down_finite(format, r)
            }
        }
    }
}

pub fn round_rat(format: &FloatFormat, mode: RoundingMode, x: &Rat) -> Float {
    round_value(format, mode, &ExtReal::Finite(x.clone()))
}

fn midpoint(a: &Float, b: &Float) -> ExtReal {
    tick(2);
    ExtReal::Finite((a.rat().unwrap() + b.rat().unwrap()) / Rat::from_integer(2.into()))
}

/// Lower end of the set of reals rounding to values `>= a` in round-to-nearest.
fn rne_lower(format: &FloatFormat, a: &Float) -> (ExtReal, bool) {
    if a.is_neg_inf() {
        return (ExtReal::NegInf, true);
    }
    if a.is_pos_inf() {
        return (ExtReal::Finite(overflow_threshold(format)), true);
    }
    if *a == format.min_finite() {
        return (ExtReal::Finite(-overflow_threshold(format)), false);
    }
    let mid = midpoint(&format.predecessor(a), a);
    let closed = round_value(format, RoundingMode::RNE, &mid) == *a;
    (mid, closed)
}

fn rne_upper(format: &FloatFormat, b: &Float) -> (ExtReal, bool) {
    let (v, closed) = rne_lower(format, &-b.clone());
    (-v, closed)
}

/// `fl^-1[Z]` for a float interval `Z`: the reals (and infinities) that round
/// into `Z`.
pub fn preimage_interval(format: &FloatFormat, mode: RoundingMode, z: &FloatInterval) -> RealInterval {
    let FloatInterval::Range { lo: a, hi: b } = z else {
        return RealInterval::Empty;
    };
    let (lo, lc, hi, hc) = match mode {
        RoundingMode::RD => {
            let (hi, hc) = if b.is_pos_inf() {
                (ExtReal::PosInf, true)
            } else {
                (format.successor(b).into_value(), false)
            };
            (a.value().clone(), true, hi, hc)
        }
        RoundingMode::RU => {
            let (lo, lc) = if a.is_neg_inf() {
                (ExtReal::NegInf, true)
            } else {
                (format.predecessor(a).into_value(), false)
            };
            (lo, lc, b.value().clone(), true)
        }
        RoundingMode::RNE => {
            let (lo, lc) = rne_lower(format, a);
            let (hi, hc) = rne_upper(format, b);
            (lo, lc, hi, hc)
        }
        RoundingMode::ClampedRD => {
            let max = format.max_finite();
            let (lo, lc) = if a.is_pos_inf() {
                (max.value().clone(), false)
            } else {
                (a.value().clone(), true)
            };
            let (hi, hc) = if b.is_pos_inf() {
                (ExtReal::PosInf, true)
            } else if *b == max {
                (max.value().clone(), true)
            } else {
                (format.successor(b).into_value(), false)
            };
            (lo, lc, hi, hc)
        }
    };
    RealInterval::new(lo, lc, hi, hc)
}

pub fn preimage_of(format: &FloatFormat, mode: RoundingMode, z: &Float) -> RealInterval {
    preimage_interval(format, mode, &FloatInterval::point(z.clone()))
}

/// `x (*) y = fl(x * y)`; `0 * inf` is undefined.
pub fn fp_multiply(format: &FloatFormat, mode: RoundingMode, x: &Float, y: &Float) -> Result<Float> {
    let prod = x.value().checked_mul(y.value()).ok_or(Error::UndefinedProduct)?;
    Ok(round_value(format, mode, &prod))
}

/// Smallest ratio `diam fl^-1[{x}] / beta^(Q(x)-k)` over nonzero finite `x`,
/// where `k = 1` at powers of the base. The mode is regular iff it is `>= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub min_ratio: Rat,
    pub argmin: Float,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.min_ratio >= Rat::from_integer(1.into())
    }
}

pub fn regularity_margin(format: &FloatFormat, mode: RoundingMode, cap: u64) -> Result<RegularityReport> {
    let mut best: Option<RegularityReport> = None;
    for x in format.enumerate(cap)? {
        if !x.is_finite() || x.is_zero() {
            continue;
        }
        let q = x.quantum_exponent();
        let e = format.exponent_of(x.value())?;
        let power = x.rat().unwrap().abs() == format.pow_rat(e);
        let k = if power { 1 } else { 0 };
        let diam = match preimage_of(format, mode, &x).diameter() {
            ExtReal::Finite(d) => d,
            // an unbounded preimage satisfies every lower bound
            _ => continue,
        };
        let ratio = diam / format.pow_rat(q - k);
        if best.as_ref().map_or(true, |b| ratio < b.min_ratio) {
            best = Some(RegularityReport {
                min_ratio: ratio,
                argmin: x,
            });
        }
    }
    best.ok_or_else(|| Error::Domain("format has no nonzero finite values".into()))
}
