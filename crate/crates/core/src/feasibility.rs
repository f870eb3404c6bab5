//! Deciding whether a float can be a factor of some member of a target set.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{domain, Clause, Error, Result};
use crate::exact::{mod_floor, ExtReal, Rat, RealInterval};
use crate::format::{Float, FloatFormat, FloatInterval};
use crate::opcount::tick;
use crate::rounding::{fp_multiply, preimage_interval, round_value, RoundingMode};

/// A `y` with `x (*) y` in `Z`, if one exists.
///
/// Uses the fact that for nonzero finite `x` and any finite `z` in `Z`, some
/// suitable `y` exists iff one of the two neighbours of `z/x` works.
pub fn feasibility_witness(
    format: &FloatFormat,
    mode: RoundingMode,
    x: &Float,
    z: &FloatInterval,
) -> Option<Float> {
    let FloatInterval::Range { lo, hi } = z else {
        return None;
    };
    let has_zero = lo.signum() <= 0 && hi.signum() >= 0;
    let has_pos_inf = hi.is_pos_inf();
    let has_neg_inf = lo.is_neg_inf();
    if x.is_zero() {
        return has_zero.then(|| format.zero());
    }
    if x.is_infinite() {
        return if has_pos_inf {
            Some(x.clone())
        } else if has_neg_inf {
            Some(-x.clone())
        } else {
            None
        };
    }
    if has_zero {
        return Some(format.zero());
    }
    let toward = |s: i32| {
        if s * x.signum() > 0 {
            Float::pos_inf()
        } else {
            Float::neg_inf()
        }
    };
    if has_pos_inf {
        return Some(toward(1));
    }
    if has_neg_inf {
        return Some(toward(-1));
    }
    let zr = lo.rat().expect("finite bound");
    tick(1);
    let t = ExtReal::Finite(zr / x.rat().unwrap());
    for m in [RoundingMode::RD, RoundingMode::RU] {
        let y = round_value(format, m, &t);
        let p = fp_multiply(format, mode, x, &y).expect("x is finite and nonzero");
        if z.contains(&p) {
            return Some(y);
        }
    }
    None
}

/// `x` belongs to `Feas(Z)`: some float `y` has `x (*) y` in `Z`.
pub fn is_feasible(format: &FloatFormat, mode: RoundingMode, x: &Float, z: &FloatInterval) -> bool {
    feasibility_witness(format, mode, x, z).is_some()
}

/// `x` is a factor of `z`, with a cofactor when it is.
pub fn is_factor(format: &FloatFormat, mode: RoundingMode, x: &Float, z: &Float) -> (bool, Option<Float>) {
    let w = feasibility_witness(format, mode, x, &FloatInterval::point(z.clone()));
    (w.is_some(), w)
}

/// Which of the three sufficient conditions explains an infeasible `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfeasibilityCase {
    /// `|z/x|` is below the normal range.
    SubnormalQuotient,
    /// `z` is a power of the base, `|m_z| < |m_x|`, and `fl^-1[Z]` is narrower than `beta^Q(z)`.
    PowerNumerator,
    /// `|m_x| < |m_z|` and `fl^-1[Z]` is narrower than `beta^(Q(z)+1)`.
    NarrowZ,
    /// `x` is feasible, or none of the conditions applies.
    NotApplicable,
}

pub fn classify_infeasibility(
    format: &FloatFormat,
    mode: RoundingMode,
    x: &Float,
    z: &Float,
    zset: &FloatInterval,
) -> Result<InfeasibilityCase> {
    if !mode.is_regular() {
        return Err(Error::Precondition(Clause::IrregularRounding));
    }
    if !x.is_finite() || x.is_zero() {
        return domain("x must be finite and nonzero");
    }
    if !zset.contains(z) {
        return domain("z must belong to Z");
    }
    let Some(zr) = z.rat() else {
        return Err(Error::Precondition(Clause::ZNotNormal));
    };
    tick(2);
    let quotient = (zr / x.rat().unwrap()).abs();
    if quotient > *format.max_finite().rat().unwrap() {
        return Err(Error::Precondition(Clause::QuotientOutOfRange));
    }
    if is_feasible(format, mode, x, zset) {
        return Ok(InfeasibilityCase::NotApplicable);
    }
    if quotient < format.pow_rat(format.emin()) {
        return Ok(InfeasibilityCase::SubnormalQuotient);
    }
    let mx = x.significand().abs();
    let mz = z.significand().abs();
    let qz = z.quantum_exponent();
    let diam = preimage_interval(format, mode, zset).diameter();
    let below = |k: i64| diam < ExtReal::Finite(format.pow_rat(k));
    if mz == *format.min_sig() && mz < mx && below(qz) {
        return Ok(InfeasibilityCase::PowerNumerator);
    }
    if mx < mz && below(qz + 1) {
        return Ok(InfeasibilityCase::NarrowZ);
    }
    Ok(InfeasibilityCase::NotApplicable)
}

/// `(fl^-1[Z] - z) * beta^shift`.
pub(crate) fn remainder_window(
    format: &FloatFormat,
    mode: RoundingMode,
    z: &Float,
    zset: &FloatInterval,
    shift: i64,
) -> RealInterval {
    let pre = preimage_interval(format, mode, zset);
    pre.scale_shift(&Rat::from_integer(1.into()), &-z.rat().unwrap().clone())
        .and_then(|i| i.scale_shift(&format.pow_rat(shift), &Rat::zero()))
        .expect("nonzero scale")
}

/// Integral significand `M` is `z`-plausible: one of the two remainders of
/// `M_z beta^(p-1)` modulo `M beta^k` falls in the scaled preimage window.
pub fn is_plausible(
    format: &FloatFormat,
    mode: RoundingMode,
    m: &BigInt,
    z: &Float,
    zset: &FloatInterval,
) -> Result<bool> {
    if m.is_zero() {
        return domain("significand must be nonzero");
    }
    if !z.is_finite() || z.is_zero() {
        return Err(Error::Precondition(Clause::ZNotNormal));
    }
    if !zset.contains(z) {
        return domain("z must belong to Z");
    }
    let p = format.precision() as i64;
    let mz = z.significand().clone();
    let k = format.floor_log(&Rat::new(mz.clone(), m.clone()));
    let window = remainder_window(format, mode, z, zset, p - 1 - z.quantum_exponent());
    let a = Rat::from_integer(mz * format.pow(p - 1).into_owned());
    let modulus = Rat::from_integer(m.clone()) * format.pow_rat(k);
    Ok(window.contains_rat(&-mod_floor(&a, &modulus)) || window.contains_rat(&mod_floor(&-a, &modulus)))
}
