//! Bounds propagation for `x (*) y = z` over float intervals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{ExtReal, Rat, RealInterval};
use crate::feasibility::is_feasible;
use crate::format::{Float, FloatFormat, FloatInterval};
use crate::rounding::{fp_multiply, preimage_interval, RoundingMode};
use crate::solver::next_feasible;

/// A union of at most two disjoint intervals of extended reals, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSet {
    pieces: Vec<RealInterval>,
}

impl QuotientSet {
    pub fn empty() -> Self {
        QuotientSet { pieces: Vec::new() }
    }

    /// All finite reals.
    pub fn all_reals() -> Self {
        QuotientSet {
            pieces: vec![RealInterval::reals()],
        }
    }

    /// `(0, +inf]`.
    pub fn positive_half() -> Self {
        QuotientSet {
            pieces: vec![RealInterval::new(ExtReal::zero(), false, ExtReal::PosInf, true)],
        }
    }

    /// `[-inf, 0)`.
    pub fn negative_half() -> Self {
        QuotientSet {
            pieces: vec![RealInterval::new(ExtReal::NegInf, true, ExtReal::zero(), false)],
        }
    }

    fn normalized(mut v: Vec<RealInterval>) -> Self {
        v.retain(|i| !i.is_empty());
        v.sort_by(|a, b| {
            let (la, ca) = a.lo().unwrap();
            let (lb, cb) = b.lo().unwrap();
            la.cmp(lb).then_with(|| cb.cmp(&ca))
        });
        let mut out: Vec<RealInterval> = Vec::new();
        for i in v {
            if let Some(last) = out.last_mut() {
                if let Some(u) = last.union_if_connected(&i) {
                    *last = u;
                    continue;
                }
            }
            out.push(i);
        }
        debug_assert!(out.len() <= 2, "quotient set with {} pieces", out.len());
        QuotientSet { pieces: out }
    }

    pub fn pieces(&self) -> &[RealInterval] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: &ExtReal) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn is_all_reals(&self) -> bool {
        *self == Self::all_reals()
    }

    pub fn is_positive_half(&self) -> bool {
        *self == Self::positive_half()
    }

    pub fn is_negative_half(&self) -> bool {
        *self == Self::negative_half()
    }
}

fn infinite_factor_set(zset: &FloatInterval, y: &Float) -> QuotientSet {
    let own = zset.contains(y);
    let other = zset.contains(&-y.clone());
    match (own, other) {
        (true, true) => QuotientSet::normalized(vec![
            QuotientSet::negative_half().pieces[0].clone(),
            QuotientSet::positive_half().pieces[0].clone(),
        ]),
        (true, false) => QuotientSet::positive_half(),
        (false, true) => QuotientSet::negative_half(),
        (false, false) => QuotientSet::empty(),
    }
}

/// `{ y in R-bar : fl(x y) in Z }` for a fixed float `x`.
pub fn quotient_set(format: &FloatFormat, mode: RoundingMode, x: &Float, zset: &FloatInterval) -> QuotientSet {
    if zset.is_empty() {
        return QuotientSet::empty();
    }
    if x.is_infinite() {
        return infinite_factor_set(zset, x);
    }
    if x.is_zero() {
        return if zset.contains(&format.zero()) {
            QuotientSet::all_reals()
        } else {
            QuotientSet::empty()
        };
    }
    let pre = preimage_interval(format, mode, zset);
    let inv = Rat::one() / x.rat().unwrap();
    QuotientSet::normalized(vec![pre.scale_shift(&inv, &Rat::zero()).expect("nonzero scale")])
}

fn bound_below(v: ExtReal, closed: bool) -> RealInterval {
    RealInterval::new(v, closed, ExtReal::PosInf, true)
}

fn bound_above(v: ExtReal, closed: bool) -> RealInterval {
    RealInterval::new(ExtReal::NegInf, true, v, closed)
}

/// `{ x : exists y in J, x y in P }` for `J` a range of positive finite reals.
///
/// `J` runs from `c` (closed iff `c > 0`) to `d` (closed iff finite).
fn divide_by_positive_range(p: &RealInterval, c: &Rat, d: &ExtReal) -> Vec<RealInterval> {
    let (Some((pl, plc)), Some((ph, phc))) = (p.lo(), p.hi()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for v in [ExtReal::NegInf, ExtReal::zero(), ExtReal::PosInf] {
        if p.contains(&v) {
            out.push(RealInterval::point(v));
        }
    }
    let zero = ExtReal::zero();

    // x > 0: x J meets P iff x c precedes ph and pl precedes x d
    let mut pos = RealInterval::new(zero.clone(), false, ExtReal::PosInf, false);
    let mut alive = true;
    if c.is_zero() {
        alive &= *ph > zero;
    } else {
        pos = pos.intersect(&bound_above(ph.scale(&(Rat::one() / c)), phc));
    }
    match d {
        ExtReal::Finite(dr) => pos = pos.intersect(&bound_below(pl.scale(&(Rat::one() / dr)), plc)),
        _ => alive &= *pl != ExtReal::PosInf,
    }
    if alive {
        out.push(pos);
    }

    // x < 0: x J runs from x d up to x c
    let mut neg = RealInterval::new(ExtReal::NegInf, false, zero.clone(), false);
    let mut alive = true;
    match d {
        ExtReal::Finite(dr) => neg = neg.intersect(&bound_above(ph.scale(&(Rat::one() / dr)), phc)),
        _ => alive &= *ph != ExtReal::NegInf,
    }
    if c.is_zero() {
        alive &= *pl < zero;
    } else {
        neg = neg.intersect(&bound_below(pl.scale(&(Rat::one() / c)), plc));
    }
    if alive {
        out.push(neg);
    }
    out
}

/// `{ x in R-bar : exists real y in [min Y, max Y], fl(x y) in Z }`.
pub fn quotient_relaxation(
    format: &FloatFormat,
    mode: RoundingMode,
    yset: &FloatInterval,
    zset: &FloatInterval,
) -> QuotientSet {
    let (FloatInterval::Range { lo: ylo, hi: yhi }, false) = (yset, zset.is_empty()) else {
        return QuotientSet::empty();
    };
    let pre = preimage_interval(format, mode, zset);
    let mut pieces = Vec::new();
    if yhi.signum() > 0 && !ylo.is_pos_inf() {
        let c = if ylo.signum() > 0 { ylo.rat().unwrap().clone() } else { Rat::zero() };
        pieces.extend(divide_by_positive_range(&pre, &c, yhi.value()));
    }
    if ylo.signum() < 0 && !yhi.is_neg_inf() {
        let c = if yhi.signum() < 0 { -yhi.rat().unwrap().clone() } else { Rat::zero() };
        let d = -ylo.value().clone();
        pieces.extend(divide_by_positive_range(&pre, &c, &d).iter().map(RealInterval::negate));
    }
    if ylo.signum() <= 0 && yhi.signum() >= 0 && zset.contains(&format.zero()) {
        pieces.push(RealInterval::reals());
    }
    for inf in [ylo, yhi] {
        if inf.is_infinite() {
            pieces.extend(infinite_factor_set(zset, inf).pieces);
        }
    }
    QuotientSet::normalized(pieces)
}

/// Result of propagating one multiplication constraint. A flag is `true`
/// when the corresponding interval is the exact hull of the supported values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagationResult {
    pub x: FloatInterval,
    pub y: FloatInterval,
    pub z: FloatInterval,
    pub x_optimal: bool,
    pub y_optimal: bool,
    pub z_optimal: bool,
}

impl PropagationResult {
    pub fn empty() -> Self {
        PropagationResult {
            x: FloatInterval::Empty,
            y: FloatInterval::Empty,
            z: FloatInterval::Empty,
            x_optimal: true,
            y_optimal: true,
            z_optimal: true,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty() || self.y.is_empty() || self.z.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct PropagatorConfig {
    /// Formats with at most this many members may be scanned when the
    /// analytic search does not apply.
    pub oracle_cap: u64,
    /// Replace the corner bounds on `z` with exact ones when `|X'| |Y'|`
    /// does not exceed `oracle_cap`.
    pub confirm_product: bool,
}

impl Default for PropagatorConfig {
    fn default() -> Self {
        PropagatorConfig {
            oracle_cap: crate::oracle::cap_from_env(),
            confirm_product: false,
        }
    }
}

enum Search {
    Found(Float),
    Absent,
    Unknown,
}

fn scan_up(format: &FloatFormat, mode: RoundingMode, a: &Float, b: &Float, zset: &FloatInterval) -> Search {
    let mut x = a.clone();
    while x <= *b {
        if is_feasible(format, mode, &x, zset) {
            return Search::Found(x);
        }
        if x.is_pos_inf() {
            break;
        }
        x = format.successor(&x);
    }
    Search::Absent
}

/// Least feasible float in `[a, b]`.
fn first_feasible_in(
    format: &FloatFormat,
    mode: RoundingMode,
    a: &Float,
    b: &Float,
    zset: &FloatInterval,
    cfg: &PropagatorConfig,
) -> Search {
    let mut a = a.clone();
    if is_feasible(format, mode, &a, zset) {
        return Search::Found(a);
    }
    if a.is_neg_inf() {
        a = format.min_finite();
        if a > *b {
            return Search::Absent;
        }
    }
    match next_feasible(format, mode, &a, zset) {
        Ok(v) if v <= *b => Search::Found(v),
        Ok(_) => Search::Absent,
        Err(_) if format.count() <= BigInt::from(cfg.oracle_cap) => scan_up(format, mode, &a, b, zset),
        Err(_) => Search::Unknown,
    }
}

fn last_feasible_in(
    format: &FloatFormat,
    mode: RoundingMode,
    a: &Float,
    b: &Float,
    zset: &FloatInterval,
    cfg: &PropagatorConfig,
) -> Search {
    match first_feasible_in(format, mode, &-b.clone(), &-a.clone(), zset, cfg) {
        Search::Found(v) => Search::Found(-v),
        other => other,
    }
}

/// `[min X, max X] ∩ R ∩ Feas(Z)` rounded to floats, where `R` is the
/// quotient relaxation of `Y` and `Z`.
///
/// When the analytic search does not apply and the format is too large to
/// scan, the unfiltered bound is returned and the flag is `false`.
pub fn tighten_factor_bounds(
    format: &FloatFormat,
    mode: RoundingMode,
    xset: &FloatInterval,
    yset: &FloatInterval,
    zset: &FloatInterval,
    cfg: &PropagatorConfig,
) -> Result<(FloatInterval, bool)> {
    if xset.is_empty() || yset.is_empty() || zset.is_empty() {
        return Ok((FloatInterval::Empty, true));
    }
    let r = quotient_relaxation(format, mode, yset, zset);
    let xr = xset.to_real();
    let boxes: Vec<(Float, Float)> = r
        .pieces()
        .iter()
        .filter_map(|p| match format.floats_in(&xr.intersect(p)) {
            FloatInterval::Range { lo, hi } => Some((lo, hi)),
            FloatInterval::Empty => None,
        })
        .collect();
    let mut optimal = true;
    let mut lo = None;
    for (a, b) in &boxes {
        match first_feasible_in(format, mode, a, b, zset, cfg) {
            Search::Found(v) => {
                lo = Some(v);
                break;
            }
            Search::Absent => continue,
            Search::Unknown => {
                optimal = false;
                lo = Some(a.clone());
                break;
            }
        }
    }
    let Some(lo) = lo else {
        return Ok((FloatInterval::Empty, true));
    };
    let mut hi = None;
    for (a, b) in boxes.iter().rev() {
        match last_feasible_in(format, mode, a, b, zset, cfg) {
            Search::Found(v) => {
                hi = Some(v);
                break;
            }
            Search::Absent => continue,
            Search::Unknown => {
                optimal = false;
                hi = Some(b.clone());
                break;
            }
        }
    }
    let hi = hi.expect("a feasible lower bound implies an upper bound");
    Ok((FloatInterval::new(lo, hi), optimal))
}

/// `Z ∩ [min P, max P]` where `P` holds the products of the corners of
/// `X x Y`. Never marked optimal.
pub fn tighten_product_bounds(
    format: &FloatFormat,
    mode: RoundingMode,
    xset: &FloatInterval,
    yset: &FloatInterval,
    zset: &FloatInterval,
) -> Result<(FloatInterval, bool)> {
    let (FloatInterval::Range { lo: xl, hi: xh }, FloatInterval::Range { lo: yl, hi: yh }) = (xset, yset)
    else {
        return Ok((FloatInterval::Empty, true));
    };
    if zset.is_empty() {
        return Ok((FloatInterval::Empty, true));
    }
    let mut products = Vec::new();
    for a in [xl, xh] {
        for b in [yl, yh] {
            if let Ok(p) = fp_multiply(format, mode, a, b) {
                products.push(p);
            }
        }
    }
    let has_finite = |lo: &Float, hi: &Float| !(hi.is_neg_inf() || lo.is_pos_inf());
    let zero = format.zero();
    if (xset.contains(&zero) && has_finite(yl, yh)) || (yset.contains(&zero) && has_finite(xl, xh)) {
        products.push(zero);
    }
    let (Some(lo), Some(hi)) = (products.iter().min(), products.iter().max()) else {
        return Err(Error::Domain("every product of the box is undefined".into()));
    };
    Ok((FloatInterval::new(lo.clone(), hi.clone()).intersect(zset), false))
}

fn exact_product_range(
    format: &FloatFormat,
    mode: RoundingMode,
    xset: &FloatInterval,
    yset: &FloatInterval,
    zset: &FloatInterval,
) -> FloatInterval {
    let (Some(xl), Some(xh), Some(yl), Some(yh)) = (xset.lo(), xset.hi(), yset.lo(), yset.hi()) else {
        return FloatInterval::Empty;
    };
    let mut lo: Option<Float> = None;
    let mut hi: Option<Float> = None;
    let mut x = xl.clone();
    loop {
        let mut y = yl.clone();
        loop {
            if let Ok(p) = fp_multiply(format, mode, &x, &y) {
                if zset.contains(&p) {
                    if lo.as_ref().map_or(true, |l| p < *l) {
                        lo = Some(p.clone());
                    }
                    if hi.as_ref().map_or(true, |h| p > *h) {
                        hi = Some(p);
                    }
                }
            }
            if y == *yh {
                break;
            }
            y = format.successor(&y);
        }
        if x == *xh {
            break;
        }
        x = format.successor(&x);
    }
    match (lo, hi) {
        (Some(l), Some(h)) => FloatInterval::new(l, h),
        _ => FloatInterval::Empty,
    }
}

/// Tightens all three intervals of `x (*) y = z`. An empty interval anywhere
/// empties all three.
pub fn solve_mul_constraint(
    format: &FloatFormat,
    mode: RoundingMode,
    xset: &FloatInterval,
    yset: &FloatInterval,
    zset: &FloatInterval,
    cfg: &PropagatorConfig,
) -> Result<PropagationResult> {
    let (x, x_optimal) = tighten_factor_bounds(format, mode, xset, yset, zset, cfg)?;
    let (y, y_optimal) = tighten_factor_bounds(format, mode, yset, xset, zset, cfg)?;
    if x.is_empty() || y.is_empty() {
        return Ok(PropagationResult::empty());
    }
    let (mut z, mut z_optimal) = tighten_product_bounds(format, mode, &x, &y, zset)?;
    if cfg.confirm_product && !z.is_empty() {
        let pairs = x.len(format) * y.len(format);
        if pairs.cmp(&BigInt::from(cfg.oracle_cap)) != Ordering::Greater {
            z = exact_product_range(format, mode, &x, &y, &z);
            z_optimal = true;
        }
    }
    if z.is_empty() {
        return Ok(PropagationResult::empty());
    }
    // an exact nonempty x hull has a supporting product, which must be the lone z
    if x_optimal && z.lo() == z.hi() {
        z_optimal = true;
    }
    Ok(PropagationResult {
        x,
        y,
        z,
        x_optimal,
        y_optimal,
        z_optimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn dec() -> FloatFormat {
        FloatFormat::new(10, 3, -1, 2).unwrap()
    }

    fn tiny() -> FloatFormat {
        FloatFormat::new(2, 3, -2, 1).unwrap()
    }

    fn f(fmt: &FloatFormat, n: i64, d: i64) -> Float {
        fmt.from_value(&rat(n, d)).unwrap()
    }

    fn cfg() -> PropagatorConfig {
        PropagatorConfig {
            oracle_cap: 1 << 20,
            confirm_product: false,
        }
    }

    #[test]
    fn quotient_set_example() {
        let t = tiny();
        let z = FloatInterval::point(f(&t, 1, 1));
        let q = quotient_set(&t, RoundingMode::RD, &f(&t, 2, 1), &z);
        assert_eq!(
            q.pieces(),
            &[RealInterval::new(ExtReal::ratio(1, 2), true, ExtReal::ratio(5, 8), false)]
        );
    }

    #[test]
    fn quotient_set_special_cases() {
        let t = tiny();
        let rd = RoundingMode::RD;
        let inf = Float::pos_inf();
        let zero = FloatInterval::point(t.zero());
        assert!(quotient_set(&t, rd, &t.zero(), &zero).is_all_reals());
        assert!(quotient_set(&t, rd, &t.zero(), &FloatInterval::point(f(&t, 1, 1))).is_empty());
        let both = FloatInterval::all();
        assert_eq!(quotient_set(&t, rd, &inf, &both).pieces().len(), 2);
        assert!(quotient_set(&t, rd, &inf, &FloatInterval::point(inf.clone())).is_positive_half());
        assert!(quotient_set(&t, rd, &inf, &FloatInterval::point(Float::neg_inf())).is_negative_half());
        let ninf = Float::neg_inf();
        assert!(quotient_set(&t, rd, &ninf, &FloatInterval::point(ninf.clone())).is_positive_half());
    }

    #[test]
    fn relaxation_examples() {
        let d = dec();
        let rd = RoundingMode::RD;
        let z = FloatInterval::point(f(&d, 5, 1));
        let y = FloatInterval::new(f(&d, 220, 100), f(&d, 250, 100));
        let r = quotient_relaxation(&d, rd, &y, &z);
        assert_eq!(
            r.pieces(),
            &[RealInterval::new(ExtReal::int(2), true, ExtReal::Finite(rat(501, 220)), false)]
        );
        let y = FloatInterval::new(f(&d, 1, 1), f(&d, 250, 100));
        let r = quotient_relaxation(&d, rd, &y, &z);
        assert_eq!(
            r.pieces(),
            &[RealInterval::new(ExtReal::int(2), true, ExtReal::Finite(rat(501, 100)), false)]
        );
    }

    #[test]
    fn relaxation_matches_quotient_sets_pointwise() {
        // R contains x iff the quotient set of x meets [min Y, max Y]
        let t = tiny();
        let all = t.enumerate(1 << 20).unwrap();
        for mode in RoundingMode::REGULAR {
            for (i, ylo) in all.iter().enumerate().step_by(3) {
                for yhi in all[i..].iter().step_by(5) {
                    let y = FloatInterval::new(ylo.clone(), yhi.clone());
                    for z in all.iter().step_by(4) {
                        let zs = FloatInterval::point(z.clone());
                        let r = quotient_relaxation(&t, mode, &y, &zs);
                        for x in &all {
                            let q = quotient_set(&t, mode, x, &zs);
                            let meets = q.pieces().iter().any(|p| !p.intersect(&y.to_real()).is_empty());
                            assert_eq!(r.contains(x.value()), meets, "{mode} x={x} y={y} z={z}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn product_bounds_example() {
        let d = dec();
        let x = FloatInterval::new(f(&d, 220, 100), f(&d, 250, 100));
        let y = FloatInterval::new(f(&d, 1, 1), f(&d, 250, 100));
        let (z, opt) = tighten_product_bounds(&d, RoundingMode::RD, &x, &y, &FloatInterval::all()).unwrap();
        assert_eq!(z, FloatInterval::new(f(&d, 220, 100), f(&d, 625, 100)));
        assert!(!opt);
    }

    #[test]
    fn zero_box_with_infinite_partner() {
        let t = tiny();
        let x = FloatInterval::point(t.zero());
        let y = FloatInterval::all();
        let (z, _) = tighten_product_bounds(&t, RoundingMode::RD, &x, &y, &FloatInterval::all()).unwrap();
        assert_eq!(z, FloatInterval::point(t.zero()));
        let y = FloatInterval::point(Float::pos_inf());
        assert!(tighten_product_bounds(&t, RoundingMode::RD, &x, &y, &FloatInterval::all()).is_err());
    }

    #[test]
    fn example_one() {
        let d = dec();
        let x = FloatInterval::new(f(&d, 220, 100), f(&d, 250, 100));
        let y = FloatInterval::new(f(&d, 1, 1), f(&d, 250, 100));
        let z = FloatInterval::point(f(&d, 5, 1));
        let r = solve_mul_constraint(&d, RoundingMode::RD, &x, &y, &z, &cfg()).unwrap();
        assert_eq!(r.x, FloatInterval::new(f(&d, 233, 100), f(&d, 250, 100)));
        assert_eq!(r.y, FloatInterval::new(f(&d, 200, 100), f(&d, 215, 100)));
        assert!(r.x_optimal && r.y_optimal);
        assert_eq!(r.z, z);
    }

    #[test]
    fn empty_inputs_empty_everything() {
        let d = dec();
        let r = solve_mul_constraint(
            &d,
            RoundingMode::RD,
            &FloatInterval::Empty,
            &FloatInterval::all(),
            &FloatInterval::all(),
            &cfg(),
        )
        .unwrap();
        assert_eq!(r, PropagationResult::empty());
    }
}
