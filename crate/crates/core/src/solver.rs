//! Next feasible factor by integer root finding.
//!
//! The search for the least feasible float above `x` reduces to the least
//! integral significand `M >= M_x` for which a remainder of a fixed integer
//! modulo `M` lands in a small window. Between consecutive roots of the
//! remainder the integer quotient is constant, so the remainder is a
//! quadratic in `M` and the candidates come from quadratic roots.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Clause, Error, Result};
use crate::exact::{ceil, floor, int_mod, integers_in, isqrt_floor, IntegerSpan, Rat, RealInterval};
use crate::feasibility::{is_feasible, remainder_window};
use crate::format::{Float, FloatFormat, FloatInterval};
use crate::opcount::tick;
use crate::rounding::RoundingMode;

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    tick(1);
    num_integer::Integer::div_floor(a, b)
}

fn quad(a: &BigInt, b: &BigInt, c: &BigInt, m: &BigInt) -> BigInt {
    tick(4);
    (a * m + b) * m + c
}

/// `{ floor(r) : a r^2 + b r + c = 0 }` in increasing order, for `a != 0`.
pub fn quadratic_roots_floor(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<Vec<BigInt>> {
    if a.is_zero() {
        return domain("leading coefficient must be nonzero");
    }
    let (a, b, c) = if a.is_negative() { (-a, -b, -c) } else { (a.clone(), b.clone(), c.clone()) };
    tick(3);
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    if disc.is_negative() {
        return Ok(Vec::new());
    }
    let (s, exact) = isqrt_floor(&disc)?;
    let neg_floor = if exact { -&s } else { -&s - 1 };
    let two_a = &a * 2;
    tick(3);
    let r1 = div_floor(&(-&b + neg_floor), &two_a);
    let r2 = div_floor(&(-&b + s), &two_a);
    Ok(if r1 == r2 { vec![r1] } else { vec![r1, r2] })
}

/// Least integer `m >= n` with `a m^2 + b m + c` in `I`; `None` if there is none.
pub fn next_quadratic_point_within_bounds(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    n: &BigInt,
    i: &RealInterval,
) -> Result<Option<BigInt>> {
    let holds = |m: &BigInt| i.contains_rat(&Rat::from_integer(quad(a, b, c, m)));
    if holds(n) {
        return Ok(Some(n.clone()));
    }
    let IntegerSpan::Span { min, max } = integers_in(i) else {
        return Ok(None);
    };
    let mut best: Option<BigInt> = None;
    for bound in [max, min].into_iter().flatten() {
        tick(1);
        for r in quadratic_roots_floor(a, b, &(c - &bound))? {
            for m in [r.clone(), r + 1] {
                tick(1);
                if m >= *n && best.as_ref().map_or(true, |v| m < *v) && holds(&m) {
                    best = Some(m);
                }
            }
        }
    }
    Ok(best)
}

/// Least `floor(r)` with `r >= n` and `(a r^2 + c) mod r = 0`, over the real
/// roots where the quotient `(a r^2 + c) / r` takes the value it takes at `n`
/// or its neighbour.
pub fn next_quadratic_mod_linear_root_floor(a: &BigInt, c: &BigInt, n: &BigInt) -> Result<Option<BigInt>> {
    if n.is_zero() {
        return Err(Error::Precondition(Clause::ZeroModulus));
    }
    tick(3);
    let q = Rat::new(a * n * n + c, n.clone());
    let mut best: Option<BigInt> = None;
    for qq in [floor(&q), ceil(&q)] {
        for r in quadratic_roots_floor(a, &-qq, c)? {
            tick(1);
            if r >= *n && best.as_ref().map_or(true, |v| r < *v) {
                best = Some(r);
            }
        }
    }
    Ok(best)
}

fn remainder_hit(ab: &BigInt, m: &BigInt, i: &RealInterval) -> bool {
    let r1 = int_mod(&-ab, m);
    if i.contains_rat(&Rat::from_integer(r1)) {
        return true;
    }
    let r2 = -int_mod(ab, m);
    i.contains_rat(&Rat::from_integer(r2))
}

/// Checks `0 < |a| <= |n| <= |b| <= |2a|`, `0 in I` and `diam I >= |a|`,
/// under which [`next_divisor_in_bounds`] returns the least solution.
pub fn divisor_search_requirements(a: &BigInt, b: &BigInt, n: &BigInt, i: &RealInterval) -> Result<()> {
    let (aa, bb, nn) = (a.abs(), b.abs(), n.abs());
    let ordered = aa.is_positive() && aa <= nn && nn <= bb && bb <= &aa * 2;
    let wide = i.diameter() >= crate::exact::ExtReal::Finite(Rat::from_integer(aa));
    if !ordered || !wide || !i.contains_rat(&Rat::zero()) {
        return Err(Error::Precondition(Clause::DivisorArguments));
    }
    Ok(())
}

/// Least integer `m >= n` such that `(-ab mod m)` or `-(ab mod m)` lies in `I`.
///
/// The answer is guaranteed minimal when [`divisor_search_requirements`]
/// holds; otherwise the arguments only need to be nonzero with `0 in I`.
pub fn next_divisor_in_bounds(a: &BigInt, b: &BigInt, n: &BigInt, i: &RealInterval) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() || n.is_zero() || !i.contains_rat(&Rat::zero()) {
        return Err(Error::Precondition(Clause::DivisorArguments));
    }
    tick(1);
    let ab = a * b;
    if remainder_hit(&ab, n, i) {
        return Ok(n.clone());
    }
    let abs_ab = ab.abs();
    let r = next_quadratic_mod_linear_root_floor(&-BigInt::one(), &-&abs_ab, n)?
        .ok_or_else(|| Error::Domain("no divisor root above n".into()))?;
    tick(3);
    let q = Rat::new(-(n * n) - &abs_ab, n.clone());
    let (fq, cq) = (floor(&q), ceil(&q));
    let neg_ab = -&ab;
    let (c, d) = if ab.is_positive() {
        let m1 = -BigInt::one();
        (
            next_quadratic_point_within_bounds(&m1, &-fq, &neg_ab, n, i)?,
            next_quadratic_point_within_bounds(&m1, &-cq, &neg_ab, n, i)?,
        )
    } else {
        let p1 = BigInt::one();
        (
            next_quadratic_point_within_bounds(&p1, &cq, &neg_ab, n, i)?,
            next_quadratic_point_within_bounds(&p1, &fq, &neg_ab, n, i)?,
        )
    };
    // The quadratics agree with the remainders strictly between n and the root,
    // so any of their points at or below floor(root) is a genuine solution.
    let below = [c, d]
        .into_iter()
        .flatten()
        .filter(|v| *v <= r && remainder_hit(&ab, v, i))
        .min();
    match below {
        Some(v) => Ok(v),
        None if remainder_hit(&ab, &r, i) => Ok(r),
        None => Ok(r + 1),
    }
}

/// Least `z`-plausible integral significand `M >= m_x`.
pub fn next_plausible(
    format: &FloatFormat,
    mode: RoundingMode,
    m_x: &BigInt,
    z: &Float,
    zset: &FloatInterval,
) -> Result<BigInt> {
    let (a, b, window) = divisor_problem(format, mode, m_x, z, zset)?;
    tick(1);
    if remainder_hit(&(&a * &b), m_x, &window) {
        return Ok(m_x.clone());
    }
    let (amx, amz) = (m_x.abs(), z.significand().abs());
    let two_min = &a * 2;
    let fits = (amx <= amz && amz <= two_min) || (amz == a && *format.sig_bound() <= two_min);
    if !fits {
        return Err(Error::Precondition(Clause::NumeratorBounds));
    }
    next_divisor_in_bounds(&a, &b, m_x, &window)
}

/// `(beta^(p-1), M_z beta^-k, I)` such that `M` is `z`-plausible iff `M` solves
/// the divisor problem, for `M` in the binade of `m_x` up to `M_z`.
fn divisor_problem(
    format: &FloatFormat,
    mode: RoundingMode,
    m_x: &BigInt,
    z: &Float,
    zset: &FloatInterval,
) -> Result<(BigInt, BigInt, RealInterval)> {
    if !z.is_finite() || z.is_zero() {
        return Err(Error::Precondition(Clause::ZNotNormal));
    }
    if !zset.contains(z) {
        return domain("z must belong to Z");
    }
    let amx = m_x.abs();
    if amx < *format.min_sig() || amx >= *format.sig_bound() {
        return Err(Error::Precondition(Clause::SignificandRange));
    }
    let p = format.precision() as i64;
    let mz = z.significand();
    let k = format.floor_log(&Rat::new(mz.clone(), m_x.clone()));
    if k > 0 {
        return Err(Error::Precondition(Clause::NumeratorBounds));
    }
    let window = remainder_window(format, mode, z, zset, p - 1 - z.quantum_exponent() - k);
    Ok((format.min_sig().into_owned(), mz * format.pow(-k).into_owned(), window))
}

/// Requirement failure for using `z` as the numerator when starting at `x`.
fn numerator_clause(format: &FloatFormat, x: &Float, z: &Float) -> Option<Clause> {
    if !format.is_normal(z) {
        return Some(Clause::ZNotNormal);
    }
    tick(2);
    let q = (z.rat().unwrap() / x.rat().unwrap()).abs();
    if q < format.pow_rat(format.emin()) || q > *format.max_finite().rat().unwrap() {
        return Some(Clause::QuotientOutOfRange);
    }
    if format.beta() != 2 {
        let mz = z.significand().abs();
        let lo = format.min_sig();
        if mz <= *lo || mz > &*lo * 2 {
            return Some(Clause::SignificandClause);
        }
    }
    None
}

fn choose_numerator(
    format: &FloatFormat,
    x: &Float,
    zset: &FloatInterval,
    allow: impl Fn(Clause) -> bool,
) -> Result<Float> {
    let (lo, hi) = (zset.lo().unwrap(), zset.hi().unwrap());
    let mut first = None;
    for z in [lo, hi] {
        match numerator_clause(format, x, z) {
            None => return Ok(z.clone()),
            Some(c) if allow(c) => return Ok(z.clone()),
            Some(c) => {
                first.get_or_insert(c);
            }
        }
    }
    Err(Error::Precondition(first.expect("two candidates tried")))
}

fn next_feasible_core(
    format: &FloatFormat,
    mode: RoundingMode,
    x: &Float,
    zset: &FloatInterval,
    z: &Float,
) -> Result<Option<Float>> {
    let mx = x.significand().clone();
    let q = x.quantum_exponent();
    for m in [mx.clone(), mx.abs()] {
        let mb = next_plausible(format, mode, &m, z, zset)?;
        if let Some(b) = format.from_parts(mb, q) {
            if is_feasible(format, mode, &b, zset) {
                return Ok(Some(b));
            }
        }
        if !mx.is_negative() {
            break;
        }
    }
    Ok(None)
}

fn check_start(format: &FloatFormat, mode: RoundingMode, x: &Float) -> Result<()> {
    if !mode.is_regular() {
        return Err(Error::Precondition(Clause::IrregularRounding));
    }
    if !format.is_normal(x) {
        return Err(Error::Precondition(Clause::XNotNormal));
    }
    Ok(())
}

/// Least member of `Feas(Z)` that is `>= x`, or `+inf` if there is none.
///
/// Requires a regular mode, normal `x`, and a normal numerator `z` (tried as
/// `min Z`, then `max Z`) with `beta^emin <= |z/x| <= max F` and, for
/// `beta > 2`, a significand in `(1, 2]`. A feasible `x` is returned as is.
pub fn next_feasible(format: &FloatFormat, mode: RoundingMode, x: &Float, zset: &FloatInterval) -> Result<Float> {
    if !mode.is_regular() {
        return Err(Error::Precondition(Clause::IrregularRounding));
    }
    if zset.is_empty() {
        return Ok(Float::pos_inf());
    }
    if is_feasible(format, mode, x, zset) {
        return Ok(x.clone());
    }
    check_start(format, mode, x)?;
    let z = choose_numerator(format, x, zset, |_| false)?;
    Ok(next_feasible_core(format, mode, x, zset, &z)?.unwrap_or_else(Float::pos_inf))
}

/// Greatest member of `Feas(Z)` that is `<= x`, or `-inf` if there is none.
pub fn prev_feasible(format: &FloatFormat, mode: RoundingMode, x: &Float, zset: &FloatInterval) -> Result<Float> {
    Ok(-next_feasible(format, mode, &-x.clone(), zset)?)
}

/// Variant of [`next_feasible`] without the significand clause, at the cost
/// of a bounded number of rounds.
///
/// Each round settles the binade of the current point exactly: divisor
/// searches restart past each failed root until a plausible significand is
/// found or the binade is exhausted. Where plausibility does not decide
/// feasibility (subnormal points, quotients out of range), a round steps to
/// the successor instead. Fails with [`Error::Exhausted`] after `cap` rounds.
pub fn next_feasible_iterated(
    format: &FloatFormat,
    mode: RoundingMode,
    x: &Float,
    zset: &FloatInterval,
    cap: usize,
) -> Result<Float> {
    if !mode.is_regular() {
        return Err(Error::Precondition(Clause::IrregularRounding));
    }
    if zset.is_empty() {
        return Ok(Float::pos_inf());
    }
    let mut rounds = 0;
    let mut x = x.clone();
    loop {
        if is_feasible(format, mode, &x, zset) || x.is_pos_inf() {
            return Ok(x);
        }
        x = match settle_binade(format, mode, &x, zset, &mut rounds, cap)? {
            Ok(found) => return Ok(found),
            Err(resume) => resume,
        };
    }
}

/// Plausibility of the significand of `v` with respect to `z` decides its
/// feasibility: the quotient `z/v` is in the normal range.
fn decided_by_plausibility(format: &FloatFormat, v: &Float, z: &Float) -> bool {
    numerator_clause(format, v, z).map_or(true, |c| c == Clause::SignificandClause)
}

fn spend(rounds: &mut usize, cap: usize) -> Result<()> {
    *rounds += 1;
    if *rounds > cap {
        return Err(Error::Exhausted(cap));
    }
    Ok(())
}

/// `Ok(v)` with the least feasible `v >= x` in the binade of the infeasible
/// `x`, or `Err(resume)` with a point below which nothing is feasible.
fn settle_binade(
    format: &FloatFormat,
    mode: RoundingMode,
    x: &Float,
    zset: &FloatInterval,
    rounds: &mut usize,
    cap: usize,
) -> Result<std::result::Result<Float, Float>> {
    spend(rounds, cap)?;
    let step = Err(format.successor(x));
    if !format.is_normal(x) {
        return Ok(step);
    }
    let Ok(z) = choose_numerator(format, x, zset, |c| c == Clause::SignificandClause) else {
        return Ok(step);
    };
    let mx = x.significand().clone();
    let q = x.quantum_exponent();
    let Ok((a, b, window)) = divisor_problem(format, mode, &mx, &z, zset) else {
        return Ok(step);
    };
    // last significand of the binade in the upward direction
    let end = if mx.is_positive() {
        format.sig_bound().into_owned() - 1
    } else {
        -format.min_sig().into_owned()
    };
    let ab = &a * &b;
    let mut n = mx;
    loop {
        if remainder_hit(&ab, &n, &window) {
            break;
        }
        spend(rounds, cap)?;
        n = next_divisor_in_bounds(&a, &b, &n, &window)?;
        if n > end {
            let last = format.from_parts(end, q).expect("binade end is representable");
            if !decided_by_plausibility(format, &last, &z) {
                return Ok(step);
            }
            return Ok(Err(format.successor(&last)));
        }
    }
    let cand = format.from_parts(n, q).expect("significand within the binade");
    if decided_by_plausibility(format, &cand, &z) && is_feasible(format, mode, &cand, zset) {
        return Ok(Ok(cand));
    }
    Ok(step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ExtReal};

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn half_open(lo: i64, hi: i64, lo_closed: bool) -> RealInterval {
        RealInterval::new(ExtReal::int(lo), lo_closed, ExtReal::int(hi), !lo_closed)
    }

    fn tiny() -> FloatFormat {
        FloatFormat::new(2, 3, -2, 1).unwrap()
    }

    fn f(fmt: &FloatFormat, n: i64, d: i64) -> Float {
        fmt.from_value(&rat(n, d)).unwrap()
    }

    #[test]
    fn quadratic_roots_examples() {
        assert_eq!(quadratic_roots_floor(&bi(1), &bi(-13), &bi(40)).unwrap(), vec![bi(5), bi(8)]);
        assert_eq!(quadratic_roots_floor(&bi(1), &bi(0), &bi(-2)).unwrap(), vec![bi(-2), bi(1)]);
        assert!(quadratic_roots_floor(&bi(1), &bi(0), &bi(1)).unwrap().is_empty());
        assert_eq!(quadratic_roots_floor(&bi(-1), &bi(13), &bi(-40)).unwrap(), vec![bi(5), bi(8)]);
        assert!(quadratic_roots_floor(&bi(0), &bi(1), &bi(1)).is_err());
    }

    #[test]
    fn quadratic_point_examples() {
        let i = half_open(-4, 0, false);
        assert_eq!(
            next_quadratic_point_within_bounds(&bi(-1), &bi(11), &bi(-28), &bi(6), &i).unwrap(),
            Some(bi(7))
        );
        assert_eq!(
            next_quadratic_point_within_bounds(&bi(-1), &bi(10), &bi(-28), &bi(6), &i).unwrap(),
            None
        );
        let i = half_open(0, 4, true);
        assert_eq!(
            next_quadratic_point_within_bounds(&bi(-1), &bi(13), &bi(-40), &bi(5), &i).unwrap(),
            Some(bi(5))
        );
    }

    #[test]
    fn mod_linear_root_examples() {
        let m1 = bi(-1);
        assert_eq!(next_quadratic_mod_linear_root_floor(&m1, &bi(-28), &bi(6)).unwrap(), Some(bi(7)));
        assert_eq!(next_quadratic_mod_linear_root_floor(&m1, &bi(-40), &bi(5)).unwrap(), Some(bi(5)));
        assert_eq!(next_quadratic_mod_linear_root_floor(&m1, &bi(-40), &bi(6)).unwrap(), Some(bi(8)));
        assert!(next_quadratic_mod_linear_root_floor(&m1, &bi(-40), &bi(0)).is_err());
    }

    #[test]
    fn divisor_examples() {
        let i = half_open(-4, 0, false);
        assert_eq!(next_divisor_in_bounds(&bi(4), &bi(7), &bi(6), &i).unwrap(), bi(7));
        assert_eq!(next_divisor_in_bounds(&bi(4), &bi(5), &bi(5), &half_open(0, 4, true)).unwrap(), bi(5));
        assert_eq!(next_divisor_in_bounds(&bi(4), &bi(10), &bi(6), &i).unwrap(), bi(8));
        assert!(divisor_search_requirements(&bi(4), &bi(10), &bi(6), &i).is_err());
        assert!(divisor_search_requirements(&bi(4), &bi(7), &bi(6), &i).is_ok());
    }

    #[test]
    fn plausible_examples() {
        let t = tiny();
        let z = f(&t, 7, 4);
        let zs = FloatInterval::point(z.clone());
        assert_eq!(next_plausible(&t, RoundingMode::RU, &bi(6), &z, &zs).unwrap(), bi(7));
        let z = f(&t, 5, 4);
        let zs = FloatInterval::point(z.clone());
        assert_eq!(next_plausible(&t, RoundingMode::RD, &bi(6), &z, &zs).unwrap(), bi(6));
        assert_eq!(next_plausible(&t, RoundingMode::RD, &bi(5), &z, &zs).unwrap(), bi(5));
    }

    #[test]
    fn next_and_prev_examples() {
        let t = tiny();
        let ru = RoundingMode::RU;
        let zs = FloatInterval::point(f(&t, 7, 4));
        assert_eq!(next_feasible(&t, ru, &f(&t, 3, 2), &zs).unwrap(), f(&t, 7, 4));
        assert_eq!(next_feasible(&t, ru, &f(&t, -7, 4), &zs).unwrap(), f(&t, -7, 4));
        assert_eq!(prev_feasible(&t, ru, &f(&t, 2, 1), &zs).unwrap(), f(&t, 2, 1));
        assert_eq!(prev_feasible(&t, ru, &f(&t, 3, 2), &zs).unwrap(), f(&t, 5, 4));
    }

    #[test]
    fn rejects_irregular_and_subnormal_starts() {
        let t = tiny();
        let zs = FloatInterval::point(f(&t, 7, 4));
        assert_eq!(
            next_feasible(&t, RoundingMode::ClampedRD, &f(&t, 3, 2), &zs),
            Err(Error::Precondition(Clause::IrregularRounding))
        );
        assert_eq!(
            next_feasible(&t, RoundingMode::RU, &f(&t, 1, 16), &zs),
            Err(Error::Precondition(Clause::XNotNormal))
        );
    }

    #[test]
    fn decimal_numerator_clause() {
        let d = FloatFormat::new(10, 3, -1, 2).unwrap();
        let z = d.from_value(&rat(5, 1)).unwrap();
        let x = d.from_value(&rat(220, 100)).unwrap();
        let zs = FloatInterval::point(z);
        assert_eq!(
            next_feasible(&d, RoundingMode::RD, &x, &zs),
            Err(Error::Precondition(Clause::SignificandClause))
        );
        let v = next_feasible_iterated(&d, RoundingMode::RD, &x, &zs, 64).unwrap();
        assert_eq!(v, d.from_value(&rat(233, 100)).unwrap());
    }
}
