//! Parametric floating-point formats and their values.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Neg;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{ExtReal, RealInterval, Rat};
use crate::opcount::tick;

/// Largest exponent for which powers of the base are kept in the table.
const POW_TABLE_LIMIT: i64 = 1 << 14;

/// A format `(beta, p, emin, emax)`: values `M * beta^q` with `|M| < beta^p`
/// and `emin - p + 1 <= q <= emax - p + 1`, plus both infinities.
#[derive(Clone)]
pub struct FloatFormat {
    beta: u32,
    p: u32,
    emin: i64,
    emax: i64,
    pows: Arc<Vec<BigInt>>,
}

impl PartialEq for FloatFormat {
    fn eq(&self, other: &Self) -> bool {
        self.params() == other.params()
    }
}

impl Eq for FloatFormat {}

impl fmt::Debug for FloatFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FloatFormat({}, {}, {}, {})", self.beta, self.p, self.emin, self.emax)
    }
}

impl fmt::Display for FloatFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b={},p={},emin={},emax={}", self.beta, self.p, self.emin, self.emax)
    }
}

impl FloatFormat {
    pub fn new(beta: u32, p: u32, emin: i64, emax: i64) -> Result<Self> {
        if beta < 2 {
            return domain("base must be at least 2");
        }
        if p < 2 {
            return domain("precision must be at least 2");
        }
        if emin > emax {
            return domain("emin must not exceed emax");
        }
        let qmin = emin - p as i64 + 1;
        let qmax = emax - p as i64 + 1;
        let reach = [qmin, qmax, emin, emax]
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or(0)
            + 2 * p as i64
            + 8;
        let reach = reach.min(POW_TABLE_LIMIT) as usize;
        let b = BigInt::from(beta);
        let mut pows = Vec::with_capacity(reach + 1);
        let mut cur = BigInt::one();
        for _ in 0..=reach {
            pows.push(cur.clone());
            cur *= &b;
        }
        Ok(FloatFormat {
            beta,
            p,
            emin,
            emax,
            pows: Arc::new(pows),
        })
    }

    /// IEEE 754 binary64 parameters.
    pub fn binary64() -> Self {
        Self::new(2, 53, -1022, 1023).expect("valid format")
    }

    pub fn params(&self) -> (u32, u32, i64, i64) {
        (self.beta, self.p, self.emin, self.emax)
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn precision(&self) -> u32 {
        self.p
    }

    pub fn emin(&self) -> i64 {
        self.emin
    }

    pub fn emax(&self) -> i64 {
        self.emax
    }

    pub fn qmin(&self) -> i64 {
        self.emin - self.p as i64 + 1
    }

    pub fn qmax(&self) -> i64 {
        self.emax - self.p as i64 + 1
    }

    /// `beta^k` for `k >= 0`.
    pub fn pow(&self, k: i64) -> Cow<'_, BigInt> {
        assert!(k >= 0, "negative integer power");
        tick(1);
        match self.pows.get(k as usize) {
            Some(v) => Cow::Borrowed(v),
            None => Cow::Owned(Pow::pow(BigInt::from(self.beta), k as u64)),
        }
    }

    /// `beta^k` as a rational, any sign of `k`.
    pub fn pow_rat(&self, k: i64) -> Rat {
        if k >= 0 {
            Rat::from_integer(self.pow(k).into_owned())
        } else {
            Rat::new_raw(BigInt::one(), self.pow(-k).into_owned())
        }
    }

    /// `beta^(p-1)`, the least normal significand.
    pub fn min_sig(&self) -> Cow<'_, BigInt> {
        self.pow(self.p as i64 - 1)
    }

    /// `beta^p`, one above the largest significand.
    pub fn sig_bound(&self) -> Cow<'_, BigInt> {
        self.pow(self.p as i64)
    }

    /// Largest `k` with `beta^k <= t`, for `t >= 1`.
    fn ilog(&self, t: &BigInt) -> i64 {
        debug_assert!(t.is_positive());
        let bits = t.bits() as i64;
        if self.beta.is_power_of_two() {
            tick(1);
            return (bits - 1) / self.beta.trailing_zeros() as i64;
        }
        let fl = (31 - self.beta.leading_zeros()) as i64;
        let cl = (32 - (self.beta - 1).leading_zeros()) as i64;
        // invariant: beta^lo <= t < beta^hi
        let mut lo = (bits - 1) / cl;
        let mut hi = bits / fl + 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if *self.pow(mid) <= *t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// `floor(log_beta |x|)` for nonzero `x`, without clamping.
    pub fn floor_log(&self, x: &Rat) -> i64 {
        assert!(!x.is_zero(), "logarithm of zero");
        let n = x.numer().abs();
        let d = x.denom();
        tick(1);
        if n >= *d {
            tick(1);
            self.ilog(&(n / d))
        } else {
            // floor(log(n/d)) = -ceil(log(d/n)) and ceil(log u) = ceil(log ceil(u))
            tick(1);
            let u: BigInt = if (d % &n).is_zero() { d / &n } else { d / &n + 1 };
            let k = self.ilog(&u);
            if *self.pow(k) == u {
                -k
            } else {
                -(k + 1)
            }
        }
    }

    /// `E(x)`: `floor(log_beta |x|)` when `|x| >= beta^emin`, otherwise `emin`.
    pub fn exponent_of(&self, x: &ExtReal) -> Result<i64> {
        match x {
            ExtReal::Finite(r) if r.is_zero() => Ok(self.emin),
            ExtReal::Finite(r) => Ok(self.floor_log(r).max(self.emin)),
            _ => domain("exponent of an infinite value"),
        }
    }

    /// `Q(x) = E(x) - p + 1`.
    pub fn quantum_of(&self, x: &ExtReal) -> Result<i64> {
        Ok(self.exponent_of(x)? - self.p as i64 + 1)
    }

    /// Unit in the first place: `beta^floor(log_beta |x|)`, and `0` at `0`.
    pub fn ufp(&self, x: &Rat) -> Rat {
        if x.is_zero() {
            return Rat::zero();
        }
        self.pow_rat(self.floor_log(x))
    }

    pub fn zero(&self) -> Float {
        Float {
            value: ExtReal::zero(),
            m: BigInt::zero(),
            q: self.qmin(),
        }
    }

    pub fn max_finite(&self) -> Float {
        Float {
            value: ExtReal::Finite(
                Rat::from_integer(self.sig_bound().into_owned() - 1) * self.pow_rat(self.qmax()),
            ),
            m: self.sig_bound().into_owned() - 1,
            q: self.qmax(),
        }
    }

    pub fn min_finite(&self) -> Float {
        -self.max_finite()
    }

    pub fn min_positive(&self) -> Float {
        Float {
            value: ExtReal::Finite(self.pow_rat(self.qmin())),
            m: BigInt::one(),
            q: self.qmin(),
        }
    }

    pub fn min_normal(&self) -> Float {
        Float {
            value: ExtReal::Finite(self.pow_rat(self.emin)),
            m: self.min_sig().into_owned(),
            q: self.qmin(),
        }
    }

    /// Canonical float with value `m * beta^q`, if representable.
    pub fn from_parts(&self, m: BigInt, q: i64) -> Option<Float> {
        let qmin = self.qmin();
        if q >= qmin && q <= self.qmax() {
            let a = m.abs();
            tick(2);
            if a < *self.sig_bound() && (q == qmin || a >= *self.min_sig()) {
                let value = Rat::from_integer(m.clone()) * self.pow_rat(q);
                let q = if m.is_zero() { qmin } else { q };
                return Some(Float {
                    value: ExtReal::Finite(value),
                    m,
                    q,
                });
            }
        }
        tick(1);
        let v = Rat::from_integer(m) * self.pow_rat(q);
        self.from_value(&v)
    }

    /// The float equal to `v`, if `v` is representable.
    pub fn from_value(&self, v: &Rat) -> Option<Float> {
        if v.is_zero() {
            return Some(self.zero());
        }
        let e = self.floor_log(v).max(self.emin);
        if e > self.emax {
            return None;
        }
        let q = e - self.p as i64 + 1;
        tick(1);
        let s = v * self.pow_rat(-q);
        if !s.is_integer() {
            return None;
        }
        Some(Float {
            value: ExtReal::Finite(v.clone()),
            m: s.to_integer(),
            q,
        })
    }

    pub fn from_ext(&self, v: &ExtReal) -> Option<Float> {
        match v {
            ExtReal::NegInf => Some(Float::neg_inf()),
            ExtReal::PosInf => Some(Float::pos_inf()),
            ExtReal::Finite(r) => self.from_value(r),
        }
    }

    pub fn from_i64(&self, n: i64) -> Option<Float> {
        self.from_value(&Rat::from_integer(n.into()))
    }

    /// `true` for finite `x` with `|x| >= beta^emin`.
    pub fn is_normal(&self, x: &Float) -> bool {
        x.is_finite() && x.m.abs() >= *self.min_sig()
    }

    /// `true` for nonzero finite `x` below the normal range.
    pub fn is_subnormal(&self, x: &Float) -> bool {
        x.is_finite() && !x.is_zero() && !self.is_normal(x)
    }

    pub fn successor(&self, x: &Float) -> Float {
        if x.value == ExtReal::NegInf {
            return self.min_finite();
        }
        if x.value >= self.max_finite().value {
            return Float::pos_inf();
        }
        tick(2);
        let negative_power = x.m.is_negative() && x.q > self.qmin() && -&x.m == *self.min_sig();
        if negative_power {
            let m = &x.m * BigInt::from(self.beta) + 1;
            return self.from_parts(m, x.q - 1).expect("successor is representable");
        }
        let m = &x.m + 1;
        if m == *self.sig_bound() {
            return self
                .from_parts(self.min_sig().into_owned(), x.q + 1)
                .expect("successor is representable");
        }
        self.from_parts(m, x.q).expect("successor is representable")
    }

    pub fn predecessor(&self, x: &Float) -> Float {
        -self.successor(&-x.clone())
    }

    /// Number of nonnegative finite floats in `(0, |x|]`.
    fn rank(&self, m: &BigInt, q: i64) -> BigInt {
        let m = m.abs();
        if q == self.qmin() {
            return m;
        }
        let hi = self.sig_bound().into_owned();
        let lo = self.min_sig().into_owned();
        &hi + BigInt::from(q - self.qmin() - 1) * (&hi - &lo) + (m - lo)
    }

    fn positive_count(&self) -> BigInt {
        let mx = self.max_finite();
        self.rank(&mx.m, mx.q)
    }

    /// `|F|` including both infinities.
    pub fn count(&self) -> BigInt {
        self.positive_count() * 2 + 3
    }

    /// Position of `x` in increasing order, `-inf` at 0.
    pub fn ordinal(&self, x: &Float) -> BigInt {
        let n = self.positive_count();
        match &x.value {
            ExtReal::NegInf => BigInt::zero(),
            ExtReal::PosInf => n * 2 + 2,
            ExtReal::Finite(_) => {
                let r = self.rank(&x.m, x.q);
                if x.m.is_negative() {
                    n + 1 - r
                } else {
                    n + 1 + r
                }
            }
        }
    }

    pub fn from_ordinal(&self, k: &BigInt) -> Option<Float> {
        let n = self.positive_count();
        if k.is_negative() || *k > &n * 2 + 2 {
            return None;
        }
        if k.is_zero() {
            return Some(Float::neg_inf());
        }
        if *k == &n * 2 + 2 {
            return Some(Float::pos_inf());
        }
        let r: BigInt = k - (&n + 1);
        let neg = r.is_negative();
        let r = r.abs();
        let hi = self.sig_bound().into_owned();
        let lo = self.min_sig().into_owned();
        let (m, q) = if r < hi {
            (r, self.qmin())
        } else {
            let step = &hi - &lo;
            let off = &r - &hi;
            let binade = &off / &step;
            let m = &lo + (&off - &binade * &step);
            (m, self.qmin() + 1 + binade.to_i64()?)
        };
        let m = if neg { -m } else { m };
        self.from_parts(m, q)
    }

    /// Every member of the format in increasing order.
    pub fn enumerate(&self, cap: u64) -> Result<Vec<Float>> {
        let total = self.count();
        if total > BigInt::from(cap) {
            return Err(Error::Resource {
                what: "float enumeration",
                cap,
            });
        }
        let mut out = Vec::with_capacity(total.to_usize().unwrap_or(0));
        let mut x = Float::neg_inf();
        loop {
            out.push(x.clone());
            if x.is_pos_inf() {
                break;
            }
            x = self.successor(&x);
        }
        Ok(out)
    }

    /// Least member of the format that is `>= x`.
    pub fn round_up_ext(&self, x: &ExtReal) -> Float {
        crate::rounding::round_value(self, crate::rounding::RoundingMode::RU, x)
    }

    /// Greatest member of the format that is `<= x`.
    pub fn round_down_ext(&self, x: &ExtReal) -> Float {
        crate::rounding::round_value(self, crate::rounding::RoundingMode::RD, x)
    }

    /// Floats inside a real interval.
    pub fn floats_in(&self, i: &RealInterval) -> FloatInterval {
        let (Some((lo, lc)), Some((hi, hc))) = (i.lo(), i.hi()) else {
            return FloatInterval::Empty;
        };
        let mut a = self.round_up_ext(lo);
        if !lc && a.value == *lo {
            if a.is_pos_inf() {
                return FloatInterval::Empty;
            }
            a = self.successor(&a);
        }
        let mut b = self.round_down_ext(hi);
        if !hc && b.value == *hi {
            if b.is_neg_inf() {
                return FloatInterval::Empty;
            }
            b = self.predecessor(&b);
        }
        FloatInterval::new(a, b)
    }
}

/// A member of a format: `M * beta^q` in canonical form, or an infinity.
///
/// Equality and order follow the represented value; values from different
/// formats should not be mixed.
#[derive(Clone, Debug)]
pub struct Float {
    value: ExtReal,
    m: BigInt,
    q: i64,
}

impl Float {
    pub fn pos_inf() -> Float {
        Float {
            value: ExtReal::PosInf,
            m: BigInt::zero(),
            q: 0,
        }
    }

    pub fn neg_inf() -> Float {
        Float {
            value: ExtReal::NegInf,
            m: BigInt::zero(),
            q: 0,
        }
    }

    pub fn value(&self) -> &ExtReal {
        &self.value
    }

    pub fn into_value(self) -> ExtReal {
        self.value
    }

    /// Exact rational value of a finite float.
    pub fn rat(&self) -> Option<&Rat> {
        self.value.finite()
    }

    /// Canonical integral significand `M`; zero for infinities.
    pub fn significand(&self) -> &BigInt {
        &self.m
    }

    /// Canonical exponent `q`, which equals `Q(x)` for finite `x`.
    pub fn quantum_exponent(&self) -> i64 {
        self.q
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_pos_inf(&self) -> bool {
        self.value == ExtReal::PosInf
    }

    pub fn is_neg_inf(&self) -> bool {
        self.value == ExtReal::NegInf
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn signum(&self) -> i32 {
        self.value.signum()
    }

    pub fn abs(&self) -> Float {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl PartialEq for Float {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for Float {}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

impl Hash for Float {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state)
    }
}

impl Neg for Float {
    type Output = Float;
    fn neg(self) -> Float {
        Float {
            value: -self.value,
            m: -self.m,
            q: self.q,
        }
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// Closed interval of floats `[lo, hi]`, or empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FloatInterval {
    Empty,
    Range { lo: Float, hi: Float },
}

impl FloatInterval {
    pub fn new(lo: Float, hi: Float) -> Self {
        if lo > hi {
            FloatInterval::Empty
        } else {
            FloatInterval::Range { lo, hi }
        }
    }

    pub fn point(x: Float) -> Self {
        FloatInterval::Range {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn all() -> Self {
        FloatInterval::Range {
            lo: Float::neg_inf(),
            hi: Float::pos_inf(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, FloatInterval::Empty)
    }

    pub fn lo(&self) -> Option<&Float> {
        match self {
            FloatInterval::Empty => None,
            FloatInterval::Range { lo, .. } => Some(lo),
        }
    }

    pub fn hi(&self) -> Option<&Float> {
        match self {
            FloatInterval::Empty => None,
            FloatInterval::Range { hi, .. } => Some(hi),
        }
    }

    pub fn contains(&self, x: &Float) -> bool {
        match self {
            FloatInterval::Empty => false,
            FloatInterval::Range { lo, hi } => lo <= x && x <= hi,
        }
    }

    pub fn contains_value(&self, x: &ExtReal) -> bool {
        match self {
            FloatInterval::Empty => false,
            FloatInterval::Range { lo, hi } => lo.value() <= x && x <= hi.value(),
        }
    }

    /// `true` when every member of `self` is in `other`.
    pub fn is_subset_of(&self, other: &FloatInterval) -> bool {
        match (self, other) {
            (FloatInterval::Empty, _) => true,
            (_, FloatInterval::Empty) => false,
            (FloatInterval::Range { lo, hi }, FloatInterval::Range { lo: l2, hi: h2 }) => {
                l2 <= lo && hi <= h2
            }
        }
    }

    pub fn to_real(&self) -> RealInterval {
        match self {
            FloatInterval::Empty => RealInterval::Empty,
            FloatInterval::Range { lo, hi } => {
                RealInterval::closed(lo.value().clone(), hi.value().clone())
            }
        }
    }

    /// Number of members.
    pub fn len(&self, format: &FloatFormat) -> BigInt {
        match self {
            FloatInterval::Empty => BigInt::zero(),
            FloatInterval::Range { lo, hi } => format.ordinal(hi) - format.ordinal(lo) + 1,
        }
    }

    pub fn intersect(&self, other: &FloatInterval) -> FloatInterval {
        match (self, other) {
            (FloatInterval::Range { lo, hi }, FloatInterval::Range { lo: l2, hi: h2 }) => {
                FloatInterval::new(lo.max(l2).clone(), hi.min(h2).clone())
            }
            _ => FloatInterval::Empty,
        }
    }
}

impl fmt::Display for FloatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FloatInterval::Empty => f.write_str("{}"),
            FloatInterval::Range { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn tiny() -> FloatFormat {
        FloatFormat::new(2, 3, -2, 1).unwrap()
    }

    fn dec() -> FloatFormat {
        FloatFormat::new(10, 3, -1, 2).unwrap()
    }

    fn f(fmt: &FloatFormat, n: i64, d: i64) -> Float {
        fmt.from_value(&rat(n, d)).unwrap()
    }

    #[test]
    fn exponent_and_quantum() {
        let t = tiny();
        assert_eq!(t.exponent_of(&ExtReal::ratio(9, 100)).unwrap(), -2);
        assert_eq!(t.exponent_of(&ExtReal::ratio(3, 1)).unwrap(), 1);
        assert_eq!(t.exponent_of(&ExtReal::ratio(-3, 4)).unwrap(), -1);
        assert_eq!(t.quantum_of(&ExtReal::ratio(3, 1)).unwrap(), -1);
        assert_eq!(t.quantum_of(&ExtReal::ratio(1, 1)).unwrap(), -2);
        assert_eq!(t.quantum_of(&ExtReal::ratio(1, 16)).unwrap(), -4);
        assert!(t.exponent_of(&ExtReal::PosInf).is_err());
    }

    #[test]
    fn floor_log_decimal() {
        let d = dec();
        assert_eq!(d.floor_log(&rat(999, 1)), 2);
        assert_eq!(d.floor_log(&rat(1000, 1)), 3);
        assert_eq!(d.floor_log(&rat(1, 10)), -1);
        assert_eq!(d.floor_log(&rat(99, 1000)), -2);
        assert_eq!(d.floor_log(&rat(1, 3)), -1);
    }

    #[test]
    fn ufp_examples() {
        let t = tiny();
        assert_eq!(t.ufp(&rat(3, 4)), rat(1, 2));
        assert_eq!(t.ufp(&rat(-7, 2)), rat(2, 1));
        assert_eq!(t.ufp(&rat(0, 1)), rat(0, 1));
    }

    #[test]
    fn successor_examples() {
        let t = tiny();
        assert_eq!(t.successor(&f(&t, 7, 4)), f(&t, 2, 1));
        assert_eq!(t.successor(&f(&t, 7, 2)), Float::pos_inf());
        assert_eq!(t.successor(&f(&t, -1, 1)), f(&t, -7, 8));
        assert_eq!(t.predecessor(&f(&t, 1, 1)), f(&t, 7, 8));
        assert_eq!(t.predecessor(&t.min_finite()), Float::neg_inf());
        let d = dec();
        assert_eq!(d.predecessor(&f(&d, 5, 1)), f(&d, 499, 100));
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(tiny().enumerate(1 << 20).unwrap().len(), 41);
        assert_eq!(dec().enumerate(1 << 20).unwrap().len(), 7401);
        assert_eq!(dec().count(), BigInt::from(7401));
        assert!(dec().enumerate(100).is_err());
    }

    #[test]
    fn enumeration_is_strictly_increasing_and_matches_ordinals() {
        for fmt in [tiny(), dec(), FloatFormat::new(3, 2, -1, 1).unwrap()] {
            let all = fmt.enumerate(1 << 20).unwrap();
            for (i, w) in all.windows(2).enumerate() {
                assert!(w[0] < w[1]);
                assert_eq!(fmt.successor(&w[0]), w[1]);
                assert_eq!(fmt.predecessor(&w[1]), w[0]);
                assert_eq!(fmt.ordinal(&w[0]), BigInt::from(i));
            }
            for (i, x) in all.iter().enumerate() {
                assert_eq!(fmt.from_ordinal(&BigInt::from(i)).as_ref(), Some(x));
            }
        }
    }

    #[test]
    fn canonical_forms() {
        let t = tiny();
        let one = f(&t, 1, 1);
        assert_eq!(one.significand(), &BigInt::from(4));
        assert_eq!(one.quantum_exponent(), -2);
        let sub = f(&t, 3, 16);
        assert_eq!(sub.significand(), &BigInt::from(3));
        assert_eq!(sub.quantum_exponent(), -4);
        assert!(t.is_subnormal(&sub));
        assert!(t.is_normal(&f(&t, 1, 4)));
        assert!(t.from_value(&rat(9, 8)).is_none());
        assert!(t.from_value(&rat(8, 1)).is_none());
        assert_eq!(t.from_parts(8.into(), -2), Some(f(&t, 2, 1)));
    }

    #[test]
    fn floats_in_open_interval() {
        let t = tiny();
        let i = RealInterval::new(ExtReal::ratio(1, 1), false, ExtReal::ratio(2, 1), false);
        assert_eq!(t.floats_in(&i), FloatInterval::new(f(&t, 5, 4), f(&t, 7, 4)));
        let i = RealInterval::new(ExtReal::ratio(9, 8), true, ExtReal::ratio(11, 8), true);
        assert_eq!(t.floats_in(&i), FloatInterval::point(f(&t, 5, 4)));
    }
}
