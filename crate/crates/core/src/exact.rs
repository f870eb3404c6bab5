//! Exact rational arithmetic on the extended reals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::opcount::tick;

pub type Rat = BigRational;

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

pub fn floor(x: &Rat) -> BigInt {
    tick(1);
    x.numer().div_floor(x.denom())
}

pub fn ceil(x: &Rat) -> BigInt {
    tick(1);
    -((-x.numer()).div_floor(x.denom()))
}

/// Extended real: a rational in lowest terms or one of the two infinities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtReal {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(Rat::zero())
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        ExtReal::Finite(int_rat(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ExtReal::Finite(rat(n, d))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtReal::Finite(r) if r.is_zero())
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtReal::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self {
            ExtReal::NegInf => -1,
            ExtReal::PosInf => 1,
            ExtReal::Finite(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn abs(&self) -> ExtReal {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn inf_with_sign(s: i32) -> ExtReal {
        if s > 0 {
            ExtReal::PosInf
        } else {
            ExtReal::NegInf
        }
    }

    /// `None` for `0 * inf`.
    pub fn checked_mul(&self, other: &ExtReal) -> Option<ExtReal> {
        tick(1);
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => Some(ExtReal::Finite(a * b)),
            _ => {
                let s = self.signum() * other.signum();
                if s == 0 {
                    None
                } else {
                    Some(Self::inf_with_sign(s))
                }
            }
        }
    }

    /// `None` for `inf - inf`.
    pub fn checked_add(&self, other: &ExtReal) -> Option<ExtReal> {
        tick(1);
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => Some(ExtReal::Finite(a + b)),
            (ExtReal::Finite(_), inf) | (inf, ExtReal::Finite(_)) => Some(inf.clone()),
            (a, b) if a == b => Some(a.clone()),
            _ => None,
        }
    }

    /// `None` for division by zero and `inf / inf`.
    pub fn checked_div(&self, other: &ExtReal) -> Option<ExtReal> {
        tick(1);
        match (self, other) {
            (_, b) if b.is_zero() => None,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => Some(ExtReal::Finite(a / b)),
            (ExtReal::Finite(_), _) => Some(ExtReal::zero()),
            (_, ExtReal::Finite(_)) => Some(Self::inf_with_sign(self.signum() * other.signum())),
            _ => None,
        }
    }

    /// Multiplication by a nonzero rational.
    pub fn scale(&self, k: &Rat) -> ExtReal {
        debug_assert!(!k.is_zero());
        tick(1);
        match self {
            ExtReal::Finite(a) => ExtReal::Finite(a * k),
            inf => {
                if k.is_negative() {
                    -inf.clone()
                } else {
                    inf.clone()
                }
            }
        }
    }

    pub fn shift(&self, k: &Rat) -> ExtReal {
        tick(1);
        match self {
            ExtReal::Finite(a) => ExtReal::Finite(a + k),
            inf => inf.clone(),
        }
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::Finite(r) => ExtReal::Finite(-r),
        }
    }
}

impl From<Rat> for ExtReal {
    fn from(r: Rat) -> Self {
        ExtReal::Finite(r)
    }
}

impl From<i64> for ExtReal {
    fn from(n: i64) -> Self {
        ExtReal::int(n)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::PosInf => f.write_str("inf"),
            ExtReal::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// Interval of extended reals with independently open or closed ends.
///
/// A closed infinite end means the infinity itself is a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealInterval {
    Empty,
    Range {
        lo: ExtReal,
        lo_closed: bool,
        hi: ExtReal,
        hi_closed: bool,
    },
}

impl RealInterval {
    pub fn new(lo: ExtReal, lo_closed: bool, hi: ExtReal, hi_closed: bool) -> Self {
        match lo.cmp(&hi) {
            Ordering::Greater => RealInterval::Empty,
            Ordering::Equal if !(lo_closed && hi_closed) => RealInterval::Empty,
            _ => RealInterval::Range {
                lo,
                lo_closed,
                hi,
                hi_closed,
            },
        }
    }

    pub fn closed(lo: ExtReal, hi: ExtReal) -> Self {
        Self::new(lo, true, hi, true)
    }

    pub fn point(x: ExtReal) -> Self {
        Self::new(x.clone(), true, x, true)
    }

    /// All finite reals.
    pub fn reals() -> Self {
        Self::new(ExtReal::NegInf, false, ExtReal::PosInf, false)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, RealInterval::Empty)
    }

    pub fn lo(&self) -> Option<(&ExtReal, bool)> {
        match self {
            RealInterval::Empty => None,
            RealInterval::Range { lo, lo_closed, .. } => Some((lo, *lo_closed)),
        }
    }

    pub fn hi(&self) -> Option<(&ExtReal, bool)> {
        match self {
            RealInterval::Empty => None,
            RealInterval::Range { hi, hi_closed, .. } => Some((hi, *hi_closed)),
        }
    }

    pub fn contains(&self, x: &ExtReal) -> bool {
        tick(1);
        match self {
            RealInterval::Empty => false,
            RealInterval::Range {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => {
                let above = match lo.cmp(x) {
                    Ordering::Less => true,
                    Ordering::Equal => *lo_closed,
                    Ordering::Greater => false,
                };
                above
                    && match x.cmp(hi) {
                        Ordering::Less => true,
                        Ordering::Equal => *hi_closed,
                        Ordering::Greater => false,
                    }
            }
        }
    }

    pub fn contains_rat(&self, x: &Rat) -> bool {
        self.contains(&ExtReal::Finite(x.clone()))
    }

    pub fn intersect(&self, other: &RealInterval) -> RealInterval {
        match (self, other) {
            (
                RealInterval::Range {
                    lo: l1,
                    lo_closed: lc1,
                    hi: h1,
                    hi_closed: hc1,
                },
                RealInterval::Range {
                    lo: l2,
                    lo_closed: lc2,
                    hi: h2,
                    hi_closed: hc2,
                },
            ) => {
                let (lo, lc) = match l1.cmp(l2) {
                    Ordering::Greater => (l1.clone(), *lc1),
                    Ordering::Less => (l2.clone(), *lc2),
                    Ordering::Equal => (l1.clone(), *lc1 && *lc2),
                };
                let (hi, hc) = match h1.cmp(h2) {
                    Ordering::Less => (h1.clone(), *hc1),
                    Ordering::Greater => (h2.clone(), *hc2),
                    Ordering::Equal => (h1.clone(), *hc1 && *hc2),
                };
                RealInterval::new(lo, lc, hi, hc)
            }
            _ => RealInterval::Empty,
        }
    }

    /// Union of two intervals when it is itself an interval.
    pub fn union_if_connected(&self, other: &RealInterval) -> Option<RealInterval> {
        match (self, other) {
            (RealInterval::Empty, x) | (x, RealInterval::Empty) => Some(x.clone()),
            (
                RealInterval::Range {
                    lo: l1,
                    lo_closed: lc1,
                    hi: h1,
                    hi_closed: hc1,
                },
                RealInterval::Range {
                    lo: l2,
                    lo_closed: lc2,
                    hi: h2,
                    hi_closed: hc2,
                },
            ) => {
                // order so that the first starts no later than the second
                let ((la, lca, ha, hca), (lb, lcb, hb, hcb)) =
                    if (l1, !lc1) <= (l2, !lc2) {
                        ((l1, lc1, h1, hc1), (l2, lc2, h2, hc2))
                    } else {
                        ((l2, lc2, h2, hc2), (l1, lc1, h1, hc1))
                    };
                let connected = match ha.cmp(lb) {
                    Ordering::Greater => true,
                    Ordering::Equal => *hca || *lcb,
                    Ordering::Less => false,
                };
                if !connected {
                    return None;
                }
                let (hi, hc) = match ha.cmp(hb) {
                    Ordering::Greater => (ha.clone(), *hca),
                    Ordering::Less => (hb.clone(), *hcb),
                    Ordering::Equal => (ha.clone(), *hca || *hcb),
                };
                Some(RealInterval::new(la.clone(), *lca, hi, hc))
            }
        }
    }

    /// `{ x * mul + add : x in self }` for a nonzero `mul`.
    pub fn scale_shift(&self, mul: &Rat, add: &Rat) -> Result<RealInterval> {
        if mul.is_zero() {
            return domain("interval scale factor must be nonzero");
        }
        Ok(match self {
            RealInterval::Empty => RealInterval::Empty,
            RealInterval::Range {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => {
                let a = lo.scale(mul).shift(add);
                let b = hi.scale(mul).shift(add);
                if mul.is_positive() {
                    RealInterval::new(a, *lo_closed, b, *hi_closed)
                } else {
                    RealInterval::new(b, *hi_closed, a, *lo_closed)
                }
            }
        })
    }

    pub fn negate(&self) -> RealInterval {
        match self {
            RealInterval::Empty => RealInterval::Empty,
            RealInterval::Range {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => RealInterval::new(-hi.clone(), *hi_closed, -lo.clone(), *lo_closed),
        }
    }

    /// `sup - inf`, zero for empty sets and singletons.
    pub fn diameter(&self) -> ExtReal {
        match self {
            RealInterval::Empty => ExtReal::zero(),
            RealInterval::Range { lo, hi, .. } => {
                if lo == hi {
                    return ExtReal::zero();
                }
                match (lo, hi) {
                    (ExtReal::Finite(a), ExtReal::Finite(b)) => {
                        tick(1);
                        ExtReal::Finite(b - a)
                    }
                    _ => ExtReal::PosInf,
                }
            }
        }
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealInterval::Empty => f.write_str("{}"),
            RealInterval::Range {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => write!(
                f,
                "{}{}, {}{}",
                if *lo_closed { '[' } else { '(' },
                lo,
                hi,
                if *hi_closed { ']' } else { ')' }
            ),
        }
    }
}

/// `x - y * floor(x / y)`, for `y != 0`.
pub(crate) fn mod_floor(x: &Rat, y: &Rat) -> Rat {
    tick(3);
    let q = (x / y).floor();
    x - y * q
}

/// Remainder `x - y * floor(x / y)`. The result has the sign of `y`.
pub fn rat_mod(x: &Rat, y: &Rat) -> Result<Rat> {
    if y.is_zero() {
        return domain("remainder modulo zero");
    }
    Ok(mod_floor(x, y))
}

/// Integer remainder with the sign of the divisor.
pub(crate) fn int_mod(x: &BigInt, y: &BigInt) -> BigInt {
    tick(1);
    x.mod_floor(y)
}

/// `(floor(sqrt(n)), n is a perfect square)` by Newton iteration.
pub fn isqrt_floor(n: &BigInt) -> Result<(BigInt, bool)> {
    if n.is_negative() {
        return domain("square root of a negative integer");
    }
    tick(1);
    if n.is_zero() {
        return Ok((BigInt::zero(), true));
    }
    // start above the root so the iteration decreases monotonically
    let mut x = BigInt::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            break;
        }
        x = y;
    }
    let exact = &x * &x == *n;
    Ok((x, exact))
}

/// Integers contained in an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegerSpan {
    Empty,
    /// Least and greatest members; `None` when unbounded on that side.
    Span {
        min: Option<BigInt>,
        max: Option<BigInt>,
    },
}

pub fn integers_in(i: &RealInterval) -> IntegerSpan {
    let RealInterval::Range {
        lo,
        lo_closed,
        hi,
        hi_closed,
    } = i
    else {
        return IntegerSpan::Empty;
    };
    let min = match lo {
        ExtReal::PosInf => return IntegerSpan::Empty,
        ExtReal::NegInf => None,
        ExtReal::Finite(r) => {
            let c = ceil(r);
            if !lo_closed && r.is_integer() {
                Some(c + 1)
            } else {
                Some(c)
            }
        }
    };
    let max = match hi {
        ExtReal::NegInf => return IntegerSpan::Empty,
        ExtReal::PosInf => None,
        ExtReal::Finite(r) => {
            let f = floor(r);
            if !hi_closed && r.is_integer() {
                Some(f - 1)
            } else {
                Some(f)
            }
        }
    };
    if let (Some(a), Some(b)) = (&min, &max) {
        if a > b {
            return IntegerSpan::Empty;
        }
    }
    IntegerSpan::Span { min, max }
}

pub fn interval_scale_shift(i: &RealInterval, mul: &Rat, add: &Rat) -> Result<RealInterval> {
    i.scale_shift(mul, add)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(n: i64, d: i64) -> ExtReal {
        ExtReal::ratio(n, d)
    }

    #[test]
    fn rat_mod_examples() {
        assert_eq!(rat_mod(&rat(7, 1), &rat(2, 1)).unwrap(), rat(1, 1));
        assert_eq!(rat_mod(&rat(40, 1), &rat(-7, 1)).unwrap(), rat(-2, 1));
        assert_eq!(rat_mod(&rat(5, 2), &rat(3, 4)).unwrap(), rat(1, 4));
        assert!(rat_mod(&rat(1, 1), &rat(0, 1)).is_err());
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt_floor(&0.into()).unwrap(), (0.into(), true));
        assert_eq!(isqrt_floor(&49.into()).unwrap(), (7.into(), true));
        assert_eq!(isqrt_floor(&6404.into()).unwrap(), (80.into(), false));
        assert!(isqrt_floor(&(-1).into()).is_err());
    }

    #[test]
    fn isqrt_small_range() {
        for n in 0i64..5000 {
            let (r, sq) = isqrt_floor(&n.into()).unwrap();
            let r: i64 = r.try_into().unwrap();
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "{n}");
            assert_eq!(sq, r * r == n);
        }
    }

    #[test]
    fn integers_in_examples() {
        let i = RealInterval::new(fin(0, 1), true, fin(4, 1), false);
        assert_eq!(
            integers_in(&i),
            IntegerSpan::Span { min: Some(0.into()), max: Some(3.into()) }
        );
        let i = RealInterval::new(fin(-4, 1), false, fin(0, 1), true);
        assert_eq!(
            integers_in(&i),
            IntegerSpan::Span { min: Some((-3).into()), max: Some(0.into()) }
        );
        let i = RealInterval::new(fin(1, 5), false, fin(4, 5), false);
        assert_eq!(integers_in(&i), IntegerSpan::Empty);
        let i = RealInterval::new(fin(1, 2), true, ExtReal::PosInf, false);
        assert_eq!(integers_in(&i), IntegerSpan::Span { min: Some(1.into()), max: None });
    }

    #[test]
    fn scale_shift_examples() {
        let i = RealInterval::new(fin(0, 1), true, fin(1, 4), false);
        assert_eq!(
            i.scale_shift(&rat(16, 1), &rat(0, 1)).unwrap(),
            RealInterval::new(fin(0, 1), true, fin(4, 1), false)
        );
        let i = RealInterval::new(fin(-1, 4), false, fin(0, 1), true);
        assert_eq!(
            i.scale_shift(&rat(32, 1), &rat(0, 1)).unwrap(),
            RealInterval::new(fin(-8, 1), false, fin(0, 1), true)
        );
        let i = RealInterval::closed(fin(1, 1), fin(2, 1));
        assert_eq!(
            i.scale_shift(&rat(-1, 1), &rat(0, 1)).unwrap(),
            RealInterval::closed(fin(-2, 1), fin(-1, 1))
        );
    }

    #[test]
    fn empty_and_degenerate_intervals() {
        assert!(RealInterval::new(fin(1, 1), false, fin(1, 1), true).is_empty());
        assert!(RealInterval::closed(fin(2, 1), fin(1, 1)).is_empty());
        assert_eq!(RealInterval::point(fin(3, 1)).diameter(), ExtReal::zero());
        assert_eq!(RealInterval::reals().diameter(), ExtReal::PosInf);
        assert!(!RealInterval::reals().contains(&ExtReal::PosInf));
    }

    #[test]
    fn union_of_touching_pieces() {
        let a = RealInterval::new(fin(0, 1), true, fin(1, 1), false);
        let b = RealInterval::new(fin(1, 1), true, fin(2, 1), false);
        assert_eq!(
            a.union_if_connected(&b),
            Some(RealInterval::new(fin(0, 1), true, fin(2, 1), false))
        );
        let c = RealInterval::new(fin(1, 1), false, fin(2, 1), false);
        assert_eq!(a.union_if_connected(&c), None);
    }

    #[test]
    fn extended_arithmetic() {
        assert_eq!(ExtReal::zero().checked_mul(&ExtReal::PosInf), None);
        assert_eq!(fin(-2, 1).checked_mul(&ExtReal::PosInf), Some(ExtReal::NegInf));
        assert_eq!(ExtReal::PosInf.checked_add(&ExtReal::NegInf), None);
        assert_eq!(fin(1, 1).checked_div(&ExtReal::NegInf), Some(ExtReal::zero()));
        assert_eq!(ExtReal::NegInf.checked_div(&fin(-3, 1)), Some(ExtReal::PosInf));
    }
}
