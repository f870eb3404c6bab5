//! Brute-force reference answers by enumerating the format.
//!
//! Everything here follows the definitions directly: a value is feasible when
//! some enumerated `y` gives a product in `Z`. Meant for small formats.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::format::{Float, FloatFormat, FloatInterval};
use crate::propagator::PropagationResult;
use crate::rounding::{fp_multiply, RoundingMode};

/// Default bound on the number of floats (or pairs) an oracle may visit.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// `FPFACTOR_ORACLE_CAP` when set to an integer, else [`DEFAULT_CAP`].
pub fn cap_from_env() -> u64 {
    std::env::var("FPFACTOR_ORACLE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

fn check_cap(what: &'static str, n: &BigInt, cap: u64) -> Result<()> {
    if *n > BigInt::from(cap) {
        return Err(Error::Resource { what, cap });
    }
    Ok(())
}

/// Some `y` in the format with `x (*) y` in `Z`, found by trying every `y`.
pub fn oracle_feasible(
    format: &FloatFormat,
    mode: RoundingMode,
    x: &Float,
    zset: &FloatInterval,
    cap: u64,
) -> Result<Option<Float>> {
    check_cap("float enumeration", &format.count(), cap)?;
    let mut y = Float::neg_inf();
    loop {
        if let Ok(p) = fp_multiply(format, mode, x, &y) {
            if zset.contains(&p) {
                return Ok(Some(y));
            }
        }
        if y.is_pos_inf() {
            return Ok(None);
        }
        y = format.successor(&y);
    }
}

/// Least feasible float `>= x` by linear scan, `+inf` if none.
pub fn oracle_next_feasible(
    format: &FloatFormat,
    mode: RoundingMode,
    x: &Float,
    zset: &FloatInterval,
    cap: u64,
) -> Result<Float> {
    let mut v = x.clone();
    loop {
        if oracle_feasible(format, mode, &v, zset, cap)?.is_some() {
            return Ok(v);
        }
        if v.is_pos_inf() {
            return Ok(Float::pos_inf());
        }
        v = format.successor(&v);
    }
}

/// Greatest feasible float `<= x` by linear scan, `-inf` if none.
pub fn oracle_prev_feasible(
    format: &FloatFormat,
    mode: RoundingMode,
    x: &Float,
    zset: &FloatInterval,
    cap: u64,
) -> Result<Float> {
    let mut v = x.clone();
    loop {
        if oracle_feasible(format, mode, &v, zset, cap)?.is_some() {
            return Ok(v);
        }
        if v.is_neg_inf() {
            return Ok(Float::neg_inf());
        }
        v = format.predecessor(&v);
    }
}

#[derive(Default)]
struct Hull(Option<(Float, Float)>);

impl Hull {
    fn add(&mut self, v: &Float) {
        match &mut self.0 {
            None => self.0 = Some((v.clone(), v.clone())),
            Some((lo, hi)) => {
                if v < lo {
                    *lo = v.clone();
                }
                if v > hi {
                    *hi = v.clone();
                }
            }
        }
    }

    fn interval(self) -> FloatInterval {
        match self.0 {
            None => FloatInterval::Empty,
            Some((lo, hi)) => FloatInterval::new(lo, hi),
        }
    }
}

fn members(format: &FloatFormat, i: &FloatInterval) -> Vec<Float> {
    let mut out = Vec::new();
    if let FloatInterval::Range { lo, hi } = i {
        let mut v = lo.clone();
        loop {
            out.push(v.clone());
            if v == *hi {
                break;
            }
            v = format.successor(&v);
        }
    }
    out
}

/// Exact hulls of `{x in X, y in Y, z in Z : x (*) y = z}` by trying every pair.
pub fn oracle_solve(
    format: &FloatFormat,
    mode: RoundingMode,
    xset: &FloatInterval,
    yset: &FloatInterval,
    zset: &FloatInterval,
    cap: u64,
) -> Result<PropagationResult> {
    check_cap("factor pairs", &(xset.len(format) * yset.len(format)), cap)?;
    let ys = members(format, yset);
    let (mut hx, mut hy, mut hz) = (Hull::default(), Hull::default(), Hull::default());
    for x in members(format, xset) {
        for y in &ys {
            if let Ok(p) = fp_multiply(format, mode, &x, y) {
                if zset.contains(&p) {
                    hx.add(&x);
                    hy.add(y);
                    hz.add(&p);
                }
            }
        }
    }
    Ok(exact_result(hx.interval(), hy.interval(), hz.interval()))
}

fn exact_result(x: FloatInterval, y: FloatInterval, z: FloatInterval) -> PropagationResult {
    if x.is_empty() {
        return PropagationResult::empty();
    }
    PropagationResult {
        x,
        y,
        z,
        x_optimal: true,
        y_optimal: true,
        z_optimal: true,
    }
}

const UNDEFINED: u32 = u32::MAX;

/// Every product `x (*) y` of a small format, indexed by ordinal.
///
/// Answers the same questions as the scanning oracles, faster when many
/// queries share one format and mode.
pub struct ProductTable {
    format: FloatFormat,
    floats: Vec<Float>,
    products: Vec<u32>,
    /// Per `x`, the sorted distinct ordinals of its defined products.
    reachable: Vec<Vec<u32>>,
}

impl ProductTable {
    pub fn new(format: &FloatFormat, mode: RoundingMode, cap: u64) -> Result<Self> {
        let n = format.count();
        check_cap("product table", &(&n * &n), cap)?;
        let floats = format.enumerate(cap)?;
        let n = floats.len();
        let mut products = vec![UNDEFINED; n * n];
        for (i, x) in floats.iter().enumerate() {
            for (j, y) in floats.iter().enumerate() {
                if let Ok(p) = fp_multiply(format, mode, x, y) {
                    products[i * n + j] = format.ordinal(&p).to_u32().expect("small format");
                }
            }
        }
        let reachable = (0..n)
            .map(|i| {
                let mut row: Vec<u32> =
                    products[i * n..(i + 1) * n].iter().copied().filter(|&p| p != UNDEFINED).collect();
                row.sort_unstable();
                row.dedup();
                row
            })
            .collect();
        Ok(ProductTable {
            format: format.clone(),
            floats,
            products,
            reachable,
        })
    }

    pub fn floats(&self) -> &[Float] {
        &self.floats
    }

    pub fn index(&self, x: &Float) -> usize {
        self.format.ordinal(x).to_usize().expect("small format")
    }

    fn range(&self, zset: &FloatInterval) -> Option<(u32, u32)> {
        let (lo, hi) = (zset.lo()?, zset.hi()?);
        Some((self.index(lo) as u32, self.index(hi) as u32))
    }

    /// `x (*) y` by ordinal, `None` when undefined.
    pub fn product(&self, i: usize, j: usize) -> Option<&Float> {
        let p = self.products[i * self.floats.len() + j];
        (p != UNDEFINED).then(|| &self.floats[p as usize])
    }

    /// Membership in `Feas(Z)` for every float, by ordinal.
    pub fn feasible_mask(&self, zset: &FloatInterval) -> Vec<bool> {
        let Some((lo, hi)) = self.range(zset) else {
            return vec![false; self.floats.len()];
        };
        self.reachable
            .iter()
            .map(|row| {
                let k = row.partition_point(|&p| p < lo);
                k < row.len() && row[k] <= hi
            })
            .collect()
    }

    /// For each ordinal, the least feasible float at or above it.
    pub fn next_feasible_all(&self, zset: &FloatInterval) -> Vec<Float> {
        let mask = self.feasible_mask(zset);
        let mut out = vec![Float::pos_inf(); mask.len()];
        let mut next = Float::pos_inf();
        for i in (0..mask.len()).rev() {
            if mask[i] {
                next = self.floats[i].clone();
            }
            out[i] = next.clone();
        }
        out
    }

    pub fn solve(&self, xset: &FloatInterval, yset: &FloatInterval, zset: &FloatInterval) -> PropagationResult {
        let (Some(xl), Some(xh), Some(yl), Some(yh), Some((zl, zh))) =
            (xset.lo(), xset.hi(), yset.lo(), yset.hi(), self.range(zset))
        else {
            return PropagationResult::empty();
        };
        let n = self.floats.len();
        let (yl, yh) = (self.index(yl), self.index(yh));
        let (mut bx, mut by, mut bz) = ((usize::MAX, 0), (usize::MAX, 0), (u32::MAX, 0));
        for i in self.index(xl)..=self.index(xh) {
            for j in yl..=yh {
                let p = self.products[i * n + j];
                if p != UNDEFINED && zl <= p && p <= zh {
                    bx = (bx.0.min(i), bx.1.max(i));
                    by = (by.0.min(j), by.1.max(j));
                    bz = (bz.0.min(p), bz.1.max(p));
                }
            }
        }
        if bx.0 == usize::MAX {
            return PropagationResult::empty();
        }
        let f = |a: usize, b: usize| FloatInterval::new(self.floats[a].clone(), self.floats[b].clone());
        exact_result(f(bx.0, bx.1), f(by.0, by.1), f(bz.0 as usize, bz.1 as usize))
    }
}
