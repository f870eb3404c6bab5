use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;
use rayon::prelude::*;

use fpfactor::exact::{isqrt_floor, rat, ExtReal, Rat};
use fpfactor::feasibility::feasibility_witness;
use fpfactor::oracle::{oracle_feasible, ProductTable, DEFAULT_CAP};
use fpfactor::propagator::{quotient_relaxation, quotient_set};
use fpfactor::rounding::{fp_multiply, preimage_interval, round_value, RoundingMode};
use fpfactor::solver::{next_feasible_iterated, prev_feasible};
use fpfactor::{Float, FloatFormat, FloatInterval};

fn tiny() -> FloatFormat {
    FloatFormat::new(2, 3, -2, 1).unwrap()
}

fn small_formats() -> Vec<FloatFormat> {
    vec![
        tiny(),
        FloatFormat::new(2, 4, -3, 3).unwrap(),
        FloatFormat::new(10, 2, -1, 1).unwrap(),
        FloatFormat::new(3, 3, -2, 2).unwrap(),
    ]
}

/// Points that probe an interval's ends: the floats, their midpoints, and
/// rationals a hair either side of each.
fn probes(all: &[Float]) -> Vec<ExtReal> {
    let mut out = vec![ExtReal::NegInf, ExtReal::PosInf];
    let finite: Vec<&Rat> = all.iter().filter_map(|v| v.rat()).collect();
    let eps = rat(1, 1 << 20);
    for w in finite.windows(2) {
        let mid = (w[0] + w[1]) / rat(2, 1);
        for v in [w[0].clone(), mid.clone(), &mid + &eps, &mid - &eps, w[0] + &eps, w[0] - &eps] {
            out.push(ExtReal::Finite(v));
        }
    }
    let max = finite.last().unwrap();
    for k in [1, 2, 3] {
        out.push(ExtReal::Finite(*max * rat(k, 1) + &eps));
        out.push(ExtReal::Finite(-(*max * rat(k, 1)) - &eps));
    }
    out
}

#[test]
fn preimages_match_rounding() {
    for f in small_formats() {
        let all = f.enumerate(DEFAULT_CAP).unwrap();
        let points = probes(&all);
        for mode in [RoundingMode::RD, RoundingMode::RU, RoundingMode::RNE, RoundingMode::ClampedRD] {
            let rounded: Vec<Float> = points.iter().map(|v| round_value(&f, mode, v)).collect();
            for k in 0..all.len() {
                for w in [0, 1, 3] {
                    let Some(hi) = all.get(k + w) else { continue };
                    let zs = FloatInterval::new(all[k].clone(), hi.clone());
                    let pre = preimage_interval(&f, mode, &zs);
                    for (v, r) in points.iter().zip(&rounded) {
                        assert_eq!(pre.contains(v), zs.contains(r), "{f} {mode} Z={zs} v={v} pre={pre}");
                    }
                }
            }
        }
    }
}

#[test]
fn witnesses_match_enumeration() {
    for f in small_formats().into_iter().take(2) {
        let all = f.enumerate(DEFAULT_CAP).unwrap();
        for mode in RoundingMode::REGULAR {
            for k in (0..all.len()).step_by(2) {
                let zs = FloatInterval::new(all[k].clone(), all[(k + 1).min(all.len() - 1)].clone());
                for x in &all {
                    let fast = feasibility_witness(&f, mode, x, &zs);
                    let slow = oracle_feasible(&f, mode, x, &zs, DEFAULT_CAP).unwrap();
                    assert_eq!(fast.is_some(), slow.is_some(), "{f} {mode} x={x} Z={zs}");
                    if let Some(y) = fast {
                        assert!(zs.contains(&fp_multiply(&f, mode, x, &y).unwrap()));
                    }
                }
            }
        }
    }
}

#[test]
fn quotient_sets_contain_every_cofactor() {
    let f = tiny();
    let all = f.enumerate(DEFAULT_CAP).unwrap();
    for mode in RoundingMode::REGULAR {
        for (k, z) in all.iter().enumerate() {
            let zs = FloatInterval::new(z.clone(), all[(k + 1).min(all.len() - 1)].clone());
            for x in &all {
                let set = quotient_set(&f, mode, x, &zs);
                for y in &all {
                    if let Ok(p) = fp_multiply(&f, mode, x, y) {
                        assert_eq!(zs.contains(&p), set.contains(y.value()), "{mode} x={x} y={y} Z={zs}");
                    }
                }
            }
            for (a, b) in [(3, 9), (0, 40), (20, 22)] {
                let ys = FloatInterval::new(all[a].clone(), all[b].clone());
                let relax = quotient_relaxation(&f, mode, &ys, &zs);
                for x in &all {
                    let supported = all[a..=b]
                        .iter()
                        .any(|y| fp_multiply(&f, mode, x, y).map_or(false, |p| zs.contains(&p)));
                    if supported {
                        assert!(relax.contains(x.value()), "{mode} x={x} Y={ys} Z={zs}");
                    }
                }
            }
        }
    }
}

#[test]
fn iterated_search_is_exact_beyond_binary() {
    for f in [FloatFormat::new(3, 3, -2, 2).unwrap(), FloatFormat::new(10, 2, -1, 1).unwrap()] {
        let step = if f.beta() == 10 { 9 } else { 1 };
        for mode in RoundingMode::REGULAR {
            let table = ProductTable::new(&f, mode, 1 << 24).unwrap();
            let all = table.floats().to_vec();
            (0..all.len()).into_par_iter().step_by(step).for_each(|k| {
                let zs = FloatInterval::new(all[k].clone(), all[(k + 1).min(all.len() - 1)].clone());
                let next = table.next_feasible_all(&zs);
                for (i, x) in all.iter().enumerate() {
                    let got = next_feasible_iterated(&f, mode, x, &zs, 1 << 16).unwrap();
                    assert_eq!(got, next[i], "{f} {mode} x={x} Z={zs}");
                }
            });
        }
    }
}

#[test]
fn prev_feasible_mirrors_the_table() {
    for p in [3u32, 4] {
        let f = FloatFormat::new(2, p, -4, 4).unwrap();
        for mode in RoundingMode::REGULAR {
            let table = ProductTable::new(&f, mode, 1 << 22).unwrap();
            let all = table.floats();
            for k in 0..all.len() {
                let zs = FloatInterval::point(all[k].clone());
                let mask = table.feasible_mask(&zs);
                let mut prev = Float::neg_inf();
                for (i, x) in all.iter().enumerate() {
                    if mask[i] {
                        prev = x.clone();
                    }
                    if let Ok(v) = prev_feasible(&f, mode, x, &zs) {
                        assert_eq!(v, prev, "{mode} x={x} Z={zs}");
                    }
                }
            }
        }
    }
}

fn nearest_distance(all: &[Float], v: &Rat) -> Rat {
    all.iter()
        .filter_map(|y| y.rat())
        .map(|y| (y - v).abs())
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn nearest_is_nearest(n in -7_000_000i64..=7_000_000, d in 1i64..=1_000_000) {
        let f = tiny();
        let all = f.enumerate(DEFAULT_CAP).unwrap();
        let v = rat(n, d * 1000);
        prop_assume!(v.abs() <= *f.max_finite().rat().unwrap());
        let r = round_value(&f, RoundingMode::RNE, &ExtReal::Finite(v.clone()));
        prop_assert_eq!((r.rat().unwrap() - &v).abs(), nearest_distance(&all, &v));
    }

    #[test]
    fn isqrt_matches_u128(n in any::<u64>(), m in any::<u64>()) {
        let big = u128::from(n) * u128::from(m);
        let (s, exact) = isqrt_floor(&BigInt::from(big)).unwrap();
        let s = s.to_u128().unwrap();
        prop_assert!(s * s <= big);
        prop_assert!((s + 1).checked_mul(s + 1).map_or(true, |sq| sq > big));
        prop_assert_eq!(exact, s * s == big);
    }

    #[test]
    fn multiplication_is_commutative_and_signed(a in 0usize..41, b in 0usize..41) {
        let f = tiny();
        let all = f.enumerate(DEFAULT_CAP).unwrap();
        let (x, y) = (&all[a], &all[b]);
        for mode in RoundingMode::REGULAR {
            let xy = fp_multiply(&f, mode, x, y);
            prop_assert_eq!(xy.clone().ok(), fp_multiply(&f, mode, y, x).ok());
            if let Ok(p) = xy {
                prop_assert!(p.signum() == x.signum() * y.signum() || p.is_zero());
            }
        }
    }
}
