use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{DeltaTables, HullSetting};
use crate::arith::ceil_half;
use crate::error::{internal, Result};

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn int(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `B_{n,q}`: the degree of the self-reciprocal part of `X^n - 1`.
pub fn bnq(setting: &HullSetting) -> u64 {
    setting.atlas.self_reciprocal_degree()
}

/// All achievable hull `q`-dimensions.
pub fn aleph(setting: &HullSetting) -> BTreeSet<u64> {
    let s = setting.s as u64;
    let tri_max = s - ceil_half(setting.s) as u64;
    let (sym, pairs) = setting.slot_weights();
    let top = (sym.iter().sum::<u64>() * tri_max + pairs.iter().sum::<u64>() * s) as usize;
    let mut reach = vec![false; top + 1];
    reach[0] = true;
    let steps = sym
        .iter()
        .map(|&w| (w, tri_max))
        .chain(pairs.iter().map(|&w| (w, s)));
    for (w, max) in steps {
        let mut next = vec![false; top + 1];
        for (v, _) in reach.iter().enumerate().filter(|(_, &r)| r) {
            for eta in 0..=max {
                next[v + (w * eta) as usize] = true;
            }
        }
        reach = next;
    }
    reach
        .iter()
        .enumerate()
        .filter(|(_, &r)| r)
        .map(|(v, _)| v as u64)
        .collect()
}

/// `℘(n, τ; R)` for every `τ` with a nonzero count.
pub fn hull_counts(setting: &HullSetting) -> Result<BTreeMap<u64, BigUint>> {
    let tables = DeltaTables::new(setting.s)?;
    let (sym, pairs) = setting.slot_weights();
    let mut poly: BTreeMap<u64, BigUint> = BTreeMap::from([(0, BigUint::one())]);
    let steps = sym
        .iter()
        .map(|&w| (w, &tables.psi))
        .chain(pairs.iter().map(|&w| (w, &tables.rho)));
    for (w, dist) in steps {
        let mut next: BTreeMap<u64, BigUint> = BTreeMap::new();
        for (&deg, c) in &poly {
            for (&eta, &m) in dist {
                *next.entry(deg + w * eta as u64).or_default() += c * m;
            }
        }
        poly = next;
    }
    poly.retain(|_, c| !c.is_zero());
    Ok(poly)
}

/// `℘(n, τ; R)` for a single `τ`.
pub fn count_hulls(setting: &HullSetting, tau: u64) -> Result<BigUint> {
    Ok(hull_counts(setting)?.remove(&tau).unwrap_or_default())
}

/// Mean of `τ` under a count table.
pub fn average_from_counts(counts: &BTreeMap<u64, BigUint>) -> Option<BigRational> {
    let total: BigUint = counts.values().sum();
    if total.is_zero() {
        return None;
    }
    let weighted: BigUint = counts.iter().map(|(&t, c)| c * t).sum();
    Some(BigRational::new(weighted.into(), total.into()))
}

fn mean_triangle(s: u32) -> BigRational {
    let h = ceil_half(s) as i64;
    ratio(h * (s as i64 - h), s as i64 + 1)
}

fn mean_blacktriangle(s: u32) -> BigRational {
    let s = s as i64;
    ratio(s * (2 * s + 1), 3 * (s + 1))
}

/// Coefficient of `B_{n,q}` in the closed form.
fn b_coefficient(s: u32) -> BigRational {
    let s = s as i64;
    if s % 2 == 0 {
        ratio(s * s + 2 * s, 12 * (s + 1))
    } else {
        ratio(s * s + 2 * s + 3, 12 * (s + 1))
    }
}

/// Closed-form average hull `q`-dimension `E_R(n)` over all cyclic serial
/// codes of length `n`.
pub fn average_dim(setting: &HullSetting) -> Result<BigRational> {
    let s = setting.s;
    let n = int(setting.n);
    let b = int(bnq(setting));
    let lead = ratio(s as i64 * (2 * s as i64 + 1), 6 * (s as i64 + 1));
    let closed = &lead * &n - b_coefficient(s) * &b;

    let two = int(2);
    let via_means = &n / &two * mean_blacktriangle(s)
        - &b * (mean_blacktriangle(s) / &two - mean_triangle(s));
    if via_means != closed {
        return internal(format!("closed form {closed} disagrees with {via_means}"));
    }
    if setting.atlas.by_divisor.values().all(|c| c.in_nq) {
        let collapsed = if s % 2 == 0 {
            int(setting.n) * ratio((s * s) as i64, 4 * (s as i64 + 1))
        } else {
            int(setting.n) * ratio(s as i64 - 1, 4)
        };
        if collapsed != closed {
            return internal(format!("self-reciprocal length: {closed} != {collapsed}"));
        }
    }
    Ok(closed)
}

/// The explicit finite-`n` band for lengths outside `N_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    #[serde(with = "super::report::rational")]
    pub lower: BigRational,
    #[serde(with = "super::report::rational")]
    pub upper: BigRational,
}

impl Bounds {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }
}

/// Lower and upper bound expressions for `E_R(n)`; they come from
/// `B_{n,q} = 2n/3` and `B_{n,q} = 1` respectively.
pub fn bounds(n: u64, s: u32) -> Bounds {
    let (n, s) = (n as i64, s as i64);
    if s % 2 == 0 {
        Bounds {
            lower: ratio((5 * s + 1) * s * n, 18 * (s + 1)),
            upper: ratio(2 * n * (2 * s + 1) * s - (s + 2) * s, 12 * (s + 1)),
        }
    } else {
        Bounds {
            lower: ratio((5 * s * s + s - 3) * n, 18 * (s + 1)),
            upper: ratio(2 * n * s * (2 * s + 1) - (s * s + 2 * s + 3), 12 * (s + 1)),
        }
    }
}

/// `E / (s n)` as a float, for display only.
pub fn growth_ratio(e: &BigRational, n: u64, s: u32) -> f64 {
    let r = e / int(n * s as u64);
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}
