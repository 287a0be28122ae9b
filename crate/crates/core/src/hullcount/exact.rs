use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::HullSetting;
use crate::arith::{ceil_half, mod_pow};
use crate::error::{Error, Result};

/// A code whose hull breaks the per-step bound on `ν_j^{(t)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemCoViolation {
    pub divisor: u64,
    pub t: u32,
    pub nu: u64,
    pub bound: u64,
    /// Coset levels of the offending code, in atlas order.
    pub levels: Vec<u32>,
}

/// Result of visiting every code of length `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactTally {
    pub ell: u32,
    pub codes: u128,
    pub tuples: BTreeMap<Vec<u64>, u128>,
    pub taus: BTreeMap<u64, u128>,
    pub violation_count: u128,
    pub violations: Vec<LemCoViolation>,
}

const KEPT_VIOLATIONS: usize = 8;

impl ExactTally {
    fn empty(ell: u32) -> Self {
        ExactTally {
            ell,
            codes: 0,
            tuples: BTreeMap::new(),
            taus: BTreeMap::new(),
            violation_count: 0,
            violations: Vec::new(),
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.codes += other.codes;
        for (k, c) in other.tuples {
            *self.tuples.entry(k).or_default() += c;
        }
        for (t, c) in other.taus {
            *self.taus.entry(t).or_default() += c;
        }
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.violations.sort_by(|a, b| a.levels.cmp(&b.levels));
        self.violations.truncate(KEPT_VIOLATIONS);
        self
    }

    /// Exact mean hull `q`-dimension.
    pub fn average(&self) -> BigRational {
        let weighted: BigInt = self.taus.iter().map(|(&t, &c)| BigInt::from(t) * BigInt::from(c)).sum();
        BigRational::new(weighted, BigInt::from(self.codes))
    }
}

struct Plan {
    s: u32,
    h: u32,
    omega: usize,
    sizes: Vec<u64>,
    /// `dual_of[c]`: the coset whose dual level lands on `c`.
    dual_of: Vec<usize>,
    /// Per divisor outside `N_q`: `(j, β, cosets in its pairs)`.
    asym: Vec<(u64, u64, Vec<usize>)>,
}

impl Plan {
    fn new(setting: &HullSetting, ell: u32) -> Self {
        let atlas = &setting.atlas;
        let n = atlas.n;
        let u = (n - mod_pow(setting.spec.p, ell as u64, n) % n) % n;
        let mut dual_of = vec![0; atlas.omega];
        for (c, coset) in atlas.cosets.iter().enumerate() {
            let image = (coset.rep as u128 * u as u128 % n as u128) as u32;
            dual_of[atlas.coset_index(image)] = c;
        }
        let asym = atlas
            .by_divisor
            .values()
            .filter(|cl| !cl.in_nq)
            .map(|cl| {
                let members = cl.pairs.iter().flat_map(|&(f, g)| [f, g]).collect();
                (cl.divisor, cl.beta, members)
            })
            .collect();
        Plan {
            s: setting.s,
            h: ceil_half(setting.s),
            omega: atlas.omega,
            sizes: atlas.cosets.iter().map(|c| c.len() as u64).collect(),
            dual_of,
            asym,
        }
    }

    fn visit(&self, idx: u128, levels: &mut [u32], hull: &mut [u32], tally: &mut ExactTally, check: bool) {
        let mut rest = idx;
        let radix = self.s as u128 + 1;
        for l in levels.iter_mut() {
            *l = (rest % radix) as u32;
            rest /= radix;
        }
        for c in 0..self.omega {
            hull[c] = levels[c].max(self.s - levels[self.dual_of[c]]);
        }
        let mut k = vec![0u64; self.s as usize];
        for (c, &l) in hull.iter().enumerate() {
            if l < self.s {
                k[l as usize] += self.sizes[c];
            }
        }
        let tau = k
            .iter()
            .enumerate()
            .map(|(t, &kt)| (self.s as u64 - t as u64) * kt)
            .sum();
        tally.codes += 1;
        *tally.tuples.entry(k).or_default() += 1;
        *tally.taus.entry(tau).or_default() += 1;
        if check {
            self.check_steps(levels, hull, tally);
        }
    }

    /// `ε_j^{(t)}` counts pair cosets of divisor `j` with hull level above
    /// `t`, so `ν_j^{(t)} = ε_j^{(t-1)} - ε_j^{(t)}`.
    fn check_steps(&self, levels: &[u32], hull: &[u32], tally: &mut ExactTally) {
        for (j, beta, members) in &self.asym {
            let mut nu_prev = 0u64;
            for t in 0..self.s {
                let nu = members.iter().filter(|&&c| hull[c] == t).count() as u64;
                let room = beta.saturating_sub(nu_prev);
                let bound = if t < self.h { room } else { 2 * room };
                if nu > bound {
                    tally.violation_count += 1;
                    if tally.violations.len() < KEPT_VIOLATIONS {
                        tally.violations.push(LemCoViolation {
                            divisor: *j,
                            t,
                            nu,
                            bound,
                            levels: levels.to_vec(),
                        });
                    }
                }
                nu_prev = nu;
            }
        }
    }
}

/// Visit all `(s+1)^ω` codes, tallying hull parameter tuples and hull
/// `q`-dimensions for the `ℓ`-Galois hull.
///
/// The step-bound check on `ν` is only run for the Euclidean hull.
pub fn exact_enumeration(setting: &HullSetting, ell: u32, budget: u128) -> Result<ExactTally> {
    if ell >= setting.spec.r {
        return Err(Error::Validation(format!("ell = {ell} must be below r = {}", setting.spec.r)));
    }
    let needed = setting.code_count().unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Budget {
            what: format!("exact enumeration over {} codes", setting.atlas.n),
            needed,
            budget,
        });
    }
    let plan = Plan::new(setting, ell);
    let check = ell == 0;
    let chunk = 4096u128;
    let chunks = needed.div_ceil(chunk) as u64;
    let tally = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut tally = ExactTally::empty(ell);
            let mut levels = vec![0; plan.omega];
            let mut hull = vec![0; plan.omega];
            let lo = i as u128 * chunk;
            for idx in lo..(lo + chunk).min(needed) {
                plan.visit(idx, &mut levels, &mut hull, &mut tally, check);
            }
            tally
        })
        .reduce(|| ExactTally::empty(ell), ExactTally::merge);
    Ok(tally)
}
