//! Euclidean hull parameters of cyclic serial codes: Algorithm 1, an exact
//! enumerator, the `ℵ` set, the counts `℘(n, τ; R)` and the average hull
//! `q`-dimension with its bounds.

mod algorithm1;
mod exact;
mod formulas;
mod report;
mod tables;

use std::sync::Arc;

pub use algorithm1::algorithm1;
pub use exact::{exact_enumeration, ExactTally, LemCoViolation};
pub use formulas::{
    aleph, average_dim, average_from_counts, bnq, bounds, count_hulls, growth_ratio, hull_counts, Bounds,
};
pub use report::{Difference, HullReport, Method, RationalRepr, TauCount, TupleCount};
pub use tables::{blacktriangle, triangle, DeltaTables};

use crate::cosetlab::CosetAtlas;
use crate::error::Result;
use crate::ringpoly::RingSpec;

/// Default cap on the number of codes an exact enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// The data every hull count depends on: `n`, `q`, `s` and the coset atlas.
#[derive(Debug, Clone)]
pub struct HullSetting {
    pub spec: RingSpec,
    pub n: u64,
    pub q: u64,
    pub s: u32,
    pub atlas: Arc<CosetAtlas>,
}

impl HullSetting {
    pub fn new(spec: RingSpec, n: u64) -> Result<Self> {
        spec.validate()?;
        let q = spec.q();
        let atlas = CosetAtlas::build(n, q)?;
        Ok(HullSetting {
            spec,
            n,
            q,
            s: spec.s,
            atlas: Arc::new(atlas),
        })
    }

    /// `(ord_j(q), γ(j;q))` for divisors in `N_q` and `(ord_j(q), β(j;q))`
    /// for the others.
    pub(crate) fn divisor_weights(&self) -> (Vec<(u64, u64)>, Vec<(u64, u64)>) {
        let mut sym = Vec::new();
        let mut asym = Vec::new();
        for class in self.atlas.by_divisor.values() {
            if class.in_nq {
                sym.push((class.order, class.gamma));
            } else {
                asym.push((class.order, class.beta));
            }
        }
        (sym, asym)
    }

    /// `ord` weight of every symmetric coset and every asymmetric pair.
    pub(crate) fn slot_weights(&self) -> (Vec<u64>, Vec<u64>) {
        let a = &self.atlas;
        let sym = a.symmetric_slots().map(|c| a.cosets[c].len() as u64).collect();
        let pairs = a.pair_slots().map(|(f, _)| a.cosets[f].len() as u64).collect();
        (sym, pairs)
    }

    /// Total number of codes `(s+1)^ω`, if it fits.
    pub fn code_count(&self) -> Option<u128> {
        (self.s as u128 + 1).checked_pow(self.atlas.omega as u32)
    }
}
